#include "cms/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "cms/error.hpp"

namespace cms {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Symbol pick(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<Symbol>(i);
  }
  return static_cast<Symbol>(probs.size());
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ index);
}

double uniform01(Rng& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Word sample_symbols(const GibbsModel& model, Rng& rng, std::size_t length) {
  Word out;
  out.reserve(length);
  switch (model.kind()) {
    case GibbsModel::Kind::BernoulliProduct:
      for (std::size_t i = 0; i < length; ++i) out.push_back(pick(model.weights(), uniform01(rng)));
      break;
    case GibbsModel::Kind::MarkovChain: {
      Symbol x = pick(model.weights(), uniform01(rng));
      const Symbol last = static_cast<Symbol>(model.alphabet_size() - 1);
      x = std::min(x, last);
      out.push_back(x);
      while (out.size() < length) {
        x = std::min(pick(model.stochastic()[x], uniform01(rng)), last);
        out.push_back(x);
      }
      break;
    }
    case GibbsModel::Kind::GaussMeasure:
      for (Digit d : sample_gauss(rng, length)) {
        const Digit cap = std::numeric_limits<Symbol>::max();
        out.push_back(static_cast<Symbol>(std::min(d - 1, cap)));
      }
      break;
  }
  return out;
}

McResult mc_deviation(const GibbsModel& model, const Observable& obs, double alpha, Comparison direction,
                      std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t workers) {
  if (n < 1 || trials < 1) throw Error(ErrorCode::InvalidModel, "need n >= 1 and trials >= 1");
  const std::size_t extra = obs.depth() - 1;
  const double target = alpha * static_cast<double>(n);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    std::size_t hits = 0;
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(trial_seed(seed, t));
      const Word x = sample_symbols(model, rng, n + extra);
      const std::span<const Symbol> all(x);
      const double s = obs.preimage_sum(all.first(n), all.subspan(n));
      const bool hit = direction == Comparison::AtLeast ? s >= target - 1e-12 : s <= target + 1e-12;
      hits += hit ? 1 : 0;
    }
    return hits;
  };
  workers = std::clamp<std::size_t>(workers, 1, trials);
  std::vector<std::size_t> partial(workers, 0);
  if (workers == 1) {
    partial[0] = run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = trials * w / workers;
      const std::size_t end = trials * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          partial[w] = run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  McResult r;
  r.seed = seed;
  r.trials = trials;
  r.n = n;
  r.alpha = alpha;
  r.direction = direction;
  for (std::size_t h : partial) r.hits += h;
  r.estimate = static_cast<double>(r.hits) / static_cast<double>(trials);
  std::tie(r.ci_lo, r.ci_hi) = wilson_interval(r.hits, trials);
  if (r.hits == 0) {
    r.zero_hits = true;
    r.ci_lo = 0.0;
  } else {
    r.rate = std::log(r.estimate) / static_cast<double>(n);
  }
  return r;
}

}  // namespace cms
