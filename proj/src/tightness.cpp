#include "cms/tightness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cms/error.hpp"
#include "cms/montecarlo.hpp"

namespace cms {

namespace {

// Smallest symbol i >= from with tail(i) <= target.
std::size_t first_level(const GibbsModel& model, double target, std::size_t from) {
  if (model.kind() == GibbsModel::Kind::GaussMeasure) {
    // tail(i) = log2(1 + 1/(i+2)) <= target  <=>  i >= 1/(2^target - 1) - 2
    const double x = 1.0 / std::expm1(target * std::numbers::ln2) - 2.0;
    if (!(x < 1e18)) throw Error(ErrorCode::BudgetExceeded, "schedule level does not fit in an integer");
    std::size_t i = x <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(x));
    while (i > 0 && model.tail(i - 1) <= target) --i;
    while (model.tail(i) > target) ++i;
    return std::max(i, from);
  }
  const std::size_t m = model.alphabet_size();
  for (std::size_t i = from; i < m; ++i)
    if (model.tail(i) <= target) return i;
  throw Error(ErrorCode::BudgetExceeded,
              "mass beyond the truncation exceeds " + std::to_string(target) + "; enlarge the alphabet");
}

// P(J = j) for j = 0..d where J(v) = #{i < d : N_i < v}; P(J >= j) = tail(N_{j-1}).
std::vector<double> class_probabilities(const GibbsModel& model, const TightnessSchedule& s) {
  const std::size_t d = s.levels.size();
  std::vector<double> at_least(d + 2, 0.0);
  at_least[0] = 1.0;
  for (std::size_t j = 1; j <= d; ++j) at_least[j] = model.tail(s.levels[j - 1]);
  std::vector<double> p(d + 1);
  for (std::size_t j = 0; j <= d; ++j) p[j] = at_least[j] - at_least[j + 1];
  return p;
}

std::size_t symbol_class(const TightnessSchedule& s, std::size_t v) {
  return static_cast<std::size_t>(std::lower_bound(s.levels.begin(), s.levels.end(), v) - s.levels.begin());
}

}  // namespace

TightnessSchedule build_schedule(const GibbsModel& model, double theta, std::size_t depth) {
  const double c0 = model.c0().value_or(1.0);
  const double limit = std::min(1.0 / (c0 * c0 * c0), 0.2);
  if (!(theta > 0.0) || theta > limit)
    throw Error(ErrorCode::ThetaOutOfRange,
                "θ = " + std::to_string(theta) + " outside (0, " + std::to_string(limit) + "]");
  if (depth < 1) throw Error(ErrorCode::InvalidModel, "schedule depth must be >= 1");
  TightnessSchedule s;
  s.theta = theta;
  std::size_t level = 0;
  double target = 1.0;
  for (std::size_t i = 0; i < depth; ++i) {
    target *= theta;
    level = first_level(model, target, level);
    s.levels.push_back(level);
  }
  return s;
}

bool schedule_valid(const GibbsModel& model, const TightnessSchedule& schedule) {
  double target = 1.0;
  for (std::size_t i = 0; i < schedule.levels.size(); ++i) {
    target *= schedule.theta;
    if (model.tail(schedule.levels[i]) > target) return false;
    if (i > 0 && schedule.levels[i] < schedule.levels[i - 1]) return false;
  }
  return true;
}

// Time i is outside Γ iff some coordinate t >= i has x_t > N_{t-i}, i.e.
// t - i < J(x_t). Scanning t downward, s_t = max(s_{t+1} - 1, J(x_t)) counts
// how many times from t down are covered, and time t is bad iff s_t >= 1.
std::vector<double> visit_distribution(const GibbsModel& model, const TightnessSchedule& schedule, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "n must be >= 1");
  const std::size_t d = schedule.levels.size();
  if (d < 1) throw Error(ErrorCode::InvalidModel, "empty schedule");
  const std::size_t coords = n + d - 1;

  if (model.kind() == GibbsModel::Kind::BernoulliProduct) {
    if (static_cast<double>(coords) * (d + 1) * (d + 1) * (n + 1) > 1e10)
      throw Error(ErrorCode::BudgetExceeded, "visit DP is too large");
    const std::vector<double> pj = class_probabilities(model, schedule);
    // state[s][m]
    std::vector<std::vector<double>> state(d + 1, std::vector<double>(n + 1, 0.0));
    state[0][0] = 1.0;
    for (std::size_t t = coords; t-- > 0;) {
      std::vector<std::vector<double>> next(d + 1, std::vector<double>(n + 1, 0.0));
      for (std::size_t s = 0; s <= d; ++s)
        for (std::size_t m = 0; m <= n; ++m) {
          const double w = state[s][m];
          if (w == 0.0) continue;
          for (std::size_t j = 0; j <= d; ++j) {
            if (pj[j] == 0.0) continue;
            const std::size_t ns = std::max(s == 0 ? 0 : s - 1, j);
            const std::size_t nm = (t < n && ns >= 1) ? m + 1 : m;
            next[ns][nm] += w * pj[j];
          }
        }
      state = std::move(next);
    }
    std::vector<double> p(n + 1, 0.0);
    for (std::size_t s = 0; s <= d; ++s)
      for (std::size_t m = 0; m <= n; ++m) p[m] += state[s][m];
    return p;
  }

  if (model.kind() == GibbsModel::Kind::MarkovChain) {
    // Scan backwards with the reversed chain π_i P_ij / π_j.
    const std::size_t k = model.alphabet_size();
    if (static_cast<double>(coords) * (d + 1) * k * k * (n + 1) > 1e10)
      throw Error(ErrorCode::BudgetExceeded, "visit DP is too large");
    const auto& pi = model.weights();
    const auto& p = model.stochastic();
    std::vector<std::size_t> cls(k);
    for (std::size_t v = 0; v < k; ++v) cls[v] = symbol_class(schedule, v);
    // state[x][s][m] for the coordinate just processed
    using Grid = std::vector<std::vector<std::vector<double>>>;
    Grid state(k, std::vector<std::vector<double>>(d + 1, std::vector<double>(n + 1, 0.0)));
    const std::size_t top = coords - 1;
    for (std::size_t x = 0; x < k; ++x) {
      const std::size_t s = cls[x];
      state[x][s][(top < n && s >= 1) ? 1 : 0] += pi[x];
    }
    for (std::size_t t = top; t-- > 0;) {
      Grid next(k, std::vector<std::vector<double>>(d + 1, std::vector<double>(n + 1, 0.0)));
      for (std::size_t y = 0; y < k; ++y)
        for (std::size_t x = 0; x < k; ++x) {
          if (p[x][y] == 0.0) continue;
          const double back = pi[x] * p[x][y] / pi[y];
          for (std::size_t s = 0; s <= d; ++s)
            for (std::size_t m = 0; m <= n; ++m) {
              const double w = state[y][s][m];
              if (w == 0.0) continue;
              const std::size_t ns = std::max(s == 0 ? 0 : s - 1, cls[x]);
              const std::size_t nm = (t < n && ns >= 1) ? m + 1 : m;
              next[x][ns][nm] += w * back;
            }
        }
      state = std::move(next);
    }
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t s = 0; s <= d; ++s)
        for (std::size_t m = 0; m <= n; ++m) out[m] += state[x][s][m];
    return out;
  }
  throw Error(ErrorCode::UnsupportedModel, "exact visit distribution needs a product or Markov measure");
}

std::vector<double> visit_distribution_mc(const GibbsModel& model, const TightnessSchedule& schedule, std::size_t n,
                                          std::size_t trials, std::uint64_t seed) {
  if (n < 1 || trials < 1) throw Error(ErrorCode::InvalidModel, "need n >= 1 and trials >= 1");
  const std::size_t d = schedule.levels.size();
  std::vector<std::size_t> counts(n + 1, 0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(trial_seed(seed, trial));
    const Word x = sample_symbols(model, rng, n + d - 1);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool bad = false;
      for (std::size_t j = 0; j < d && !bad; ++j) bad = x[i + j] > schedule.levels[j];
      m += bad ? 1 : 0;
    }
    ++counts[m];
  }
  std::vector<double> p(n + 1);
  for (std::size_t m = 0; m <= n; ++m) p[m] = static_cast<double>(counts[m]) / static_cast<double>(trials);
  return p;
}

ExpoBoundReport check_expo_bound(const std::vector<double>& distribution, double theta, std::size_t n) {
  if (distribution.size() != n + 1) throw Error(ErrorCode::InvalidModel, "distribution must have n + 1 entries");
  if (!(theta > 0.0 && theta < 0.25)) throw Error(ErrorCode::ThetaOutOfRange, "bound needs 0 < θ < 1/4");
  ExpoBoundReport rep;
  rep.margin = std::numeric_limits<double>::infinity();
  rep.informative_from = n + 1;
  const double lead = std::ldexp(1.0, static_cast<int>(n)) / (1.0 - 4.0 * theta);
  for (std::size_t m = 0; m <= n; ++m) {
    const double b = lead * std::pow(4.0 * theta, static_cast<double>(m));
    rep.bound.push_back(b);
    rep.margin = std::min(rep.margin, b - distribution[m]);
    if (b < 1.0 && rep.informative_from > n) rep.informative_from = m;
    if (distribution[m] > b) rep.pass = false;
  }
  return rep;
}

}  // namespace cms
