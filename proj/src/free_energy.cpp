#include "cms/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cms/error.hpp"

namespace cms {

PressureEstimate estimate_pressure(const ShiftSpec& spec, const Potential& pot, const PressureRecipe& recipe) {
  switch (recipe.method) {
    case Ensemble::WordSum: return pressure_word_sum(spec, pot, recipe.n, recipe.budget);
    case Ensemble::Periodic: return pressure_periodic(spec, pot, recipe.n, std::nullopt, recipe.budget);
    case Ensemble::Preimage: return pressure_preimage(spec, pot, recipe.n, recipe.anchor, recipe.budget);
    case Ensemble::TransferOperator: return pressure_transfer(spec, pot, recipe.transfer);
  }
  throw Error(ErrorCode::InvalidModel, "unknown pressure method");
}

FreeEnergy::FreeEnergy(Observable observable, std::vector<FreeEnergySample> samples, Evaluator evaluator,
                       double base, double domain_lo, double domain_hi)
    : observable_(std::move(observable)),
      samples_(std::move(samples)),
      evaluator_(std::move(evaluator)),
      base_(base),
      domain_lo_(domain_lo),
      domain_hi_(domain_hi) {}

double FreeEnergy::operator()(double beta) const {
  if (beta == 0.0) return 0.0;
  return evaluator_(beta).value - base_;
}

double FreeEnergy::derivative_at_zero(double h) const { return ((*this)(h) - (*this)(-h)) / (2.0 * h); }

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) throw Error(ErrorCode::InvalidModel, "grid needs >= 2 points and hi > lo");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = hi;
  return g;
}

std::pair<double, double> cycle_mean_range(const ShiftSpec& spec, const Observable& obs) {
  if (obs.depth() != 1) return {obs.inf(), obs.sup()};
  const std::size_t m = spec.alphabet_size();
  // Karp: with D_k(v) the best k-edge walk weight ending at v (edge weight =
  // ψ of its source), the extreme cycle mean is max_v min_k (D_m - D_k)/(m - k).
  auto karp = [&](double sign) {
    constexpr double none = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(m, none));
    for (std::size_t v = 0; v < m; ++v) d[0][v] = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
      for (Symbol u = 0; u < m; ++u) {
        if (d[k - 1][u] == none) continue;
        const double w = sign * obs.symbol_value(u);
        for (Symbol v = 0; v < m; ++v)
          if (spec.allowed(u, v)) d[k][v] = std::max(d[k][v], d[k - 1][u] + w);
      }
    double best = none;
    for (std::size_t v = 0; v < m; ++v) {
      if (d[m][v] == none) continue;
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m; ++k)
        if (d[k][v] != none) worst = std::min(worst, (d[m][v] - d[k][v]) / static_cast<double>(m - k));
      best = std::max(best, worst);
    }
    return sign * best;
  };
  return {karp(-1.0), karp(1.0)};
}

FreeEnergy free_energy(const ShiftSpec& spec, const Potential& pot, const Observable& obs,
                       std::vector<double> beta_grid, const PressureRecipe& recipe, double convexity_tol) {
  if (beta_grid.size() < 2) throw Error(ErrorCode::InvalidModel, "β grid needs at least 2 points");
  std::sort(beta_grid.begin(), beta_grid.end());
  beta_grid.erase(std::unique(beta_grid.begin(), beta_grid.end()), beta_grid.end());
  FreeEnergy::Evaluator eval = [spec, pot, obs, recipe](double beta) {
    return estimate_pressure(spec, tilt(pot, obs, beta), recipe);
  };
  const double base = eval(0.0).value;
  std::vector<FreeEnergySample> samples;
  samples.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    FreeEnergySample s;
    s.beta = beta;
    if (beta == 0.0) {
      s.value = s.lo = s.hi = 0.0;
    } else {
      const PressureEstimate p = eval(beta);
      s.value = p.value - base;
      s.lo = p.lo - base;
      s.hi = p.hi - base;
    }
    samples.push_back(s);
  }
  for (std::size_t i = 2; i < samples.size(); ++i) {
    const double left = (samples[i - 1].value - samples[i - 2].value) / (samples[i - 1].beta - samples[i - 2].beta);
    const double right = (samples[i].value - samples[i - 1].value) / (samples[i].beta - samples[i - 1].beta);
    if (right < left - convexity_tol)
      throw Error(ErrorCode::NonconvexSamples,
                  "secant slope drops by " + std::to_string(left - right) + " at β = " +
                      std::to_string(samples[i - 1].beta));
  }
  double lo = obs.inf();
  double hi = obs.sup();
  if (!pot.is_gauss_family() && obs.depth() == 1) std::tie(lo, hi) = cycle_mean_range(spec, obs);
  return FreeEnergy(obs, std::move(samples), std::move(eval), base, lo, hi);
}

}  // namespace cms
