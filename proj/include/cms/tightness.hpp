#ifndef CMS_TIGHTNESS_HPP
#define CMS_TIGHTNESS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cms/gibbs.hpp"

namespace cms {

/// θ and levels N_0 <= N_1 <= ... <= N_{d-1} (symbols) with
/// tail(N_i) <= θ^(i+1). Γ = {x : x_j <= N_j for j < d}.
struct TightnessSchedule {
  double theta = 0.0;
  std::vector<std::size_t> levels;
};

/// Smallest nondecreasing levels meeting the tail condition. θ must lie in
/// (0, min(c0^-3, 1/5)] with c0 the model's constant (1 when unset);
/// otherwise ThetaOutOfRange. BudgetExceeded when a level does not fit.
TightnessSchedule build_schedule(const GibbsModel& model, double theta, std::size_t depth);

/// Re-checks tail(N_i) <= θ^(i+1) from raw tail masses.
bool schedule_valid(const GibbsModel& model, const TightnessSchedule& schedule);

/// p_m = μ{x : exactly m of σ^0 x .. σ^(n-1) x lie outside Γ}, m = 0..n.
/// Exact for product and Markov measures; UnsupportedModel otherwise.
std::vector<double> visit_distribution(const GibbsModel& model, const TightnessSchedule& schedule, std::size_t n);

/// The same distribution estimated from `trials` sampled points.
std::vector<double> visit_distribution_mc(const GibbsModel& model, const TightnessSchedule& schedule, std::size_t n,
                                          std::size_t trials, std::uint64_t seed);

struct ExpoBoundReport {
  std::vector<double> bound;  // 2^n (4θ)^m / (1 - 4θ)
  /// min over m of bound_m - p_m
  double margin = 0.0;
  /// First m whose bound is below 1 (n + 1 when none).
  std::size_t informative_from = 0;
  bool pass = true;
};

ExpoBoundReport check_expo_bound(const std::vector<double>& distribution, double theta, std::size_t n);

}  // namespace cms

#endif  // CMS_TIGHTNESS_HPP
