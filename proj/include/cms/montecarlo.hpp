#ifndef CMS_MONTECARLO_HPP
#define CMS_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cms/deviation.hpp"
#include "cms/gauss.hpp"
#include "cms/gibbs.hpp"
#include "cms/potential.hpp"

namespace cms {

/// Seed of trial `index` derived from the run seed (splitmix64), so results do
/// not depend on how trials are split across workers.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng) noexcept;

/// Wilson score interval for `hits` out of `trials`.
std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z = 1.96);

/// First `length` symbols of a point drawn from the model. Bernoulli mass
/// beyond the truncation shows up as symbol M; Gauss symbols are digit - 1.
Word sample_symbols(const GibbsModel& model, Rng& rng, std::size_t length);

struct McResult {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  std::size_t n = 0;
  double alpha = 0.0;
  Comparison direction = Comparison::AtLeast;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  /// (1/n) log(estimate); absent when nothing was hit.
  std::optional<double> rate;
  /// ZeroHits: the interval is one-sided, [0, ci_hi].
  bool zero_hits = false;
};

/// Frequency of (1/n) S_nψ ≥ α (or ≤ α) under the model's measure.
McResult mc_deviation(const GibbsModel& model, const Observable& obs, double alpha, Comparison direction,
                      std::size_t n, std::size_t trials, std::uint64_t seed, std::size_t workers = 1);

}  // namespace cms

#endif  // CMS_MONTECARLO_HPP
