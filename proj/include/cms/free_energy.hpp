#ifndef CMS_FREE_ENERGY_HPP
#define CMS_FREE_ENERGY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cms/potential.hpp"
#include "cms/pressure.hpp"
#include "cms/shift.hpp"

namespace cms {

/// Which pressure expression the tilted pressures come from.
struct PressureRecipe {
  Ensemble method = Ensemble::TransferOperator;
  /// Word length for the word-sum, periodic and preimage methods.
  std::size_t n = 20;
  Anchor anchor;
  TransferOptions transfer;
  std::uint64_t budget = kDefaultWordBudget;
};

/// P(φ) by the chosen method.
PressureEstimate estimate_pressure(const ShiftSpec& spec, const Potential& pot, const PressureRecipe& recipe);

struct FreeEnergySample {
  double beta = 0.0;
  double value = 0.0;  // Λ(β)
  double lo = 0.0;
  double hi = 0.0;
};

/// Λ(β) = P(φ + βψ) - P(φ), sampled on a grid and evaluable anywhere.
class FreeEnergy {
 public:
  /// Tilted pressure P(φ + βψ) at any β.
  using Evaluator = std::function<PressureEstimate(double beta)>;

  FreeEnergy(Observable observable, std::vector<FreeEnergySample> samples, Evaluator evaluator, double base,
             double domain_lo, double domain_hi);

  const Observable& observable() const noexcept { return observable_; }
  const std::vector<FreeEnergySample>& samples() const noexcept { return samples_; }
  double beta_min() const noexcept { return samples_.front().beta; }
  double beta_max() const noexcept { return samples_.back().beta; }
  /// Λ(β); exactly 0 at β = 0.
  double operator()(double beta) const;
  /// Central difference (Λ(h) - Λ(-h)) / 2h, the mean of ψ.
  double derivative_at_zero(double h = 1e-3) const;
  /// Range of attainable averages of ψ.
  double domain_lo() const noexcept { return domain_lo_; }
  double domain_hi() const noexcept { return domain_hi_; }

 private:
  Observable observable_;
  std::vector<FreeEnergySample> samples_;
  Evaluator evaluator_;
  double base_;
  double domain_lo_;
  double domain_hi_;
};

/// Samples Λ on the β grid (sorted, must contain values on both sides of 0
/// or 0 itself). Throws NonconvexSamples when a secant slope drops by more
/// than `convexity_tol`.
FreeEnergy free_energy(const ShiftSpec& spec, const Potential& pot, const Observable& obs,
                       std::vector<double> beta_grid, const PressureRecipe& recipe, double convexity_tol = 1e-9);

/// β grid from lo to hi in equal steps, endpoints included.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

/// Min and max cycle means of a depth-1 observable over the transition graph
/// (Karp), i.e. the range of ψ-averages over invariant measures.
std::pair<double, double> cycle_mean_range(const ShiftSpec& spec, const Observable& obs);

}  // namespace cms

#endif  // CMS_FREE_ENERGY_HPP
