#ifndef CMS_DEVIATION_HPP
#define CMS_DEVIATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "cms/gauss_transfer.hpp"
#include "cms/gibbs.hpp"
#include "cms/potential.hpp"
#include "cms/shift.hpp"

namespace cms {

/// Lebesgue: cylinders weighted by exp(sup S_nφ) (for the Gauss potential
/// exactly their Lebesgue measure). GibbsMeasure: cylinders weighted by the
/// reference measure of a GibbsModel.
enum class DeviationEnsemble { Lebesgue, Periodic, Preimage, GibbsMeasure };
enum class Comparison { AtLeast, AtMost };

std::string_view to_string(DeviationEnsemble e) noexcept;
std::string_view to_string(Comparison c) noexcept;

struct DeviationProblem {
  ShiftSpec spec = ShiftSpec::full(1);
  Potential potential = Potential::constant(0.0);
  /// Required for the GibbsMeasure ensemble on symbolic shifts.
  std::optional<GibbsModel> model;
  /// Level-1 direction; must be an indicator so counts can be marked.
  Observable observable = Observable::indicator(0);
  Anchor anchor;
  std::size_t grid_size = 64;
  std::uint64_t budget = kDefaultWordBudget;
};

/// value = (1/n) log(constrained sum / unconstrained sum), both over the
/// words of the truncated system at the same n. An empty constraint set gives
/// value = -inf with `empty` set.
struct DeviationRate {
  DeviationEnsemble ensemble = DeviationEnsemble::Lebesgue;
  double alpha = 0.0;
  Comparison direction = Comparison::AtLeast;
  std::size_t n = 0;
  std::size_t truncation = 0;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double log_hit = 0.0;
  double log_total = 0.0;
  bool empty = false;
};

/// Count-marked transfer DP: the symbolic chain for potentials of depth 1, the
/// Chebyshev Gauss operator for the Gauss family, enumeration otherwise.
DeviationRate deviation_rate_constrained(DeviationEnsemble ensemble, const DeviationProblem& problem, double alpha,
                                         Comparison direction, std::size_t n);

/// Same quantity by visiting every word; the path taken when no DP applies.
DeviationRate deviation_rate_enumerated(DeviationEnsemble ensemble, const DeviationProblem& problem, double alpha,
                                        Comparison direction, std::size_t n);

}  // namespace cms

#endif  // CMS_DEVIATION_HPP
