#ifndef CMS_RATE_HPP
#define CMS_RATE_HPP

#include <cstddef>
#include <vector>

#include "cms/free_energy.hpp"

namespace cms {

struct RatePoint {
  double alpha = 0.0;
  /// +inf outside the attainable range.
  double rate = 0.0;
  double beta_star = 0.0;
  /// The supremum sits on the edge of the β range.
  bool at_boundary = false;
  bool outside_domain = false;
};

struct RateCurve {
  std::vector<RatePoint> points;
  double domain_lo = 0.0;
  double domain_hi = 0.0;
};

/// I(α) = sup_β (βα - Λ(β)) over the free energy's β range: the best sampled
/// β, refined by Brent's method on the bracketing sample interval. Ties go to
/// the smaller |β|. α outside [domain_lo, domain_hi] gets I = +inf and
/// outside_domain (the AlphaOutsideDomain marker).
RateCurve rate_legendre(const FreeEnergy& fe, const std::vector<double>& alpha_grid);
RatePoint rate_at(const FreeEnergy& fe, double alpha);

struct CurveProperties {
  double min_rate = 0.0;
  /// Largest drop of a secant slope between consecutive finite points.
  double worst_secant_drop = 0.0;
  /// Points left of the mean where I increases, or right of it where it decreases.
  std::size_t monotonicity_breaks = 0;
};

CurveProperties curve_properties(const RateCurve& curve, double mean, double tol = 1e-8);

/// Λ(β) recovered as sup_α (βα - I(α)) over the finite points of the curve.
double legendre_back(const RateCurve& curve, double beta);

}  // namespace cms

#endif  // CMS_RATE_HPP
