#include "cms/rate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace cms {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTie = 1e-13;
}  // namespace

RatePoint rate_at(const FreeEnergy& fe, double alpha) {
  RatePoint pt;
  pt.alpha = alpha;
  if (alpha < fe.domain_lo() - 1e-12 || alpha > fe.domain_hi() + 1e-12) {
    pt.rate = kInf;
    pt.outside_domain = true;
    return pt;
  }
  const auto& s = fe.samples();
  std::size_t best = 0;
  double best_val = -kInf;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = s[i].beta * alpha - s[i].value;
    if (v > best_val + kTie || (std::abs(v - best_val) <= kTie && std::abs(s[i].beta) < std::abs(s[best].beta))) {
      best = i;
      best_val = std::max(v, best_val);
    }
  }
  double beta = s[best].beta;
  double value = best_val;
  const double lo = s[best > 0 ? best - 1 : 0].beta;
  const double hi = s[best + 1 < s.size() ? best + 1 : best].beta;
  if (hi > lo) {
    std::uintmax_t iters = 200;
    const auto [b, neg] = boost::math::tools::brent_find_minima(
        [&](double x) { return -(x * alpha - fe(x)); }, lo, hi, 40, iters);
    if (-neg > value + kTie) {
      beta = b;
      value = -neg;
    }
  }
  pt.beta_star = beta;
  pt.rate = std::max(value, 0.0);
  const double span = fe.beta_max() - fe.beta_min();
  pt.at_boundary = std::abs(beta - fe.beta_min()) < 1e-6 * span || std::abs(beta - fe.beta_max()) < 1e-6 * span;
  return pt;
}

RateCurve rate_legendre(const FreeEnergy& fe, const std::vector<double>& alpha_grid) {
  RateCurve curve;
  curve.domain_lo = fe.domain_lo();
  curve.domain_hi = fe.domain_hi();
  curve.points.reserve(alpha_grid.size());
  for (double a : alpha_grid) curve.points.push_back(rate_at(fe, a));
  return curve;
}

CurveProperties curve_properties(const RateCurve& curve, double mean, double tol) {
  CurveProperties p;
  std::vector<RatePoint> pts;
  for (const auto& q : curve.points)
    if (std::isfinite(q.rate)) pts.push_back(q);
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) { return a.alpha < b.alpha; });
  p.min_rate = kInf;
  for (const auto& q : pts) p.min_rate = std::min(p.min_rate, q.rate);
  for (std::size_t i = 2; i < pts.size(); ++i) {
    const double left = (pts[i - 1].rate - pts[i - 2].rate) / (pts[i - 1].alpha - pts[i - 2].alpha);
    const double right = (pts[i].rate - pts[i - 1].rate) / (pts[i].alpha - pts[i - 1].alpha);
    p.worst_secant_drop = std::max(p.worst_secant_drop, left - right);
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = pts[i].rate - pts[i - 1].rate;
    if (pts[i].alpha <= mean && d > tol) ++p.monotonicity_breaks;
    if (pts[i - 1].alpha >= mean && d < -tol) ++p.monotonicity_breaks;
  }
  return p;
}

double legendre_back(const RateCurve& curve, double beta) {
  double best = -kInf;
  for (const auto& q : curve.points)
    if (std::isfinite(q.rate)) best = std::max(best, beta * q.alpha - q.rate);
  return best;
}

}  // namespace cms
