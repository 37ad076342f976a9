#ifndef CMS_CHEBYSHEV_HPP
#define CMS_CHEBYSHEV_HPP

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace cms {

/// Gauss-Legendre rule on [a, b].
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
QuadratureRule gauss_legendre(std::size_t points, double a = 0.0, double b = 1.0);

/// Chebyshev points of the second kind mapped to [0, hi] (hi >= 1), with
/// barycentric weights for interpolation and exact integrals of the Lagrange
/// basis.
class ChebyshevGrid {
 public:
  explicit ChebyshevGrid(std::size_t size, double hi = 1.0);

  std::size_t size() const noexcept { return static_cast<std::size_t>(nodes_.size()); }
  double hi() const noexcept { return hi_; }
  const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_[static_cast<Eigen::Index>(i)]; }

  /// Row vector of Lagrange basis values ℓ_j(t).
  Eigen::RowVectorXd basis(double t) const;
  /// Interpolant of nodal values evaluated at t.
  double interpolate(const Eigen::VectorXd& values, double t) const;
  /// Row vector of ∫_a^b ℓ_j(u) du.
  Eigen::RowVectorXd basis_integral(double a, double b) const;
  /// ∫_0^1 ℓ_j, i.e. the interpolatory quadrature weights.
  const Eigen::RowVectorXd& weights() const noexcept { return integral_; }

 private:
  Eigen::VectorXd nodes_;
  Eigen::VectorXd bary_;
  Eigen::RowVectorXd integral_;
  double hi_ = 1.0;
};

}  // namespace cms

#endif  // CMS_CHEBYSHEV_HPP
