#include "cms/chebyshev.hpp"

#include <cmath>
#include <numbers>

#include "cms/error.hpp"

namespace cms {

QuadratureRule gauss_legendre(std::size_t points, double a, double b) {
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix.
  const auto n = static_cast<Eigen::Index>(points);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double beta = kk / std::sqrt(4.0 * kk * kk - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  QuadratureRule rule;
  rule.nodes = (eig.eigenvalues().array() + 1.0) * (0.5 * (b - a)) + a;
  rule.weights = eig.eigenvectors().row(0).transpose().array().square() * (b - a);
  return rule;
}

ChebyshevGrid::ChebyshevGrid(std::size_t size, double hi) : hi_(hi) {
  if (size < 2) throw Error(ErrorCode::InvalidModel, "Chebyshev grid needs at least 2 nodes");
  if (!(hi >= 1.0)) throw Error(ErrorCode::InvalidModel, "Chebyshev grid must cover [0, 1]");
  const auto n = static_cast<Eigen::Index>(size);
  const double degree = static_cast<double>(size - 1);
  nodes_.resize(n);
  bary_.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    nodes_[j] = 0.5 * hi * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / degree));
    bary_[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  bary_[0] *= 0.5;
  bary_[n - 1] *= 0.5;
  integral_ = basis_integral(0.0, 1.0);
}

Eigen::RowVectorXd ChebyshevGrid::basis(double t) const {
  const auto n = nodes_.size();
  Eigen::RowVectorXd out(n);
  double denom = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double d = t - nodes_[j];
    if (d == 0.0) {
      out.setZero();
      out[j] = 1.0;
      return out;
    }
    out[j] = bary_[j] / d;
    denom += out[j];
  }
  return out / denom;
}

double ChebyshevGrid::interpolate(const Eigen::VectorXd& values, double t) const {
  return basis(t).dot(values);
}

Eigen::RowVectorXd ChebyshevGrid::basis_integral(double a, double b) const {
  const QuadratureRule rule = gauss_legendre(size() / 2 + 1, a, b);
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(nodes_.size());
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) out += rule.weights[k] * basis(rule.nodes[k]);
  return out;
}

}  // namespace cms
