#include "cms/gauss_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cms/error.hpp"

namespace cms {

namespace {

// ∫_0^c u^(e-2) ℓ_j(u) du + ½ c^e ℓ_j(c) with c = 1/(M+1+t): the
// Euler-Maclaurin estimate of Σ_{a>M} (a+t)^-e ℓ_j(1/(a+t)).
Eigen::RowVectorXd tail_row(const ChebyshevGrid& grid, double c, int exponent) {
  const QuadratureRule rule = gauss_legendre(grid.size() / 2 + exponent, 0.0, c);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k)
    row += rule.weights[k] * std::pow(rule.nodes[k], exponent - 2) * grid.basis(rule.nodes[k]);
  row += 0.5 * std::pow(c, exponent) * grid.basis(c);
  return row;
}

}  // namespace

Eigen::MatrixXd gauss_operator_matrix(const ChebyshevGrid& grid, const std::vector<double>& weights,
                                      TailMode tail, int exponent) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const std::size_t m = weights.size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = grid.nodes()[i];
    for (std::size_t a = 1; a <= m; ++a) {
      if (weights[a - 1] == 0.0) continue;
      const double x = static_cast<double>(a) + t;
      out.row(i) += weights[a - 1] * std::pow(x, -exponent) * grid.basis(1.0 / x);
    }
    if (tail == TailMode::Bounded) out.row(i) += tail_row(grid, 1.0 / (static_cast<double>(m) + 1.0 + t), exponent);
  }
  return out;
}

Eigen::MatrixXd gauss_branch_matrix(const ChebyshevGrid& grid, std::size_t digit, int exponent) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = static_cast<double>(digit) + grid.nodes()[i];
    out.row(i) = std::pow(x, -exponent) * grid.basis(1.0 / x);
  }
  return out;
}

std::vector<double> gauss_branch_weights(const Potential& pot, std::size_t digits, TailMode tail) {
  if (!pot.is_gauss_family())
    throw Error(ErrorCode::InvalidPotential, "transfer operator needs the Gauss potential or a depth-1 tilt of it");
  if (tail == TailMode::Bounded && pot.gauss_tilt_support() > digits)
    throw Error(ErrorCode::InvalidPotential,
                "tilt is nonzero beyond digit " + std::to_string(digits) + "; use the truncated tail");
  std::vector<double> w(digits);
  for (std::size_t a = 1; a <= digits; ++a) w[a - 1] = std::exp(pot.gauss_tilt(static_cast<Symbol>(a - 1)));
  return w;
}

TransferResult gauss_transfer_pressure(const Potential& pot, std::size_t digits, const TransferOptions& options) {
  if (digits < 1) throw Error(ErrorCode::InvalidModel, "need at least one digit");
  if (options.grid_size < 8) throw Error(ErrorCode::InvalidModel, "grid size must be >= 8");
  if (options.iterations < 2) throw Error(ErrorCode::InvalidModel, "need at least 2 iterations");
  const ChebyshevGrid grid(options.grid_size, kGaussGridHi);
  const std::vector<double> weights = gauss_branch_weights(pot, digits, options.tail);
  const Eigen::MatrixXd op = gauss_operator_matrix(grid, weights, options.tail);

  Eigen::VectorXd f = Eigen::VectorXd::Ones(op.rows());
  double ratio = 0.0;
  double previous = 0.0;
  for (std::size_t k = 0; k < options.iterations; ++k) {
    Eigen::VectorXd g = op * f;
    const double scale = g.maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw Error(ErrorCode::DivergedInterpolation, "power iterate is not positive");
    previous = ratio;
    ratio = scale;
    f = g / scale;
  }
  TransferResult result;
  result.value = std::log(ratio);
  result.last_step_change = std::abs(std::log(ratio) - std::log(previous));
  if (result.last_step_change > 1e-3)
    throw Error(ErrorCode::DivergedInterpolation,
                "eigenvalue estimate still moving by " + std::to_string(result.last_step_change));
  result.eigenvector = f;

  // Collatz-Wielandt: min and max of (Lf)/f bracket the spectral radius for
  // any positive f. The operator is applied exactly to the interpolant.
  const double mm = static_cast<double>(digits);
  double near_lo = std::numeric_limits<double>::infinity();
  double near_hi = 0.0;
  if (options.tail == TailMode::Bounded) {
    for (int k = 0; k <= 32; ++k) {
      const double v = grid.interpolate(f, k / (32.0 * (mm + 1.0)));
      near_lo = std::min(near_lo, v);
      near_hi = std::max(near_hi, v);
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const std::size_t pts = std::max<std::size_t>(options.check_points, 2);
  for (std::size_t k = 0; k < pts; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(pts - 1);
    const double ft = grid.interpolate(f, t);
    if (!(ft > 0.0)) throw Error(ErrorCode::DivergedInterpolation, "eigenfunction interpolant is not positive");
    double lf = 0.0;
    for (std::size_t a = 1; a <= digits; ++a) {
      const double x = static_cast<double>(a) + t;
      lf += weights[a - 1] * grid.interpolate(f, 1.0 / x) / (x * x);
    }
    double lf_lo = lf;
    double lf_hi = lf;
    if (options.tail == TailMode::Bounded) {
      lf_lo += near_lo / (mm + 1.0 + t);
      lf_hi += near_hi / (mm + t);
    }
    lo = std::min(lo, lf_lo / ft);
    hi = std::max(hi, lf_hi / ft);
  }
  if (!(lo > 0.0) || !std::isfinite(hi))
    throw Error(ErrorCode::DivergedInterpolation, "bracket is degenerate");
  result.lo = std::log(lo);
  result.hi = std::log(hi);
  return result;
}

}  // namespace cms

namespace cms {

namespace {

struct SplitOperator {
  Eigen::MatrixXd rest;    // branches other than the marked digit
  Eigen::MatrixXd marked;  // the marked branch
};

SplitOperator split_operator(const ChebyshevGrid& grid, const std::vector<double>& weights, TailMode tail,
                             std::size_t marked_digit, int exponent) {
  SplitOperator op;
  op.rest = gauss_operator_matrix(grid, weights, tail, exponent);
  if (marked_digit == 0) {
    op.marked = Eigen::MatrixXd::Zero(op.rest.rows(), op.rest.cols());
  } else {
    op.marked = weights[marked_digit - 1] * gauss_branch_matrix(grid, marked_digit, exponent);
    op.rest -= op.marked;
  }
  return op;
}

// One step of the count-marked recursion v_c <- R v_c + K v_{c-1}, with the
// last class absorbing everything at or above the cap.
template <class T>
void marked_step(std::vector<T>& v, const SplitOperator& op) {
  const std::size_t classes = v.size();
  if (classes == 1) {
    v[0] = (op.rest + op.marked) * v[0];
    return;
  }
  const std::size_t top = classes - 1;
  T carry = op.marked * v[top - 1];
  v[top] = (op.rest + op.marked) * v[top] + carry;
  for (std::size_t c = top; c-- > 0;) {
    T next = op.rest * v[c];
    if (c > 0) next += op.marked * v[c - 1];
    v[c] = std::move(next);
  }
}

}  // namespace

MarkedSums gauss_marked_sums(GaussEnsemble ensemble, const std::vector<double>& weights, std::size_t n,
                             const MarkedSumOptions& options) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "word length must be >= 1");
  if (weights.empty()) throw Error(ErrorCode::InvalidModel, "need at least one digit");
  if (options.grid_size < 8) throw Error(ErrorCode::InvalidModel, "grid size must be >= 8");
  if (options.marked_digit > weights.size())
    throw Error(ErrorCode::InvalidModel, "marked digit lies beyond the truncation");
  const std::size_t classes = options.marked_digit == 0 ? 1 : options.cap + 1;
  const ChebyshevGrid grid(options.grid_size, kGaussGridHi);
  const auto g = static_cast<Eigen::Index>(grid.size());
  MarkedSums out;
  out.value.resize(classes);
  out.lo.resize(classes);
  out.hi.resize(classes);

  if (ensemble == GaussEnsemble::Periodic) {
    const SplitOperator op2 = split_operator(grid, weights, options.tail, options.marked_digit, 2);
    const SplitOperator op4 = split_operator(grid, weights, options.tail, options.marked_digit, 4);
    std::vector<Eigen::MatrixXd> m2(classes, Eigen::MatrixXd::Zero(g, g));
    std::vector<Eigen::MatrixXd> m4(classes, Eigen::MatrixXd::Zero(g, g));
    m2[0].setIdentity();
    m4[0].setIdentity();
    for (std::size_t step = 0; step < n; ++step) {
      marked_step(m2, op2);
      marked_step(m4, op4);
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t c = 0; c < classes; ++c) {
      out.value[c] = m2[c].trace() - sign * m4[c].trace();
      out.lo[c] = out.hi[c] = out.value[c];
    }
    return out;
  }

  const SplitOperator op = split_operator(grid, weights, options.tail, options.marked_digit, 2);
  std::vector<Eigen::VectorXd> v(classes, Eigen::VectorXd::Zero(g));
  if (ensemble == GaussEnsemble::GaussMeasure) {
    v[0] = (1.0 / ((1.0 + grid.nodes().array()) * std::numbers::ln2)).matrix();
  } else {
    v[0].setOnes();
  }
  for (std::size_t step = 0; step < n; ++step) marked_step(v, op);
  for (std::size_t c = 0; c < classes; ++c) {
    switch (ensemble) {
      case GaussEnsemble::Lebesgue:
        out.value[c] = grid.weights().dot(v[c]);
        // nodes run from t = 0 to t = 1
        out.lo[c] = v[c][g - 1];
        out.hi[c] = v[c][0];
        break;
      case GaussEnsemble::Preimage:
        out.value[c] = out.lo[c] = out.hi[c] = grid.interpolate(v[c], options.anchor);
        break;
      default:
        out.value[c] = out.lo[c] = out.hi[c] = grid.weights().dot(v[c]);
        break;
    }
  }
  return out;
}

}  // namespace cms
