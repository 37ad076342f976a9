#ifndef CMS_GAUSS_TRANSFER_HPP
#define CMS_GAUSS_TRANSFER_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "cms/chebyshev.hpp"
#include "cms/potential.hpp"

namespace cms {

/// Right end of the collocation interval [0, 3/2]. Every branch 1/(a+t) maps
/// it strictly inside itself, which [0, 1] is not (branch 1 sends 0 to 1).
inline constexpr double kGaussGridHi = 1.5;

/// How digits beyond the truncation M enter the operator.
enum class TailMode {
  /// Only digits 1..M: the operator of the truncated system.
  Truncated,
  /// Digits > M folded in by an Euler-Maclaurin correction, and bounded in
  /// the bracket by Σ_{a>M} (a+t)^-2 ∈ [1/(M+1+t), 1/(M+t)].
  Bounded,
};

/// Collocation matrix of (Lf)(t) = Σ_{a=1..M} w_a (a+t)^-e f(1/(a+t)) on the
/// grid; weights[a-1] = w_a. With TailMode::Bounded, digits > M carry weight 1.
Eigen::MatrixXd gauss_operator_matrix(const ChebyshevGrid& grid, const std::vector<double>& weights,
                                      TailMode tail, int exponent = 2);

/// Collocation matrix of the single branch a (weight 1).
Eigen::MatrixXd gauss_branch_matrix(const ChebyshevGrid& grid, std::size_t digit, int exponent = 2);

/// Branch weights exp(tilt) for digits 1..M of a Gauss-family potential.
/// Throws InvalidPotential for potentials outside the family, or when the
/// tail is bounded but the tilt does not vanish beyond M.
std::vector<double> gauss_branch_weights(const Potential& pot, std::size_t digits, TailMode tail);

struct TransferOptions {
  std::size_t grid_size = 64;
  std::size_t iterations = 40;
  TailMode tail = TailMode::Bounded;
  /// Points per unit interval for the Collatz-Wielandt bracket.
  std::size_t check_points = 257;
};

struct TransferResult {
  double value = 0.0;  // log of the dominant eigenvalue of the collocation matrix
  double lo = 0.0;
  double hi = 0.0;
  Eigen::VectorXd eigenvector;  // nodal values, normalized to max 1
  double last_step_change = 0.0;
};

/// Log spectral radius of the weighted Gauss operator by power iteration, with
/// a bracket from min/max of (Lf)/f over a dense grid. Throws
/// DivergedInterpolation when the iterate loses positivity or the ratio keeps
/// oscillating.
TransferResult gauss_transfer_pressure(const Potential& pot, std::size_t digits, const TransferOptions& options);

/// Ensembles of weighted digit words of length n:
///   Lebesgue     Leb of the union of the cylinders, ∫_0^1 (L^n 1)(t) dt
///   Periodic     Σ over T^n x = x of |DT^n(x)|^-1, from the trace formula
///                tr L^n - (-1)^n tr L_4^n with L_4 the operator with (a+t)^-4
///   Preimage     Σ over T^n x = y of |DT^n(x)|^-1, i.e. (L^n 1)(y)
///   GaussMeasure Gauss measure of the union, ∫_0^1 (L^n ρ)(t) dt
enum class GaussEnsemble { Lebesgue, Periodic, Preimage, GaussMeasure };

struct MarkedSumOptions {
  std::size_t grid_size = 64;
  TailMode tail = TailMode::Truncated;
  /// y for the preimage ensemble.
  double anchor = 0.0;
  /// Digit whose occurrences are counted; 0 counts nothing.
  std::size_t marked_digit = 0;
  /// Counts >= cap share the last class.
  std::size_t cap = 0;
};

/// Weighted sums split by the number of marked digits: entry c holds words
/// with exactly c marks (c < cap) and the last entry words with >= cap.
/// lo/hi are the per-word extremes over the cylinder for the Lebesgue
/// ensemble, (L^n 1)(1) and (L^n 1)(0); other ensembles have lo = hi = value.
struct MarkedSums {
  std::vector<double> value;
  std::vector<double> lo;
  std::vector<double> hi;
};

MarkedSums gauss_marked_sums(GaussEnsemble ensemble, const std::vector<double>& weights, std::size_t n,
                             const MarkedSumOptions& options);

}  // namespace cms

#endif  // CMS_GAUSS_TRANSFER_HPP
