#ifndef CMS_GIBBS_HPP
#define CMS_GIBBS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cms/potential.hpp"
#include "cms/shift.hpp"

namespace cms {

/// Reference measure with exact cylinder masses, restricted for enumeration to
/// the symbols of its shift. Immutable; constants are attached by copy.
class GibbsModel {
 public:
  enum class Kind { BernoulliProduct, GaussMeasure, MarkovChain };

  /// Product of m on symbols 0..M-1 (M = weights.size()); 1 - Σm is mass
  /// beyond the truncation.
  static GibbsModel bernoulli(std::vector<double> weights);
  /// m[k] = 2^-(k+1) truncated to `symbols` symbols.
  static GibbsModel geometric(std::size_t symbols);
  /// Gauss measure, digits 1..M enumerated (symbol s is digit s+1).
  static GibbsModel gauss(std::size_t truncation);
  /// Stationary Markov chain; `stochastic` rows sum to 1. The stationary
  /// vector is computed when not supplied.
  static GibbsModel markov(std::vector<std::vector<double>> stochastic,
                           std::optional<std::vector<double>> stationary = std::nullopt);

  Kind kind() const noexcept { return kind_; }
  const ShiftSpec& shift() const noexcept { return shift_; }
  std::size_t alphabet_size() const noexcept { return shift_.alphabet_size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<std::vector<double>>& stochastic() const noexcept { return stochastic_; }

  double pressure() const noexcept { return pressure_; }
  std::optional<double> c0() const noexcept { return c0_; }
  GibbsModel with_constants(double pressure, double c0) const;

  double cylinder_measure(std::span<const Symbol> word) const;
  double log_cylinder_measure(std::span<const Symbol> word) const;
  /// μ[i].
  double symbol_mass(Symbol i) const;
  /// Σ_{k>i} μ[k] over the untruncated alphabet.
  double tail(std::size_t i) const;

 private:
  GibbsModel(Kind kind, ShiftSpec shift) : kind_(kind), shift_(std::move(shift)) {}

  Kind kind_;
  ShiftSpec shift_;
  std::vector<double> weights_;  // product weights, or stationary vector
  std::vector<double> log_weights_;
  std::vector<std::vector<double>> stochastic_;
  std::vector<double> suffix_;  // suffix_[i] = Σ_{k>=i} weights_[k] plus deficit
  double pressure_ = 0.0;
  std::optional<double> c0_;
};

struct GibbsEstimate {
  double c0 = 1.0;
  /// log c0 certified using words of length <= n, for n = 1..n_max.
  std::vector<double> log_c0_by_depth;
  Word witness;
  /// log c0 still growing linearly: P is probably wrong.
  bool nonconvergent = false;
};

/// Smallest c0 for which c0^-1 <= μ[w] / exp(-Pn + S_nφ(x)) <= c0 on every
/// word of length <= n_max and x in [w], with S_nφ taken from birkhoff_bounds.
GibbsEstimate estimate_gibbs_constant(const GibbsModel& model, const Potential& pot, double pressure,
                                      std::size_t n_max, std::uint64_t budget = kDefaultWordBudget);

struct DistortionReport {
  double c0 = 1.0;
  std::size_t depth = 0;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  /// Largest |log r| - 3 log c0 over pairs, clamped at 0.
  double max_violation = 0.0;
  std::size_t violations = 0;
  std::size_t pairs = 0;
  std::pair<Word, Word> attained_pair;
};

/// Checks c0^-3 <= μ[vw] / (μ[v]μ[w]) <= c0^3 for all admissible vw with
/// |v| + |w| <= depth. Requires the model's c0.
DistortionReport check_distortion(const GibbsModel& model, std::size_t depth,
                                  std::uint64_t budget = kDefaultWordBudget);

struct MixingReport {
  /// min over tested (a, b, n) of μ([a] ∩ σ^-n[b]) / (μ[a]μ[b]) from the
  /// enumerated words, and the same with the unenumerated mass added.
  double min_ratio = 0.0;
  double min_ratio_hi = 0.0;
  Symbol a = 0;
  Symbol b = 0;
  std::size_t n = 0;
};

MixingReport check_mixing_constant(const GibbsModel& model, std::size_t n_lo, std::size_t n_hi,
                                   std::span<const std::pair<Symbol, Symbol>> symbol_pairs,
                                   std::uint64_t budget = kDefaultWordBudget);

}  // namespace cms

#endif  // CMS_GIBBS_HPP
