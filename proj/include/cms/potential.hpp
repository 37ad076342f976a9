#ifndef CMS_POTENTIAL_HPP
#define CMS_POTENTIAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cms/shift.hpp"

namespace cms {

/// Enclosure of a Birkhoff sum over a cylinder: lo <= inf S_n, hi >= sup S_n.
struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Values on admissible words of a fixed depth r; the function at x is
/// values[x_0 .. x_{r-1}].
struct LocallyConstantTable {
  std::size_t depth = 1;
  std::map<Word, double> values;

  double at(std::span<const Symbol> window) const;
};

/// Bounded observable used as a level-1 direction.
class Observable {
 public:
  static Observable indicator(Symbol symbol);
  static Observable symbol_values(std::vector<double> values);
  static Observable locally_constant(LocallyConstantTable table);

  std::size_t depth() const noexcept;
  /// Value as a function of the first symbol; only meaningful when depth() == 1.
  double symbol_value(Symbol s) const;
  /// The marked symbol when this is an indicator.
  std::optional<Symbol> indicator_symbol() const noexcept;
  double sup() const noexcept;
  double inf() const noexcept;
  /// One past the largest symbol with a nonzero depth-1 value.
  std::size_t support_size() const;

  Bounds birkhoff_bounds(const ShiftSpec& spec, std::span<const Symbol> word,
                         std::uint64_t budget = kDefaultWordBudget) const;
  /// S_n at the periodic point www...
  double periodic_sum(std::span<const Symbol> word) const;
  /// S_n at the point w y for an anchor y with the given prefix.
  double preimage_sum(std::span<const Symbol> word, std::span<const Symbol> anchor_prefix) const;
  /// Sup over n-cylinders of the spread of S_n.
  double variation(const ShiftSpec& spec, std::size_t n, std::uint64_t budget = kDefaultWordBudget) const;

 private:
  struct Indicator {
    Symbol symbol;
  };
  struct SymbolValues {
    std::vector<double> values;
  };
  std::variant<Indicator, SymbolValues, LocallyConstantTable> kind_;

  explicit Observable(std::variant<Indicator, SymbolValues, LocallyConstantTable> kind)
      : kind_(std::move(kind)) {}
  LocallyConstantTable as_table() const;
};

/// Anchor point y for preimage sums. Only the prefix matters for symbolic
/// potentials; the Gauss potential needs the numeric value of y in [0,1].
struct Anchor {
  Word prefix;
  std::optional<double> value;
};

/// A potential φ evaluated at cylinder resolution. Immutable; tilts share
/// their base.
class Potential {
 public:
  enum class Kind { Constant, Bernoulli, LocallyConstant, GaussLog, Tilted };

  static Potential constant(double value);
  /// φ(x) = log m[x_0]. Weights must be positive with sum <= 1; the deficit is
  /// mass carried by symbols beyond the truncation.
  static Potential bernoulli(std::vector<double> weights);
  static Potential locally_constant(LocallyConstantTable table);
  /// φ = -log|DT∘π| for the Gauss map T on the full shift (symbol s = digit s+1).
  static Potential gauss_log();

  Kind kind() const noexcept;
  double sup_bound() const;

  /// Per-symbol values when φ depends on x_0 only (Constant, Bernoulli, and
  /// tilts of those by depth-1 observables).
  std::optional<std::vector<double>> symbol_values(std::size_t alphabet_size) const;

  /// Length r of the windows φ depends on; nullopt for the Gauss family.
  std::optional<std::size_t> window_depth() const;
  /// φ at any point starting with `window` (length >= window_depth()).
  double window_value(std::span<const Symbol> window) const;

  /// When φ = gauss_log + Σ β_i ψ_i with depth-1 ψ_i: the additive per-symbol
  /// tilt evaluated at symbol s (digit s+1). Symbols beyond any table get 0.
  bool is_gauss_family() const noexcept;
  double gauss_tilt(Symbol s) const;
  /// gauss_tilt vanishes for every symbol >= this.
  std::size_t gauss_tilt_support() const;

  const Potential* tilt_base() const noexcept;
  const Observable* tilt_observable() const noexcept;
  double tilt_beta() const noexcept;

  friend Potential tilt(const Potential& base, const Observable& obs, double beta);

 private:
  struct ConstantKind {
    double value;
  };
  struct BernoulliKind {
    std::vector<double> log_weights;
  };
  struct GaussLogKind {};
  struct TiltedKind {
    std::shared_ptr<const Potential> base;
    Observable observable;
    double beta;
  };
  using Variant = std::variant<ConstantKind, BernoulliKind, LocallyConstantTable, GaussLogKind, TiltedKind>;
  Variant kind_;

  explicit Potential(Variant kind) : kind_(std::move(kind)) {}

  friend Bounds birkhoff_bounds(const ShiftSpec&, const Potential&, std::span<const Symbol>, std::uint64_t);
  friend double periodic_sum(const ShiftSpec&, const Potential&, std::span<const Symbol>);
  friend double preimage_sum(const ShiftSpec&, const Potential&, std::span<const Symbol>, const Anchor&);
  friend double variation(const ShiftSpec&, const Potential&, std::size_t, std::uint64_t);
};

/// φ + β ψ
Potential tilt(const Potential& base, const Observable& obs, double beta);

/// Bounds on S_nφ over the cylinder [word]. Exact (lo = inf, hi = sup) for
/// Constant, Bernoulli, LocallyConstant and GaussLog. Throws InadmissibleWord.
Bounds birkhoff_bounds(const ShiftSpec& spec, const Potential& pot, std::span<const Symbol> word,
                       std::uint64_t budget = kDefaultWordBudget);

/// Exact S_nφ at the periodic point www... (word must close up).
double periodic_sum(const ShiftSpec& spec, const Potential& pot, std::span<const Symbol> word);

/// Exact S_nφ at the preimage w·y. Throws InadmissibleAnchor if the anchor is
/// too short for the potential's depth or cannot follow the word.
double preimage_sum(const ShiftSpec& spec, const Potential& pot, std::span<const Symbol> word,
                    const Anchor& anchor);

/// D_n(φ): sup over n-cylinders of sup S_n - inf S_n. Closed form for the
/// Gauss potential; enumeration otherwise (AlphabetTooLargeForEnumeration).
double variation(const ShiftSpec& spec, const Potential& pot, std::size_t n,
                 std::uint64_t budget = kDefaultWordBudget);

}  // namespace cms

#endif  // CMS_POTENTIAL_HPP
