#ifndef CMS_PRESSURE_HPP
#define CMS_PRESSURE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "cms/gauss_transfer.hpp"
#include "cms/potential.hpp"
#include "cms/shift.hpp"

namespace cms {

enum class Ensemble { WordSum, Periodic, Preimage, TransferOperator };
enum class ErrorDirection { UpperBound, LowerBound, TwoSided };

std::string_view to_string(Ensemble e) noexcept;
std::string_view to_string(ErrorDirection d) noexcept;

/// A finite-n pressure value with the side on which the limit lies.
/// UpperBound has lo = -inf, LowerBound has hi = +inf.
struct PressureEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  ErrorDirection direction = ErrorDirection::TwoSided;
  std::size_t n = 0;
  Ensemble ensemble = Ensemble::WordSum;
  std::size_t truncation = 0;
};

/// (1/n) log Σ_{w ∈ E^n} exp(sup_[w] S_nφ). Subadditive in n, hence an upper
/// bound for the pressure of the truncated system.
PressureEstimate pressure_word_sum(const ShiftSpec& spec, const Potential& pot, std::size_t n,
                                   std::uint64_t budget = kDefaultWordBudget);

/// (1/n) log Z_n over the points of period n, optionally only those in [a].
/// The band lo/hi is value ∓ D_n/n.
PressureEstimate pressure_periodic(const ShiftSpec& spec, const Potential& pot, std::size_t n,
                                   std::optional<Symbol> start = std::nullopt,
                                   std::uint64_t budget = kDefaultWordBudget);

/// (1/n) log Σ_{σ^n x = y} exp S_nφ(x). Symbolic potentials read the anchor
/// prefix; the Gauss family reads the numeric anchor value. The band lo/hi is
/// value ∓ D_n/n.
PressureEstimate pressure_preimage(const ShiftSpec& spec, const Potential& pot, std::size_t n, const Anchor& anchor,
                                   std::uint64_t budget = kDefaultWordBudget);

/// Log spectral radius of the transfer operator with a Collatz-Wielandt
/// bracket: the Chebyshev-discretized Gauss operator with M = alphabet size
/// for the Gauss family, the (higher-block) weighted transition matrix for
/// locally constant potentials.
PressureEstimate pressure_transfer(const ShiftSpec& spec, const Potential& pot,
                                   const TransferOptions& options = {});

}  // namespace cms

#endif  // CMS_PRESSURE_HPP
