#ifndef CMS_SYMBOLIC_SUMS_HPP
#define CMS_SYMBOLIC_SUMS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "cms/shift.hpp"

namespace cms {

/// Words of length n over a finite shift, weighted by a product of per-symbol
/// (or per-transition) factors, split by how often one symbol occurs. All
/// arithmetic is in log space.
struct SymbolicChain {
  /// log weight of the first symbol.
  std::vector<double> initial;
  /// log weight of appending symbol j after i; -inf when not allowed.
  std::vector<std::vector<double>> step;
};

/// Chain for exp(S_nφ) with φ depending on x_0 only: initial = φ, step(i, j) = φ(j).
SymbolicChain symbolwise_chain(const ShiftSpec& spec, const std::vector<double>& phi);

enum class SymbolicClosure {
  /// All words.
  Open,
  /// Words that close up into a cycle (points of period n).
  Periodic,
  /// Words whose last symbol may be followed by the anchor symbol.
  Preimage,
};

struct SymbolicMarking {
  std::optional<Symbol> marked;
  /// Counts >= cap share the last class.
  std::size_t cap = 0;
};

/// Log of the summed weight per count class (size 1 when nothing is marked);
/// `start` keeps only words beginning with that symbol.
std::vector<double> symbolic_marked_log_sums(const SymbolicChain& chain, std::size_t n, SymbolicClosure closure,
                                             Symbol anchor = 0, const SymbolicMarking& marking = {},
                                             std::optional<Symbol> start = std::nullopt);

}  // namespace cms

#endif  // CMS_SYMBOLIC_SUMS_HPP
