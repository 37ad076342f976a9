#ifndef CMS_SHIFT_HPP
#define CMS_SHIFT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cms/numeric.hpp"

namespace cms {

/// Symbols of a truncated alphabet are 0..M-1.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

/// Marker for the full shift (every transition allowed).
struct FullTransition {};
using TransitionTable = std::vector<std::vector<std::uint8_t>>;
using Transition = std::variant<FullTransition, TransitionTable>;

/// Connecting words of one common length. For every pair of symbols (i, j)
/// some word λ in `connectors` makes iλj admissible. Length 0 means the
/// connector set is empty and every transition is allowed.
struct PrimitivityWitness {
  std::vector<Word> connectors;
  std::size_t length = 0;
};

/// A one-sided topological Markov shift over a finite truncation of the
/// alphabet. Immutable after construction.
class ShiftSpec {
 public:
  /// Full shift on `alphabet_size` symbols; carries the empty witness.
  static ShiftSpec full(std::size_t alphabet_size);

  /// Validates that the table is square with no all-zero row or column.
  static ShiftSpec from_table(TransitionTable table);

  std::size_t alphabet_size() const noexcept { return size_; }
  bool is_full() const noexcept { return full_; }
  bool allowed(Symbol from, Symbol to) const noexcept {
    return full_ || table_[from][to] != 0;
  }
  bool admissible(std::span<const Symbol> word) const noexcept;
  /// Admissible and closes up: the last symbol may be followed by the first.
  bool admissible_cycle(std::span<const Symbol> word) const noexcept;

  /// 0/1 table, materialized for the full shift too.
  TransitionTable table() const;

  const std::optional<PrimitivityWitness>& witness() const noexcept { return witness_; }
  ShiftSpec with_witness(PrimitivityWitness witness) const;

  /// Checks the witness against the definition for every symbol pair.
  bool verify_witness(const PrimitivityWitness& witness) const;

 private:
  ShiftSpec(std::size_t size, bool full, TransitionTable table);

  std::size_t size_ = 0;
  bool full_ = false;
  TransitionTable table_;
  std::optional<PrimitivityWitness> witness_;
};

/// Validated shift, optionally with a primitivity witness found by exhaustive
/// search over connector lengths 0..witness_search_depth. Throws
/// ZeroRowOrColumn for a degenerate table and NoWitnessFound when a search
/// was requested and failed.
ShiftSpec build_shift(std::size_t alphabet_size, const Transition& transition,
                      std::optional<std::size_t> witness_search_depth = std::nullopt);

/// Non-throwing witness search; smallest length first.
std::optional<PrimitivityWitness> find_primitivity_witness(const ShiftSpec& spec,
                                                           std::size_t max_length);

struct WordConstraints {
  std::optional<Symbol> start_symbol;
  std::optional<Symbol> end_symbol;
  /// Keep only words whose last symbol may be followed by the first, i.e. the
  /// words that label points of period n.
  bool periodic_closure = false;
};

/// Lexicographic stream of admissible words of a fixed length.
class WordStream {
 public:
  WordStream(const ShiftSpec& spec, std::size_t length, WordConstraints constraints = {});

  /// Next word, or nullopt once exhausted.
  std::optional<Word> next();

 private:
  bool advance(std::size_t position);

  const ShiftSpec* spec_;
  std::size_t length_;
  WordConstraints constraints_;
  Word current_;
  bool started_ = false;
  bool done_ = false;
};

inline WordStream enumerate_words(const ShiftSpec& spec, std::size_t length,
                                  WordConstraints constraints = {}) {
  return WordStream(spec, length, constraints);
}

/// Depth-first visit of the same words in the same order without allocating
/// per word. The span is only valid during the callback.
void for_each_word(const ShiftSpec& spec, std::size_t length, const WordConstraints& constraints,
                   const std::function<void(std::span<const Symbol>)>& visit);

/// Exact count of the words `enumerate_words` yields, by integer matrix powers.
BigInt count_words(const ShiftSpec& spec, std::size_t length, const WordConstraints& constraints = {});

/// Default cap on the number of words any enumeration-backed routine visits.
inline constexpr std::uint64_t kDefaultWordBudget = 20'000'000;

/// Throws AlphabetTooLargeForEnumeration when more than `budget` words match.
void require_enumerable(const ShiftSpec& spec, std::size_t length,
                        const WordConstraints& constraints, std::uint64_t budget);

}  // namespace cms

#endif  // CMS_SHIFT_HPP
