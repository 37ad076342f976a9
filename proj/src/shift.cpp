#include "cms/shift.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cms/error.hpp"

namespace cms {

ShiftSpec::ShiftSpec(std::size_t size, bool full, TransitionTable table)
    : size_(size), full_(full), table_(std::move(table)) {}

ShiftSpec ShiftSpec::full(std::size_t alphabet_size) {
  if (alphabet_size == 0) throw Error(ErrorCode::InvalidShift, "alphabet size must be positive");
  ShiftSpec spec(alphabet_size, true, {});
  spec.witness_ = PrimitivityWitness{};
  return spec;
}

ShiftSpec ShiftSpec::from_table(TransitionTable table) {
  const std::size_t m = table.size();
  if (m == 0) throw Error(ErrorCode::InvalidShift, "alphabet size must be positive");
  bool all_ones = true;
  for (const auto& row : table) {
    if (row.size() != m) throw Error(ErrorCode::InvalidShift, "transition table must be square");
    for (auto v : row) {
      if (v > 1) throw Error(ErrorCode::InvalidShift, "transition entries must be 0 or 1");
      all_ones = all_ones && v == 1;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    bool row_any = false;
    bool col_any = false;
    for (std::size_t j = 0; j < m; ++j) {
      row_any = row_any || table[i][j];
      col_any = col_any || table[j][i];
    }
    if (!row_any) throw Error(ErrorCode::ZeroRowOrColumn, "row " + std::to_string(i) + " is all zero");
    if (!col_any)
      throw Error(ErrorCode::ZeroRowOrColumn, "column " + std::to_string(i) + " is all zero");
  }
  if (all_ones) return full(m);
  return ShiftSpec(m, false, std::move(table));
}

bool ShiftSpec::admissible(std::span<const Symbol> word) const noexcept {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= size_) return false;
    if (i > 0 && !allowed(word[i - 1], word[i])) return false;
  }
  return true;
}

bool ShiftSpec::admissible_cycle(std::span<const Symbol> word) const noexcept {
  return !word.empty() && admissible(word) && allowed(word.back(), word.front());
}

TransitionTable ShiftSpec::table() const {
  if (!full_) return table_;
  return TransitionTable(size_, std::vector<std::uint8_t>(size_, 1));
}

ShiftSpec ShiftSpec::with_witness(PrimitivityWitness witness) const {
  if (!verify_witness(witness))
    throw Error(ErrorCode::NoWitnessFound, "supplied witness does not connect every symbol pair");
  ShiftSpec copy = *this;
  copy.witness_ = std::move(witness);
  return copy;
}

bool ShiftSpec::verify_witness(const PrimitivityWitness& witness) const {
  if (witness.length == 0) return witness.connectors.empty() && full_;
  for (const auto& lambda : witness.connectors) {
    if (lambda.size() != witness.length || !admissible(lambda)) return false;
  }
  for (Symbol i = 0; i < size_; ++i) {
    for (Symbol j = 0; j < size_; ++j) {
      const bool linked = std::any_of(witness.connectors.begin(), witness.connectors.end(),
                                      [&](const Word& lambda) {
                                        return allowed(i, lambda.front()) && allowed(lambda.back(), j);
                                      });
      if (!linked) return false;
    }
  }
  return true;
}

std::optional<PrimitivityWitness> find_primitivity_witness(const ShiftSpec& spec,
                                                           std::size_t max_length) {
  if (spec.is_full()) return PrimitivityWitness{};
  const auto m = static_cast<Symbol>(spec.alphabet_size());
  for (std::size_t length = 1; length <= max_length; ++length) {
    std::vector<Word> candidates;
    for (auto stream = enumerate_words(spec, length); auto w = stream.next();) candidates.push_back(*w);
    std::set<Word> chosen;
    bool ok = true;
    for (Symbol i = 0; i < m && ok; ++i) {
      for (Symbol j = 0; j < m && ok; ++j) {
        auto it = std::find_if(candidates.begin(), candidates.end(), [&](const Word& lambda) {
          return spec.allowed(i, lambda.front()) && spec.allowed(lambda.back(), j);
        });
        if (it == candidates.end()) {
          ok = false;
        } else {
          chosen.insert(*it);
        }
      }
    }
    if (ok) return PrimitivityWitness{{chosen.begin(), chosen.end()}, length};
  }
  return std::nullopt;
}

ShiftSpec build_shift(std::size_t alphabet_size, const Transition& transition,
                      std::optional<std::size_t> witness_search_depth) {
  ShiftSpec spec = std::holds_alternative<FullTransition>(transition)
                       ? ShiftSpec::full(alphabet_size)
                       : ShiftSpec::from_table(std::get<TransitionTable>(transition));
  if (spec.alphabet_size() != alphabet_size)
    throw Error(ErrorCode::InvalidShift, "transition table size does not match alphabet size");
  if (witness_search_depth && !spec.is_full()) {
    auto witness = find_primitivity_witness(spec, *witness_search_depth);
    if (!witness)
      throw Error(ErrorCode::NoWitnessFound,
                  "no connector set of length <= " + std::to_string(*witness_search_depth));
    spec = spec.with_witness(std::move(*witness));
  }
  return spec;
}

// ---------------------------------------------------------------------------

namespace {

bool fits(const ShiftSpec& spec, const WordConstraints& c, std::span<const Symbol> prefix,
          std::size_t pos, std::size_t length, Symbol s) {
  if (pos == 0) {
    if (c.start_symbol && s != *c.start_symbol) return false;
  } else if (!spec.allowed(prefix[pos - 1], s)) {
    return false;
  }
  if (pos + 1 == length) {
    if (c.end_symbol && s != *c.end_symbol) return false;
    const Symbol first = pos == 0 ? s : prefix[0];
    if (c.periodic_closure && !spec.allowed(s, first)) return false;
  }
  return true;
}

}  // namespace

WordStream::WordStream(const ShiftSpec& spec, std::size_t length, WordConstraints constraints)
    : spec_(&spec), length_(length), constraints_(constraints), current_(length, 0) {
  if (length == 0) throw Error(ErrorCode::InvalidShift, "word length must be at least 1");
}

// Smallest admissible completion with current_[position] >= current_[position]
// as already set by the caller.
bool WordStream::advance(std::size_t position) {
  const auto m = static_cast<Symbol>(spec_->alphabet_size());
  for (Symbol s = current_[position]; s < m; ++s) {
    if (!fits(*spec_, constraints_, current_, position, length_, s)) continue;
    current_[position] = s;
    if (position + 1 == length_) return true;
    current_[position + 1] = 0;
    if (advance(position + 1)) return true;
  }
  return false;
}

std::optional<Word> WordStream::next() {
  if (done_) return std::nullopt;
  bool found = false;
  if (!started_) {
    started_ = true;
    current_.assign(length_, 0);
    found = advance(0);
  } else {
    for (std::size_t pos = length_; pos-- > 0;) {
      if (current_[pos] + 1 >= spec_->alphabet_size()) continue;
      ++current_[pos];
      if (advance(pos)) {
        found = true;
        break;
      }
    }
  }
  if (!found) {
    done_ = true;
    return std::nullopt;
  }
  return current_;
}

void for_each_word(const ShiftSpec& spec, std::size_t length, const WordConstraints& constraints,
                   const std::function<void(std::span<const Symbol>)>& visit) {
  if (length == 0) throw Error(ErrorCode::InvalidShift, "word length must be at least 1");
  Word word(length, 0);
  const auto m = static_cast<Symbol>(spec.alphabet_size());
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    for (Symbol s = 0; s < m; ++s) {
      if (!fits(spec, constraints, word, pos, length, s)) continue;
      word[pos] = s;
      if (pos + 1 == length) {
        visit(word);
      } else {
        self(self, pos + 1);
      }
    }
  };
  recurse(recurse, 0);
}

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t m = a.size();
  BigMatrix c(m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

BigInt count_words(const ShiftSpec& spec, std::size_t length, const WordConstraints& constraints) {
  if (length == 0) throw Error(ErrorCode::InvalidShift, "word length must be at least 1");
  const std::size_t m = spec.alphabet_size();
  const auto table = spec.table();
  BigMatrix base(m, std::vector<BigInt>(m, 0));
  BigMatrix power(m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    power[i][i] = 1;
    for (std::size_t j = 0; j < m; ++j) base[i][j] = table[i][j];
  }
  for (std::size_t e = length - 1; e > 0; e >>= 1) {
    if (e & 1U) power = multiply(power, base);
    if (e > 1) base = multiply(base, base);
  }
  BigInt total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (constraints.start_symbol && i != *constraints.start_symbol) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (constraints.end_symbol && j != *constraints.end_symbol) continue;
      if (constraints.periodic_closure && table[j][i] == 0) continue;
      total += power[i][j];
    }
  }
  return total;
}

void require_enumerable(const ShiftSpec& spec, std::size_t length,
                        const WordConstraints& constraints, std::uint64_t budget) {
  const BigInt count = count_words(spec, length, constraints);
  if (count > BigInt(static_cast<unsigned long>(budget)))
    throw Error(ErrorCode::AlphabetTooLargeForEnumeration,
                count.get_str() + " words of length " + std::to_string(length) +
                    " exceed the budget of " + std::to_string(budget));
}

}  // namespace cms
