#include "cms/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cms/error.hpp"
#include "cms/gauss.hpp"

namespace cms {

namespace {

std::string word_text(std::span<const Symbol> w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

void require_admissible(const ShiftSpec& spec, std::span<const Symbol> word) {
  if (word.empty()) throw Error(ErrorCode::InadmissibleWord, "empty word");
  if (!spec.admissible(word))
    throw Error(ErrorCode::InadmissibleWord, "word (" + word_text(word) + ") is not admissible");
}

double sum_windows(const LocallyConstantTable& table, std::span<const Symbol> extended, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += table.at(extended.subspan(i, table.depth));
  return sum;
}

// Min/max of S_n over [word] for a depth-r table, by enumerating the r-1
// symbols that follow the word.
Bounds table_bounds(const ShiftSpec& spec, const LocallyConstantTable& table,
                    std::span<const Symbol> word, std::uint64_t budget) {
  const std::size_t n = word.size();
  const std::size_t extra = table.depth - 1;
  if (extra == 0) {
    const double s = sum_windows(table, word, n);
    return {s, s};
  }
  const double combos = std::pow(static_cast<double>(spec.alphabet_size()), static_cast<double>(extra));
  if (combos > static_cast<double>(budget))
    throw Error(ErrorCode::AlphabetTooLargeForEnumeration,
                "too many continuations for a depth-" + std::to_string(table.depth) + " table");
  Word ext(word.begin(), word.end());
  ext.resize(n + extra);
  Bounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const auto m = static_cast<Symbol>(spec.alphabet_size());
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == ext.size()) {
      const double s = sum_windows(table, ext, n);
      b.lo = std::min(b.lo, s);
      b.hi = std::max(b.hi, s);
      return;
    }
    for (Symbol s = 0; s < m; ++s) {
      if (!spec.allowed(ext[pos - 1], s)) continue;
      ext[pos] = s;
      self(self, pos + 1);
    }
  };
  recurse(recurse, n);
  return b;
}

double table_periodic(const LocallyConstantTable& table, std::span<const Symbol> word) {
  const std::size_t n = word.size();
  Word ext(n + table.depth - 1);
  for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = word[i % n];
  return sum_windows(table, ext, n);
}

double table_preimage(const LocallyConstantTable& table, std::span<const Symbol> word,
                      std::span<const Symbol> prefix) {
  const std::size_t extra = table.depth - 1;
  if (prefix.size() < extra)
    throw Error(ErrorCode::InadmissibleAnchor, "anchor prefix shorter than potential depth - 1");
  Word ext(word.begin(), word.end());
  ext.insert(ext.end(), prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(extra));
  return sum_windows(table, ext, word.size());
}

double table_variation(const ShiftSpec& spec, const LocallyConstantTable& table, std::size_t n,
                       std::uint64_t budget) {
  require_enumerable(spec, n, {}, budget);
  double worst = 0.0;
  for_each_word(spec, n, {}, [&](std::span<const Symbol> w) {
    const Bounds b = table_bounds(spec, table, w, budget);
    worst = std::max(worst, b.hi - b.lo);
  });
  return worst;
}

void validate_table(const LocallyConstantTable& table) {
  if (table.depth == 0) throw Error(ErrorCode::InvalidPotential, "table depth must be >= 1");
  for (const auto& [key, value] : table.values) {
    if (key.size() != table.depth)
      throw Error(ErrorCode::InvalidPotential, "table key (" + word_text(key) + ") has wrong length");
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidPotential, "table values must be finite");
  }
}

}  // namespace

double LocallyConstantTable::at(std::span<const Symbol> window) const {
  auto it = values.find(Word(window.begin(), window.end()));
  if (it == values.end())
    throw Error(ErrorCode::InvalidPotential, "no table value for window (" + word_text(window) + ")");
  return it->second;
}

// ---------------------------------------------------------------------------
// Observable

Observable Observable::indicator(Symbol symbol) { return Observable(Indicator{symbol}); }

Observable Observable::symbol_values(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidPotential, "observable needs at least one value");
  for (double v : values)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidPotential, "observable values must be finite");
  return Observable(SymbolValues{std::move(values)});
}

Observable Observable::locally_constant(LocallyConstantTable table) {
  validate_table(table);
  if (table.values.empty()) throw Error(ErrorCode::InvalidPotential, "observable table is empty");
  return Observable(std::move(table));
}

std::size_t Observable::depth() const noexcept {
  if (const auto* t = std::get_if<LocallyConstantTable>(&kind_)) return t->depth;
  return 1;
}

double Observable::symbol_value(Symbol s) const {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return s == k.symbol ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, SymbolValues>) {
          return s < k.values.size() ? k.values[s] : 0.0;
        } else {
          if (k.depth != 1) throw Error(ErrorCode::InvalidPotential, "observable depends on more than x_0");
          auto it = k.values.find(Word{s});
          return it == k.values.end() ? 0.0 : it->second;
        }
      },
      kind_);
}

std::optional<Symbol> Observable::indicator_symbol() const noexcept {
  if (const auto* i = std::get_if<Indicator>(&kind_)) return i->symbol;
  return std::nullopt;
}

double Observable::sup() const noexcept {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, SymbolValues>) {
          return std::max(0.0, *std::max_element(k.values.begin(), k.values.end()));
        } else {
          double m = -std::numeric_limits<double>::infinity();
          for (const auto& kv : k.values) m = std::max(m, kv.second);
          return m;
        }
      },
      kind_);
}

double Observable::inf() const noexcept {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SymbolValues>) {
          // symbols past the listed values read as 0
          return std::min(0.0, *std::min_element(k.values.begin(), k.values.end()));
        } else {
          double m = std::numeric_limits<double>::infinity();
          for (const auto& kv : k.values) m = std::min(m, kv.second);
          return m;
        }
      },
      kind_);
}

std::size_t Observable::support_size() const {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return std::size_t{k.symbol} + 1;
        } else if constexpr (std::is_same_v<T, SymbolValues>) {
          std::size_t n = k.values.size();
          while (n > 0 && k.values[n - 1] == 0.0) --n;
          return n;
        } else {
          std::size_t n = 0;
          for (const auto& [key, value] : k.values)
            if (value != 0.0) n = std::max<std::size_t>(n, key.front() + 1);
          return n;
        }
      },
      kind_);
}

LocallyConstantTable Observable::as_table() const { return std::get<LocallyConstantTable>(kind_); }

Bounds Observable::birkhoff_bounds(const ShiftSpec& spec, std::span<const Symbol> word,
                                   std::uint64_t budget) const {
  require_admissible(spec, word);
  if (const auto* t = std::get_if<LocallyConstantTable>(&kind_)) return table_bounds(spec, *t, word, budget);
  double s = 0.0;
  for (Symbol x : word) s += symbol_value(x);
  return {s, s};
}

double Observable::periodic_sum(std::span<const Symbol> word) const {
  if (const auto* t = std::get_if<LocallyConstantTable>(&kind_)) return table_periodic(*t, word);
  double s = 0.0;
  for (Symbol x : word) s += symbol_value(x);
  return s;
}

double Observable::preimage_sum(std::span<const Symbol> word, std::span<const Symbol> anchor_prefix) const {
  if (const auto* t = std::get_if<LocallyConstantTable>(&kind_)) return table_preimage(*t, word, anchor_prefix);
  double s = 0.0;
  for (Symbol x : word) s += symbol_value(x);
  return s;
}

double Observable::variation(const ShiftSpec& spec, std::size_t n, std::uint64_t budget) const {
  if (const auto* t = std::get_if<LocallyConstantTable>(&kind_)) return table_variation(spec, *t, n, budget);
  return 0.0;
}

// ---------------------------------------------------------------------------
// Potential

Potential Potential::constant(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidPotential, "constant must be finite");
  return Potential(ConstantKind{value});
}

Potential Potential::bernoulli(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidPotential, "Bernoulli weights are empty");
  double total = 0.0;
  std::vector<double> logs;
  logs.reserve(weights.size());
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidPotential, "Bernoulli weights must be positive");
    total += w;
    logs.push_back(std::log(w));
  }
  if (total > 1.0 + 1e-12) throw Error(ErrorCode::InvalidPotential, "Bernoulli weights sum to more than 1");
  return Potential(BernoulliKind{std::move(logs)});
}

Potential Potential::locally_constant(LocallyConstantTable table) {
  validate_table(table);
  return Potential(std::move(table));
}

Potential Potential::gauss_log() { return Potential(GaussLogKind{}); }

Potential tilt(const Potential& base, const Observable& obs, double beta) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidPotential, "tilt parameter must be finite");
  return Potential(Potential::TiltedKind{std::make_shared<const Potential>(base), obs, beta});
}

Potential::Kind Potential::kind() const noexcept {
  switch (kind_.index()) {
    case 0: return Kind::Constant;
    case 1: return Kind::Bernoulli;
    case 2: return Kind::LocallyConstant;
    case 3: return Kind::GaussLog;
    default: return Kind::Tilted;
  }
}

const Potential* Potential::tilt_base() const noexcept {
  if (const auto* t = std::get_if<TiltedKind>(&kind_)) return t->base.get();
  return nullptr;
}
const Observable* Potential::tilt_observable() const noexcept {
  if (const auto* t = std::get_if<TiltedKind>(&kind_)) return &t->observable;
  return nullptr;
}
double Potential::tilt_beta() const noexcept {
  if (const auto* t = std::get_if<TiltedKind>(&kind_)) return t->beta;
  return 0.0;
}

double Potential::sup_bound() const {
  return std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantKind>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, BernoulliKind>) {
          return *std::max_element(k.log_weights.begin(), k.log_weights.end());
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          double m = -std::numeric_limits<double>::infinity();
          for (const auto& kv : k.values) m = std::max(m, kv.second);
          return m;
        } else if constexpr (std::is_same_v<T, GaussLogKind>) {
          return 0.0;  // sup of 2 log x on (0,1)
        } else {
          const double obs = k.beta >= 0 ? k.observable.sup() : k.observable.inf();
          return k.base->sup_bound() + k.beta * obs;
        }
      },
      kind_);
}

std::optional<std::vector<double>> Potential::symbol_values(std::size_t alphabet_size) const {
  return std::visit(
      [&](const auto& k) -> std::optional<std::vector<double>> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantKind>) {
          return std::vector<double>(alphabet_size, k.value);
        } else if constexpr (std::is_same_v<T, BernoulliKind>) {
          if (alphabet_size > k.log_weights.size())
            throw Error(ErrorCode::InvalidPotential, "alphabet larger than the Bernoulli weight vector");
          return std::vector<double>(k.log_weights.begin(),
                                     k.log_weights.begin() + static_cast<std::ptrdiff_t>(alphabet_size));
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          if (k.depth != 1) return std::nullopt;
          std::vector<double> v(alphabet_size);
          for (Symbol s = 0; s < alphabet_size; ++s) v[s] = k.at(Word{s});
          return v;
        } else if constexpr (std::is_same_v<T, GaussLogKind>) {
          return std::nullopt;
        } else {
          if (k.observable.depth() != 1) return std::nullopt;
          auto v = k.base->symbol_values(alphabet_size);
          if (!v) return std::nullopt;
          for (Symbol s = 0; s < alphabet_size; ++s) (*v)[s] += k.beta * k.observable.symbol_value(s);
          return v;
        }
      },
      kind_);
}

std::optional<std::size_t> Potential::window_depth() const {
  return std::visit(
      [](const auto& k) -> std::optional<std::size_t> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantKind> || std::is_same_v<T, BernoulliKind>) {
          return 1;
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          return k.depth;
        } else if constexpr (std::is_same_v<T, GaussLogKind>) {
          return std::nullopt;
        } else {
          const auto base = k.base->window_depth();
          if (!base) return std::nullopt;
          return std::max(*base, k.observable.depth());
        }
      },
      kind_);
}

double Potential::window_value(std::span<const Symbol> window) const {
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantKind>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, BernoulliKind>) {
          return k.log_weights.at(window[0]);
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          return k.at(window.first(k.depth));
        } else if constexpr (std::is_same_v<T, GaussLogKind>) {
          throw Error(ErrorCode::InvalidPotential, "the Gauss potential is not locally constant");
        } else {
          const std::size_t d = k.observable.depth();
          const double obs = d == 1 ? k.observable.symbol_value(window[0])
                                    : k.observable.preimage_sum(window.first(1), window.subspan(1));
          return k.base->window_value(window) + k.beta * obs;
        }
      },
      kind_);
}

bool Potential::is_gauss_family() const noexcept {
  if (std::holds_alternative<GaussLogKind>(kind_)) return true;
  if (const auto* t = std::get_if<TiltedKind>(&kind_))
    return t->observable.depth() == 1 && t->base->is_gauss_family();
  return false;
}

double Potential::gauss_tilt(Symbol s) const {
  if (const auto* t = std::get_if<TiltedKind>(&kind_))
    return t->base->gauss_tilt(s) + t->beta * t->observable.symbol_value(s);
  return 0.0;
}

std::size_t Potential::gauss_tilt_support() const {
  if (const auto* t = std::get_if<TiltedKind>(&kind_))
    return std::max(t->base->gauss_tilt_support(), t->beta == 0.0 ? 0 : t->observable.support_size());
  return 0;
}

Bounds birkhoff_bounds(const ShiftSpec& spec, const Potential& pot, std::span<const Symbol> word,
                       std::uint64_t budget) {
  require_admissible(spec, word);
  const double n = static_cast<double>(word.size());
  return std::visit(
      [&](const auto& k) -> Bounds {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Potential::ConstantKind>) {
          return {n * k.value, n * k.value};
        } else if constexpr (std::is_same_v<T, Potential::BernoulliKind>) {
          double s = 0.0;
          for (Symbol x : word) {
            if (x >= k.log_weights.size()) throw Error(ErrorCode::InadmissibleWord, "symbol beyond weights");
            s += k.log_weights[x];
          }
          return {s, s};
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          return table_bounds(spec, k, word, budget);
        } else if constexpr (std::is_same_v<T, Potential::GaussLogKind>) {
          const Continuants c = continuants(digits_of(word));
          return {-2.0 * log_big(c.q + c.q_prev), -2.0 * log_big(c.q)};
        } else {
          const Bounds base = birkhoff_bounds(spec, *k.base, word, budget);
          const Bounds obs = k.observable.birkhoff_bounds(spec, word, budget);
          if (k.beta >= 0) return {base.lo + k.beta * obs.lo, base.hi + k.beta * obs.hi};
          return {base.lo + k.beta * obs.hi, base.hi + k.beta * obs.lo};
        }
      },
      pot.kind_);
}

double periodic_sum(const ShiftSpec& spec, const Potential& pot, std::span<const Symbol> word) {
  if (!spec.admissible_cycle(word))
    throw Error(ErrorCode::InadmissibleWord, "word (" + word_text(word) + ") does not close up");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Potential::ConstantKind>) {
          return static_cast<double>(word.size()) * k.value;
        } else if constexpr (std::is_same_v<T, Potential::BernoulliKind>) {
          double s = 0.0;
          for (Symbol x : word) s += k.log_weights.at(x);
          return s;
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          return table_periodic(k, word);
        } else if constexpr (std::is_same_v<T, Potential::GaussLogKind>) {
          return periodic_point(digits_of(word)).log_weight;
        } else {
          return periodic_sum(spec, *k.base, word) + k.beta * k.observable.periodic_sum(word);
        }
      },
      pot.kind_);
}

double preimage_sum(const ShiftSpec& spec, const Potential& pot, std::span<const Symbol> word,
                    const Anchor& anchor) {
  require_admissible(spec, word);
  if (!anchor.prefix.empty()) {
    if (!spec.admissible(anchor.prefix) || !spec.allowed(word.back(), anchor.prefix.front()))
      throw Error(ErrorCode::InadmissibleAnchor, "anchor cannot follow word (" + word_text(word) + ")");
  }
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Potential::ConstantKind>) {
          return static_cast<double>(word.size()) * k.value;
        } else if constexpr (std::is_same_v<T, Potential::BernoulliKind>) {
          double s = 0.0;
          for (Symbol x : word) s += k.log_weights.at(x);
          return s;
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          return table_preimage(k, word, anchor.prefix);
        } else if constexpr (std::is_same_v<T, Potential::GaussLogKind>) {
          if (!anchor.value || !(*anchor.value >= 0.0 && *anchor.value <= 1.0))
            throw Error(ErrorCode::InadmissibleAnchor, "Gauss preimages need a numeric anchor in [0,1]");
          return log_preimage_weight(digits_of(word), *anchor.value);
        } else {
          return preimage_sum(spec, *k.base, word, anchor) +
                 k.beta * k.observable.preimage_sum(word, anchor.prefix);
        }
      },
      pot.kind_);
}

double variation(const ShiftSpec& spec, const Potential& pot, std::size_t n, std::uint64_t budget) {
  if (n == 0) throw Error(ErrorCode::InvalidPotential, "variation needs n >= 1");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Potential::ConstantKind> || std::is_same_v<T, Potential::BernoulliKind>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, LocallyConstantTable>) {
          return table_variation(spec, k, n, budget);
        } else if constexpr (std::is_same_v<T, Potential::GaussLogKind>) {
          // sup of 2 log(1 + q_{n-1}/q_n); q_{n-1}/q_n = [0; a_n, ..., a_1] is
          // largest for the alternating word 1, M, 1, M, ... read backwards.
          const Digit top = static_cast<Digit>(spec.alphabet_size());
          Digits reversed(n);
          for (std::size_t i = 0; i < n; ++i) reversed[i] = (i % 2 == 0) ? 1 : top;
          std::reverse(reversed.begin(), reversed.end());
          const Continuants c = continuants(reversed);
          return 2.0 * std::log1p(ratio_big(c.q_prev, c.q));
        } else {
          return variation(spec, *k.base, n, budget) + std::abs(k.beta) * k.observable.variation(spec, n, budget);
        }
      },
      pot.kind_);
}

}  // namespace cms
