#include "cms/symbolic_sums.hpp"

#include <cmath>

#include "cms/error.hpp"

namespace cms {

namespace {

using Table = std::vector<std::vector<double>>;  // [class][symbol]

double lse(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

std::size_t class_of(std::size_t c, std::size_t classes) { return c < classes ? c : classes - 1; }

// Runs the chain over n symbols. `start` restricts the first symbol.
Table run(const SymbolicChain& chain, std::size_t n, std::optional<Symbol> start, const SymbolicMarking& marking,
          std::size_t classes) {
  const std::size_t m = chain.initial.size();
  Table v(classes, std::vector<double>(m, kNegInf));
  for (Symbol i = 0; i < m; ++i) {
    if (start && *start != i) continue;
    const std::size_t c = class_of(marking.marked == i ? 1 : 0, classes);
    v[c][i] = chain.initial[i];
  }
  for (std::size_t pos = 1; pos < n; ++pos) {
    Table next(classes, std::vector<double>(m, kNegInf));
    for (std::size_t c = 0; c < classes; ++c) {
      for (Symbol i = 0; i < m; ++i) {
        if (v[c][i] == kNegInf) continue;
        for (Symbol j = 0; j < m; ++j) {
          const double w = chain.step[i][j];
          if (w == kNegInf) continue;
          const std::size_t cc = class_of(c + (marking.marked == j ? 1 : 0), classes);
          next[cc][j] = lse(next[cc][j], v[c][i] + w);
        }
      }
    }
    v = std::move(next);
  }
  return v;
}

}  // namespace

SymbolicChain symbolwise_chain(const ShiftSpec& spec, const std::vector<double>& phi) {
  const std::size_t m = spec.alphabet_size();
  if (phi.size() != m) throw Error(ErrorCode::InvalidPotential, "one value per symbol required");
  SymbolicChain chain;
  chain.initial = phi;
  chain.step.assign(m, std::vector<double>(m, kNegInf));
  for (Symbol i = 0; i < m; ++i)
    for (Symbol j = 0; j < m; ++j)
      if (spec.allowed(i, j)) chain.step[i][j] = phi[j];
  return chain;
}

std::vector<double> symbolic_marked_log_sums(const SymbolicChain& chain, std::size_t n, SymbolicClosure closure,
                                             Symbol anchor, const SymbolicMarking& marking,
                                             std::optional<Symbol> start) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "word length must be >= 1");
  const std::size_t m = chain.initial.size();
  if (chain.step.size() != m) throw Error(ErrorCode::InvalidModel, "chain tables disagree in size");
  const std::size_t classes = marking.marked ? marking.cap + 1 : 1;
  std::vector<double> out(classes, kNegInf);
  auto closes = [&](Symbol last, Symbol first) { return chain.step[last][first] != kNegInf; };

  if (closure == SymbolicClosure::Periodic) {
    for (Symbol a = 0; a < m; ++a) {
      if (start && *start != a) continue;
      const Table v = run(chain, n, a, marking, classes);
      for (std::size_t c = 0; c < classes; ++c)
        for (Symbol i = 0; i < m; ++i)
          if (closes(i, a)) out[c] = lse(out[c], v[c][i]);
    }
    return out;
  }
  if (closure == SymbolicClosure::Preimage && anchor >= m)
    throw Error(ErrorCode::InadmissibleAnchor, "anchor symbol outside the alphabet");
  const Table v = run(chain, n, start, marking, classes);
  for (std::size_t c = 0; c < classes; ++c)
    for (Symbol i = 0; i < m; ++i)
      if (closure == SymbolicClosure::Open || closes(i, anchor)) out[c] = lse(out[c], v[c][i]);
  return out;
}

}  // namespace cms
