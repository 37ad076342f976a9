#include "cms/pressure.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "cms/error.hpp"
#include "cms/gauss.hpp"
#include "cms/symbolic_sums.hpp"

namespace cms {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool within_budget(const ShiftSpec& spec, std::size_t n, const WordConstraints& c, std::uint64_t budget) {
  return count_words(spec, n, c) <= BigInt(std::to_string(budget));
}

void require_gauss_shift(const ShiftSpec& spec, const Potential& pot) {
  if (pot.is_gauss_family() && !spec.is_full())
    throw Error(ErrorCode::InvalidPotential, "the Gauss potential lives on the full shift");
}

PressureEstimate banded(double log_sum, double slack, std::size_t n, Ensemble e, std::size_t m) {
  const double dn = static_cast<double>(n);
  PressureEstimate est;
  est.value = log_sum / dn;
  est.lo = est.value - slack / dn;
  est.hi = est.value + slack / dn;
  est.direction = ErrorDirection::TwoSided;
  est.n = n;
  est.ensemble = e;
  est.truncation = m;
  return est;
}

double slack(const ShiftSpec& spec, const Potential& pot, std::size_t n, std::uint64_t budget) {
  if (pot.window_depth() == std::optional<std::size_t>{1}) return 0.0;
  return variation(spec, pot, n, budget);
}

double log_total(const std::vector<double>& parts) {
  double total = 0.0;
  for (double p : parts) total += p;
  if (!(total > 0.0)) throw Error(ErrorCode::DivergedInterpolation, "operator sum is not positive");
  return std::log(total);
}

}  // namespace

std::string_view to_string(Ensemble e) noexcept {
  switch (e) {
    case Ensemble::WordSum: return "word_sum";
    case Ensemble::Periodic: return "periodic";
    case Ensemble::Preimage: return "preimage";
    case Ensemble::TransferOperator: return "transfer";
  }
  return "?";
}

std::string_view to_string(ErrorDirection d) noexcept {
  switch (d) {
    case ErrorDirection::UpperBound: return "upper_bound";
    case ErrorDirection::LowerBound: return "lower_bound";
    case ErrorDirection::TwoSided: return "two_sided";
  }
  return "?";
}

PressureEstimate pressure_word_sum(const ShiftSpec& spec, const Potential& pot, std::size_t n,
                                   std::uint64_t budget) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "n must be >= 1");
  require_gauss_shift(spec, pot);
  const std::size_t m = spec.alphabet_size();
  double log_sum = kNegInf;
  if (pot.window_depth() == std::optional<std::size_t>{1}) {
    const auto phi = pot.symbol_values(m);
    log_sum = symbolic_marked_log_sums(symbolwise_chain(spec, *phi), n, SymbolicClosure::Open)[0];
  } else {
    require_enumerable(spec, n, {}, budget);
    LogSumExp acc;
    for_each_word(spec, n, {}, [&](std::span<const Symbol> w) { acc.add(birkhoff_bounds(spec, pot, w, budget).hi); });
    log_sum = acc.value();
  }
  PressureEstimate est;
  est.value = log_sum / static_cast<double>(n);
  est.lo = -kInf;
  est.hi = est.value;
  est.direction = ErrorDirection::UpperBound;
  est.n = n;
  est.ensemble = Ensemble::WordSum;
  est.truncation = m;
  return est;
}

PressureEstimate pressure_periodic(const ShiftSpec& spec, const Potential& pot, std::size_t n,
                                   std::optional<Symbol> start, std::uint64_t budget) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "n must be >= 1");
  require_gauss_shift(spec, pot);
  const std::size_t m = spec.alphabet_size();
  if (start && *start >= m) throw Error(ErrorCode::InadmissibleWord, "start symbol outside the alphabet");
  WordConstraints c;
  c.periodic_closure = true;
  c.start_symbol = start;
  double log_sum = kNegInf;
  if (pot.window_depth() == std::optional<std::size_t>{1}) {
    const auto phi = pot.symbol_values(m);
    log_sum = symbolic_marked_log_sums(symbolwise_chain(spec, *phi), n, SymbolicClosure::Periodic, 0, {}, start)[0];
  } else if (pot.is_gauss_family() && !start && !within_budget(spec, n, c, budget)) {
    const auto weights = gauss_branch_weights(pot, m, TailMode::Truncated);
    log_sum = log_total(gauss_marked_sums(GaussEnsemble::Periodic, weights, n, {}).value);
  } else {
    require_enumerable(spec, n, c, budget);
    LogSumExp acc;
    for_each_word(spec, n, c, [&](std::span<const Symbol> w) { acc.add(periodic_sum(spec, pot, w)); });
    log_sum = acc.value();
  }
  return banded(log_sum, slack(spec, pot, n, budget), n, Ensemble::Periodic, m);
}

PressureEstimate pressure_preimage(const ShiftSpec& spec, const Potential& pot, std::size_t n, const Anchor& anchor,
                                   std::uint64_t budget) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "n must be >= 1");
  require_gauss_shift(spec, pot);
  const std::size_t m = spec.alphabet_size();
  double log_sum = kNegInf;
  if (pot.window_depth() == std::optional<std::size_t>{1}) {
    Symbol y0 = 0;
    if (!anchor.prefix.empty()) {
      y0 = anchor.prefix.front();
      if (y0 >= m) throw Error(ErrorCode::InadmissibleAnchor, "anchor symbol outside the alphabet");
    } else if (!spec.is_full()) {
      throw Error(ErrorCode::InadmissibleAnchor, "anchor needs at least its first symbol");
    }
    const auto phi = pot.symbol_values(m);
    log_sum = symbolic_marked_log_sums(symbolwise_chain(spec, *phi), n, SymbolicClosure::Preimage, y0)[0];
  } else if (pot.is_gauss_family()) {
    if (!anchor.value || !(*anchor.value >= 0.0 && *anchor.value <= 1.0))
      throw Error(ErrorCode::InadmissibleAnchor, "Gauss preimages need a numeric anchor in [0,1]");
    if (within_budget(spec, n, {}, budget)) {
      LogSumExp acc;
      for_each_word(spec, n, {}, [&](std::span<const Symbol> w) { acc.add(preimage_sum(spec, pot, w, anchor)); });
      log_sum = acc.value();
    } else {
      const auto weights = gauss_branch_weights(pot, m, TailMode::Truncated);
      MarkedSumOptions opt;
      opt.anchor = *anchor.value;
      log_sum = log_total(gauss_marked_sums(GaussEnsemble::Preimage, weights, n, opt).value);
    }
  } else {
    const WordConstraints c;
    require_enumerable(spec, n, c, budget);
    LogSumExp acc;
    for_each_word(spec, n, c, [&](std::span<const Symbol> w) {
      if (!anchor.prefix.empty() && !spec.allowed(w.back(), anchor.prefix.front())) return;
      acc.add(preimage_sum(spec, pot, w, anchor));
    });
    log_sum = acc.value();
  }
  return banded(log_sum, slack(spec, pot, n, budget), n, Ensemble::Preimage, m);
}

PressureEstimate pressure_transfer(const ShiftSpec& spec, const Potential& pot, const TransferOptions& options) {
  const std::size_t m = spec.alphabet_size();
  PressureEstimate est;
  est.direction = ErrorDirection::TwoSided;
  est.ensemble = Ensemble::TransferOperator;
  est.truncation = m;
  est.n = options.iterations;
  if (pot.is_gauss_family()) {
    require_gauss_shift(spec, pot);
    const TransferResult r = gauss_transfer_pressure(pot, m, options);
    est.value = r.value;
    est.lo = r.lo;
    est.hi = r.hi;
    return est;
  }
  const auto depth = pot.window_depth();
  if (!depth) throw Error(ErrorCode::InvalidPotential, "potential has no finite transfer matrix");

  // States: symbols for depth 1, admissible words of length r-1 otherwise.
  std::vector<Word> states;
  if (*depth <= 1) {
    for (Symbol s = 0; s < m; ++s) states.push_back({s});
  } else {
    require_enumerable(spec, *depth - 1, {}, 4096);
    for_each_word(spec, *depth - 1, {}, [&](std::span<const Symbol> w) { states.emplace_back(w.begin(), w.end()); });
  }
  if (states.size() > 4096) throw Error(ErrorCode::BudgetExceeded, "transfer matrix too large");
  std::map<Word, Eigen::Index> index;
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<Eigen::Index>(i);
  const auto k = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Word& u = states[static_cast<std::size_t>(i)];
    for (Symbol x = 0; x < m; ++x) {
      if (!spec.allowed(u.back(), x)) continue;
      Word window = u;
      window.push_back(x);
      const Word next = *depth <= 1 ? Word{x} : Word(window.begin() + 1, window.end());
      w(i, index.at(next)) = std::exp(pot.window_value(window));
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(w);
  Eigen::Index top = 0;
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (ev[i].real() > ev[top].real()) top = i;
  const double rho = ev[top].real();
  if (!(rho > 0.0)) throw Error(ErrorCode::DivergedInterpolation, "transfer matrix has no positive eigenvalue");
  // Right Perron vector; Collatz-Wielandt on rows where it is positive.
  const Eigen::VectorXd f = solver.eigenvectors().col(top).real().cwiseAbs();
  const Eigen::VectorXd wf = w * f;
  double lo = kInf, hi = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(f[i] > 1e-300)) continue;
    lo = std::min(lo, wf[i] / f[i]);
    hi = std::max(hi, wf[i] / f[i]);
  }
  est.value = std::log(rho);
  est.lo = std::min(est.value, std::log(lo));
  est.hi = std::max(est.value, std::log(hi));
  return est;
}

}  // namespace cms
