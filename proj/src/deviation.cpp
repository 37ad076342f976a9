#include "cms/deviation.hpp"

#include <cmath>
#include <string>

#include "cms/error.hpp"
#include "cms/gauss.hpp"
#include "cms/symbolic_sums.hpp"

namespace cms {

namespace {

// Which count classes make up the constrained set.
struct Threshold {
  bool empty = false;
  bool all = false;
  std::size_t cap = 0;   // classes 0..cap, the last one saturated
  std::size_t bound = 0; // AtLeast: count >= bound; AtMost: count <= bound
};

Threshold threshold(double alpha, Comparison dir, std::size_t n) {
  const double an = alpha * static_cast<double>(n);
  Threshold t;
  if (dir == Comparison::AtLeast) {
    const double c = std::ceil(an - 1e-12);
    if (c > static_cast<double>(n)) {
      t.empty = true;
    } else if (c <= 0.0) {
      t.all = true;
    } else {
      t.bound = static_cast<std::size_t>(c);
      t.cap = t.bound;
    }
  } else {
    const double c = std::floor(an + 1e-12);
    if (c < 0.0) {
      t.empty = true;
    } else if (c >= static_cast<double>(n)) {
      t.all = true;
    } else {
      t.bound = static_cast<std::size_t>(c);
      t.cap = t.bound + 1;
    }
  }
  return t;
}

bool in_set(const Threshold& t, Comparison dir, std::size_t count) {
  if (t.empty) return false;
  if (t.all) return true;
  return dir == Comparison::AtLeast ? count >= t.bound : count <= t.bound;
}

// Sums the classes of a marked split that belong to the constrained set.
template <class Combine>
double select(const Threshold& t, Comparison dir, const std::vector<double>& classes, double zero, Combine combine) {
  if (t.all) {
    double acc = zero;
    for (double c : classes) acc = combine(acc, c);
    return acc;
  }
  if (dir == Comparison::AtLeast) return classes.back();
  double acc = zero;
  for (std::size_t c = 0; c <= t.bound; ++c) acc = combine(acc, classes[c]);
  return acc;
}

double lse(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

Symbol marked_symbol(const DeviationProblem& p) {
  const auto k = p.observable.indicator_symbol();
  if (!k) throw Error(ErrorCode::InvalidPotential, "count marking needs an indicator observable");
  if (*k >= p.spec.alphabet_size()) throw Error(ErrorCode::InvalidModel, "marked symbol lies beyond the truncation");
  return *k;
}

DeviationRate base_record(DeviationEnsemble e, const DeviationProblem& p, double alpha, Comparison dir,
                          std::size_t n) {
  DeviationRate r;
  r.ensemble = e;
  r.alpha = alpha;
  r.direction = dir;
  r.n = n;
  r.truncation = p.spec.alphabet_size();
  return r;
}

void finish(DeviationRate& r, double log_hit, double log_total) {
  const double dn = static_cast<double>(r.n);
  r.log_hit = log_hit;
  r.log_total = log_total;
  r.empty = log_hit == kNegInf;
  r.value = (log_hit - log_total) / dn;
  r.lo = r.hi = r.value;
}

Symbol anchor_symbol(const DeviationProblem& p) {
  if (!p.anchor.prefix.empty()) {
    if (p.anchor.prefix.front() >= p.spec.alphabet_size())
      throw Error(ErrorCode::InadmissibleAnchor, "anchor symbol outside the alphabet");
    return p.anchor.prefix.front();
  }
  if (!p.spec.is_full()) throw Error(ErrorCode::InadmissibleAnchor, "anchor needs at least its first symbol");
  return 0;
}

SymbolicChain model_chain(const DeviationProblem& p) {
  if (!p.model) throw Error(ErrorCode::InvalidModel, "the Gibbs-measure ensemble needs a model");
  const GibbsModel& m = *p.model;
  const std::size_t size = p.spec.alphabet_size();
  if (m.alphabet_size() != size) throw Error(ErrorCode::InvalidModel, "model and shift disagree on the alphabet");
  SymbolicChain chain;
  chain.initial.resize(size);
  chain.step.assign(size, std::vector<double>(size, kNegInf));
  for (Symbol i = 0; i < size; ++i) {
    const Symbol w[1] = {i};
    chain.initial[i] = m.log_cylinder_measure(w);
    for (Symbol j = 0; j < size; ++j) {
      if (!m.shift().allowed(i, j) || !p.spec.allowed(i, j)) continue;
      chain.step[i][j] = m.kind() == GibbsModel::Kind::MarkovChain ? std::log(m.stochastic()[i][j])
                                                                    : std::log(m.weights()[j]);
    }
  }
  return chain;
}

DeviationRate gauss_path(DeviationEnsemble e, const DeviationProblem& p, double alpha, Comparison dir,
                         std::size_t n) {
  if (!p.spec.is_full()) throw Error(ErrorCode::InvalidPotential, "the Gauss potential lives on the full shift");
  DeviationRate r = base_record(e, p, alpha, dir, n);
  const Threshold t = threshold(alpha, dir, n);
  if (t.empty) {
    finish(r, kNegInf, 0.0);
    return r;
  }
  const std::size_t m = p.spec.alphabet_size();
  const double g = static_cast<double>(p.grid_size);
  const double classes = static_cast<double>(t.cap + 1);
  const double ops = e == DeviationEnsemble::Periodic ? 4.0 * static_cast<double>(n) * classes * g * g * g
                                                      : 2.0 * static_cast<double>(n) * classes * g * g;
  if (ops > 1e11) throw Error(ErrorCode::BudgetExceeded, "count-marked operator DP is too large");

  MarkedSumOptions opt;
  opt.grid_size = p.grid_size;
  opt.tail = TailMode::Truncated;
  if (!t.all) {
    opt.marked_digit = static_cast<std::size_t>(marked_symbol(p)) + 1;
    opt.cap = t.cap;
  }
  GaussEnsemble ge = GaussEnsemble::Lebesgue;
  switch (e) {
    case DeviationEnsemble::Lebesgue: ge = GaussEnsemble::Lebesgue; break;
    case DeviationEnsemble::Periodic: ge = GaussEnsemble::Periodic; break;
    case DeviationEnsemble::Preimage:
      ge = GaussEnsemble::Preimage;
      if (!p.anchor.value || !(*p.anchor.value >= 0.0 && *p.anchor.value <= 1.0))
        throw Error(ErrorCode::InadmissibleAnchor, "Gauss preimages need a numeric anchor in [0,1]");
      opt.anchor = *p.anchor.value;
      break;
    case DeviationEnsemble::GibbsMeasure: ge = GaussEnsemble::GaussMeasure; break;
  }
  // the Gibbs-measure ensemble weighs cylinders by the Gauss measure alone
  const std::vector<double> weights = e == DeviationEnsemble::GibbsMeasure
                                          ? std::vector<double>(m, 1.0)
                                          : gauss_branch_weights(p.potential, m, TailMode::Truncated);
  const MarkedSums sums = gauss_marked_sums(ge, weights, n, opt);
  auto plus = [](double a, double b) { return a + b; };
  const double hit = select(t, dir, sums.value, 0.0, plus);
  double total = 0.0;
  for (double v : sums.value) total += v;
  if (!(hit > 0.0) || !(total > 0.0))
    throw Error(ErrorCode::DivergedInterpolation, "constrained sum is below the operator's resolution");
  finish(r, std::log(hit), std::log(total));
  if (e == DeviationEnsemble::Lebesgue) {
    double total_lo = 0.0, total_hi = 0.0;
    for (std::size_t c = 0; c < sums.value.size(); ++c) {
      total_lo += sums.lo[c];
      total_hi += sums.hi[c];
    }
    const double hit_lo = select(t, dir, sums.lo, 0.0, plus);
    const double hit_hi = select(t, dir, sums.hi, 0.0, plus);
    const double dn = static_cast<double>(n);
    r.lo = std::log(hit_lo / total_hi) / dn;
    r.hi = std::log(hit_hi / total_lo) / dn;
  }
  return r;
}

DeviationRate symbolic_path(DeviationEnsemble e, const DeviationProblem& p, double alpha, Comparison dir,
                            std::size_t n) {
  DeviationRate r = base_record(e, p, alpha, dir, n);
  const Threshold t = threshold(alpha, dir, n);
  const std::size_t m = p.spec.alphabet_size();
  const double mm = static_cast<double>(m);
  if (mm * mm * mm * static_cast<double>(n) * static_cast<double>(t.cap + 1) > 1e10)
    throw Error(ErrorCode::BudgetExceeded, "count-marked symbolic DP is too large");
  SymbolicChain chain = e == DeviationEnsemble::GibbsMeasure
                            ? model_chain(p)
                            : symbolwise_chain(p.spec, *p.potential.symbol_values(m));
  SymbolicClosure closure = SymbolicClosure::Open;
  Symbol anchor = 0;
  if (e == DeviationEnsemble::Periodic) closure = SymbolicClosure::Periodic;
  if (e == DeviationEnsemble::Preimage) {
    closure = SymbolicClosure::Preimage;
    anchor = anchor_symbol(p);
  }
  SymbolicMarking marking;
  if (!t.all && !t.empty) {
    marking.marked = marked_symbol(p);
    marking.cap = t.cap;
  }
  const std::vector<double> logs = symbolic_marked_log_sums(chain, n, closure, anchor, marking);
  double log_total = kNegInf;
  for (double v : logs) log_total = lse(log_total, v);
  const double log_hit = t.empty ? kNegInf : select(t, dir, logs, kNegInf, lse);
  finish(r, log_hit, log_total);
  return r;
}

}  // namespace

std::string_view to_string(DeviationEnsemble e) noexcept {
  switch (e) {
    case DeviationEnsemble::Lebesgue: return "lebesgue";
    case DeviationEnsemble::Periodic: return "periodic";
    case DeviationEnsemble::Preimage: return "preimage";
    case DeviationEnsemble::GibbsMeasure: return "gibbs_measure";
  }
  return "?";
}

std::string_view to_string(Comparison c) noexcept { return c == Comparison::AtLeast ? ">=" : "<="; }

DeviationRate deviation_rate_constrained(DeviationEnsemble ensemble, const DeviationProblem& problem, double alpha,
                                         Comparison direction, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "n must be >= 1");
  marked_symbol(problem);
  const bool gauss_model = problem.model && problem.model->kind() == GibbsModel::Kind::GaussMeasure;
  if (problem.potential.is_gauss_family() || (ensemble == DeviationEnsemble::GibbsMeasure && gauss_model))
    return gauss_path(ensemble, problem, alpha, direction, n);
  if (ensemble == DeviationEnsemble::GibbsMeasure || problem.potential.window_depth() == std::optional<std::size_t>{1})
    return symbolic_path(ensemble, problem, alpha, direction, n);
  return deviation_rate_enumerated(ensemble, problem, alpha, direction, n);
}

DeviationRate deviation_rate_enumerated(DeviationEnsemble ensemble, const DeviationProblem& p, double alpha,
                                        Comparison direction, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidModel, "n must be >= 1");
  const Symbol k = marked_symbol(p);
  DeviationRate r = base_record(ensemble, p, alpha, direction, n);
  const Threshold t = threshold(alpha, direction, n);
  WordConstraints c;
  c.periodic_closure = ensemble == DeviationEnsemble::Periodic;
  require_enumerable(p.spec, n, c, p.budget);
  const bool gauss = p.potential.is_gauss_family();
  if (gauss && !p.spec.is_full()) throw Error(ErrorCode::InvalidPotential, "the Gauss potential lives on the full shift");
  if (ensemble == DeviationEnsemble::GibbsMeasure && !p.model)
    throw Error(ErrorCode::InvalidModel, "the Gibbs-measure ensemble needs a model");
  const Symbol y0 = ensemble == DeviationEnsemble::Preimage && !gauss ? anchor_symbol(p) : 0;

  LogSumExp hit, total;
  for_each_word(p.spec, n, c, [&](std::span<const Symbol> w) {
    double lw = 0.0;
    switch (ensemble) {
      case DeviationEnsemble::Lebesgue:
        if (gauss) {
          const Continuants q = continuants(digits_of(w));
          lw = -log_big(q.q) - log_big(q.q + q.q_prev);
          for (Symbol s : w) lw += p.potential.gauss_tilt(s);
        } else {
          lw = birkhoff_bounds(p.spec, p.potential, w, p.budget).hi;
        }
        break;
      case DeviationEnsemble::Periodic:
        lw = periodic_sum(p.spec, p.potential, w);
        break;
      case DeviationEnsemble::Preimage:
        if (!gauss && !p.spec.allowed(w.back(), y0)) return;
        lw = preimage_sum(p.spec, p.potential, w, p.anchor);
        break;
      case DeviationEnsemble::GibbsMeasure:
        lw = p.model->log_cylinder_measure(w);
        break;
    }
    std::size_t count = 0;
    for (Symbol s : w) count += s == k ? 1 : 0;
    total.add(lw);
    if (in_set(t, direction, count)) hit.add(lw);
  });
  finish(r, hit.value(), total.value());
  return r;
}

}  // namespace cms
