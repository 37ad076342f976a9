// Acceptance gate: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cms/deviation.hpp"
#include "cms/error.hpp"
#include "cms/free_energy.hpp"
#include "cms/gibbs.hpp"
#include "cms/pressure.hpp"
#include "cms/rate.hpp"
#include "cms/symbolic_sums.hpp"
#include "cms/tightness.hpp"
#include "../oracles.hpp"

using namespace cms;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// curves from the other criteria, checked together in criterion 10
struct ProducedCurve {
  std::string name;
  FreeEnergy fe;
  RateCurve curve;
};
std::vector<ProducedCurve> produced;

ShiftSpec golden() { return ShiftSpec::from_table({{1, 1}, {1, 0}}); }

TransferOptions gauss_transfer(TailMode tail) {
  TransferOptions o;
  o.grid_size = 64;
  o.iterations = 40;
  o.tail = tail;
  return o;
}

Outcome sanov() {
  PressureRecipe recipe;
  recipe.method = Ensemble::TransferOperator;
  const FreeEnergy fe = free_energy(ShiftSpec::full(2), Potential::bernoulli({0.3, 0.7}), Observable::indicator(0),
                                    linear_grid(-8, 8, 65), recipe);
  const RateCurve c = rate_legendre(fe, linear_grid(0.1, 0.9, 9));
  double worst = 0;
  for (const RatePoint& p : c.points) worst = std::max(worst, std::abs(p.rate - oracle::sanov(p.alpha, 0.3)));
  produced.push_back({"bernoulli 0.3", fe, c});
  return {worst <= 1e-6, fmt("max |I - KL| = %.3g", worst)};
}

Outcome ensembles() {
  const ShiftSpec spec = golden();
  const Potential z = Potential::constant(0.0);
  const double target = oracle::golden_log();
  const double w = pressure_word_sum(spec, z, 20).value;
  const double p = pressure_periodic(spec, z, 20).value;
  const double y = pressure_preimage(spec, z, 20, Anchor{{0}, {}}).value;
  const double worst = std::max({std::abs(w - target), std::abs(p - target), std::abs(y - target)});
  return {worst <= 1e-3, fmt("word %.6f periodic %.6f preimage %.6f target %.6f", w, p, y, target)};
}

Outcome gauss_zero() {
  const PressureEstimate e = pressure_transfer(ShiftSpec::full(100), Potential::gauss_log(),
                                               gauss_transfer(TailMode::Bounded));
  const bool ok = e.lo <= 0.0 && 0.0 <= e.hi && e.hi - e.lo < 0.01;
  return {ok, fmt("value %.3g bracket [%.3g, %.3g]", e.value, e.lo, e.hi)};
}

Outcome digit_means() {
  PressureRecipe recipe;
  recipe.transfer = gauss_transfer(TailMode::Bounded);
  double worst = 0;
  std::string detail;
  for (int k = 1; k <= 3; ++k) {
    const FreeEnergy fe = free_energy(ShiftSpec::full(100), Potential::gauss_log(),
                                      Observable::indicator(static_cast<Symbol>(k - 1)), linear_grid(-1, 1, 5), recipe);
    const double d = fe.derivative_at_zero(1e-3);
    const double want = oracle::gauss_digit_frequency(k);
    worst = std::max(worst, std::abs(d - want));
    detail += fmt("k=%.0f %.7f/%.7f ", k, d, want);
  }
  return {worst <= 1e-4, detail + fmt("max err %.2g", worst)};
}

Outcome three_ensembles() {
  PressureRecipe recipe;
  recipe.transfer = gauss_transfer(TailMode::Bounded);
  const FreeEnergy fe = free_energy(ShiftSpec::full(100), Potential::gauss_log(), Observable::indicator(0),
                                    linear_grid(-4, 12, 33), recipe);
  const RateCurve curve = rate_legendre(fe, linear_grid(0.05, 0.95, 19));
  produced.push_back({"gauss digit 1", fe, curve});
  const double i09 = rate_at(fe, 0.9).rate;

  DeviationProblem p;
  p.spec = ShiftSpec::full(20);
  p.potential = Potential::gauss_log();
  p.observable = Observable::indicator(0);
  p.anchor = Anchor{{}, (std::sqrt(5.0) - 1) / 2};
  p.grid_size = 64;
  std::vector<double> v;
  for (auto e : {DeviationEnsemble::Lebesgue, DeviationEnsemble::Periodic, DeviationEnsemble::Preimage})
    v.push_back(deviation_rate_constrained(e, p, 0.9, Comparison::AtLeast, 24).value);
  double spread = 0, off = 0;
  for (double a : v) {
    for (double b : v) spread = std::max(spread, std::abs(a - b));
    off = std::max(off, std::abs(a + i09));
  }
  return {spread <= 0.02 && off <= 0.05,
          fmt("lebesgue %.4f periodic %.4f preimage %.4f, -I(0.9) = %.4f", v[0], v[1], v[2], -i09) +
              fmt(", spread %.4f, distance %.4f", spread, off)};
}

Outcome endpoint() {
  DeviationProblem p;
  p.spec = ShiftSpec::full(1000);
  p.potential = Potential::gauss_log();
  p.observable = Observable::indicator(0);
  const double target = -2 * oracle::golden_log();
  std::vector<double> v;
  for (std::size_t n : {12, 24, 36})
    v.push_back(deviation_rate_constrained(DeviationEnsemble::Lebesgue, p, 1.0, Comparison::AtLeast, n).value);
  const bool monotone = std::abs(v[0] - target) > std::abs(v[1] - target) &&
                        std::abs(v[1] - target) > std::abs(v[2] - target) && v[0] > v[1] && v[1] > v[2];
  return {monotone && std::abs(v[2] - target) < 0.02,
          fmt("n=12 %.5f n=24 %.5f n=36 %.5f target %.5f", v[0], v[1], v[2], target)};
}

Outcome tightness() {
  const GibbsModel m = GibbsModel::geometric(128);
  double margin = INFINITY;
  bool ok = true;
  for (double theta : {0.2, 0.01})
    for (std::size_t n = 1; n <= 14; ++n) {
      const TightnessSchedule s = build_schedule(m, theta, n);
      ok = ok && schedule_valid(m, s);
      const ExpoBoundReport r = check_expo_bound(visit_distribution(m, s, n), theta, n);
      ok = ok && r.pass;
      margin = std::min(margin, r.margin);
    }
  return {ok, fmt("min margin %.3g over theta in {0.2, 0.01}, n = 1..14", margin)};
}

Outcome distortion() {
  const GibbsModel m = GibbsModel::gauss(5);
  const GibbsEstimate e = estimate_gibbs_constant(m, Potential::gauss_log(), 0.0, 8);
  const DistortionReport d = check_distortion(m.with_constants(0.0, e.c0), 8);
  return {d.violations == 0 && !e.nonconvergent,
          fmt("c0 %.4f, ratios [%.4f, %.4f], %.0f pairs", e.c0, d.min_ratio, d.max_ratio, static_cast<double>(d.pairs)) +
              fmt(", %.0f violations", static_cast<double>(d.violations))};
}

Outcome oracle_equivalence() {
  const ShiftSpec spec = golden();
  double worst = 0;
  std::size_t instances = 0;
  const std::vector<std::vector<double>> phis{{0.0, 0.0}, {std::log(0.6), std::log(0.3)}, {1.7, -2.3}};
  for (const auto& phi : phis) {
    const SymbolicChain chain = symbolwise_chain(spec, phi);
    for (std::size_t n = 1; n <= 12; ++n)
      for (int closure = 0; closure < 3; ++closure)
        for (Symbol anchor : {0u, 1u})
          for (Symbol marked : {0u, 1u}) {
            if (closure != 2 && anchor == 1) continue;
            const oracle::Sums s = oracle::marked_sums(oracle::golden_mean(), phi, n, closure, anchor, marked);
            const auto v = symbolic_marked_log_sums(chain, n, static_cast<SymbolicClosure>(closure), anchor,
                                                    SymbolicMarking{marked, n + 1});
            for (std::size_t c = 0; c <= n; ++c) {
              const double want = oracle::log_of(s.by_count[c]);
              if (std::isinf(want) || std::isinf(v[c])) {
                if (want != v[c]) worst = INFINITY;
              } else {
                worst = std::max(worst, std::abs(v[c] - want));
              }
              ++instances;
            }
          }
  }
  // the deviation rates on top of the DP against word-by-word enumeration
  DeviationProblem p;
  p.spec = spec;
  p.potential = Potential::bernoulli({0.6, 0.3});
  p.model = GibbsModel::markov({{0.5, 0.5}, {1.0, 0.0}});
  for (Symbol marked : {0u, 1u}) {
    p.observable = Observable::indicator(marked);
    for (Symbol anchor : {0u, 1u}) {
      p.anchor = Anchor{{anchor}, {}};
      for (auto e : {DeviationEnsemble::Lebesgue, DeviationEnsemble::Periodic, DeviationEnsemble::Preimage,
                     DeviationEnsemble::GibbsMeasure})
        for (auto dir : {Comparison::AtLeast, Comparison::AtMost})
          for (std::size_t n = 1; n <= 12; ++n)
            for (std::size_t c = 0; c <= n; ++c) {
              const double alpha = static_cast<double>(c) / n;
              const DeviationRate a = deviation_rate_constrained(e, p, alpha, dir, n);
              const DeviationRate b = deviation_rate_enumerated(e, p, alpha, dir, n);
              if (a.empty != b.empty) worst = INFINITY;
              if (!a.empty) {
                worst = std::max(worst, std::abs(a.log_hit - b.log_hit));
                worst = std::max(worst, std::abs(a.log_total - b.log_total));
              }
              ++instances;
            }
    }
  }
  return {worst <= 1e-12, fmt("%.0f instances, max |log difference| %.3g", static_cast<double>(instances), worst)};
}

Outcome curve_properties_all() {
  {
    PressureRecipe recipe;
    const FreeEnergy fe = free_energy(golden(), Potential::constant(0.0), Observable::indicator(1),
                                      linear_grid(-10, 10, 81), recipe);
    produced.push_back({"golden mean", fe, rate_legendre(fe, linear_grid(0.0, 0.5, 26))});
  }
  {
    PressureRecipe recipe;
    recipe.transfer = gauss_transfer(TailMode::Bounded);
    const FreeEnergy fe = free_energy(ShiftSpec::full(100), Potential::gauss_log(), Observable::indicator(1),
                                      linear_grid(-6, 10, 33), recipe);
    produced.push_back({"gauss digit 2", fe, rate_legendre(fe, linear_grid(0.02, 0.8, 27))});
  }
  bool ok = true;
  std::string detail;
  for (const auto& pc : produced) {
    const double mean = pc.fe.derivative_at_zero();
    const CurveProperties props = curve_properties(pc.curve, mean, 1e-8);
    const double at_mean = rate_at(pc.fe, mean).rate;
    const bool good = props.min_rate >= 0.0 && at_mean < 1e-6 && props.worst_secant_drop <= 1e-8;
    ok = ok && good;
    detail += pc.name + fmt(" [min I %.2g, I(mean) %.2g, drop %.2g] ", props.min_rate, at_mean,
                            props.worst_secant_drop);
  }
  return {ok && produced.size() >= 4, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sanov closed form", 1, sanov},
      {2, "pressure ensemble agreement", 10, ensembles},
      {3, "gauss pressure zero", 30, gauss_zero},
      {4, "digit frequency derivative", 120, digit_means},
      {5, "three-ensemble agreement", 300, three_ensembles},
      {6, "endpoint rate", 60, endpoint},
      {7, "exponential tightness", 60, tightness},
      {8, "distortion certification", 120, distortion},
      {9, "oracle equivalence", 60, oracle_equivalence},
      {10, "rate-curve properties", 60, curve_properties_all},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs < c.limit_seconds;
    if (!pass) ++failed;
    std::printf("%s %2d %-28s %8.2fs (limit %4.0fs)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
