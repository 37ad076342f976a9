#include <doctest.h>

#include "cms/chebyshev.hpp"
#include "cms/error.hpp"
#include "cms/gauss.hpp"
#include "cms/pressure.hpp"
#include "cms/symbolic_sums.hpp"
#include "oracles.hpp"

using namespace cms;

namespace {

ShiftSpec golden() { return ShiftSpec::from_table({{1, 1}, {1, 0}}); }

}  // namespace

TEST_CASE("full shift with zero potential") {
  const ShiftSpec spec = ShiftSpec::full(3);
  const Potential z = Potential::constant(0.0);
  CHECK(pressure_word_sum(spec, z, 7).value == doctest::Approx(std::log(3.0)));
  CHECK(pressure_periodic(spec, z, 7).value == doctest::Approx(std::log(3.0)));
  CHECK(pressure_preimage(spec, z, 7, Anchor{{0}, {}}).value == doctest::Approx(std::log(3.0)));
  CHECK(pressure_transfer(spec, z).value == doctest::Approx(std::log(3.0)));
}

TEST_CASE("golden mean ensembles against Fibonacci and Lucas numbers") {
  const ShiftSpec spec = golden();
  const Potential z = Potential::constant(0.0);
  for (int n : {5, 12, 20}) {
    const double words = std::log(static_cast<double>(oracle::fibonacci(n + 2))) / n;
    const double lucas = std::log(static_cast<double>(oracle::fibonacci(n - 1) + oracle::fibonacci(n + 1))) / n;
    const PressureEstimate w = pressure_word_sum(spec, z, n);
    CHECK(w.value == doctest::Approx(words));
    CHECK(w.direction == ErrorDirection::UpperBound);
    CHECK(pressure_periodic(spec, z, n).value == doctest::Approx(lucas));
    // preimages of a point starting with 1 are words ending in 0
    CHECK(pressure_preimage(spec, z, n, Anchor{{1}, {}}).value ==
          doctest::Approx(std::log(static_cast<double>(oracle::fibonacci(n + 1))) / n));
  }
  const PressureEstimate t = pressure_transfer(spec, z);
  CHECK(t.value == doctest::Approx(oracle::golden_log()).epsilon(1e-12));
  CHECK(t.lo <= oracle::golden_log() + 1e-12);
  CHECK(t.hi >= oracle::golden_log() - 1e-12);
}

TEST_CASE("DP and enumeration agree for a weighted potential") {
  const ShiftSpec spec = golden();
  LocallyConstantTable t;
  t.depth = 2;
  t.values = {{{0, 0}, 0.1}, {{0, 1}, -0.4}, {{1, 0}, 0.7}};
  const Potential p = Potential::locally_constant(t);
  const Potential q = Potential::bernoulli({0.2, 0.5});
  const oracle::Sums s = oracle::marked_sums(oracle::golden_mean(), {std::log(0.2), std::log(0.5)}, 9, 0, 0, 0);
  CHECK(pressure_word_sum(spec, q, 9).value == doctest::Approx(oracle::log_of(s.total) / 9));
  // transfer of the depth-2 potential: eigenvalue of [[e^0.1, e^-0.4], [e^0.7, 0]]
  const double a = std::exp(0.1), b = std::exp(-0.4), c = std::exp(0.7);
  const double lambda = (a + std::sqrt(a * a + 4 * b * c)) / 2;
  CHECK(pressure_transfer(spec, p).value == doctest::Approx(std::log(lambda)).epsilon(1e-10));
  CHECK(std::abs(pressure_periodic(spec, p, 16).value - std::log(lambda)) < 0.05);
}

TEST_CASE("marked symbolic sums match brute force") {
  const ShiftSpec spec = golden();
  const std::vector<double> phi{0.3, -0.9};
  const SymbolicChain chain = symbolwise_chain(spec, phi);
  for (std::size_t n = 1; n <= 10; ++n)
    for (int closure = 0; closure < 3; ++closure) {
      const auto cl = static_cast<SymbolicClosure>(closure);
      const oracle::Sums s = oracle::marked_sums(oracle::golden_mean(), phi, n, closure, 1, 1);
      const auto v = symbolic_marked_log_sums(chain, n, cl, 1, SymbolicMarking{1, n + 1});
      REQUIRE(v.size() == n + 2);
      for (std::size_t c = 0; c <= n; ++c) CHECK(oracle::same_log(v[c], oracle::log_of(s.by_count[c]), 1e-12));
      const auto all = symbolic_marked_log_sums(chain, n, cl, 1);
      CHECK(all.size() == 1);
      CHECK(all[0] == doctest::Approx(oracle::log_of(s.total)));
    }
}

TEST_CASE("Chebyshev grid interpolates and integrates") {
  const ChebyshevGrid g(24);
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::exp(g.node(i));
  CHECK(g.interpolate(v, 0.37) == doctest::Approx(std::exp(0.37)).epsilon(1e-13));
  const auto w = g.basis_integral(0.0, 0.5);
  double s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += w[i] * v[i];
  CHECK(s == doctest::Approx(std::exp(0.5) - 1).epsilon(1e-13));
  const QuadratureRule q = gauss_legendre(80, 0.0, 1.0);
  double t = 0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) t += q.weights[i] * std::pow(q.nodes[i], 150);
  CHECK(t == doctest::Approx(1.0 / 151).epsilon(1e-12));
  CHECK_THROWS_AS(ChebyshevGrid(1), Error);
}

TEST_CASE("Gauss transfer pressure") {
  TransferOptions o;
  o.grid_size = 32;
  const TransferResult r = gauss_transfer_pressure(Potential::gauss_log(), 60, o);
  CHECK(r.lo <= 0.0);
  CHECK(r.hi >= 0.0);
  CHECK(std::abs(r.value) < 1e-4);
  o.tail = TailMode::Truncated;
  const TransferResult t = gauss_transfer_pressure(Potential::gauss_log(), 2, o);
  CHECK(t.value < 0.0);
  CHECK(t.lo <= t.value);
  CHECK(t.value <= t.hi);
  // digits {1, 2}: compare with the periodic sums at length 16
  const PressureEstimate p = pressure_periodic(ShiftSpec::full(2), Potential::gauss_log(), 16);
  CHECK(std::abs(p.value - t.value) < 0.01);
  CHECK_THROWS_AS(gauss_transfer_pressure(Potential::constant(0.0), 5, o), Error);
}

TEST_CASE("Gauss periodic sums by trace formula and by enumeration") {
  const ShiftSpec spec = ShiftSpec::full(6);
  const Potential g = Potential::gauss_log();
  for (std::size_t n : {3, 6}) {
    const PressureEstimate dp = pressure_periodic(spec, g, n, std::nullopt, 0);
    LogSumExp s;
    oracle::words(oracle::full(6), n, [&](const std::vector<std::uint32_t>& w) {
      s.add(periodic_point(digits_of(w)).log_weight);
    });
    CHECK(dp.value == doctest::Approx(s.value() / n).epsilon(1e-8));
    CHECK(pressure_periodic(spec, g, n).value == doctest::Approx(s.value() / n).epsilon(1e-12));
  }
}
