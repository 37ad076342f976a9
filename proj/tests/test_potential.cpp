#include <doctest.h>

#include "cms/error.hpp"
#include "cms/gauss.hpp"
#include "cms/potential.hpp"
#include "oracles.hpp"

using namespace cms;

TEST_CASE("Bernoulli potential") {
  const ShiftSpec spec = ShiftSpec::full(2);
  const Potential p = Potential::bernoulli({0.3, 0.7});
  const Word w{0, 1, 1};
  const Bounds b = birkhoff_bounds(spec, p, w);
  CHECK(b.lo == doctest::Approx(std::log(0.3 * 0.7 * 0.7)));
  CHECK(b.hi == doctest::Approx(b.lo));
  CHECK(variation(spec, p, 4) == doctest::Approx(0.0));
  CHECK_THROWS_AS(Potential::bernoulli({0.6, 0.6}), Error);
  CHECK_THROWS_AS(Potential::bernoulli({0.5, 0.0}), Error);
  CHECK_THROWS_AS(birkhoff_bounds(ShiftSpec::from_table({{1, 1}, {1, 0}}), p, Word{1, 1}), Error);
}

TEST_CASE("locally constant potential of depth 2") {
  const ShiftSpec spec = ShiftSpec::full(2);
  LocallyConstantTable t;
  t.depth = 2;
  t.values = {{{0, 0}, 1.0}, {{0, 1}, 2.0}, {{1, 0}, 3.0}, {{1, 1}, 5.0}};
  const Potential p = Potential::locally_constant(t);
  const Word w{0, 1};
  const Bounds b = birkhoff_bounds(spec, p, w);
  // φ(01..) + φ(1x..) over x
  CHECK(b.lo == doctest::Approx(2.0 + 3.0));
  CHECK(b.hi == doctest::Approx(2.0 + 5.0));
  CHECK(periodic_sum(spec, p, w) == doctest::Approx(2.0 + 3.0));
  const Anchor y{{1}, std::nullopt};
  CHECK(preimage_sum(spec, p, w, y) == doctest::Approx(2.0 + 5.0));
  CHECK_THROWS_AS(preimage_sum(spec, p, w, Anchor{}), Error);
  CHECK(variation(spec, p, 1) == doctest::Approx(2.0));
}

TEST_CASE("Gauss potential enclosures") {
  const ShiftSpec spec = ShiftSpec::full(50);
  const Potential g = Potential::gauss_log();
  const Word w = symbols_of(Digits{1, 1});
  const Bounds b = birkhoff_bounds(spec, g, w);
  // -log|(T^2)'| on [1/2, 2/3] is -2 log(q + x q') with q = 2, q' = 1 at the inverse image
  CHECK(b.hi == doctest::Approx(-2 * std::log(2.0)));
  CHECK(b.lo == doctest::Approx(-2 * std::log(3.0)));
  const Word one{0};
  const double g1 = (std::sqrt(5.0) - 1) / 2;
  CHECK(periodic_sum(spec, g, one) == doctest::Approx(2 * std::log(g1)));
  const Anchor y{{}, 0.25};
  CHECK(preimage_sum(spec, g, one, y) == doctest::Approx(-2 * std::log(1.25)));
  CHECK_THROWS_AS(preimage_sum(spec, g, one, Anchor{}), Error);
}

TEST_CASE("Gauss variation closed form") {
  const ShiftSpec spec = ShiftSpec::full(6);
  const Potential g = Potential::gauss_log();
  for (std::size_t n = 1; n <= 4; ++n) {
    double brute = 0;
    oracle::words(oracle::full(6), n, [&](const std::vector<std::uint32_t>& w) {
      const Bounds b = birkhoff_bounds(spec, g, w);
      brute = std::max(brute, b.hi - b.lo);
    });
    CHECK(variation(spec, g, n) == doctest::Approx(brute));
  }
  // not monotone in n, but bounded by the first one
  for (std::size_t m : {1, 2, 100})
    for (std::size_t n = 1; n <= 12; ++n)
      CHECK(variation(ShiftSpec::full(m), g, n) <= 2 * std::log(2.0) + 1e-12);
  CHECK(variation(ShiftSpec::full(1), g, 2) < variation(ShiftSpec::full(1), g, 3));
}

TEST_CASE("tilts") {
  const ShiftSpec spec = ShiftSpec::full(3);
  const Observable psi = Observable::indicator(1);
  const Potential t = tilt(Potential::constant(-1.0), psi, 0.5);
  const auto v = t.symbol_values(3);
  REQUIRE(v);
  CHECK((*v)[0] == doctest::Approx(-1.0));
  CHECK((*v)[1] == doctest::Approx(-0.5));
  const Potential gt = tilt(Potential::gauss_log(), psi, 2.0);
  CHECK(gt.is_gauss_family());
  CHECK(gt.gauss_tilt(1) == doctest::Approx(2.0));
  CHECK(gt.gauss_tilt(0) == doctest::Approx(0.0));
  CHECK(gt.gauss_tilt_support() == 2);
  CHECK_FALSE(gt.window_depth());
  CHECK(psi.birkhoff_bounds(spec, Word{1, 1, 0}).hi == doctest::Approx(2.0));
  CHECK(psi.sup() == 1.0);
  CHECK(psi.inf() == 0.0);
}
