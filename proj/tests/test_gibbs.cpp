#include <doctest.h>

#include "cms/error.hpp"
#include "cms/gauss.hpp"
#include "cms/gibbs.hpp"
#include "oracles.hpp"

using namespace cms;

TEST_CASE("geometric tails") {
  const GibbsModel m = GibbsModel::geometric(20);
  for (std::size_t i = 0; i < 19; ++i) CHECK(m.tail(i) == doctest::Approx(std::ldexp(1.0, -static_cast<int>(i + 1))));
  CHECK(m.symbol_mass(2) == doctest::Approx(0.125));
  CHECK(m.cylinder_measure(Word{0, 1}) == doctest::Approx(0.125));
}

TEST_CASE("Gauss cylinder masses") {
  const GibbsModel m = GibbsModel::gauss(30);
  auto gauss_mass = [](const Digits& d) {
    const long double a = oracle::cf_value(d, 0), b = oracle::cf_value(d, 1);
    return static_cast<double>(std::abs(std::log2(1 + a) - std::log2(1 + b)));
  };
  for (const Digits& d : {Digits{1}, Digits{2, 3}, Digits{1, 1, 7}, Digits{30, 1, 2, 3}})
    CHECK(m.cylinder_measure(symbols_of(d)) == doctest::Approx(gauss_mass(d)).epsilon(1e-12));
  for (std::size_t i = 0; i < 10; ++i) CHECK(m.tail(i) == doctest::Approx(std::log2(1 + 1.0 / (i + 2))));
}

TEST_CASE("Markov stationary vector") {
  const GibbsModel m = GibbsModel::markov({{0.5, 0.5}, {1.0, 0.0}});
  CHECK(m.weights()[0] == doctest::Approx(2.0 / 3));
  CHECK(m.cylinder_measure(Word{0, 1}) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(m.cylinder_measure(Word{1, 1}), Error);
  CHECK_THROWS_AS(GibbsModel::markov({{0.5, 0.6}, {1.0, 0.0}}), Error);
  CHECK_THROWS_AS(GibbsModel::bernoulli({0.5, 0.6}), Error);
}

TEST_CASE("Gibbs constant of a Bernoulli measure is one") {
  const GibbsModel m = GibbsModel::bernoulli({0.2, 0.3, 0.5});
  const GibbsEstimate e = estimate_gibbs_constant(m, Potential::bernoulli({0.2, 0.3, 0.5}), 0.0, 5);
  CHECK(e.c0 == doctest::Approx(1.0));
  CHECK_FALSE(e.nonconvergent);
}

TEST_CASE("a wrong pressure shows up as growth") {
  const GibbsModel m = GibbsModel::bernoulli({0.5, 0.5});
  const GibbsEstimate e = estimate_gibbs_constant(m, Potential::constant(0.0), 0.0, 8);
  // μ[w] = 2^-n against exp(0): log c0 = n log 2
  CHECK(e.log_c0_by_depth.back() == doctest::Approx(8 * std::log(2.0)));
  CHECK(e.nonconvergent);
  const GibbsEstimate ok = estimate_gibbs_constant(m, Potential::constant(0.0), std::log(2.0), 8);
  CHECK(ok.c0 == doctest::Approx(1.0));
}

TEST_CASE("Gauss distortion and mixing") {
  const GibbsModel m = GibbsModel::gauss(4);
  const GibbsEstimate e = estimate_gibbs_constant(m, Potential::gauss_log(), 0.0, 5);
  CHECK(e.c0 >= 1.0);
  CHECK(e.c0 <= 2.0 / std::log(2.0) + 1e-9);
  const DistortionReport d = check_distortion(m.with_constants(0.0, e.c0), 5);
  CHECK(d.violations == 0);
  CHECK(d.pairs > 0);
  CHECK(d.min_ratio <= d.max_ratio);
  CHECK_THROWS_AS(check_distortion(m, 3), Error);
  const std::vector<std::pair<Symbol, Symbol>> pairs{{0, 0}, {0, 3}};
  const MixingReport mix = check_mixing_constant(m, 1, 3, pairs);
  CHECK(mix.min_ratio > 0.0);
  CHECK(mix.min_ratio <= mix.min_ratio_hi);
}
