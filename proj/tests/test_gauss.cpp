#include <doctest.h>

#include "cms/error.hpp"
#include "cms/gauss.hpp"
#include "cms/montecarlo.hpp"
#include "oracles.hpp"

using namespace cms;

TEST_CASE("continuants") {
  const Digits d{1, 1};
  const Continuants c = continuants(d);
  CHECK(c.q == 2);
  CHECK(c.q_prev == 1);
  CHECK(c.p == 1);
  const Digits e{2, 3, 4};
  const Continuants f = continuants(e);
  // [0;2,3,4] = 13/30
  CHECK(f.p == 13);
  CHECK(f.q == 30);
  CHECK_THROWS_AS(continuants(Digits{1, 0}), Error);
}

TEST_CASE("cylinders") {
  const CylinderInterval c = cylinder_interval(Digits{1, 1});
  CHECK(c.lo == Rational(1, 2));
  CHECK(c.hi == Rational(2, 3));
  CHECK(c.length == Rational(1, 6));
  const Digits d{3, 1, 4, 1, 5};
  const CylinderInterval e = cylinder_interval(d);
  const long double a = oracle::cf_value(d, 0), b = oracle::cf_value(d, 1);
  CHECK(to_double(std::min(e.lo, e.hi)) == doctest::Approx(static_cast<double>(std::min(a, b))));
  CHECK(to_double(std::max(e.lo, e.hi)) == doctest::Approx(static_cast<double>(std::max(a, b))));
  CHECK(e.length == abs(e.hi - e.lo));
}

TEST_CASE("expansion of rationals terminates") {
  const Expansion e = cf_expand(Rational(113, 355), 10);
  CHECK(e.status == ExpansionStatus::Terminated);
  CHECK(e.digits == oracle::euclid_digits(113, 355));
  const Expansion f = cf_expand(Rational(113, 355), 2);
  CHECK(f.status == ExpansionStatus::Complete);
  CHECK(f.digits.size() == 2);
}

TEST_CASE("expansion of a double runs out of precision") {
  const double x = std::sqrt(2.0) - 1;
  const Expansion e = cf_expand(x, 200);
  CHECK(e.status == ExpansionStatus::PrecisionExhausted);
  REQUIRE(e.digits.size() > 15);
  for (std::size_t i = 0; i < 15; ++i) CHECK(e.digits[i] == 2);
  // the double is exactly m / 2^54; its certified digits are a prefix of that expansion
  int ex = 0;
  const double f = std::frexp(x, &ex);
  REQUIRE(ex == -1);
  const auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
  const auto exact = oracle::euclid_digits(m, std::uint64_t{1} << 54);
  REQUIRE(exact.size() >= e.digits.size());
  for (std::size_t i = 0; i < e.digits.size(); ++i) CHECK(e.digits[i] == exact[i]);
}

TEST_CASE("periodic points and preimage weights") {
  const PeriodicPoint p = periodic_point(Digits{1});
  const double g = (std::sqrt(5.0) - 1) / 2;
  CHECK(p.x == doctest::Approx(g));
  CHECK(p.weight == doctest::Approx(std::pow(1 + g, -2)));
  CHECK(p.log_weight == doctest::Approx(std::log(p.weight)));
  const Digits d{2, 5};
  const double y = 0.3;
  // derivative of the inverse branch by finite differences
  auto branch = [&](double t) { return static_cast<double>(oracle::cf_value(d, t)); };
  const double h = 1e-6;
  CHECK(preimage_weight(d, y) == doctest::Approx(std::abs(branch(y + h) - branch(y - h)) / (2 * h)).epsilon(1e-6));
  CHECK(log_preimage_weight(d, y) == doctest::Approx(std::log(preimage_weight(d, y))));
}

TEST_CASE("sampling is seeded and follows the Gauss measure") {
  CHECK(sample_gauss(std::uint64_t{7}, 20) == sample_gauss(std::uint64_t{7}, 20));
  std::size_t ones = 0, total = 0;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    for (Digit a : sample_gauss(trial_seed(99, s), 5)) {
      ones += a == 1;
      ++total;
    }
  }
  const double f = static_cast<double>(ones) / total;
  CHECK(std::abs(f - oracle::gauss_digit_frequency(1)) < 0.02);
}

TEST_CASE("digit frequencies and the Gauss cdf") {
  const DigitStats s = digit_frequency(Digits{1, 2, 1, 1}, 1);
  CHECK(s.count == 3);
  REQUIRE(s.running_means.size() == 4);
  CHECK(s.running_means[1] == doctest::Approx(0.5));
  CHECK(s.running_means[3] == doctest::Approx(0.75));
  CHECK(gauss_cdf(1.0) == doctest::Approx(1.0));
  CHECK(gauss_cdf(0.5) == doctest::Approx(std::log2(1.5)));
}
