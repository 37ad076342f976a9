#include <doctest.h>

#include <set>

#include "cms/error.hpp"
#include "cms/shift.hpp"
#include "oracles.hpp"

using namespace cms;

namespace {

ShiftSpec golden() { return ShiftSpec::from_table({{1, 1}, {1, 0}}); }

}  // namespace

TEST_CASE("golden mean word counts are Fibonacci numbers") {
  const ShiftSpec spec = golden();
  for (int n = 1; n <= 30; ++n) CHECK(count_words(spec, n) == BigInt(static_cast<unsigned long>(oracle::fibonacci(n + 2))));
}

TEST_CASE("stream, visitor and count agree") {
  const ShiftSpec spec = ShiftSpec::from_table({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  for (std::size_t n = 1; n <= 7; ++n)
    for (int mode = 0; mode < 4; ++mode) {
      WordConstraints c;
      if (mode & 1) c.periodic_closure = true;
      if (mode & 2) c.start_symbol = 1;
      std::vector<Word> streamed;
      auto s = enumerate_words(spec, n, c);
      while (auto w = s.next()) streamed.push_back(*w);
      std::vector<Word> visited;
      for_each_word(spec, n, c, [&](std::span<const Symbol> w) { visited.emplace_back(w.begin(), w.end()); });
      CHECK(streamed == visited);
      CHECK(count_words(spec, n, c) == BigInt(static_cast<unsigned long>(streamed.size())));
      std::size_t brute = 0;
      oracle::words({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, n, [&](const std::vector<std::uint32_t>& w) {
        if (c.periodic_closure && !spec.allowed(w.back(), w.front())) return;
        if (c.start_symbol && w.front() != *c.start_symbol) return;
        ++brute;
      });
      CHECK(brute == streamed.size());
    }
}

TEST_CASE("stream is lexicographic and admissible") {
  const ShiftSpec spec = golden();
  auto s = enumerate_words(spec, 6);
  Word prev;
  while (auto w = s.next()) {
    CHECK(spec.admissible(*w));
    if (!prev.empty()) CHECK(prev < *w);
    prev = *w;
  }
}

TEST_CASE("degenerate tables are rejected") {
  CHECK_THROWS_AS(ShiftSpec::from_table({{1, 0}, {1, 0}}), Error);
  try {
    build_shift(2, TransitionTable{{0, 0}, {1, 1}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroRowOrColumn);
  }
  CHECK_THROWS_AS(ShiftSpec::from_table({{1, 1}, {1}}), Error);
}

TEST_CASE("primitivity witnesses") {
  const ShiftSpec spec = golden();
  const auto w = find_primitivity_witness(spec, 3);
  REQUIRE(w);
  CHECK(w->length == 1);
  CHECK(spec.verify_witness(*w));

  const auto full = build_shift(3, FullTransition{}, 2);
  REQUIRE(full.witness());
  CHECK(full.witness()->length == 0);

  const ShiftSpec cycle = ShiftSpec::from_table({{0, 1}, {1, 0}});
  CHECK_FALSE(find_primitivity_witness(cycle, 4));
  try {
    build_shift(2, TransitionTable{{0, 1}, {1, 0}}, 4);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoWitnessFound);
  }
}

TEST_CASE("enumeration budget") {
  const ShiftSpec spec = ShiftSpec::full(10);
  CHECK_NOTHROW(require_enumerable(spec, 3, {}, 1000));
  try {
    require_enumerable(spec, 4, {}, 1000);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphabetTooLargeForEnumeration);
    CHECK(is_resource_error(e.code()));
  }
}

TEST_CASE("log-sum-exp") {
  LogSumExp s;
  CHECK(s.empty());
  s.add(1000.0);
  s.add(1000.0);
  CHECK(s.value() == doctest::Approx(1000.0 + std::log(2.0)));
  LogSumExp t;
  t.add(-1000.0);
  t.merge(s);
  CHECK(t.value() == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_big(BigInt(1) << 5000) == doctest::Approx(5000 * std::log(2.0)));
}
