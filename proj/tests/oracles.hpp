#ifndef CMS_TESTS_ORACLES_HPP
#define CMS_TESTS_ORACLES_HPP

// Brute-force references. Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<int>>;

inline Table golden_mean() { return {{1, 1}, {1, 0}}; }

inline Table full(std::size_t m) { return Table(m, std::vector<int>(m, 1)); }

/// Calls visit on every admissible word of length n, nested loops via an odometer.
inline void words(const Table& t, std::size_t n, const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  const std::size_t m = t.size();
  std::vector<std::uint32_t> w(n, 0);
  if (n == 0) return;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n && ok; ++i) ok = t[w[i]][w[i + 1]] != 0;
    if (ok) visit(w);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < m) break;
      w[i] = 0;
      if (i == 0) return;
    }
  }
}

inline double log_of(long double s) { return s > 0 ? static_cast<double>(std::log(s)) : -INFINITY; }

/// Equal logs, both -inf allowed.
inline bool same_log(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

/// Closure used to filter words: 0 open, 1 periodic, 2 followed by the anchor.
struct Sums {
  std::vector<long double> by_count;  // exact count c at index c
  long double total = 0;
};

inline Sums marked_sums(const Table& t, const std::vector<double>& phi, std::size_t n, int closure,
                        std::uint32_t anchor, std::uint32_t marked) {
  Sums s;
  s.by_count.assign(n + 1, 0);
  words(t, n, [&](const std::vector<std::uint32_t>& w) {
    if (closure == 1 && !t[w.back()][w.front()]) return;
    if (closure == 2 && !t[w.back()][anchor]) return;
    long double e = 0;
    std::size_t c = 0;
    for (auto x : w) {
      e += phi[x];
      c += x == marked;
    }
    const long double v = std::exp(e);
    s.by_count[c] += v;
    s.total += v;
  });
  return s;
}

inline long double fibonacci(int k) {
  long double a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    const long double c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline double golden_log() { return std::log((1 + std::sqrt(5.0)) / 2); }

/// Relative entropy of Bernoulli(α) with respect to Bernoulli(p).
inline double sanov(double alpha, double p) {
  auto term = [](double a, double b) { return a > 0 ? a * std::log(a / b) : 0.0; };
  return term(alpha, p) + term(1 - alpha, 1 - p);
}

/// Gauss frequency of digit k.
inline double gauss_digit_frequency(double k) { return std::log((k + 1) * (k + 1) / (k * (k + 2))) / std::log(2.0); }

/// Continued fraction digits of p/q by Euclid.
inline std::vector<std::uint64_t> euclid_digits(std::uint64_t p, std::uint64_t q) {
  std::vector<std::uint64_t> d;
  while (p != 0) {
    d.push_back(q / p);
    const std::uint64_t r = q % p;
    q = p;
    p = r;
  }
  return d;
}

/// [0; a_1..a_n] evaluated from the back in long double.
inline long double cf_value(const std::vector<std::uint64_t>& a, long double tail = 0) {
  long double x = tail;
  for (std::size_t i = a.size(); i-- > 0;) x = 1 / (static_cast<long double>(a[i]) + x);
  return x;
}

/// Probability of exactly m hits among n independent trials with probability p.
inline std::vector<double> binomial(std::size_t n, double p) {
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t m = 0; m <= n; ++m)
    out[m] = std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0)) * std::pow(p, m) *
             std::pow(1 - p, n - m);
  return out;
}

}  // namespace oracle

#endif
