#ifndef CMS_NUMERIC_HPP
#define CMS_NUMERIC_HPP

#include <gmpxx.h>

#include <cmath>
#include <limits>

namespace cms {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Running log(Σ exp(x_i)) without overflow or underflow.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  void merge(const LogSumExp& other) {
    if (other.max_ == kNegInf) return;
    if (max_ == kNegInf) {
      *this = other;
      return;
    }
    if (other.max_ <= max_) {
      sum_ += other.sum_ * std::exp(other.max_ - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
      max_ = other.max_;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }
  bool empty() const { return max_ == kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

/// Natural log of a positive big integer, accurate for values far beyond the
/// double range.
inline double log_big(const BigInt& x) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

/// Ratio a/b of big integers as a double, without intermediate overflow.
inline double ratio_big(const BigInt& a, const BigInt& b) {
  const Rational r(a, b);
  return mpq_get_d(r.get_mpq_t());
}

inline double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

}  // namespace cms

#endif  // CMS_NUMERIC_HPP
