#include "cms/gauss.hpp"

#include <mpfr.h>

#include <cmath>
#include <limits>

#include "cms/error.hpp"

namespace cms {

Digits digits_of(std::span<const Symbol> word) {
  Digits out;
  out.reserve(word.size());
  for (Symbol s : word) out.push_back(digit_of(s));
  return out;
}

Word symbols_of(std::span<const Digit> digits) {
  Word out;
  out.reserve(digits.size());
  for (Digit d : digits) {
    if (d == 0) throw Error(ErrorCode::InvalidDigits, "continued-fraction digits must be >= 1");
    out.push_back(symbol_of(d));
  }
  return out;
}

void Continuants::push(Digit a) {
  const BigInt digit(static_cast<unsigned long>(a));
  BigInt p_next = digit * p + p_prev;
  BigInt q_next = digit * q + q_prev;
  p_prev = std::move(p);
  q_prev = std::move(q);
  p = std::move(p_next);
  q = std::move(q_next);
}

Continuants continuants(std::span<const Digit> digits) {
  Continuants c;
  for (Digit a : digits) {
    if (a == 0) throw Error(ErrorCode::InvalidDigits, "continued-fraction digits must be >= 1");
    c.push(a);
  }
  return c;
}

CylinderInterval cylinder_interval(std::span<const Digit> digits) {
  const Continuants c = continuants(digits);
  Rational at_zero(c.p, c.q);
  Rational at_one(c.p + c.p_prev, c.q + c.q_prev);
  at_zero.canonicalize();
  at_one.canonicalize();
  Rational length(BigInt(1), c.q * (c.q + c.q_prev));
  length.canonicalize();
  if (at_zero < at_one) return {at_zero, at_one, length};
  return {at_one, at_zero, length};
}

PeriodicPoint periodic_point(std::span<const Digit> digits) {
  if (digits.empty()) throw Error(ErrorCode::InvalidDigits, "periodic word must be nonempty");
  const Continuants c = continuants(digits);
  // q_{n-1} x^2 + b x - p_n = 0 with b = q_n - p_{n-1} > 0, divided through by b.
  const BigInt b = c.q - c.p_prev;
  const double s = ratio_big(c.q_prev, b);
  const double r = ratio_big(c.p, b);
  double x = 2.0 * r / (1.0 + std::sqrt(1.0 + 4.0 * s * r));
  x -= (s * x * x + x - r) / (2.0 * s * x + 1.0);
  const double q_ratio = ratio_big(c.q_prev, c.q);
  const double log_weight = -2.0 * (log_big(c.q) + std::log1p(x * q_ratio));
  return {x, std::exp(log_weight), log_weight};
}

double log_preimage_weight(const Continuants& c, double y) {
  return -2.0 * (log_big(c.q) + std::log1p(y * ratio_big(c.q_prev, c.q)));
}

double log_preimage_weight(std::span<const Digit> digits, double y) {
  return log_preimage_weight(continuants(digits), y);
}

double preimage_weight(std::span<const Digit> digits, double y) {
  return std::exp(log_preimage_weight(digits, y));
}

// ---------------------------------------------------------------------------

namespace {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

}  // namespace

Expansion cf_expand(const Rational& lo_in, const Rational& hi_in, std::size_t n) {
  if (lo_in <= 0 || hi_in >= 1 || lo_in > hi_in)
    throw Error(ErrorCode::InvalidDigits, "expansion interval must satisfy 0 < lo <= hi < 1");
  Rational lo = lo_in;
  Rational hi = hi_in;
  Expansion out;
  const bool exact = lo == hi;
  while (out.digits.size() < n) {
    if (exact) {
      // 1/x = den/num
      const BigInt a = floor_div(lo.get_den(), lo.get_num());
      out.digits.push_back(a.get_ui());
      Rational next(lo.get_den() - a * lo.get_num(), lo.get_num());
      next.canonicalize();
      if (next == 0) {
        out.status = ExpansionStatus::Terminated;
        return out;
      }
      lo = hi = next;
      continue;
    }
    if (lo <= 0) {
      out.status = ExpansionStatus::PrecisionExhausted;
      return out;
    }
    const BigInt a_hi = floor_div(hi.get_den(), hi.get_num());
    const BigInt a_lo = floor_div(lo.get_den(), lo.get_num());
    // Both endpoints must sit in the same open cylinder (1/(a+1), 1/a).
    Rational new_lo(hi.get_den() - a_hi * hi.get_num(), hi.get_num());
    Rational new_hi(lo.get_den() - a_lo * lo.get_num(), lo.get_num());
    new_lo.canonicalize();
    new_hi.canonicalize();
    if (a_hi != a_lo || new_lo == 0) {
      out.status = ExpansionStatus::PrecisionExhausted;
      return out;
    }
    out.digits.push_back(a_hi.get_ui());
    lo = new_lo;
    hi = new_hi;
  }
  return out;
}

Expansion cf_expand(const Rational& x, std::size_t n) { return cf_expand(x, x, n); }

Expansion cf_expand(double x, std::size_t n) {
  if (!(x > 0.0 && x < 1.0))
    throw Error(ErrorCode::InvalidDigits, "x must lie in (0,1)");
  const double half_ulp = (std::nextafter(x, 2.0) - x) / 2.0;
  Rational center(x);
  Rational radius(half_ulp);
  return cf_expand(center - radius, center + radius, n);
}

namespace {

/// RAII holder for an mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t precision) { mpfr_init2(value_, precision); }
  ~MpfrValue() { mpfr_clear(value_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

Rational to_rational(mpfr_ptr v) {
  BigInt mantissa;
  const mpfr_exp_t exponent = mpfr_get_z_2exp(mantissa.get_mpz_t(), v);
  Rational r(mantissa);
  if (exponent >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  return r;
}

// 2^(k / 2^bits) - 1 rounded in the given direction.
Rational exp2_minus_one(const BigInt& k, unsigned bits, mpfr_rnd_t rounding) {
  MpfrValue u(static_cast<mpfr_prec_t>(bits + 8));
  MpfrValue out(static_cast<mpfr_prec_t>(bits + 64));
  mpfr_set_z(u.get(), k.get_mpz_t(), MPFR_RNDN);  // exact: precision covers k
  mpfr_div_2ui(u.get(), u.get(), bits, MPFR_RNDN);
  mpfr_exp2(out.get(), u.get(), rounding);
  mpfr_sub_ui(out.get(), out.get(), 1, rounding);
  return to_rational(out.get());
}

}  // namespace

Digits sample_gauss(Rng& rng, std::size_t n_digits) {
  if (n_digits == 0) return {};
  constexpr unsigned kMaxBits = 1U << 16;
  BigInt k = 0;
  unsigned bits = 0;
  auto draw = [&](unsigned more) {
    for (unsigned i = 0; i < more; i += 64) {
      k <<= 64;
      k += BigInt(static_cast<unsigned long>(rng()));
    }
    bits += more;
  };
  draw(128);
  while (true) {
    // U lies in [k/2^bits, (k+1)/2^bits].
    const Rational lo = exp2_minus_one(k, bits, MPFR_RNDD);
    const Rational hi = exp2_minus_one(k + 1, bits, MPFR_RNDU);
    if (lo > 0 && hi < 1) {
      Expansion e = cf_expand(lo, hi, n_digits);
      if (e.digits.size() == n_digits) return std::move(e.digits);
    }
    if (bits >= kMaxBits)
      throw Error(ErrorCode::PrecisionExhausted, "sample needs more than 65536 random bits");
    draw(bits);
  }
}

Digits sample_gauss(std::uint64_t seed, std::size_t n_digits) {
  Rng rng(seed);
  return sample_gauss(rng, n_digits);
}

DigitStats digit_frequency(std::span<const Digit> digits, Digit k) {
  DigitStats stats;
  stats.digit = k;
  stats.running_means.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == k) ++stats.count;
    stats.running_means.push_back(static_cast<double>(stats.count) / static_cast<double>(i + 1));
  }
  return stats;
}

double gauss_cdf(double x) { return std::log1p(x) / std::log(2.0); }

}  // namespace cms
