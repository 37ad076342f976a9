#ifndef CMS_GAUSS_HPP
#define CMS_GAUSS_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cms/numeric.hpp"
#include "cms/shift.hpp"

namespace cms {

/// Continued-fraction digits a_1, a_2, ... (all >= 1).
using Digit = std::uint64_t;
using Digits = std::vector<Digit>;

// The Gauss system is modelled by the full shift: symbol s encodes digit s + 1.
inline Digit digit_of(Symbol s) noexcept { return static_cast<Digit>(s) + 1; }
inline Symbol symbol_of(Digit d) noexcept { return static_cast<Symbol>(d - 1); }
Digits digits_of(std::span<const Symbol> word);
Word symbols_of(std::span<const Digit> digits);

/// Convergent numerators and denominators of [0; a_1, ..., a_n]:
/// q_j = a_j q_{j-1} + q_{j-2} with q_0 = 1, q_{-1} = 0, and p likewise with
/// p_0 = 0, p_{-1} = 1. For the empty word (n = 0) these are the seeds.
struct Continuants {
  BigInt p_prev{1};
  BigInt p{0};
  BigInt q_prev{0};
  BigInt q{1};

  void push(Digit a);
};

/// Throws InvalidDigits if any digit is zero.
Continuants continuants(std::span<const Digit> digits);

/// Closed digit cylinder in (0,1) with exact rational endpoints.
struct CylinderInterval {
  Rational lo;
  Rational hi;
  /// 1 / (q_n (q_n + q_{n-1}))
  Rational length;
};

CylinderInterval cylinder_interval(std::span<const Digit> digits);

/// The point of period n whose expansion repeats `digits`, and its weight
/// |D(T^n)(x)|^{-1} = (q_n + x q_{n-1})^{-2}.
struct PeriodicPoint {
  double x = 0.0;
  double weight = 0.0;
  double log_weight = 0.0;
};

PeriodicPoint periodic_point(std::span<const Digit> digits);

/// Inverse-branch derivative (q_n + y q_{n-1})^{-2} at the preimage of y
/// labelled by `digits`. Rational or boundary y are accepted.
double preimage_weight(std::span<const Digit> digits, double y);
double log_preimage_weight(std::span<const Digit> digits, double y);
double log_preimage_weight(const Continuants& c, double y);

enum class ExpansionStatus {
  Complete,            // all requested digits produced
  Terminated,          // the input is rational and its expansion ended
  PrecisionExhausted,  // the input is not known precisely enough for more digits
};

struct Expansion {
  Digits digits;
  ExpansionStatus status = ExpansionStatus::Complete;
};

/// Digits shared by every point of [lo, hi] (lo == hi expands the exact
/// rational). Requires 0 < lo <= hi < 1.
Expansion cf_expand(const Rational& lo, const Rational& hi, std::size_t n);
Expansion cf_expand(const Rational& x, std::size_t n);
/// Treats x as known to half an ulp.
Expansion cf_expand(double x, std::size_t n);

/// Generator used for all sampling. Seeded directly from the user seed.
using Rng = std::mt19937_64;

/// Digits of x = 2^U - 1 with U uniform on (0,1), so that x has density
/// 1/((1+x) log 2). U is refined bit by bit until the requested digits are
/// certain; throws PrecisionExhausted past 2^16 bits.
Digits sample_gauss(Rng& rng, std::size_t n_digits);
Digits sample_gauss(std::uint64_t seed, std::size_t n_digits);

struct DigitStats {
  Digit digit = 0;
  std::size_t count = 0;
  /// running_means[i] = F_{k,i+1} / (i+1)
  std::vector<double> running_means;
};

DigitStats digit_frequency(std::span<const Digit> digits, Digit k);

/// Gauss measure of [0, x] = log2(1 + x).
double gauss_cdf(double x);

}  // namespace cms

#endif  // CMS_GAUSS_HPP
