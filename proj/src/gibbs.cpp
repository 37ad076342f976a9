#include "cms/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "cms/error.hpp"
#include "cms/gauss.hpp"

namespace cms {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// log μ[w] for the Gauss measure: the cylinder is (l, u) with
// (u - l)/(1 + l) = Q / (q (q + q') (Q + P)) for l = P/Q.
double gauss_log_mass(std::span<const Symbol> word) {
  const Continuants c = continuants(digits_of(word));
  const CylinderInterval iv = cylinder_interval(digits_of(word));
  const BigInt& lp = iv.lo.get_num();
  const BigInt& lq = iv.lo.get_den();
  const BigInt den = c.q * (c.q + c.q_prev) * (lq + lp);
  const double lr = log_big(lq) - log_big(den);
  const double log_log1p = lr > -700.0 ? std::log(std::log1p(std::exp(lr))) : lr;
  return log_log1p - std::log(kLn2);
}

std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t budget) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (out > budget / std::max<std::size_t>(base, 1))
      throw Error(ErrorCode::AlphabetTooLargeForEnumeration,
                  std::to_string(base) + "^" + std::to_string(exponent) + " words exceed the budget");
    out *= base;
  }
  return out;
}

}  // namespace

GibbsModel GibbsModel::bernoulli(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidModel, "Bernoulli weights are empty");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidModel, "Bernoulli weights must be positive");
    total += w;
  }
  if (total > 1.0 + 1e-12) throw Error(ErrorCode::InvalidModel, "Bernoulli weights sum to more than 1");
  GibbsModel m(Kind::BernoulliProduct, ShiftSpec::full(weights.size()));
  const double deficit = std::max(0.0, 1.0 - total);
  m.suffix_.assign(weights.size() + 1, deficit);
  for (std::size_t i = weights.size(); i-- > 0;) m.suffix_[i] = m.suffix_[i + 1] + weights[i];
  for (double w : weights) m.log_weights_.push_back(std::log(w));
  m.weights_ = std::move(weights);
  return m;
}

GibbsModel GibbsModel::geometric(std::size_t symbols) {
  std::vector<double> w(symbols);
  for (std::size_t k = 0; k < symbols; ++k) w[k] = std::ldexp(1.0, -static_cast<int>(k + 1));
  GibbsModel m = bernoulli(std::move(w));
  // exact deficit 2^-M, which 1 - Σ loses to rounding
  m.suffix_.back() = std::ldexp(1.0, -static_cast<int>(symbols));
  for (std::size_t i = symbols; i-- > 0;) m.suffix_[i] = m.suffix_[i + 1] + m.weights_[i];
  return m;
}

GibbsModel GibbsModel::gauss(std::size_t truncation) {
  if (truncation < 1) throw Error(ErrorCode::InvalidModel, "Gauss truncation must be >= 1");
  return GibbsModel(Kind::GaussMeasure, ShiftSpec::full(truncation));
}

GibbsModel GibbsModel::markov(std::vector<std::vector<double>> stochastic,
                              std::optional<std::vector<double>> stationary) {
  const std::size_t n = stochastic.size();
  if (n == 0) throw Error(ErrorCode::InvalidModel, "empty stochastic matrix");
  TransitionTable table(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (stochastic[i].size() != n) throw Error(ErrorCode::InvalidModel, "stochastic matrix is not square");
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = stochastic[i][j];
      if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidModel, "negative transition probability");
      row += p;
      table[i][j] = p > 0.0 ? 1 : 0;
    }
    if (std::abs(row - 1.0) > 1e-12) throw Error(ErrorCode::InvalidModel, "row " + std::to_string(i) + " does not sum to 1");
  }
  GibbsModel m(Kind::MarkovChain, ShiftSpec::from_table(std::move(table)));
  std::vector<double> pi;
  if (stationary) {
    pi = std::move(*stationary);
    if (pi.size() != n) throw Error(ErrorCode::InvalidModel, "stationary vector has the wrong size");
  } else {
    // Solve π(P - I) = 0 with Σπ = 1.
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = stochastic[i][j] - (i == j ? 1.0 : 0.0);
    a.row(static_cast<Eigen::Index>(n - 1)).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    rhs[static_cast<Eigen::Index>(n - 1)] = 1.0;
    const Eigen::VectorXd sol = a.fullPivLu().solve(rhs);
    pi.assign(sol.data(), sol.data() + sol.size());
  }
  double total = 0.0;
  for (double p : pi) {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidModel, "stationary vector must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::InvalidModel, "stationary vector does not sum to 1");
  m.suffix_.assign(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) m.suffix_[i] = m.suffix_[i + 1] + pi[i];
  for (double p : pi) m.log_weights_.push_back(std::log(p));
  m.weights_ = std::move(pi);
  m.stochastic_ = std::move(stochastic);
  return m;
}

GibbsModel GibbsModel::with_constants(double pressure, double c0) const {
  if (!(c0 >= 1.0)) throw Error(ErrorCode::InvalidModel, "Gibbs constant must be >= 1");
  GibbsModel copy = *this;
  copy.pressure_ = pressure;
  copy.c0_ = c0;
  return copy;
}

double GibbsModel::log_cylinder_measure(std::span<const Symbol> word) const {
  if (word.empty() || !shift_.admissible(word))
    throw Error(ErrorCode::InadmissibleWord, "word is not admissible for the model");
  switch (kind_) {
    case Kind::BernoulliProduct: {
      double s = 0.0;
      for (Symbol x : word) s += log_weights_[x];
      return s;
    }
    case Kind::GaussMeasure:
      return gauss_log_mass(word);
    case Kind::MarkovChain: {
      double s = log_weights_[word[0]];
      for (std::size_t i = 1; i < word.size(); ++i) s += std::log(stochastic_[word[i - 1]][word[i]]);
      return s;
    }
  }
  return kNegInf;
}

double GibbsModel::cylinder_measure(std::span<const Symbol> word) const {
  return std::exp(log_cylinder_measure(word));
}

double GibbsModel::symbol_mass(Symbol i) const {
  const Symbol w[1] = {i};
  if (kind_ == Kind::GaussMeasure) {
    const double k = static_cast<double>(i) + 1.0;
    return std::log1p(1.0 / (k * (k + 2.0))) / kLn2;
  }
  return cylinder_measure(w);
}

double GibbsModel::tail(std::size_t i) const {
  if (kind_ == Kind::GaussMeasure) return std::log1p(1.0 / (static_cast<double>(i) + 2.0)) / kLn2;
  if (i + 1 >= suffix_.size()) return suffix_.back();
  return suffix_[i + 1];
}

GibbsEstimate estimate_gibbs_constant(const GibbsModel& model, const Potential& pot, double pressure,
                                      std::size_t n_max, std::uint64_t budget) {
  if (n_max < 1) throw Error(ErrorCode::InvalidModel, "n_max must be >= 1");
  const ShiftSpec& spec = model.shift();
  for (std::size_t n = 1; n <= n_max; ++n) require_enumerable(spec, n, {}, budget);
  GibbsEstimate est;
  double log_c = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double pn = pressure * static_cast<double>(n);
    for_each_word(spec, n, {}, [&](std::span<const Symbol> w) {
      const double lm = model.log_cylinder_measure(w);
      const Bounds b = birkhoff_bounds(spec, pot, w, budget);
      const double c = std::max(lm + pn - b.lo, -pn + b.hi - lm);
      if (c > log_c) {
        log_c = c;
        est.witness.assign(w.begin(), w.end());
      }
    });
    est.log_c0_by_depth.push_back(log_c);
  }
  est.c0 = std::exp(log_c);
  if (n_max >= 3) {
    const std::size_t half = n_max / 2;
    const double slope = (est.log_c0_by_depth[n_max - 1] - est.log_c0_by_depth[half - 1]) /
                         static_cast<double>(n_max - half);
    est.nonconvergent = slope > 0.1;
  }
  return est;
}

DistortionReport check_distortion(const GibbsModel& model, std::size_t depth, std::uint64_t budget) {
  if (!model.c0()) throw Error(ErrorCode::InvalidModel, "distortion check needs the model's c0");
  if (depth < 2) throw Error(ErrorCode::InvalidModel, "distortion depth must be >= 2");
  const ShiftSpec& spec = model.shift();
  const std::size_t m = spec.alphabet_size();
  checked_power(m, depth, budget);

  // log μ of every word of length l, indexed in base m (first symbol most
  // significant); inadmissible words stay at -inf.
  std::vector<std::vector<double>> table(depth + 1);
  std::vector<std::uint64_t> power(depth + 1, 1);
  for (std::size_t l = 1; l <= depth; ++l) power[l] = power[l - 1] * m;
  for (std::size_t l = 1; l + 1 <= depth; ++l) {
    table[l].assign(power[l], kNegInf);
    for_each_word(spec, l, {}, [&](std::span<const Symbol> w) {
      std::uint64_t idx = 0;
      for (Symbol x : w) idx = idx * m + x;
      table[l][idx] = model.log_cylinder_measure(w);
    });
  }

  DistortionReport rep;
  rep.c0 = *model.c0();
  rep.depth = depth;
  const double limit = 3.0 * std::log(rep.c0) + 1e-12;
  double log_min = 0.0, log_max = 0.0;
  Word arg_min, arg_max;
  std::size_t split_min = 0, split_max = 0;
  for (std::size_t l = 2; l <= depth; ++l) {
    for_each_word(spec, l, {}, [&](std::span<const Symbol> u) {
      std::uint64_t idx = 0;
      for (Symbol x : u) idx = idx * m + x;
      const double whole = model.log_cylinder_measure(u);
      for (std::size_t k = 1; k < l; ++k) {
        const double r = whole - table[k][idx / power[l - k]] - table[l - k][idx % power[l - k]];
        ++rep.pairs;
        if (std::abs(r) > limit) {
          ++rep.violations;
          rep.max_violation = std::max(rep.max_violation, std::abs(r) - limit);
        }
        if (r < log_min) {
          log_min = r;
          arg_min.assign(u.begin(), u.end());
          split_min = k;
        }
        if (r > log_max) {
          log_max = r;
          arg_max.assign(u.begin(), u.end());
          split_max = k;
        }
      }
    });
  }
  rep.min_ratio = std::exp(log_min);
  rep.max_ratio = std::exp(log_max);
  const bool use_max = log_max >= -log_min;
  const Word& u = use_max ? arg_max : arg_min;
  const std::size_t k = use_max ? split_max : split_min;
  if (!u.empty()) {
    rep.attained_pair.first.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
    rep.attained_pair.second.assign(u.begin() + static_cast<std::ptrdiff_t>(k), u.end());
  }
  return rep;
}

MixingReport check_mixing_constant(const GibbsModel& model, std::size_t n_lo, std::size_t n_hi,
                                   std::span<const std::pair<Symbol, Symbol>> symbol_pairs,
                                   std::uint64_t budget) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorCode::InvalidModel, "need 1 <= n_lo <= n_hi");
  if (symbol_pairs.empty()) throw Error(ErrorCode::InvalidModel, "no symbol pairs to test");
  const ShiftSpec& spec = model.shift();
  MixingReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.min_ratio_hi = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : symbol_pairs) {
    if (a >= spec.alphabet_size() || b >= spec.alphabet_size())
      throw Error(ErrorCode::InadmissibleWord, "symbol outside the truncation");
    const Symbol wa[1] = {a};
    const Symbol wb[1] = {b};
    const double ma = model.cylinder_measure(wa);
    const double mb = model.cylinder_measure(wb);
    WordConstraints from_a;
    from_a.start_symbol = a;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      require_enumerable(spec, n + 1, from_a, budget);
      double hit = 0.0;
      double enumerated = 0.0;
      for_each_word(spec, n + 1, from_a, [&](std::span<const Symbol> w) {
        const double mu = model.cylinder_measure(w);
        enumerated += mu;
        if (w.back() == b) hit += mu;
      });
      const double missing = std::max(0.0, ma - enumerated);
      const double r = hit / (ma * mb);
      if (r < rep.min_ratio) {
        rep.min_ratio = r;
        rep.a = a;
        rep.b = b;
        rep.n = n;
      }
      rep.min_ratio_hi = std::min(rep.min_ratio_hi, (hit + missing) / (ma * mb));
    }
  }
  return rep;
}

}  // namespace cms
