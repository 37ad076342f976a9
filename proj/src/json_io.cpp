#include "cms/json_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cms/error.hpp"

namespace cms {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) invalid(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) invalid(std::string("missing \"") + key + "\"");
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  const Json& v = field(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    invalid(std::string("\"") + key + "\" has the wrong type");
  }
}

std::string kind_of(const Json& j) { return get<std::string>(j, "kind"); }

Word parse_key(const std::string& key) {
  Word w;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size()) invalid("bad table key \"" + key + "\"");
      w.push_back(static_cast<Symbol>(v));
    } catch (const std::logic_error&) {
      invalid("bad table key \"" + key + "\"");
    }
  }
  return w;
}

}  // namespace

ShiftSpec shift_from_json(const Json& j) {
  const auto m = get<std::size_t>(j, "alphabet_size");
  const Json& t = field(j, "transition");
  Transition transition = FullTransition{};
  if (t.is_string()) {
    if (t.get<std::string>() != "full") invalid("transition must be \"full\" or a 0/1 table");
  } else {
    try {
      transition = t.get<TransitionTable>();
    } catch (const nlohmann::json::exception&) {
      invalid("transition table must be a list of 0/1 rows");
    }
  }
  std::optional<std::size_t> depth;
  if (j.contains("witness_search_depth")) depth = get<std::size_t>(j, "witness_search_depth");
  return build_shift(m, transition, depth);
}

LocallyConstantTable table_from_json(const Json& j) {
  LocallyConstantTable t;
  t.depth = get<std::size_t>(j, "depth");
  const Json& values = field(j, "values");
  if (!values.is_object()) invalid("\"values\" must map \"s0,s1,...\" keys to numbers");
  for (const auto& [key, v] : values.items()) {
    if (!v.is_number()) invalid("table value for \"" + key + "\" is not a number");
    t.values[parse_key(key)] = v.get<double>();
  }
  return t;
}

Potential potential_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "constant") return Potential::constant(get<double>(j, "value"));
  if (kind == "bernoulli") return Potential::bernoulli(get<std::vector<double>>(j, "weights"));
  if (kind == "gauss_log") return Potential::gauss_log();
  if (kind == "locally_constant") return Potential::locally_constant(table_from_json(j));
  if (kind == "tilted")
    return tilt(potential_from_json(field(j, "base")), observable_from_json(field(j, "observable")),
                get<double>(j, "beta"));
  invalid("unknown potential kind \"" + kind + "\"");
}

Observable observable_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  if (kind == "indicator") {
    if (j.contains("digit")) {
      const auto d = get<std::size_t>(j, "digit");
      if (d < 1) invalid("digits start at 1");
      return Observable::indicator(static_cast<Symbol>(d - 1));
    }
    return Observable::indicator(get<Symbol>(j, "symbol"));
  }
  if (kind == "symbol_values") return Observable::symbol_values(get<std::vector<double>>(j, "values"));
  if (kind == "locally_constant") return Observable::locally_constant(table_from_json(j));
  invalid("unknown observable kind \"" + kind + "\"");
}

GibbsModel model_from_json(const Json& j) {
  const std::string kind = kind_of(j);
  GibbsModel model = [&] {
    if (kind == "bernoulli") return GibbsModel::bernoulli(get<std::vector<double>>(j, "weights"));
    if (kind == "geometric") return GibbsModel::geometric(get<std::size_t>(j, "symbols"));
    if (kind == "gauss") return GibbsModel::gauss(get<std::size_t>(j, "truncation"));
    if (kind == "markov") {
      std::optional<std::vector<double>> pi;
      if (j.contains("stationary")) pi = get<std::vector<double>>(j, "stationary");
      return GibbsModel::markov(get<std::vector<std::vector<double>>>(j, "matrix"), pi);
    }
    invalid("unknown model kind \"" + kind + "\"");
  }();
  if (j.contains("c0")) model = model.with_constants(j.value("pressure", 0.0), get<double>(j, "c0"));
  return model;
}

Anchor anchor_from_json(const Json& j) {
  Anchor a;
  if (j.is_null()) return a;
  if (j.is_number()) {
    a.value = j.get<double>();
    return a;
  }
  if (j.contains("prefix")) a.prefix = get<Word>(j, "prefix");
  if (j.contains("value")) a.value = get<double>(j, "value");
  return a;
}

TransferOptions transfer_from_json(const Json& j) {
  TransferOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) invalid("transfer options must be an object");
  if (j.contains("grid_size")) o.grid_size = get<std::size_t>(j, "grid_size");
  if (j.contains("iterations")) o.iterations = get<std::size_t>(j, "iterations");
  if (j.contains("check_points")) o.check_points = get<std::size_t>(j, "check_points");
  if (j.contains("tail")) {
    const auto t = get<std::string>(j, "tail");
    if (t == "bounded") {
      o.tail = TailMode::Bounded;
    } else if (t == "truncated") {
      o.tail = TailMode::Truncated;
    } else {
      invalid("tail must be \"bounded\" or \"truncated\"");
    }
  }
  return o;
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>()), 10));
  if (j.is_object()) {
    Rational r(BigInt(field(j, "num").is_string() ? get<std::string>(j, "num") : std::to_string(get<long long>(j, "num")), 10),
               BigInt(field(j, "den").is_string() ? get<std::string>(j, "den") : std::to_string(get<long long>(j, "den")), 10));
    if (r.get_den() == 0) invalid("zero denominator");
    r.canonicalize();
    return r;
  }
  if (!j.is_string()) invalid("expected an exact number as \"p/q\", a decimal string or {num, den}");
  std::string s = j.get<std::string>();
  try {
    if (s.find('/') != std::string::npos) {
      Rational r(s, 10);
      if (r.get_den() == 0) invalid("zero denominator");
      r.canonicalize();
      return r;
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s, 10));
    const std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos) invalid("bad decimal \"" + s + "\"");
    std::string digits = s.substr(0, dot) + frac;
    if (digits.empty() || digits == "-" || digits == "+") invalid("bad decimal \"" + s + "\"");
    if (digits[0] == '+') digits.erase(0, 1);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(BigInt(digits, 10), den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    invalid("bad number \"" + s + "\"");
  }
}

Comparison comparison_from_json(const Json& j) {
  if (!j.is_string()) invalid("direction must be \">=\" or \"<=\"");
  const auto s = j.get<std::string>();
  if (s == ">=" || s == "at_least") return Comparison::AtLeast;
  if (s == "<=" || s == "at_most") return Comparison::AtMost;
  invalid("direction must be \">=\" or \"<=\"");
}

Json real_to_json(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x + 0.0;
}

Json rational_to_json(const Rational& r) {
  auto part = [](const BigInt& v) -> Json {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
  };
  return Json{{"num", part(r.get_num())}, {"den", part(r.get_den())}};
}

Json word_to_json(std::span<const Symbol> w) { return Json(std::vector<Symbol>(w.begin(), w.end())); }

Json to_json(const PressureEstimate& e) {
  return Json{{"ensemble", std::string(to_string(e.ensemble))},
              {"n", e.n},
              {"M", e.truncation},
              {"value", real_to_json(e.value)},
              {"lo", real_to_json(e.lo)},
              {"hi", real_to_json(e.hi)},
              {"direction", std::string(to_string(e.direction))}};
}

Json to_json(const DeviationRate& r) {
  return Json{{"ensemble", std::string(to_string(r.ensemble))},
              {"alpha", r.alpha},
              {"direction", std::string(to_string(r.direction))},
              {"n", r.n},
              {"M", r.truncation},
              {"value", real_to_json(r.value)},
              {"lo", real_to_json(r.lo)},
              {"hi", real_to_json(r.hi)},
              {"log_hit", real_to_json(r.log_hit)},
              {"log_total", real_to_json(r.log_total)},
              {"empty", r.empty}};
}

Json to_json(const RateCurve& c) {
  Json pts = Json::array();
  for (const auto& p : c.points)
    pts.push_back(Json{{"alpha", p.alpha},
                       {"I", real_to_json(p.rate)},
                       {"beta_star", p.beta_star},
                       {"at_boundary", p.at_boundary},
                       {"outside_domain", p.outside_domain}});
  return Json{{"domain", {real_to_json(c.domain_lo), real_to_json(c.domain_hi)}}, {"points", pts}};
}

Json to_json(const McResult& r) {
  return Json{{"seed", r.seed},
              {"trials", r.trials},
              {"hits", r.hits},
              {"n", r.n},
              {"alpha", r.alpha},
              {"direction", std::string(to_string(r.direction))},
              {"estimate", r.estimate},
              {"ci", {r.ci_lo, r.ci_hi}},
              {"rate", r.rate ? real_to_json(*r.rate) : Json(nullptr)},
              {"zero_hits", r.zero_hits}};
}

Json to_json(const GibbsEstimate& e) {
  Json by_depth = Json::array();
  for (double v : e.log_c0_by_depth) by_depth.push_back(real_to_json(v));
  return Json{{"c0", real_to_json(e.c0)},
              {"log_c0_by_depth", by_depth},
              {"witness", word_to_json(e.witness)},
              {"nonconvergent", e.nonconvergent}};
}

Json to_json(const DistortionReport& r) {
  return Json{{"c0", r.c0},
              {"depth", r.depth},
              {"min_ratio", real_to_json(r.min_ratio)},
              {"max_ratio", real_to_json(r.max_ratio)},
              {"max_violation", r.max_violation},
              {"violations", r.violations},
              {"pairs", r.pairs},
              {"witness", {word_to_json(r.attained_pair.first), word_to_json(r.attained_pair.second)}}};
}

Json to_json(const MixingReport& r) {
  return Json{{"min_ratio", real_to_json(r.min_ratio)},
              {"min_ratio_hi", real_to_json(r.min_ratio_hi)},
              {"a", r.a},
              {"b", r.b},
              {"n", r.n}};
}

}  // namespace cms
