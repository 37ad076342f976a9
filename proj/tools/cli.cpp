#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cms/error.hpp"
#include "cms/free_energy.hpp"

namespace cms::cli {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("config needs \"") + key + "\"");
  return j.at(key);
}

const Json& section(const Json& config, const char* key) {
  static const Json empty = Json::object();
  if (!config.contains(key)) return empty;
  const Json& s = config.at(key);
  if (!s.is_object()) invalid(std::string("\"") + key + "\" must be an object");
  return s;
}

template <class T>
T value_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    invalid(std::string("\"") + key + "\" has the wrong type");
  }
}

std::uint64_t seed_of(const Json& config, const Options& opt) {
  if (opt.seed) return *opt.seed;
  return value_or<std::uint64_t>(config, "seed", 0);
}

std::size_t workers_of(const Json& config, const Options& opt) {
  if (opt.workers) return std::max<std::size_t>(*opt.workers, 1);
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(value_or<std::size_t>(config, "workers", hw), 1);
}

std::string csv_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::vector<double> grid_from_json(const Json& j, std::vector<double> fallback) {
  if (j.is_null()) return fallback;
  if (j.is_array()) {
    try {
      return j.get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      invalid("grid must be a list of numbers");
    }
  }
  if (j.is_object())
    return linear_grid(value_or<double>(j, "lo", 0.0), value_or<double>(j, "hi", 1.0),
                       value_or<std::size_t>(j, "points", 11));
  invalid("grid must be a list or {lo, hi, points}");
}

Ensemble pressure_ensemble(const std::string& name) {
  if (name == "word_sum") return Ensemble::WordSum;
  if (name == "periodic") return Ensemble::Periodic;
  if (name == "preimage") return Ensemble::Preimage;
  if (name == "transfer") return Ensemble::TransferOperator;
  invalid("unknown pressure ensemble \"" + name + "\"");
}

DeviationEnsemble deviation_ensemble(const std::string& name) {
  if (name == "lebesgue") return DeviationEnsemble::Lebesgue;
  if (name == "periodic") return DeviationEnsemble::Periodic;
  if (name == "preimage") return DeviationEnsemble::Preimage;
  if (name == "gibbs_measure") return DeviationEnsemble::GibbsMeasure;
  invalid("unknown deviation ensemble \"" + name + "\"");
}

PressureRecipe recipe_from(const Json& s) {
  PressureRecipe r;
  r.method = pressure_ensemble(value_or<std::string>(s, "method", "transfer"));
  r.n = value_or<std::size_t>(s, "n", 20);
  r.anchor = anchor_from_json(s.value("anchor", Json()));
  r.transfer = transfer_from_json(s.value("transfer", Json()));
  r.budget = value_or<std::uint64_t>(s, "budget", kDefaultWordBudget);
  return r;
}

Artifacts cmd_pressure(const Json& config, const Options& opt) {
  const ShiftSpec spec = shift_from_json(require(config, "shift"));
  const Potential pot = potential_from_json(require(config, "potential"));
  const Json& s = section(config, "pressure");
  const auto names = value_or<std::vector<std::string>>(s, "ensembles", {"word_sum", "periodic", "preimage"});
  const std::size_t n = value_or<std::size_t>(s, "n", 12);
  const auto budget = value_or<std::uint64_t>(s, "budget", kDefaultWordBudget);
  std::optional<Symbol> start;
  if (s.contains("start_symbol") && !s.at("start_symbol").is_null()) start = value_or<Symbol>(s, "start_symbol", 0);
  const Anchor anchor = anchor_from_json(s.value("anchor", Json()));
  const TransferOptions transfer = transfer_from_json(s.value("transfer", Json()));

  Artifacts a;
  a.json = Json{{"seed", seed_of(config, opt)}, {"estimates", Json::array()}};
  a.csv = "n,ensemble,value,lo,hi\n";
  for (const auto& name : names) {
    PressureEstimate e;
    switch (pressure_ensemble(name)) {
      case Ensemble::WordSum: e = pressure_word_sum(spec, pot, n, budget); break;
      case Ensemble::Periodic: e = pressure_periodic(spec, pot, n, start, budget); break;
      case Ensemble::Preimage: e = pressure_preimage(spec, pot, n, anchor, budget); break;
      case Ensemble::TransferOperator: e = pressure_transfer(spec, pot, transfer); break;
    }
    a.json["estimates"].push_back(to_json(e));
    a.csv += std::to_string(e.n) + "," + std::string(to_string(e.ensemble)) + "," + csv_real(e.value) + "," +
             csv_real(e.lo) + "," + csv_real(e.hi) + "\n";
  }
  return a;
}

Artifacts cmd_rate(const Json& config, const Options& opt) {
  const ShiftSpec spec = shift_from_json(require(config, "shift"));
  const Potential pot = potential_from_json(require(config, "potential"));
  const Observable obs = observable_from_json(require(config, "observable"));
  const Json& s = section(config, "rate");
  const PressureRecipe recipe = recipe_from(s);
  const auto betas = grid_from_json(s.value("betas", Json()), linear_grid(-8.0, 8.0, 65));
  const auto alphas = grid_from_json(s.value("alphas", Json()), linear_grid(0.05, 0.95, 19));
  const FreeEnergy fe = free_energy(spec, pot, obs, betas, recipe);
  const RateCurve curve = rate_legendre(fe, alphas);

  Artifacts a;
  a.json = to_json(curve);
  a.json["seed"] = seed_of(config, opt);
  a.json["method"] = std::string(to_string(recipe.method));
  a.json["mean"] = real_to_json(fe.derivative_at_zero());
  a.csv = "alpha,I,beta_star\n";
  for (const auto& p : curve.points) a.csv += csv_real(p.alpha) + "," + csv_real(p.rate) + "," + csv_real(p.beta_star) + "\n";
  return a;
}

Artifacts cmd_deviate(const Json& config, const Options& opt) {
  DeviationProblem problem;
  problem.spec = shift_from_json(require(config, "shift"));
  problem.potential = potential_from_json(require(config, "potential"));
  problem.observable = observable_from_json(require(config, "observable"));
  if (config.contains("model")) problem.model = model_from_json(config.at("model"));
  const Json& s = section(config, "deviate");
  problem.anchor = anchor_from_json(s.value("anchor", Json()));
  problem.grid_size = value_or<std::size_t>(s, "grid_size", 64);
  problem.budget = value_or<std::uint64_t>(s, "budget", kDefaultWordBudget);
  const double alpha = value_or<double>(s, "alpha", 0.5);
  const Comparison dir = comparison_from_json(s.value("direction", Json(">=")));
  const auto ns = s.contains("n") && s.at("n").is_array() ? value_or<std::vector<std::size_t>>(s, "n", {})
                                                          : std::vector<std::size_t>{value_or<std::size_t>(s, "n", 12)};
  const auto names = value_or<std::vector<std::string>>(s, "ensembles", {"lebesgue", "periodic", "preimage"});

  Artifacts a;
  a.json = Json{{"seed", seed_of(config, opt)}, {"rates", Json::array()}};
  a.csv = "n,ensemble,value,lo,hi\n";
  for (std::size_t n : ns)
    for (const auto& name : names) {
      const DeviationRate r = deviation_rate_constrained(deviation_ensemble(name), problem, alpha, dir, n);
      a.json["rates"].push_back(to_json(r));
      a.csv += std::to_string(n) + "," + std::string(to_string(r.ensemble)) + "," + csv_real(r.value) + "," +
               csv_real(r.lo) + "," + csv_real(r.hi) + "\n";
    }
  return a;
}

Artifacts cmd_mc(const Json& config, const Options& opt) {
  const GibbsModel model = model_from_json(require(config, "model"));
  const Observable obs = observable_from_json(require(config, "observable"));
  const Json& s = section(config, "mc");
  const McResult r = mc_deviation(model, obs, value_or<double>(s, "alpha", 0.5),
                                  comparison_from_json(s.value("direction", Json(">="))),
                                  value_or<std::size_t>(s, "n", 10), value_or<std::size_t>(s, "trials", 10000),
                                  seed_of(config, opt), workers_of(config, opt));
  return {to_json(r), {}};
}

Artifacts cmd_tightness(const Json& config, const Options& opt) {
  const GibbsModel model = model_from_json(require(config, "model"));
  const Json& s = section(config, "tightness");
  const double theta = value_or<double>(s, "theta", 0.2);
  const std::size_t n = value_or<std::size_t>(s, "n", 6);
  const std::size_t depth = value_or<std::size_t>(s, "depth", n);
  const TightnessSchedule schedule = build_schedule(model, theta, depth);
  std::vector<double> p;
  std::string method = "exact";
  const std::uint64_t seed = seed_of(config, opt);
  try {
    p = visit_distribution(model, schedule, n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedModel || !s.contains("trials")) throw;
    p = visit_distribution_mc(model, schedule, n, value_or<std::size_t>(s, "trials", 0), seed);
    method = "monte_carlo";
  }
  const ExpoBoundReport rep = check_expo_bound(p, theta, n);
  Artifacts a;
  a.json = Json{{"seed", seed},
                {"theta", theta},
                {"levels", schedule.levels},
                {"n", n},
                {"p", p},
                {"bound", rep.bound},
                {"margin", real_to_json(rep.margin)},
                {"informative_from", rep.informative_from},
                {"pass", rep.pass},
                {"method", method},
                {"window", "constraints only at offsets below the schedule depth"}};
  if (model.kind() == GibbsModel::Kind::GaussMeasure) {
    std::vector<std::size_t> digits;
    for (std::size_t l : schedule.levels) digits.push_back(l + 1);
    a.json["digit_levels"] = digits;
  }
  a.csv = "m,p,bound\n";
  for (std::size_t m = 0; m <= n; ++m) a.csv += std::to_string(m) + "," + csv_real(p[m]) + "," + csv_real(rep.bound[m]) + "\n";
  return a;
}

std::string status_name(ExpansionStatus s) {
  switch (s) {
    case ExpansionStatus::Complete: return "complete";
    case ExpansionStatus::Terminated: return "terminated";
    case ExpansionStatus::PrecisionExhausted: return "precision_exhausted";
  }
  return "?";
}

Artifacts cmd_cfrac(const Json& config, const Options& opt) {
  const Json& s = require(config, "cfrac");
  const auto action = value_or<std::string>(s, "action", "expand");
  Artifacts a;
  a.json = Json{{"seed", seed_of(config, opt)}, {"action", action}};
  if (action == "expand") {
    const std::size_t n = value_or<std::size_t>(s, "n", 10);
    const Json& x = require(s, "x");
    const Expansion e = x.is_number_float() ? cf_expand(x.get<double>(), n) : cf_expand(rational_from_json(x), n);
    a.json["digits"] = e.digits;
    a.json["status"] = status_name(e.status);
    return a;
  }
  const auto digits = value_or<Digits>(s, "digits", {});
  if (action == "cylinder") {
    const CylinderInterval iv = cylinder_interval(digits);
    a.json["lo"] = rational_to_json(iv.lo);
    a.json["hi"] = rational_to_json(iv.hi);
    a.json["length"] = rational_to_json(iv.length);
    const Rational ratio = (iv.hi - iv.lo) / (1 + iv.lo);
    a.json["gauss_measure"] = std::log1p(to_double(ratio)) / std::log(2.0);
    return a;
  }
  if (action == "periodic") {
    const PeriodicPoint pp = periodic_point(digits);
    a.json["x"] = pp.x;
    a.json["weight"] = pp.weight;
    a.json["log_weight"] = pp.log_weight;
    return a;
  }
  if (action == "sample") {
    const std::size_t n = value_or<std::size_t>(s, "n", 10);
    const std::size_t count = value_or<std::size_t>(s, "count", 1);
    const std::uint64_t seed = seed_of(config, opt);
    Json samples = Json::array();
    for (std::size_t i = 0; i < count; ++i) {
      Rng rng(trial_seed(seed, i));
      samples.push_back(sample_gauss(rng, n));
    }
    a.json["samples"] = samples;
    return a;
  }
  invalid("cfrac action must be expand, cylinder, periodic or sample");
}

Artifacts cmd_verify_gibbs(const Json& config, const Options& opt) {
  const GibbsModel model = model_from_json(require(config, "model"));
  const Potential pot = potential_from_json(require(config, "potential"));
  const Json& s = section(config, "verify");
  const double pressure = value_or<double>(s, "pressure", 0.0);
  const std::size_t n_max = value_or<std::size_t>(s, "n_max", 4);
  const std::size_t depth = value_or<std::size_t>(s, "distortion_depth", n_max);
  const auto budget = value_or<std::uint64_t>(s, "budget", kDefaultWordBudget);
  const GibbsEstimate est = estimate_gibbs_constant(model, pot, pressure, n_max, budget);
  const DistortionReport dist = check_distortion(model.with_constants(pressure, est.c0), depth, budget);
  Artifacts a;
  a.json = Json{{"seed", seed_of(config, opt)},
                {"pressure", pressure},
                {"c0", est.c0},
                {"depth", depth},
                {"max_ratio", dist.max_ratio},
                {"witness", {word_to_json(dist.attained_pair.first), word_to_json(dist.attained_pair.second)}},
                {"estimate", to_json(est)},
                {"distortion", to_json(dist)}};
  if (s.contains("mixing")) {
    const Json& m = s.at("mixing");
    const auto pairs = value_or<std::vector<std::pair<Symbol, Symbol>>>(m, "pairs", {{0, 0}});
    a.json["mixing"] = to_json(check_mixing_constant(model, value_or<std::size_t>(m, "n_lo", 1),
                                                     value_or<std::size_t>(m, "n_hi", 2), pairs, budget));
  }
  return a;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path.string());
  f << text;
}

}  // namespace

Artifacts run_subcommand(const std::string& name, const Json& config, const Options& options) {
  if (!config.is_object() || config.empty()) invalid("config is empty");
  if (name == "pressure") return cmd_pressure(config, options);
  if (name == "rate") return cmd_rate(config, options);
  if (name == "deviate") return cmd_deviate(config, options);
  if (name == "mc") return cmd_mc(config, options);
  if (name == "tightness") return cmd_tightness(config, options);
  if (name == "cfrac") return cmd_cfrac(config, options);
  if (name == "verify-gibbs") return cmd_verify_gibbs(config, options);
  invalid("unknown subcommand \"" + name + "\"");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pressure, Gibbs constants and large-deviation rates for truncated Markov shifts"};
  app.require_subcommand(1);
  std::string config_path;
  Options options;
  std::size_t workers = 0;
  std::uint64_t seed = 0;
  for (const char* name : {"pressure", "rate", "deviate", "mc", "tightness", "cfrac", "verify-gibbs"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment config")->required();
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_option("--workers", workers, "parallel workers");
    sub->add_option("--seed", seed, "seed (overrides the config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--workers")) options.workers = workers;
  if (sub->count("--seed")) options.seed = seed;

  try {
    std::ifstream f(config_path);
    if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot read " + config_path);
    Json config;
    try {
      config = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
    }
    const Artifacts a = run_subcommand(sub->get_name(), config, options);
    std::filesystem::create_directories(options.out_dir);
    const std::filesystem::path dir(options.out_dir);
    const std::string text = a.json.dump(2) + "\n";
    write_file(dir / (sub->get_name() + ".json"), text);
    if (!a.csv.empty()) write_file(dir / (sub->get_name() + ".csv"), a.csv);
    out << text;
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_resource_error(e.code()) ? 3 : 2;
  } catch (const nlohmann::json::exception& e) {
    err << qualified_name(ErrorCode::ConfigInvalid) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << qualified_name(ErrorCode::ConfigInvalid) << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cms::cli
