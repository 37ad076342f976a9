#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using namespace cms;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "cmsld_cli_test";
  fs::create_directories(d);
  return d;
}

Run invoke(const std::string& sub, const std::string& config_text, std::vector<std::string> extra = {}) {
  const fs::path dir = scratch();
  const fs::path cfg = dir / (sub + "_config.json");
  std::ofstream(cfg) << config_text;
  std::vector<std::string> args{"cmsld", sub, "--config", cfg.string(), "--out", (dir / "out").string()};
  args.insert(args.end(), extra.begin(), extra.end());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int s = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {s, out.str(), err.str()};
}

}  // namespace

TEST_CASE("pressure subcommand writes json and csv") {
  const Run r = invoke("pressure", R"({
    "shift": {"alphabet_size": 2, "transition": [[1, 1], [1, 0]]},
    "potential": {"kind": "constant", "value": 0},
    "pressure": {"ensembles": ["word_sum", "periodic", "transfer"], "n": 10},
    "seed": 4
  })");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["seed"] == 4);
  REQUIRE(j["estimates"].size() == 3);
  CHECK(j["estimates"][2]["value"].get<double>() == doctest::Approx(oracle::golden_log()));
  CHECK(fs::exists(scratch() / "out" / "pressure.json"));
  std::ifstream csv(scratch() / "out" / "pressure.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,ensemble,value,lo,hi");
}

TEST_CASE("rate subcommand") {
  const Run r = invoke("rate", R"({
    "shift": {"alphabet_size": 2, "transition": "full"},
    "potential": {"kind": "bernoulli", "weights": [0.3, 0.7]},
    "observable": {"kind": "indicator", "symbol": 0},
    "rate": {"alphas": [0.2, 0.5]}
  })");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["points"][1]["I"].get<double>() == doctest::Approx(oracle::sanov(0.5, 0.3)).epsilon(1e-8));
}

TEST_CASE("mc seed override and determinism") {
  const std::string cfg = R"({
    "model": {"kind": "bernoulli", "weights": [0.5, 0.5]},
    "observable": {"kind": "indicator", "symbol": 0},
    "mc": {"alpha": 0.7, "n": 10, "trials": 5000},
    "seed": 1
  })";
  const Run a = invoke("mc", cfg, {"--seed", "9", "--workers", "1"});
  const Run b = invoke("mc", cfg, {"--seed", "9", "--workers", "3"});
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["seed"] == 9);
}

TEST_CASE("cfrac subcommand") {
  const Run r = invoke("cfrac", R"({"cfrac": {"action": "expand", "x": "113/355", "n": 10}})");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["digits"].get<std::vector<std::uint64_t>>() == oracle::euclid_digits(113, 355));
  CHECK(j["status"] == "terminated");
  const Run d = invoke("cfrac", R"({"cfrac": {"action": "expand", "x": "0.0625", "n": 4}})");
  REQUIRE(d.status == 0);
  CHECK(nlohmann::json::parse(d.out)["digits"] == nlohmann::json::array({16}));
  const Run c = invoke("cfrac", R"({"cfrac": {"action": "cylinder", "digits": [1, 1]}})");
  REQUIRE(c.status == 0);
  CHECK(nlohmann::json::parse(c.out)["length"] == nlohmann::json({{"num", 1}, {"den", 6}}));
}

TEST_CASE("tightness and verify-gibbs subcommands") {
  const Run t = invoke("tightness", R"({"model": {"kind": "geometric", "symbols": 64},
                                         "tightness": {"theta": 0.2, "n": 6}})");
  REQUIRE(t.status == 0);
  CHECK(nlohmann::json::parse(t.out)["pass"] == true);
  const Run v = invoke("verify-gibbs", R"({"model": {"kind": "gauss", "truncation": 4},
                                           "potential": {"kind": "gauss_log"},
                                           "verify": {"n_max": 4}})");
  REQUIRE(v.status == 0);
  CHECK(nlohmann::json::parse(v.out)["distortion"]["violations"] == 0);
}

TEST_CASE("exit codes") {
  CHECK(invoke("pressure", "{}").status == 2);
  CHECK(invoke("pressure", "not json").status == 2);
  CHECK(invoke("pressure", R"({"shift": {"alphabet_size": 2, "transition": [[0, 0], [1, 1]]},
                               "potential": {"kind": "constant", "value": 0}})").status == 2);
  CHECK(invoke("rate", R"({"shift": {"alphabet_size": 2, "transition": "full"}})", {"--bogus"}).status == 2);
  const Run big = invoke("verify-gibbs", R"({"model": {"kind": "gauss", "truncation": 40},
                                             "potential": {"kind": "gauss_log"},
                                             "verify": {"n_max": 5, "budget": 1000}})");
  CHECK(big.status == 3);
}
