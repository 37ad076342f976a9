#ifndef CMS_TOOLS_CLI_HPP
#define CMS_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "cms/json_io.hpp"

namespace cms::cli {

struct Options {
  std::string out_dir = ".";
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
};

/// Result of one subcommand: the JSON document and, for tabular outputs, CSV.
struct Artifacts {
  Json json;
  std::string csv;
};

/// Runs a subcommand on a parsed config. Throws cms::Error.
Artifacts run_subcommand(const std::string& name, const Json& config, const Options& options);

/// Full command line: parses flags, reads the config, writes <out>/<name>.json
/// (and .csv), prints the JSON. Returns 0, 2 (invalid input) or 3 (budget or
/// precision exhausted).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cms::cli

#endif  // CMS_TOOLS_CLI_HPP
