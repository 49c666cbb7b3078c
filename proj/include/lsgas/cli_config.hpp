#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsgas/montecarlo.hpp"

namespace lsgas::cli {

enum class Command {
  CriticalDensity,
  GapProbability,
  Condensate,
  SinglePath,
  Extremes,
  VerifyAssumptions,
};

enum class OutputFormat { Csv, Json };

const char* command_name(Command c);

/// Configuration validation/parse failure; `field` names the offending input.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field_, const std::string& what)
      : std::runtime_error(what), field(std::move(field_)) {}
  std::string field;
};

/// Thrown by parse_config when the user asked for --help.
struct HelpRequested {
  std::string text;
};

struct RunConfig {
  Command command = Command::CriticalDensity;
  double nu = 1.0;
  double rho = 1.0;
  double beta = 1.0;
  GapEventParams gap{};
  int r = 1;
  std::vector<std::uint64_t> n_grid;  // grid / path sequence / window sizes
  std::size_t n_points = 5;           // verify-assumptions grid size
  std::size_t samples = 1000;
  std::uint64_t master_seed = 42;
  std::string output_path;  // defaulted per command when empty
  OutputFormat format = OutputFormat::Csv;
  unsigned workers = 0;  // 0 = logical cores

  bool operator==(const RunConfig&) const = default;
};

/// Parses argv (without the program name). A --config JSON file supplies
/// defaults; explicit flags override it; unknown keys are rejected. Throws
/// ConfigError naming the first offending field.
RunConfig parse_config(const std::vector<std::string>& args);

/// Canonical argv for a config; parse_config(render_cli(c)) == c.
std::vector<std::string> render_cli(const RunConfig& config);

/// Executes the campaign: writes the result file (CSV or JSON, 17 significant
/// digits, LF endings) plus a <output>.meta.json sidecar with the full
/// parameter echo, tool version, master seed, and wall-clock time. Returns
/// 0 on success, 2 on precondition failures, 1 on internal errors.
int run(const RunConfig& config);

}  // namespace lsgas::cli
