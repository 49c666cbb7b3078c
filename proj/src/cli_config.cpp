#include "lsgas/cli_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

namespace lsgas::cli {

namespace {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table = {
      {"critical-density", Command::CriticalDensity},
      {"gap-probability", Command::GapProbability},
      {"condensate", Command::Condensate},
      {"single-path", Command::SinglePath},
      {"extremes", Command::Extremes},
      {"verify-assumptions", Command::VerifyAssumptions},
  };
  return table;
}

// Keys accepted in a JSON config file, mirroring the long flag names.
const std::vector<std::string>& keys_for(Command c) {
  static const std::vector<std::string> common = {"nu",     "seed",   "output",
                                                  "format", "workers"};
  static const auto build = [](std::initializer_list<std::string> extra) {
    std::vector<std::string> keys = common;
    keys.insert(keys.end(), extra);
    return keys;
  };
  static const std::map<Command, std::vector<std::string>> table = {
      {Command::CriticalDensity, build({"beta"})},
      {Command::GapProbability, build({"rho", "eta1", "c2", "c3", "n", "samples"})},
      {Command::Condensate, build({"rho", "beta", "c2", "r", "n", "samples"})},
      {Command::SinglePath, build({"rho", "beta", "n"})},
      {Command::Extremes, build({"rho", "n", "samples"})},
      {Command::VerifyAssumptions,
       build({"rho", "eta1", "n", "grid-points", "samples"})},
  };
  return table.at(c);
}

std::vector<std::uint64_t> parse_n_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(token, &used);
      if (used != token.size() || v < 1) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("n", "n: expected a comma-separated list of positive "
                             "integers, got '" + token + "'");
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

std::string join_n_list(const std::vector<std::uint64_t>& ns) {
  std::string out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ns[i]);
  }
  return out;
}

// Turns a JSON config file into the equivalent flag list so that explicit
// command-line flags (parsed later with a take-last policy) override it.
std::vector<std::string> flags_from_file(Command command, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "config: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("config", std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("config", "config: top-level JSON value must be an object");

  const auto& allowed = keys_for(command);
  std::vector<std::string> flags;
  for (const auto& [key, value] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(key, "config: unknown key '" + key + "' for command '" +
                                 std::string(command_name(command)) + "'");
    std::string rendered;
    if (value.is_string()) {
      rendered = value.get<std::string>();
    } else if (value.is_array()) {
      std::vector<std::uint64_t> ns;
      for (const auto& item : value) {
        if (!item.is_number_unsigned() && !item.is_number_integer())
          throw ConfigError(key, "config: '" + key + "' must be an integer array");
        ns.push_back(item.get<std::uint64_t>());
      }
      rendered = join_n_list(ns);
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      rendered = std::to_string(value.get<long long>());
    } else if (value.is_number_float()) {
      rendered = format_g17(value.get<double>());
    } else {
      throw ConfigError(key, "config: unsupported value type for '" + key + "'");
    }
    flags.push_back("--" + key);
    flags.push_back(rendered);
  }
  return flags;
}

std::vector<std::uint64_t> default_n_grid(Command command) {
  switch (command) {
    case Command::CriticalDensity:
      return {};
    case Command::GapProbability:
    case Command::Condensate:
      return {1000, 10000};
    case Command::SinglePath:
      return {1000, 2000, 4000, 8000};
    case Command::Extremes:
    case Command::VerifyAssumptions:
      return {100000};
  }
  return {};
}

void validate(const RunConfig& cfg) {
  if (!(cfg.nu > 0.0)) throw ConfigError("nu", "nu must be > 0");
  if (!(cfg.rho > 0.0)) throw ConfigError("rho", "rho must be > 0");
  if (!(cfg.beta > 0.0)) throw ConfigError("beta", "beta must be > 0");
  if (!(cfg.gap.eta1 > 0.0 && cfg.gap.eta1 < 1.0))
    throw ConfigError("eta1", "eta1 must lie in the open interval (0, 1)");
  if (cfg.gap.c2 < 1) throw ConfigError("c2", "c2 must be >= 1");
  if (!(cfg.gap.c3 > 0.0)) throw ConfigError("c3", "c3 must be > 0");
  if (cfg.r != 1 && cfg.r != 2) throw ConfigError("r", "r must be 1 or 2");
  if (cfg.samples < 1) throw ConfigError("samples", "samples must be >= 1");
  if (cfg.n_points < 2)
    throw ConfigError("grid-points", "grid-points must be >= 2");
  if (cfg.command != Command::CriticalDensity) {
    if (cfg.n_grid.empty()) throw ConfigError("n", "n must be nonempty");
    for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
      if (!(cfg.n_grid[i] > cfg.n_grid[i - 1]))
        throw ConfigError("n", "n must be strictly ascending");
  }
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name.c_str();
  return "?";
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::string n_list, format_str, config_path;

  CLI::App app{"Bose gas in a one-dimensional Poisson random potential"};
  app.name("lsgas");
  app.require_subcommand(0, 1);

  struct SubBinding {
    Command command;
    CLI::App* sub;
  };
  std::vector<SubBinding> bindings;

  for (const auto& [name, command] : command_table()) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--nu", cfg.nu, "Poisson intensity");
    sub->add_option("--seed", cfg.master_seed, "master seed");
    sub->add_option("--output", cfg.output_path, "result file path");
    sub->add_option("--format", format_str, "csv or json");
    sub->add_option("--workers", cfg.workers, "worker threads (0 = logical cores)");
    sub->add_option("--config", config_path, "JSON config file");
    switch (command) {
      case Command::CriticalDensity:
        sub->add_option("--beta", cfg.beta, "inverse temperature");
        break;
      case Command::GapProbability:
        sub->add_option("--rho", cfg.rho, "particle density");
        sub->add_option("--eta1", cfg.gap.eta1, "gap exponent parameter");
        sub->add_option("--c2", cfg.gap.c2, "condensate level count");
        sub->add_option("--c3", cfg.gap.c3, "gap scale coefficient");
        sub->add_option("--n", n_list, "comma-separated particle numbers");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples per N");
        break;
      case Command::Condensate:
        sub->add_option("--rho", cfg.rho, "particle density");
        sub->add_option("--beta", cfg.beta, "inverse temperature");
        sub->add_option("--c2", cfg.gap.c2, "condensate level count");
        sub->add_option("--r", cfg.r, "moment order (1 or 2)");
        sub->add_option("--n", n_list, "comma-separated particle numbers");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples per N");
        break;
      case Command::SinglePath:
        sub->add_option("--rho", cfg.rho, "particle density");
        sub->add_option("--beta", cfg.beta, "inverse temperature");
        sub->add_option("--n", n_list, "increasing particle-number path");
        break;
      case Command::Extremes:
        sub->add_option("--rho", cfg.rho, "particle density");
        sub->add_option("--n", n_list, "particle numbers (window sizes)");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
        break;
      case Command::VerifyAssumptions:
        sub->add_option("--rho", cfg.rho, "particle density");
        sub->add_option("--eta1", cfg.gap.eta1, "decay exponent parameter");
        sub->add_option("--n", n_list, "particle number for the MC window");
        sub->add_option("--grid-points", cfg.n_points, "grid resolution");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
        break;
    }
    bindings.push_back(SubBinding{command, sub});
  }

  // A config file is folded in as flags placed before the explicit ones;
  // the take-last policy then gives explicit flags precedence.
  std::vector<std::string> effective = args;
  if (!args.empty()) {
    const auto it = command_table().find(args[0]);
    if (it != command_table().end()) {
      for (std::size_t i = 1; i + 1 < args.size() + 1; ++i) {
        std::string value;
        if (args[i] == "--config" && i + 1 < args.size())
          value = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
          value = args[i].substr(9);
        else
          continue;
        const auto file_flags = flags_from_file(it->second, value);
        effective.clear();
        effective.push_back(args[0]);
        effective.insert(effective.end(), file_flags.begin(), file_flags.end());
        effective.insert(effective.end(), args.begin() + 1, args.end());
        break;
      }
    }
  }

  try {
    std::vector<std::string> reversed(effective.rbegin(), effective.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp& e) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw ConfigError("argv", e.what());
  }

  const CLI::App* chosen = nullptr;
  for (const auto& b : bindings)
    if (b.sub->parsed()) {
      cfg.command = b.command;
      chosen = b.sub;
    }
  if (chosen == nullptr)
    throw ConfigError("command",
                      "expected one of: critical-density, gap-probability, "
                      "condensate, single-path, extremes, verify-assumptions");

  if (!format_str.empty()) {
    if (format_str == "csv")
      cfg.format = OutputFormat::Csv;
    else if (format_str == "json")
      cfg.format = OutputFormat::Json;
    else
      throw ConfigError("format", "format must be 'csv' or 'json'");
  }

  cfg.n_grid = n_list.empty() ? default_n_grid(cfg.command) : parse_n_list(n_list);
  validate(cfg);
  return cfg;
}

std::vector<std::string> render_cli(const RunConfig& cfg) {
  std::vector<std::string> args;
  args.push_back(command_name(cfg.command));
  auto push = [&](const std::string& flag, const std::string& value) {
    args.push_back(flag);
    args.push_back(value);
  };
  push("--nu", format_g17(cfg.nu));
  switch (cfg.command) {
    case Command::CriticalDensity:
      push("--beta", format_g17(cfg.beta));
      break;
    case Command::GapProbability:
      push("--rho", format_g17(cfg.rho));
      push("--eta1", format_g17(cfg.gap.eta1));
      push("--c2", std::to_string(cfg.gap.c2));
      push("--c3", format_g17(cfg.gap.c3));
      push("--n", join_n_list(cfg.n_grid));
      push("--samples", std::to_string(cfg.samples));
      break;
    case Command::Condensate:
      push("--rho", format_g17(cfg.rho));
      push("--beta", format_g17(cfg.beta));
      push("--c2", std::to_string(cfg.gap.c2));
      push("--r", std::to_string(cfg.r));
      push("--n", join_n_list(cfg.n_grid));
      push("--samples", std::to_string(cfg.samples));
      break;
    case Command::SinglePath:
      push("--rho", format_g17(cfg.rho));
      push("--beta", format_g17(cfg.beta));
      push("--n", join_n_list(cfg.n_grid));
      break;
    case Command::Extremes:
      push("--rho", format_g17(cfg.rho));
      push("--n", join_n_list(cfg.n_grid));
      push("--samples", std::to_string(cfg.samples));
      break;
    case Command::VerifyAssumptions:
      push("--rho", format_g17(cfg.rho));
      push("--eta1", format_g17(cfg.gap.eta1));
      push("--n", join_n_list(cfg.n_grid));
      push("--grid-points", std::to_string(cfg.n_points));
      push("--samples", std::to_string(cfg.samples));
      break;
  }
  push("--seed", std::to_string(cfg.master_seed));
  if (!cfg.output_path.empty()) push("--output", cfg.output_path);
  push("--format", cfg.format == OutputFormat::Csv ? "csv" : "json");
  push("--workers", std::to_string(cfg.workers));
  return args;
}

}  // namespace lsgas::cli
