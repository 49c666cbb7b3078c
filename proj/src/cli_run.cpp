#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsgas/cli_config.hpp"
#include "lsgas/rng.hpp"
#include "lsgas/version.hpp"

namespace lsgas::cli {

namespace {

struct ResultRow {
  std::string quantity;
  std::uint64_t n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string short_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<ResultRow> run_critical_density(const RunConfig& cfg) {
  const auto result = critical_density(cfg.beta, cfg.nu);
  return {ResultRow{"rho_c", 0, result.rho_c, result.abs_error_estimate, 0,
                    cfg.master_seed}};
}

std::vector<ResultRow> run_gap_probability(const RunConfig& cfg) {
  std::vector<ResultRow> rows;
  for (std::uint64_t n : cfg.n_grid) {
    const ModelParams params(cfg.nu, cfg.rho, cfg.beta, n);
    const std::uint64_t seed =
        rng::derive_seed(cfg.master_seed, "cli/gap-probability", n);
    const auto rep =
        estimate_gap_probability(params, cfg.gap, cfg.samples, seed, cfg.workers);
    rows.push_back(ResultRow{"gap_probability", n, rep.report.estimate,
                             rep.report.std_error, rep.report.samples, seed});
  }
  return rows;
}

std::vector<ResultRow> run_condensate(const RunConfig& cfg) {
  std::vector<ResultRow> rows;
  const std::string suffix = "_r" + std::to_string(cfg.r);
  for (std::uint64_t n : cfg.n_grid) {
    const ModelParams params(cfg.nu, cfg.rho, cfg.beta, n);
    const std::uint64_t seed =
        rng::derive_seed(cfg.master_seed, "cli/condensate", n);
    const auto rep = estimate_condensate_moments(params, cfg.gap.c2, cfg.r,
                                                 cfg.samples, seed, cfg.workers);
    rows.push_back(ResultRow{"condensate_abs_dev" + suffix, n,
                             rep.deviation_moment.estimate,
                             rep.deviation_moment.std_error, cfg.samples, seed});
    rows.push_back(ResultRow{"next_level" + suffix, n,
                             rep.next_level_moment.estimate,
                             rep.next_level_moment.std_error, cfg.samples, seed});
  }
  return rows;
}

std::vector<ResultRow> run_single_path(const RunConfig& cfg) {
  const ModelParams params(cfg.nu, cfg.rho, cfg.beta, cfg.n_grid.front());
  const auto rep = single_path_fraction(params, cfg.n_grid, cfg.master_seed);
  std::vector<ResultRow> rows;
  for (const auto& [n, fraction] : rep.fractions)
    rows.push_back(ResultRow{"ground_fraction", n, fraction, 0.0, 1,
                             cfg.master_seed});
  return rows;
}

std::vector<ResultRow> run_extremes(const RunConfig& cfg) {
  std::vector<ResultRow> rows;
  for (std::uint64_t n : cfg.n_grid) {
    const ModelParams params(cfg.nu, cfg.rho, cfg.beta, n);
    const std::uint64_t seed = rng::derive_seed(cfg.master_seed, "cli/extremes", n);
    const auto rep = extreme_value_suite(params, cfg.samples, seed, cfg.workers);
    rows.push_back(ResultRow{"largest_length_freq", n, rep.largest_freq,
                             rep.largest_se, rep.samples, seed});
    rows.push_back(ResultRow{"count_upper_tail", n, rep.count_upper_freq,
                             bernoulli_std_error(rep.count_upper_freq, rep.samples),
                             rep.samples, seed});
    rows.push_back(ResultRow{"count_lower_tail", n, rep.count_lower_freq,
                             bernoulli_std_error(rep.count_lower_freq, rep.samples),
                             rep.samples, seed});
    rows.push_back(ResultRow{"mean_count_per_length", n, rep.mean_count_per_length,
                             rep.mean_count_se, rep.samples, seed});
    for (const auto& pt : rep.gap_survival)
      rows.push_back(ResultRow{"gap_survival_t" + short_g(pt.t), n, pt.empirical,
                               pt.std_error, rep.samples, seed});
  }
  return rows;
}

std::vector<ResultRow> run_verify_assumptions(const RunConfig& cfg) {
  const ModelParams params(cfg.nu, cfg.rho, cfg.beta, cfg.n_grid.front());
  const std::uint64_t seed =
      rng::derive_seed(cfg.master_seed, "cli/verify-assumptions", 0);
  const auto rep =
      verify_assumptions(cfg.gap.eta1, params, cfg.n_points, cfg.samples, seed);

  std::vector<ResultRow> rows;
  for (const auto& [n, a] : rep.decay_sequence)
    rows.push_back(ResultRow{"assumption_iv_a",
                             static_cast<std::uint64_t>(n), a, 0.0, 0, seed});
  for (const auto& [eps, ratio] : rep.small_e_ratio)
    rows.push_back(ResultRow{"eps_inv_ids_eps" + short_g(eps), 0, ratio, 0.0, 0,
                             seed});
  rows.push_back(ResultRow{"ids_tail_integral", 0, rep.tail_integral, 0.0, 0,
                           seed});
  for (const auto& [e, ratio] : rep.ids_ratio)
    rows.push_back(ResultRow{"ids_ratio_E" + short_g(e), params.n_particles,
                             ratio, 0.0, cfg.samples, seed});
  rows.push_back(ResultRow{"empirical_c1", params.n_particles, rep.empirical_c1,
                           0.0, cfg.samples, seed});
  return rows;
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "quantity,N,estimate,std_error,samples,seed\n";
  for (const auto& row : rows)
    out << row.quantity << ',' << row.n << ',' << g17(row.estimate) << ','
        << g17(row.std_error) << ',' << row.samples << ',' << row.seed << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_json(const std::string& path, const RunConfig& cfg,
                const std::vector<ResultRow>& rows) {
  nlohmann::json doc;
  doc["command"] = command_name(cfg.command);
  auto& out_rows = doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows)
    out_rows.push_back({{"quantity", row.quantity},
                        {"N", row.n},
                        {"estimate", row.estimate},
                        {"std_error", row.std_error},
                        {"samples", row.samples},
                        {"seed", row.seed}});
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_metadata(const std::string& path, const RunConfig& cfg,
                    const std::string& result_path, double wall_seconds) {
  nlohmann::json doc;
  doc["command"] = command_name(cfg.command);
  doc["tool_version"] = kVersion;
  doc["master_seed"] = cfg.master_seed;
  doc["params"] = {{"nu", cfg.nu}, {"rho", cfg.rho}, {"beta", cfg.beta}};
  doc["gap"] = {{"c2", cfg.gap.c2}, {"c3", cfg.gap.c3}, {"eta1", cfg.gap.eta1}};
  doc["r"] = cfg.r;
  doc["n"] = cfg.n_grid;
  doc["grid_points"] = cfg.n_points;
  doc["samples"] = cfg.samples;
  doc["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  doc["workers"] = cfg.workers;
  doc["output"] = result_path;
  doc["wall_clock_seconds"] = wall_seconds;
  {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&tt));
    doc["generated_at"] = buf;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open metadata file '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace

int run(const RunConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  try {
    std::vector<ResultRow> rows;
    switch (cfg.command) {
      case Command::CriticalDensity:
        rows = run_critical_density(cfg);
        break;
      case Command::GapProbability:
        rows = run_gap_probability(cfg);
        break;
      case Command::Condensate:
        rows = run_condensate(cfg);
        break;
      case Command::SinglePath:
        rows = run_single_path(cfg);
        break;
      case Command::Extremes:
        rows = run_extremes(cfg);
        break;
      case Command::VerifyAssumptions:
        rows = run_verify_assumptions(cfg);
        break;
    }

    std::string path = cfg.output_path;
    if (path.empty())
      path = std::string(command_name(cfg.command)) +
             (cfg.format == OutputFormat::Csv ? ".csv" : ".json");
    if (cfg.format == OutputFormat::Csv)
      write_csv(path, rows);
    else
      write_json(path, cfg, rows);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    write_metadata(path + ".meta.json", cfg, path, wall);
    return 0;
  } catch (const SubcriticalDensityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error (" << e.field << "): " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lsgas::cli
