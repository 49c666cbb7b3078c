#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsgas/params.hpp"
#include "lsgas/spectrum.hpp"
#include "lsgas/thermodynamics.hpp"

namespace lsgas {

/// Parameters of the spectral-gap event: the event holds when
/// E_{c2+1} - E_1 >= c3 * N^{-1+eta1} and E_1 <= [(1+eta1/4) nu pi / ln L]^2
/// (both inequalities weak).
struct GapEventParams {
  std::size_t c2 = 1;
  double c3 = 1.0;
  double eta1 = 0.4;

  void validate() const {
    if (c2 < 1) throw std::invalid_argument("GapEventParams: c2 must be >= 1");
    if (!(c3 > 0.0)) throw std::invalid_argument("GapEventParams: c3 must be > 0");
    if (!(eta1 > 0.0 && eta1 < 1.0))
      throw std::invalid_argument("GapEventParams: eta1 must lie in (0, 1)");
  }

  bool operator==(const GapEventParams&) const = default;
};

struct EstimateReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t master_seed = 0;
};

bool gap_event_holds(const EnergyLevels& levels, const ModelParams& params,
                     const GapEventParams& gp);

struct GapProbabilityReport {
  EstimateReport report;
  ModelParams params;
  GapEventParams gap;
};

/// Fraction of i.i.d. realizations on which the gap event holds. Per sample
/// only the c2+1 largest interval lengths enter (the c2+1 lowest levels live
/// on them), so the cost is O(kappa) and no spectrum is materialized.
GapProbabilityReport estimate_gap_probability(const ModelParams& params,
                                              const GapEventParams& gp,
                                              std::size_t samples,
                                              std::uint64_t seed,
                                              unsigned workers = 0);

/// The c2+1 largest interval lengths of the realization with the given seed,
/// descending, zero-padded; same sampling law and seed stream as
/// sample_configuration but computed by a bucketed max-gap pass.
std::vector<double> top_lengths_sampled(const ModelParams& params,
                                        std::uint64_t seed, std::size_t k);

/// One grand-canonical solve per realization.
struct CondensateSample {
  double fraction;       // (1/N) sum of the c2 lowest occupations, clamped
  double next_fraction;  // n_{c2+1} / N
  double mu;
};

/// Full per-sample pipeline (sample -> enumerate -> solve -> fractions);
/// valid on both sides of the critical density.
std::vector<CondensateSample> condensate_samples(const ModelParams& params,
                                                 std::size_t c2,
                                                 std::size_t samples,
                                                 std::uint64_t seed,
                                                 unsigned workers = 0);

/// Enumerates a spectrum with a cutoff high enough that the analytic tail
/// bound is below 1e-3 * tol * L, as chemical_potential requires.
Spectrum constraint_spectrum(const Configuration& config,
                             const ModelParams& params, double tol);

/// Default solve tolerance, 1e-10 * rho.
double default_solve_tolerance(const ModelParams& params);

struct CondensateMomentsReport {
  EstimateReport deviation_moment;   // E |fraction - rho0/rho|^r
  EstimateReport next_level_moment;  // E (n_{c2+1}/N)^r
  double target;                     // (rho - rho_c) / rho
  double rho_c;
  std::size_t c2;
  int r;
};

/// Moment estimates with jackknife standard errors. Requires rho > rho_c
/// (raises SubcriticalDensityError naming the computed rho_c otherwise) and
/// r in {1, 2}.
CondensateMomentsReport estimate_condensate_moments(const ModelParams& params,
                                                    std::size_t c2, int r,
                                                    std::size_t samples,
                                                    std::uint64_t seed,
                                                    unsigned workers = 0);

/// Ground-state fraction along one realization extended through a growing
/// sequence of windows (one omega, nested configurations).
struct SinglePathReport {
  std::vector<std::pair<std::uint64_t, double>> fractions;  // (N, n_1/N)
  double tail_half_max;  // max over the second half of the sequence
};

SinglePathReport single_path_fraction(const ModelParams& params,
                                      std::span<const std::uint64_t> n_sequence,
                                      std::uint64_t seed);

/// Bundled extreme-value checks on the point process.
struct GapSurvivalPoint {
  double t;
  double empirical;
  double exact;  // exp(-nu t)
  double std_error;
  bool pass;
};

struct ExtremeValueReport {
  double eps = 0.5;          // slack in the largest-length threshold
  double largest_threshold;  // nu^{-1} [ln L - (1+eps) ln ln L]
  double largest_freq;
  double largest_se;
  bool largest_pass;

  double count_upper_theta = 1.2;
  double count_upper_freq;
  double count_upper_bound;  // Chernoff e^{-nu L (1 - theta + theta ln theta)}
  bool count_upper_pass;

  double count_lower_theta = 0.8;
  double count_lower_freq;
  double count_lower_bound;
  bool count_lower_pass;

  double mean_count_per_length;
  double mean_count_se;
  bool mean_pass;

  std::size_t gap_k = 100;
  std::vector<GapSurvivalPoint> gap_survival;
  bool gap_pass;

  std::size_t samples;
  std::uint64_t master_seed;
  bool all_pass;
};

ExtremeValueReport extreme_value_suite(const ModelParams& params,
                                       std::size_t samples, std::uint64_t seed,
                                       unsigned workers = 0);

/// Jackknife standard error of a sample mean.
double jackknife_std_error(std::span<const double> values);

}  // namespace lsgas
