#include "lsgas/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lsgas/numerics.hpp"
#include "lsgas/parallel.hpp"
#include "lsgas/rng.hpp"

namespace lsgas {

namespace {

constexpr std::size_t kSortFallback = 4096;

struct TopK {
  std::vector<double> values;
  explicit TopK(std::size_t k) : values(k, 0.0) {}
  void offer(double g) {
    if (g <= values.back()) return;
    values.back() = g;
    for (std::size_t i = values.size() - 1; i > 0 && values[i] > values[i - 1]; --i)
      std::swap(values[i], values[i - 1]);
  }
};

std::vector<double> top_lengths_sorted(rng::Engine& eng, std::uint64_t count,
                                       double window, std::size_t k) {
  const double half = window / 2.0;
  std::vector<double> pts(count);
  for (auto& x : pts) x = rng::uniform_in(eng, -half, half);
  std::sort(pts.begin(), pts.end());
  TopK top(k);
  double prev = -half;
  for (double x : pts) {
    top.offer(x - prev);
    prev = x;
  }
  top.offer(half - prev);
  return std::move(top.values);
}

// Top-k interval lengths of kappa uniform points on (-L/2, L/2) drawn from
// `eng`, without storing or sorting the points. Pass 1 marks which of the
// ~kappa/4 equal-width cells are occupied. Any inter-point gap of at least
// two cell widths fully contains an empty cell, so its endpoints are the
// extreme points of the occupied cells flanking an empty run; pass 2 replays
// the identical draw stream to capture those extremes. If the k-th candidate
// does not clear the two-cell width the sorted path decides instead.
std::vector<double> top_lengths_from_stream(rng::Engine& eng, std::uint64_t count,
                                            double window, std::size_t k) {
  if (count < kSortFallback) return top_lengths_sorted(eng, count, window, k);

  const double half = window / 2.0;
  const std::size_t cells = static_cast<std::size_t>(count / 4);
  const double cell_width = window / static_cast<double>(cells);
  const rng::Engine replay = eng;

  thread_local std::vector<std::uint8_t> occupied;
  thread_local std::vector<std::int32_t> slot_map;
  occupied.assign(cells, 0);

  for (std::uint64_t i = 0; i < count; ++i) {
    const double u = rng::uniform_u01(eng);
    auto c = static_cast<std::size_t>(u * static_cast<double>(cells));
    if (c >= cells) c = cells - 1;
    occupied[c] = 1;
  }

  // Maximal runs of empty cells; their occupied neighbours are the flanks
  // whose extreme points delimit the candidate gaps.
  struct Run {
    std::int32_t before;  // flank slot left of the run, -1 at the window edge
    std::int32_t after;   // flank slot right of the run, -1 at the window edge
  };
  std::vector<Run> runs;
  std::vector<std::int32_t> slot_of_cell;  // flank cell -> slot
  slot_map.assign(cells, -1);
  {
    auto flank_slot = [&](std::size_t c) {
      if (slot_map[c] < 0) {
        slot_map[c] = static_cast<std::int32_t>(slot_of_cell.size());
        slot_of_cell.push_back(static_cast<std::int32_t>(c));
      }
      return slot_map[c];
    };
    std::size_t c = 0;
    while (c < cells) {
      if (occupied[c]) {
        ++c;
        continue;
      }
      std::size_t end = c;
      while (end + 1 < cells && !occupied[end + 1]) ++end;
      Run run;
      run.before = c == 0 ? -1 : flank_slot(c - 1);
      run.after = end + 1 == cells ? -1 : flank_slot(end + 1);
      runs.push_back(run);
      c = end + 1;
    }
  }

  std::vector<double> flank_min(slot_of_cell.size(),
                                std::numeric_limits<double>::infinity());
  std::vector<double> flank_max(slot_of_cell.size(),
                                -std::numeric_limits<double>::infinity());
  if (!runs.empty()) {
    rng::Engine second = replay;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double u = rng::uniform_u01(second);
      auto c = static_cast<std::size_t>(u * static_cast<double>(cells));
      if (c >= cells) c = cells - 1;
      const std::int32_t slot = slot_map[c];
      if (slot < 0) continue;
      const double x = -half + u * window;
      flank_min[slot] = std::min(flank_min[slot], x);
      flank_max[slot] = std::max(flank_max[slot], x);
    }
  }

  TopK top(k);
  for (const Run& r : runs) {
    const double left = r.before < 0 ? -half : flank_max[r.before];
    const double right = r.after < 0 ? half : flank_min[r.after];
    top.offer(right - left);
  }

  if (top.values[k - 1] >= 2.0 * cell_width) return std::move(top.values);

  rng::Engine fallback = replay;
  return top_lengths_sorted(fallback, count, window, k);
}

std::vector<double> positive_prefix(std::span<const double> lengths) {
  std::vector<double> out;
  for (double l : lengths)
    if (l > 0.0) out.push_back(l);
  return out;
}

double moment_mean(std::span<const double> values) {
  return values.empty() ? 0.0
                        : neumaier_sum(values) / static_cast<double>(values.size());
}

}  // namespace

Spectrum constraint_spectrum(const Configuration& config,
                             const ModelParams& params, double tol) {
  // Start at a cutoff where the geometric tail series is comfortably below
  // the contract and double on the rare miss.
  const double kappa = static_cast<double>(config.count());
  double e_cut = (36.0 + std::log(kappa + 2.0)) / params.beta;
  for (int attempt = 0; attempt < 16; ++attempt) {
    Spectrum spec = enumerate_below(config, e_cut);
    if (spec.levels.size() >= 2 &&
        tail_bound(spec, params.beta, spec.ground_energy()) <
            1e-3 * tol * params.window_length())
      return spec;
    e_cut *= 2.0;
  }
  throw std::runtime_error("constraint_spectrum: cutoff search failed");
}

double default_solve_tolerance(const ModelParams& params) {
  return 1e-10 * params.rho;
}

double jackknife_std_error(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double total = neumaier_sum(values);
  // Leave-one-out means theta_i = (total - v_i) / (n - 1).
  std::vector<double> loo(n);
  for (std::size_t i = 0; i < n; ++i)
    loo[i] = (total - values[i]) / static_cast<double>(n - 1);
  const double loo_mean = neumaier_sum(loo) / static_cast<double>(n);
  NeumaierAccumulator ss;
  for (double t : loo) ss.add(sq(t - loo_mean));
  return std::sqrt(std::max(0.0, ss.value() * static_cast<double>(n - 1) /
                                     static_cast<double>(n)));
}

bool gap_event_holds(const EnergyLevels& levels, const ModelParams& params,
                     const GapEventParams& gp) {
  gp.validate();
  const double n = static_cast<double>(params.n_particles);
  const double gap_floor = gp.c3 * std::pow(n, -1.0 + gp.eta1);
  const double log_l = std::log(params.window_length());
  if (!(log_l > 0.0)) return false;
  const double e1_ceiling = sq((1.0 + gp.eta1 / 4.0) * params.nu * kPi / log_l);
  return levels.e_c2_plus_1 - levels.e1 >= gap_floor && levels.e1 <= e1_ceiling;
}

std::vector<double> top_lengths_sampled(const ModelParams& params,
                                        std::uint64_t seed, std::size_t k) {
  if (k < 1) throw std::invalid_argument("top_lengths_sampled: k must be >= 1");
  const double window = params.window_length();
  auto eng = rng::make_engine(seed);
  std::poisson_distribution<std::uint64_t> poisson(params.nu * window);
  const std::uint64_t count = poisson(eng);
  return top_lengths_from_stream(eng, count, window, k);
}

GapProbabilityReport estimate_gap_probability(const ModelParams& params,
                                              const GapEventParams& gp,
                                              std::size_t samples,
                                              std::uint64_t seed,
                                              unsigned workers) {
  gp.validate();
  if (samples < 100)
    throw std::invalid_argument("estimate_gap_probability: samples must be >= 100");

  std::vector<std::uint8_t> hits(samples, 0);
  parallel_for_index(samples, workers, [&](std::size_t i) {
    const auto top = top_lengths_sampled(
        params, rng::derive_seed(seed, "gap_probability", i), gp.c2 + 1);
    const auto spec = k_smallest_from_lengths(positive_prefix(top), gp.c2 + 1);
    hits[i] = gap_event_holds(energy_levels(spec, gp.c2), params, gp) ? 1 : 0;
  });

  std::uint64_t successes = 0;
  for (auto h : hits) successes += h;
  const double p = static_cast<double>(successes) / static_cast<double>(samples);

  GapProbabilityReport out{EstimateReport{p, bernoulli_std_error(p, samples),
                                          samples, seed},
                           params, gp};
  return out;
}

std::vector<CondensateSample> condensate_samples(const ModelParams& params,
                                                 std::size_t c2,
                                                 std::size_t samples,
                                                 std::uint64_t seed,
                                                 unsigned workers) {
  if (c2 < 1) throw std::invalid_argument("condensate_samples: c2 must be >= 1");
  if (samples < 1)
    throw std::invalid_argument("condensate_samples: samples must be >= 1");

  const double tol = default_solve_tolerance(params);
  std::vector<CondensateSample> out(samples);
  parallel_for_index(samples, workers, [&](std::size_t i) {
    const auto config =
        sample_configuration(params, rng::derive_seed(seed, "condensate", i));
    const auto spec = constraint_spectrum(config, params, tol);
    const auto state = chemical_potential(spec, params, tol);
    const auto cf = condensate_fraction(state, c2, params.n_particles);
    const double next =
        cf.per_level.size() > c2 ? cf.per_level[c2] : 0.0;
    out[i] = CondensateSample{cf.fraction, next, state.mu};
  });
  return out;
}

CondensateMomentsReport estimate_condensate_moments(const ModelParams& params,
                                                    std::size_t c2, int r,
                                                    std::size_t samples,
                                                    std::uint64_t seed,
                                                    unsigned workers) {
  if (r != 1 && r != 2)
    throw std::invalid_argument("estimate_condensate_moments: r must be 1 or 2");
  if (samples < 50)
    throw std::invalid_argument("estimate_condensate_moments: samples must be >= 50");

  const auto critical = critical_density(params.beta, params.nu);
  if (!(params.rho > critical.rho_c))
    throw SubcriticalDensityError(
        "estimate_condensate_moments: rho = " + std::to_string(params.rho) +
            " does not exceed the critical density rho_c = " +
            std::to_string(critical.rho_c),
        params.rho, critical.rho_c);
  const double target = critical.rho0(params.rho) / params.rho;

  const auto draws = condensate_samples(params, c2, samples, seed, workers);
  std::vector<double> dev(samples), next(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double d = std::abs(draws[i].fraction - target);
    dev[i] = r == 1 ? d : d * d;
    next[i] = r == 1 ? draws[i].next_fraction : sq(draws[i].next_fraction);
  }

  CondensateMomentsReport report;
  report.deviation_moment =
      EstimateReport{moment_mean(dev), jackknife_std_error(dev),
                     static_cast<std::uint64_t>(samples), seed};
  report.next_level_moment =
      EstimateReport{moment_mean(next), jackknife_std_error(next),
                     static_cast<std::uint64_t>(samples), seed};
  report.target = target;
  report.rho_c = critical.rho_c;
  report.c2 = c2;
  report.r = r;
  return report;
}

SinglePathReport single_path_fraction(const ModelParams& params,
                                      std::span<const std::uint64_t> n_sequence,
                                      std::uint64_t seed) {
  if (n_sequence.empty())
    throw std::invalid_argument("single_path_fraction: empty N sequence");
  for (std::size_t i = 1; i < n_sequence.size(); ++i)
    if (!(n_sequence[i] > n_sequence[i - 1]))
      throw std::invalid_argument("single_path_fraction: N sequence must increase");

  SinglePathReport report;
  Configuration config =
      sample_configuration(params.with_particles(n_sequence[0]), seed);
  for (std::size_t i = 0; i < n_sequence.size(); ++i) {
    const auto step = params.with_particles(n_sequence[i]);
    if (i > 0)
      config = extend_configuration(config, step.window_length(), params.nu,
                                    rng::derive_seed(seed, "single_path/extend", i));
    const double tol = default_solve_tolerance(step);
    const auto spec = constraint_spectrum(config, step, tol);
    const auto state = chemical_potential(spec, step, tol);
    const auto cf = condensate_fraction(state, 1, step.n_particles);
    report.fractions.emplace_back(n_sequence[i], cf.fraction);
  }

  report.tail_half_max = 0.0;
  for (std::size_t i = n_sequence.size() / 2; i < report.fractions.size(); ++i)
    report.tail_half_max =
        std::max(report.tail_half_max, report.fractions[i].second);
  return report;
}

ExtremeValueReport extreme_value_suite(const ModelParams& params,
                                       std::size_t samples, std::uint64_t seed,
                                       unsigned workers) {
  if (samples < 1000)
    throw std::invalid_argument("extreme_value_suite: samples must be >= 1000");

  ExtremeValueReport report;
  report.samples = samples;
  report.master_seed = seed;
  const double window = params.window_length();
  const double nu = params.nu;

  // Largest clipped length against the iterated-log lower threshold.
  const double log_l = std::log(window);
  report.largest_threshold =
      (log_l - (1.0 + report.eps) * std::log(log_l)) / nu;
  {
    std::vector<std::uint8_t> hits(samples, 0);
    parallel_for_index(samples, workers, [&](std::size_t i) {
      const auto top = top_lengths_sampled(
          params, rng::derive_seed(seed, "extremes/largest", i), 1);
      hits[i] = top[0] >= report.largest_threshold ? 1 : 0;
    });
    std::uint64_t n_hit = 0;
    for (auto h : hits) n_hit += h;
    report.largest_freq = static_cast<double>(n_hit) / static_cast<double>(samples);
    report.largest_se = bernoulli_std_error(report.largest_freq, samples);
    report.largest_pass = report.largest_freq >= 0.99 - 3.0 * report.largest_se;
  }

  // Poisson count concentration against the Chernoff exponents.
  {
    const double mean = nu * window;
    auto chernoff = [&](double theta) {
      return std::exp(-mean * (1.0 - theta + theta * std::log(theta)));
    };
    report.count_upper_bound = chernoff(report.count_upper_theta);
    report.count_lower_bound = chernoff(report.count_lower_theta);

    std::vector<double> counts(samples);
    parallel_for_index(samples, workers, [&](std::size_t i) {
      auto eng = rng::make_engine(rng::derive_seed(seed, "extremes/count", i));
      std::poisson_distribution<std::uint64_t> poisson(mean);
      counts[i] = static_cast<double>(poisson(eng));
    });

    std::uint64_t above = 0, below = 0;
    for (double c : counts) {
      if (c >= report.count_upper_theta * mean) ++above;
      if (c <= report.count_lower_theta * mean) ++below;
    }
    report.count_upper_freq =
        static_cast<double>(above) / static_cast<double>(samples);
    report.count_lower_freq =
        static_cast<double>(below) / static_cast<double>(samples);
    report.count_upper_pass =
        report.count_upper_freq <=
        report.count_upper_bound +
            3.0 * bernoulli_std_error(report.count_upper_freq, samples);
    report.count_lower_pass =
        report.count_lower_freq <=
        report.count_lower_bound +
            3.0 * bernoulli_std_error(report.count_lower_freq, samples);

    const double mean_count = moment_mean(counts);
    report.mean_count_per_length = mean_count / window;
    NeumaierAccumulator ss;
    for (double c : counts) ss.add(sq(c - mean_count));
    const double sd =
        std::sqrt(ss.value() / static_cast<double>(samples > 1 ? samples - 1 : 1));
    report.mean_count_se = sd / std::sqrt(static_cast<double>(samples)) / window;
    report.mean_pass = std::abs(report.mean_count_per_length - nu) <=
                       3.0 * report.mean_count_se;
  }

  // Survival of the top-two spacing against the exact exponential law.
  {
    const auto gaps = top_two_gap_samples(report.gap_k, nu, samples,
                                          rng::derive_seed(seed, "extremes/gap", 0));
    report.gap_pass = true;
    for (int i = 1; i <= 10; ++i) {
      const double t = 0.25 * static_cast<double>(i) / nu;
      std::uint64_t n_hit = 0;
      for (double g : gaps)
        if (g >= t) ++n_hit;
      GapSurvivalPoint pt;
      pt.t = t;
      pt.empirical = static_cast<double>(n_hit) / static_cast<double>(samples);
      pt.exact = std::exp(-nu * t);
      pt.std_error = bernoulli_std_error(pt.empirical, samples);
      pt.pass = std::abs(pt.empirical - pt.exact) <= 3.0 * pt.std_error;
      report.gap_survival.push_back(pt);
      report.gap_pass = report.gap_pass && pt.pass;
    }
  }

  report.all_pass = report.largest_pass && report.count_upper_pass &&
                    report.count_lower_pass && report.mean_pass && report.gap_pass;
  return report;
}

}  // namespace lsgas
