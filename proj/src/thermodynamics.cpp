#include "lsgas/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lsgas/numerics.hpp"
#include "lsgas/quadrature.hpp"
#include "lsgas/rng.hpp"

namespace lsgas {

double bose_factor(double e, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("bose_factor: beta must be > 0");
  if (!(e > 0.0)) return 0.0;
  const double x = beta * e;
  if (x > 708.0) return std::exp(-x);
  return 1.0 / std::expm1(x);
}

double limiting_ids(double e, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("limiting_ids: nu must be > 0");
  if (!(e > 0.0)) return 0.0;
  const double u = nu * kPi / std::sqrt(e);
  if (u > 708.0) return nu * std::exp(-u);
  return nu / std::expm1(u);
}

namespace {

// Pushforward of the limiting density of states under u = nu*pi*E^{-1/2}:
// nu e^u / (e^u - 1)^2, written with expm1 so both endpoints stay stable.
double ids_measure_u(double nu, double u) {
  const double denom = std::expm1(-u);  // -(1 - e^{-u})
  return nu * std::exp(-u) / (denom * denom);
}

}  // namespace

CriticalDensityResult critical_density(double beta, double nu) {
  if (!(beta > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("critical_density: beta and nu must be > 0");

  auto integrand = [beta, nu](double u) {
    if (!(u > 0.0)) return 0.0;
    const double b = bose_factor(sq(nu * kPi / u), beta);
    if (b == 0.0) return 0.0;
    return b * ids_measure_u(nu, u);
  };

  // Truncate where the integrand is below 1e-20 of the running integral.
  double upper = 32.0;
  QuadratureResult quad = integrate_adaptive(integrand, 0.0, upper, 0.0, 1e-9);
  while (integrand(upper) * upper > 1e-20 * quad.value && upper < 1.0e9) {
    upper *= 2.0;
    quad = integrate_adaptive(integrand, 0.0, upper, 0.0, 1e-9);
  }

  if (!quad.converged || !(quad.abs_error <= 1e-8 * quad.value))
    throw QuadratureError("critical_density: quadrature did not reach 1e-8 relative error",
                          quad.value, quad.abs_error);
  return CriticalDensityResult{quad.value, quad.abs_error, beta, nu};
}

namespace {

// Geometric-series bound for sum over modes above the cutoff, split into a
// mu-independent series and the factor e^{beta mu} / (1 - e^{-beta(E_cut - mu)}).
double tail_series(const Spectrum& spectrum, double beta) {
  if (spectrum.lengths.empty()) return 0.0;
  NeumaierAccumulator acc;
  for (double l : spectrum.lengths) {
    if (!(l > 0.0)) continue;
    const std::int64_t m = modes_below(l, spectrum.cutoff);
    const double e_first = level_energy(l, m + 1);
    const double ratio = std::exp(-beta * sq(kPi / l) * static_cast<double>(2 * m + 3));
    acc.add(std::exp(-beta * e_first) / (1.0 - ratio));
  }
  return acc.value();
}

double tail_factor(double cutoff, double beta, double mu) {
  return std::exp(beta * mu) / -std::expm1(-beta * (cutoff - mu));
}

double occupation_sum(const Spectrum& spectrum, double beta, double mu) {
  NeumaierAccumulator acc;
  for (const Level& lv : spectrum.levels) acc.add(bose_factor(lv.energy - mu, beta));
  return acc.value();
}

}  // namespace

double tail_bound(const Spectrum& spectrum, double beta, double mu) {
  const double series = tail_series(spectrum, beta);
  if (series == 0.0) return 0.0;
  return tail_factor(spectrum.cutoff, beta, mu) * series;
}

double grand_canonical_density(const Spectrum& spectrum, const ModelParams& params,
                               double mu) {
  const double l_window = params.window_length();
  return (occupation_sum(spectrum, params.beta, mu) +
          tail_bound(spectrum, params.beta, mu)) /
         l_window;
}

GrandCanonicalState chemical_potential(const Spectrum& spectrum,
                                       const ModelParams& params, double tol) {
  if (spectrum.levels.empty())
    throw std::invalid_argument("chemical_potential: empty spectrum");
  if (!(tol > 0.0))
    throw std::invalid_argument("chemical_potential: tol must be > 0");

  const double beta = params.beta;
  const double rho = params.rho;
  const double l_window = params.window_length();
  const double e1 = spectrum.ground_energy();
  const double series = tail_series(spectrum, beta);

  // Cutoff contract: even at mu -> e1 the analytic tail must be negligible
  // against the solve tolerance.
  if (series > 0.0 &&
      tail_factor(spectrum.cutoff, beta, e1) * series >= 1e-3 * tol * l_window)
    throw std::invalid_argument(
        "chemical_potential: enumeration cutoff too low for requested tolerance");

  auto constraint = [&](double mu) {
    double total = occupation_sum(spectrum, beta, mu);
    if (series > 0.0) total += tail_factor(spectrum.cutoff, beta, mu) * series;
    return total / l_window;
  };

  double hi = e1 * (1.0 - 1e-15) - 1e-30;
  if (!(constraint(hi) > rho))
    throw DensityInfeasibleError(
        "chemical_potential: density " + std::to_string(rho) +
        " not reachable below the ground state");

  double lo = e1 - 1.0 / beta;
  for (int m = 1; constraint(lo) >= rho; ++m) {
    if (m > 200)
      throw std::runtime_error("chemical_potential: bracket expansion failed");
    lo = e1 - std::pow(2.0, m) / beta;
  }

  // Bisection; unconditionally convergent since the constraint is strictly
  // increasing in mu.
  double mu = hi;
  double residual = std::abs(constraint(mu) - rho);
  for (int it = 0; it < 400 && residual > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // bracket one ulp wide
    const double value = constraint(mid);
    const double r = std::abs(value - rho);
    if (r < residual) {
      residual = r;
      mu = mid;
    }
    if (value < rho)
      lo = mid;
    else
      hi = mid;
  }
  if (residual > tol)
    throw std::runtime_error(
        "chemical_potential: bisection stalled at residual " +
        std::to_string(residual));

  GrandCanonicalState state;
  state.mu = mu;
  state.occupations = occupations(spectrum, mu, beta);
  state.tail_mass =
      series > 0.0 ? tail_factor(spectrum.cutoff, beta, mu) * series / l_window : 0.0;
  state.residual = residual;
  return state;
}

std::vector<double> occupations(const Spectrum& spectrum, double mu, double beta) {
  if (spectrum.levels.empty())
    throw std::invalid_argument("occupations: empty spectrum");
  if (!(mu < spectrum.ground_energy()))
    throw std::invalid_argument("occupations: mu must be below the ground energy");
  std::vector<double> n;
  n.reserve(spectrum.levels.size());
  for (const Level& lv : spectrum.levels)
    n.push_back(bose_factor(lv.energy - mu, beta));
  return n;
}

CondensateFraction condensate_fraction(const GrandCanonicalState& state,
                                       std::size_t c2, std::uint64_t n_particles) {
  if (c2 < 1) throw std::invalid_argument("condensate_fraction: c2 must be >= 1");
  if (c2 > state.occupations.size())
    throw std::invalid_argument(
        "condensate_fraction: c2 exceeds the enumerated level count");
  const double n = static_cast<double>(n_particles);
  double sum = 0.0;
  for (std::size_t j = 0; j < c2; ++j) sum += state.occupations[j];
  CondensateFraction out;
  out.raw = sum / n;
  out.fraction = std::clamp(out.raw, 0.0, 1.0);
  const std::size_t reported = std::min(c2 + 1, state.occupations.size());
  out.per_level.reserve(reported);
  for (std::size_t j = 0; j < reported; ++j)
    out.per_level.push_back(state.occupations[j] / n);
  return out;
}

AssumptionReport verify_assumptions(double eta1, const ModelParams& params,
                                    std::size_t n_grid, std::size_t samples,
                                    std::uint64_t seed) {
  if (!(eta1 > 0.0 && eta1 < 1.0))
    throw std::invalid_argument("verify_assumptions: eta1 must lie in (0, 1)");
  if (n_grid < 2)
    throw std::invalid_argument("verify_assumptions: n_grid must be >= 2");
  if (samples < 1)
    throw std::invalid_argument("verify_assumptions: samples must be >= 1");

  AssumptionReport report;
  const double nu = params.nu;

  // (a) the decay sequence behind the smallness-of-low-states assumption.
  report.decay_monotone = true;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double exponent =
        3.0 + 4.0 * static_cast<double>(i) / static_cast<double>(n_grid - 1);
    const double n_val = std::pow(10.0, exponent);
    const double l_window = n_val / params.rho;
    if (!(l_window > 1.0))
      throw std::invalid_argument("verify_assumptions: window too small, ln L <= 0");
    const double e_scale = sq((1.0 + eta1 / 2.0) * nu * kPi / std::log(l_window));
    const double a_n = std::pow(n_val, 1.0 - eta1) * limiting_ids(e_scale, nu);
    if (!report.decay_sequence.empty() &&
        !(a_n < report.decay_sequence.back().second))
      report.decay_monotone = false;
    report.decay_sequence.emplace_back(n_val, a_n);
  }

  // (b) eps^{-1} N_inf(eps) on a shrinking grid.
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double exponent =
        -1.0 - 3.0 * static_cast<double>(i) / static_cast<double>(n_grid - 1);
    const double eps = std::pow(10.0, exponent);
    report.small_e_ratio.emplace_back(eps, limiting_ids(eps, nu) / eps);
  }

  // (c) int_0^eps N_inf(E) E^{-2} dE = (2/(nu pi^2)) int_{nu pi / sqrt(eps)}^inf
  // u/(e^u - 1) du after the same substitution as the critical density.
  report.tail_integral_eps = 1.0;
  {
    const double u_lo = nu * kPi / std::sqrt(report.tail_integral_eps);
    auto integrand = [](double u) {
      if (!(u > 0.0)) return 0.0;
      return u * std::exp(-u) / -std::expm1(-u);
    };
    double upper = std::max(64.0, 2.0 * u_lo);
    QuadratureResult quad = integrate_adaptive(integrand, u_lo, upper, 0.0, 1e-10);
    while (integrand(upper) * upper > 1e-20 * quad.value && upper < 1.0e9) {
      upper *= 2.0;
      quad = integrate_adaptive(integrand, u_lo, upper, 0.0, 1e-10);
    }
    report.tail_integral = 2.0 / (nu * kPi * kPi) * quad.value;
    report.tail_integral_finite = quad.converged && std::isfinite(report.tail_integral);
    if (!report.tail_integral_finite)
      throw QuadratureError("verify_assumptions: tail integral did not converge",
                            report.tail_integral, quad.abs_error);
  }

  // (d) Monte Carlo ratio of the finite-volume counting function to the
  // limiting one on a small-energy grid; the sup is the empirical c1.
  {
    std::vector<double> grid;
    for (std::size_t i = 0; i < n_grid; ++i)
      grid.push_back(0.1 * std::pow(10.0, static_cast<double>(i) /
                                              static_cast<double>(n_grid - 1)));
    std::vector<std::int64_t> totals(grid.size(), 0);
    for (std::size_t s = 0; s < samples; ++s) {
      const auto config = sample_configuration(
          params, rng::derive_seed(seed, "verify_assumptions", s));
      const auto counts = level_counts_below(config, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) totals[i] += counts[i];
    }
    const double l_window = params.window_length();
    report.empirical_c1 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double mean_ids = static_cast<double>(totals[i]) /
                              (static_cast<double>(samples) * l_window);
      const double ratio = mean_ids / limiting_ids(grid[i], nu);
      report.ids_ratio.emplace_back(grid[i], ratio);
      report.empirical_c1 = std::max(report.empirical_c1, ratio);
    }
  }

  return report;
}

}  // namespace lsgas
