#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsgas/params.hpp"
#include "lsgas/spectrum.hpp"

namespace lsgas {

/// Raised when an adaptive integral fails to reach its tolerance; carries the
/// partial value for diagnostics.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial, double abs_error)
      : std::runtime_error(what), partial_value(partial), error_estimate(abs_error) {}
  double partial_value;
  double error_estimate;
};

/// Raised when the requested particle density cannot be realized.
class DensityInfeasibleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an operation that needs the condensed regime is invoked with
/// rho <= rho_c(beta).
class SubcriticalDensityError : public std::runtime_error {
 public:
  SubcriticalDensityError(const std::string& what, double rho_, double rho_c_)
      : std::runtime_error(what), rho(rho_), rho_c(rho_c_) {}
  double rho;
  double rho_c;
};

/// Bose occupation kernel: 1/(e^{beta E} - 1) for E > 0, exactly 0 for E <= 0.
/// expm1 supplies the stable small-argument path; for beta*E beyond the
/// overflow threshold the value continues as e^{-beta E}.
double bose_factor(double e, double beta);

/// Closed-form infinite-volume integrated density of states of the dissected
/// line: nu * e^{-u} / (1 - e^{-u}) with u = nu*pi/sqrt(E) for E > 0, else 0.
double limiting_ids(double e, double nu);

struct CriticalDensityResult {
  double rho_c;
  double abs_error_estimate;
  double beta;
  double nu;

  /// Condensate density at total density rho.
  double rho0(double rho) const noexcept { return rho - rho_c; }
};

/// Critical density: integral of the Bose kernel against the limiting
/// density of states, evaluated after the substitution u = nu*pi*E^{-1/2}
/// which removes the E^{-3/2} near-singularity. Error estimate is at most
/// 1e-8 of the result or a QuadratureError is raised.
CriticalDensityResult critical_density(double beta, double nu);

/// Chemical potential and occupations solving the grand-canonical density
/// constraint on one spectrum.
struct GrandCanonicalState {
  double mu;
  std::vector<double> occupations;  // aligned with the spectrum's levels
  double tail_mass;                 // bound on the above-cutoff density
  double residual;                  // |F(mu) - rho| achieved by the solve
};

/// The constraint function F(mu) = (1/L)[sum_j B(E_j - mu) + tail(mu)];
/// strictly increasing in mu on (-inf, e1). tail(mu) is the analytic
/// geometric-series bound on the modes above the enumeration cutoff (zero for
/// spectra without length data).
double grand_canonical_density(const Spectrum& spectrum, const ModelParams& params,
                               double mu);

/// Upper bound (in count units, not density) for the occupation mass sitting
/// above the spectrum's cutoff at chemical potential mu.
double tail_bound(const Spectrum& spectrum, double beta, double mu);

/// Solves F(mu) = rho by bracketed bisection on (-inf, e1). The enumeration
/// cutoff must be generous enough that the analytic tail bound stays below
/// 1e-3 * tol * L, otherwise a validation error is raised.
GrandCanonicalState chemical_potential(const Spectrum& spectrum,
                                       const ModelParams& params, double tol);

/// Occupation numbers n_j = B(E_j - mu); requires mu < ground energy.
std::vector<double> occupations(const Spectrum& spectrum, double mu, double beta);

struct CondensateFraction {
  double fraction;                // clamped to [0, 1]
  double raw;                     // unclamped value
  std::vector<double> per_level;  // n_j / N for j <= c2+1 (as available)
};

/// (1/N) * sum of the lowest c2 occupations.
CondensateFraction condensate_fraction(const GrandCanonicalState& state,
                                       std::size_t c2, std::uint64_t n_particles);

/// Numeric probe of the standing model assumptions.
struct AssumptionReport {
  std::vector<std::pair<double, double>> decay_sequence;  // (N, a_N)
  bool decay_monotone;

  std::vector<std::pair<double, double>> small_e_ratio;  // (eps, N_inf(eps)/eps)

  double tail_integral;      // int_0^eps N_inf(E) E^{-2} dE
  double tail_integral_eps;
  bool tail_integral_finite;

  std::vector<std::pair<double, double>> ids_ratio;  // (E, mean N_N(E)/N_inf(E))
  double empirical_c1;  // max of the ratio grid; an estimate, not a proof
};

/// Evaluates (a) the N^{1-eta1} * N_inf([(1+eta1/2) nu pi / ln L]^2) decay
/// sequence on a geometric N-grid, (b) eps^{-1} N_inf(eps) on a shrinking
/// eps-grid, (c) the small-energy tail integral, and (d) a Monte Carlo
/// estimate of E N_N(E) / N_inf(E) on a small-E grid.
AssumptionReport verify_assumptions(double eta1, const ModelParams& params,
                                    std::size_t n_grid, std::size_t samples,
                                    std::uint64_t seed);

}  // namespace lsgas
