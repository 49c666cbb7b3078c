#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsgas/numerics.hpp"
#include "lsgas/point_process.hpp"

namespace lsgas {

/// One Dirichlet level: energy (pi*mode/length)^2 of mode `mode` on interval
/// `interval` of the source configuration.
struct Level {
  double energy;
  std::int32_t interval;
  std::int32_t mode;

  friend bool operator==(const Level&, const Level&) = default;
};

/// Ascending eigenvalues of the dissected-window Hamiltonian, complete below
/// `cutoff`. Ties are ordered by (energy, interval, mode). `lengths` keeps the
/// source interval lengths so downstream code can bound the truncated tail;
/// hand-built spectra may leave it empty (no tail).
struct Spectrum {
  std::vector<Level> levels;
  double cutoff = 0.0;
  std::vector<double> lengths;

  double ground_energy() const;
  std::size_t size() const noexcept { return levels.size(); }
};

/// Ground state, first excited state, and the (c2+1)-th level, as used by the
/// spectral-gap event.
struct EnergyLevels {
  double e1;
  double e2;
  double e_c2_plus_1;
};

/// Energy of mode n on an interval of length l. The single canonical
/// expression; every enumeration and closed-form count in this module uses
/// it so that boundary decisions are bit-identical across code paths.
inline double level_energy(double length, std::int64_t mode) noexcept {
  return sq(kPi * static_cast<double>(mode) / length);
}

/// Number of modes of an interval of length l with energy strictly below e,
/// i.e. ceil(l*sqrt(e)/pi - 1) clamped at 0, with the float candidate fixed up
/// against the exact level_energy(l, n) < e predicate.
std::int64_t modes_below(double length, double e) noexcept;

/// All levels with energy strictly below e_cut, sorted ascending.
Spectrum enumerate_below(const Configuration& config, double e_cut);

/// The k globally smallest levels via a lazy merge over per-interval mode
/// generators (each interval yields (pi n / l)^2 in increasing n).
Spectrum k_smallest(const Configuration& config, std::size_t k);

/// Same merge over an explicit length list; used where only the top few
/// interval lengths are in play.
Spectrum k_smallest_from_lengths(std::span<const double> lengths, std::size_t k);

/// Finite-volume counting function (1/L) * #{levels < e}; 0 for e <= 0.
double counting_function(const Configuration& config, double e);

/// Level count below each of several energies in one pass over the intervals;
/// equals counting_function(config, e) * L entry-wise.
std::vector<std::int64_t> level_counts_below(const Configuration& config,
                                             std::span<const double> energies);

/// Extracts (e1, e2, e_{c2+1}) from a spectrum holding at least c2+1 levels.
EnergyLevels energy_levels(const Spectrum& spectrum, std::size_t c2);

}  // namespace lsgas
