#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsgas/params.hpp"

namespace lsgas {

/// One realization of the Poisson impurity set restricted to the open window
/// (-L/2, L/2): sorted points, the count kappa, and the kappa+1 interval
/// lengths clipped to the window. Points are strictly increasing and strictly
/// inside the window, so every clipped length is positive. Immutable.
class Configuration {
 public:
  Configuration(double window_length, std::vector<double> points);

  double window_length() const noexcept { return window_length_; }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  std::size_t count() const noexcept { return points_.size(); }

 private:
  double window_length_;
  std::vector<double> points_;
  std::vector<double> lengths_;
};

/// Clipped interval lengths for sorted points inside the open window:
/// kappa+1 values (left stub, interior gaps, right stub); [L] when no points.
/// Throws std::invalid_argument if points are not strictly increasing or not
/// strictly inside the window.
std::vector<double> interval_lengths(double window_length,
                                     std::span<const double> points);

/// Draws kappa ~ Poisson(nu*L), then kappa i.i.d. uniform positions on the
/// window, then sorts. Positions that collide after rounding (or land on a
/// window edge) are redrawn so the strictly-increasing invariant holds.
/// Deterministic in (params, seed).
Configuration sample_configuration(const ModelParams& params, std::uint64_t seed);

/// The k largest interval lengths in descending order, zero-padded when the
/// configuration has fewer than k intervals.
std::vector<double> largest_lengths(const Configuration& config, std::size_t k);

/// Grows the window around an existing realization: old points are kept
/// exactly; the two flanking annuli receive fresh Poisson(nu) points from
/// independently derived sub-seeds. Restricting the result to the old window
/// reproduces the input. Throws if the window would shrink.
Configuration extend_configuration(const Configuration& config,
                                   double new_window_length, double nu,
                                   std::uint64_t seed);

/// Restriction of a configuration to a centered sub-window.
Configuration restrict_configuration(const Configuration& config,
                                     double window_length);

/// For each trial draws k i.i.d. Exp(nu) lengths and records the difference
/// between the largest and the second largest. The survival function of the
/// result is exactly exp(-nu t) for every k >= 2.
std::vector<double> top_two_gap_samples(std::size_t k, double nu,
                                        std::size_t trials, std::uint64_t seed);

}  // namespace lsgas
