#include "lsgas/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lsgas/rng.hpp"

namespace lsgas {

namespace {

void validate_points(double window_length, std::span<const double> points) {
  const double half = window_length / 2.0;
  double prev = -half;
  bool first = true;
  for (double x : points) {
    if (!(x > -half && x < half))
      throw std::invalid_argument("points must lie strictly inside the window");
    if (!first && !(x > prev))
      throw std::invalid_argument("points must be strictly increasing");
    prev = x;
    first = false;
  }
}

// Draws `count` uniform positions strictly inside (lo, hi), sorted, with
// edge hits and post-rounding collisions redrawn from the same stream.
std::vector<double> sorted_uniforms(rng::Engine& eng, std::size_t count,
                                    double lo, double hi) {
  std::vector<double> pts(count);
  for (auto& x : pts) x = rng::uniform_in(eng, lo, hi);
  std::sort(pts.begin(), pts.end());
  for (;;) {
    bool dirty = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const bool edge = !(pts[i] > lo && pts[i] < hi);
      const bool dup = i > 0 && pts[i] == pts[i - 1];
      if (edge || dup) {
        pts[i] = rng::uniform_in(eng, lo, hi);
        dirty = true;
      }
    }
    if (!dirty) return pts;
    std::sort(pts.begin(), pts.end());
  }
}

}  // namespace

Configuration::Configuration(double window_length, std::vector<double> points)
    : window_length_(window_length), points_(std::move(points)) {
  if (!(window_length_ > 0.0))
    throw std::invalid_argument("Configuration: window length must be > 0");
  lengths_ = interval_lengths(window_length_, points_);
}

std::vector<double> interval_lengths(double window_length,
                                     std::span<const double> points) {
  if (!(window_length > 0.0))
    throw std::invalid_argument("interval_lengths: window length must be > 0");
  validate_points(window_length, points);
  const double half = window_length / 2.0;
  std::vector<double> lengths;
  lengths.reserve(points.size() + 1);
  double prev = -half;
  for (double x : points) {
    lengths.push_back(x - prev);
    prev = x;
  }
  lengths.push_back(half - prev);
  return lengths;
}

Configuration sample_configuration(const ModelParams& params, std::uint64_t seed) {
  const double window = params.window_length();
  auto eng = rng::make_engine(seed);
  std::poisson_distribution<std::uint64_t> poisson(params.nu * window);
  const std::uint64_t count = poisson(eng);
  auto pts = sorted_uniforms(eng, count, -window / 2.0, window / 2.0);
  return Configuration(window, std::move(pts));
}

std::vector<double> largest_lengths(const Configuration& config, std::size_t k) {
  if (k < 1) throw std::invalid_argument("largest_lengths: k must be >= 1");
  const auto& lengths = config.lengths();
  std::vector<double> top(k, 0.0);
  std::partial_sort_copy(lengths.begin(), lengths.end(), top.begin(),
                         top.begin() + std::min(k, lengths.size()),
                         std::greater<double>());
  return top;
}

Configuration extend_configuration(const Configuration& config,
                                   double new_window_length, double nu,
                                   std::uint64_t seed) {
  const double old_window = config.window_length();
  if (!(new_window_length > old_window))
    throw std::invalid_argument(
        "extend_configuration: new window must be strictly larger");
  if (!(nu > 0.0))
    throw std::invalid_argument("extend_configuration: nu must be > 0");

  const double old_half = old_window / 2.0;
  const double new_half = new_window_length / 2.0;
  const double annulus = new_half - old_half;

  auto sample_annulus = [&](std::string_view label, double lo,
                            double hi) -> std::vector<double> {
    auto eng = rng::make_engine(rng::derive_seed(seed, label, 0));
    std::poisson_distribution<std::uint64_t> poisson(nu * annulus);
    return sorted_uniforms(eng, poisson(eng), lo, hi);
  };

  // Annulus points land strictly between the old and new edges (edge hits
  // are redrawn), so the restriction to the open old window is untouched.
  auto left = sample_annulus("extend/left", -new_half, -old_half);
  auto right = sample_annulus("extend/right", old_half, new_half);

  std::vector<double> merged;
  merged.reserve(left.size() + config.points().size() + right.size());
  merged.insert(merged.end(), left.begin(), left.end());
  merged.insert(merged.end(), config.points().begin(), config.points().end());
  merged.insert(merged.end(), right.begin(), right.end());
  return Configuration(new_window_length, std::move(merged));
}

Configuration restrict_configuration(const Configuration& config,
                                     double window_length) {
  if (!(window_length > 0.0 && window_length <= config.window_length()))
    throw std::invalid_argument(
        "restrict_configuration: window must be positive and no larger");
  const double half = window_length / 2.0;
  std::vector<double> pts;
  for (double x : config.points())
    if (x > -half && x < half) pts.push_back(x);
  return Configuration(window_length, std::move(pts));
}

std::vector<double> top_two_gap_samples(std::size_t k, double nu,
                                        std::size_t trials, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("top_two_gap_samples: k must be >= 2");
  if (trials < 1)
    throw std::invalid_argument("top_two_gap_samples: trials must be >= 1");
  if (!(nu > 0.0))
    throw std::invalid_argument("top_two_gap_samples: nu must be > 0");

  std::vector<double> gaps(trials);
  std::exponential_distribution<double> expo(nu);
  for (std::size_t t = 0; t < trials; ++t) {
    auto eng = rng::make_engine(rng::derive_seed(seed, "top_two_gap", t));
    double best = 0.0, second = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double l = expo(eng);
      if (l > best) {
        second = best;
        best = l;
      } else if (l > second) {
        second = l;
      }
    }
    gaps[t] = best - second;
  }
  return gaps;
}

}  // namespace lsgas
