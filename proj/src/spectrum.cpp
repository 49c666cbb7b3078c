#include "lsgas/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace lsgas {

namespace {

bool level_less(const Level& a, const Level& b) noexcept {
  return std::tie(a.energy, a.interval, a.mode) <
         std::tie(b.energy, b.interval, b.mode);
}

}  // namespace

double Spectrum::ground_energy() const {
  if (levels.empty()) throw std::out_of_range("Spectrum: no levels enumerated");
  return levels.front().energy;
}

std::int64_t modes_below(double length, double e) noexcept {
  if (!(e > 0.0) || !(length > 0.0)) return 0;
  auto below = [&](std::int64_t n) { return level_energy(length, n) < e; };
  std::int64_t m =
      static_cast<std::int64_t>(std::floor(length * std::sqrt(e) / kPi));
  if (m < 0) m = 0;
  while (m >= 1 && !below(m)) --m;
  while (below(m + 1)) ++m;
  return m;
}

Spectrum enumerate_below(const Configuration& config, double e_cut) {
  if (!(e_cut > 0.0))
    throw std::invalid_argument("enumerate_below: e_cut must be > 0");
  const auto& lengths = config.lengths();

  Spectrum spec;
  spec.cutoff = e_cut;
  spec.lengths = lengths;
  std::size_t expected = 0;
  for (double l : lengths) expected += static_cast<std::size_t>(modes_below(l, e_cut));
  spec.levels.reserve(expected);

  for (std::size_t j = 0; j < lengths.size(); ++j) {
    const double l = lengths[j];
    const std::int64_t m = modes_below(l, e_cut);
    for (std::int64_t n = 1; n <= m; ++n)
      spec.levels.push_back(Level{level_energy(l, n), static_cast<std::int32_t>(j),
                                  static_cast<std::int32_t>(n)});
  }
  std::sort(spec.levels.begin(), spec.levels.end(), level_less);
  return spec;
}

Spectrum k_smallest_from_lengths(std::span<const double> lengths, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k_smallest: k must be >= 1");
  bool any_positive = false;
  for (double l : lengths)
    if (l > 0.0) any_positive = true;
  if (!any_positive)
    throw std::invalid_argument("k_smallest: no interval of positive length");

  // Min-heap over per-interval generators; each interval keeps only its next
  // mode in the heap, so at most kappa+1 candidates are live at once.
  auto greater = [](const Level& a, const Level& b) { return level_less(b, a); };
  std::vector<Level> heap;
  heap.reserve(lengths.size());
  for (std::size_t j = 0; j < lengths.size(); ++j)
    if (lengths[j] > 0.0)
      heap.push_back(Level{level_energy(lengths[j], 1),
                           static_cast<std::int32_t>(j), 1});
  std::make_heap(heap.begin(), heap.end(), greater);

  Spectrum spec;
  spec.lengths.assign(lengths.begin(), lengths.end());
  spec.levels.reserve(k);
  while (spec.levels.size() < k) {
    std::pop_heap(heap.begin(), heap.end(), greater);
    Level next = heap.back();
    heap.pop_back();
    spec.levels.push_back(next);
    next.mode += 1;
    next.energy = level_energy(lengths[next.interval], next.mode);
    heap.push_back(next);
    std::push_heap(heap.begin(), heap.end(), greater);
  }
  spec.cutoff = spec.levels.back().energy;
  return spec;
}

Spectrum k_smallest(const Configuration& config, std::size_t k) {
  return k_smallest_from_lengths(config.lengths(), k);
}

std::vector<std::int64_t> level_counts_below(const Configuration& config,
                                             std::span<const double> energies) {
  std::vector<std::int64_t> counts(energies.size(), 0);
  for (double l : config.lengths())
    for (std::size_t i = 0; i < energies.size(); ++i)
      counts[i] += modes_below(l, energies[i]);
  return counts;
}

double counting_function(const Configuration& config, double e) {
  if (!(e > 0.0)) return 0.0;
  std::int64_t count = 0;
  for (double l : config.lengths()) count += modes_below(l, e);
  return static_cast<double>(count) / config.window_length();
}

EnergyLevels energy_levels(const Spectrum& spectrum, std::size_t c2) {
  if (c2 < 1) throw std::invalid_argument("energy_levels: c2 must be >= 1");
  if (spectrum.levels.size() < c2 + 1)
    throw std::invalid_argument("energy_levels: spectrum holds fewer than c2+1 levels");
  return EnergyLevels{spectrum.levels[0].energy, spectrum.levels[1].energy,
                      spectrum.levels[c2].energy};
}

}  // namespace lsgas
