#include <doctest.h>

#include <cmath>

#include "lsgas/point_process.hpp"
#include "lsgas/rng.hpp"
#include "lsgas/spectrum.hpp"
#include "oracles.hpp"

using namespace lsgas;

namespace {

Configuration toy_433() { return Configuration(10.0, {-1.0, 2.0}); }

Configuration random_config(double window, std::uint64_t seed) {
  return sample_configuration(
      ModelParams(1.0, 1.0, 1.0, static_cast<std::uint64_t>(window)), seed);
}

}  // namespace

TEST_CASE("single interval of length pi gives squared-integer energies") {
  const Configuration config(kPi, {});
  const auto spec = enumerate_below(config, 10.0);
  REQUIRE(spec.levels.size() == 3);
  CHECK(spec.levels[0].energy == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spec.levels[1].energy == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(spec.levels[2].energy == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("enumerate_below on lengths 4,3,3 matches the brute-force oracle") {
  const auto config = toy_433();
  const auto spec = enumerate_below(config, 2.5);
  const auto brute = oracles::brute_levels_below(config.lengths(), 2.5);
  REQUIRE(spec.levels.size() == brute.size());
  REQUIRE(spec.levels.size() == 4);
  for (std::size_t i = 0; i < brute.size(); ++i) {
    CHECK(spec.levels[i].energy == brute[i].energy);  // bit-exact
    CHECK(spec.levels[i].interval == brute[i].interval);
    CHECK(spec.levels[i].mode == brute[i].mode);
  }
  CHECK(spec.levels[0].energy == doctest::Approx(kPi * kPi / 16.0));
  CHECK(spec.levels[3].energy == doctest::Approx(kPi * kPi / 4.0));
}

TEST_CASE("enumeration is monotone in the cutoff") {
  const auto config = random_config(60.0, 5);
  const auto small = enumerate_below(config, 1.0);
  const auto large = enumerate_below(config, 3.0);
  REQUIRE(small.levels.size() <= large.levels.size());
  for (std::size_t i = 0; i < small.levels.size(); ++i)
    CHECK(small.levels[i] == large.levels[i]);
}

TEST_CASE("k smallest agrees with brute force and hosts the ground state") {
  const auto config = toy_433();
  const auto spec = k_smallest(config, 4);
  const auto brute = oracles::brute_k_smallest(config.lengths(), 4);
  REQUIRE(spec.levels.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(spec.levels[i].energy == brute[i].energy);
    CHECK(spec.levels[i].interval == brute[i].interval);
    CHECK(spec.levels[i].mode == brute[i].mode);
  }

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto c = random_config(80.0, seed);
    const double top = largest_lengths(c, 1)[0];
    CHECK(k_smallest(c, 1).levels[0].energy ==
          doctest::Approx(sq(kPi / top)).epsilon(1e-14));
  }
}

TEST_CASE("exact ties order deterministically by interval then mode") {
  const Configuration config(4.0, {0.0});  // lengths 2, 2
  const auto spec = k_smallest(config, 2);
  REQUIRE(spec.levels.size() == 2);
  CHECK(spec.levels[0].energy == spec.levels[1].energy);
  CHECK(spec.levels[0].interval == 0);
  CHECK(spec.levels[1].interval == 1);
  CHECK(spec.levels[0].energy == doctest::Approx(sq(kPi / 2.0)));
}

TEST_CASE("counting function: closed form, zero below the spectrum, identity") {
  const auto config = toy_433();
  CHECK(counting_function(config, 1.2) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(counting_function(config, 0.0) == 0.0);
  CHECK(counting_function(config, -3.0) == 0.0);

  // Definitional cross-check against enumeration on random pairs: equality
  // of the level counts, compared as the (1/L)-scaled densities both sides.
  auto grid_eng = rng::make_engine(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = random_config(50.0, 1000 + trial);
    const double e = 5.0 * rng::uniform_u01(grid_eng);
    if (!(e > 0.0)) continue;
    const double lhs = counting_function(c, e);
    const double rhs = static_cast<double>(enumerate_below(c, e).levels.size()) /
                       c.window_length();
    CHECK(lhs == rhs);
  }
}

TEST_CASE("counting function sits inside the Weyl sandwich") {
  auto grid_eng = rng::make_engine(123);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_config(100.0, 7000 + trial);
    const double e = 0.01 + 8.0 * rng::uniform_u01(grid_eng);
    const double value = counting_function(c, e);
    const double weyl = std::sqrt(e) / kPi;
    const double slack =
        static_cast<double>(c.count() + 1) / c.window_length();
    CHECK(value <= weyl + 1e-12);
    CHECK(value >= weyl - slack - 1e-12);
  }
}

TEST_CASE("ground energy decays along one extended realization") {
  const double nu = 1.0;
  auto config = sample_configuration(ModelParams(nu, 1.0, 1.0, 100), 4321);
  double previous = k_smallest(config, 1).levels[0].energy;
  double window = 100.0;
  for (int step = 0; step < 10; ++step) {
    window *= 2.0;
    config = extend_configuration(config, window, nu,
                                  rng::derive_seed(4321, "growth", step));
    const double e1 = k_smallest(config, 1).levels[0].energy;
    CHECK(e1 <= previous);
    previous = e1;
  }
  // At the final desk-scale window the Lifshitz-scale ceiling holds.
  const double ceiling = sq(1.1 * nu * kPi / std::log(window));
  CHECK(previous <= ceiling);
}

TEST_CASE("energy_levels extracts e1 <= e2 <= e_{c2+1}") {
  const auto config = toy_433();
  const auto spec = k_smallest(config, 3);
  const auto lv = energy_levels(spec, 2);
  CHECK(lv.e1 == spec.levels[0].energy);
  CHECK(lv.e2 == spec.levels[1].energy);
  CHECK(lv.e_c2_plus_1 == spec.levels[2].energy);
  CHECK(lv.e1 <= lv.e2);
  CHECK(lv.e2 <= lv.e_c2_plus_1);
  CHECK_THROWS_AS(energy_levels(spec, 3), std::invalid_argument);
}

TEST_CASE("enumerate_below rejects nonpositive cutoffs") {
  CHECK_THROWS_AS(enumerate_below(toy_433(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_below(toy_433(), -1.0), std::invalid_argument);
}
