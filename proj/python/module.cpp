#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lsgas/montecarlo.hpp"
#include "lsgas/point_process.hpp"
#include "lsgas/rng.hpp"
#include "lsgas/spectrum.hpp"
#include "lsgas/thermodynamics.hpp"
#include "lsgas/version.hpp"

namespace py = pybind11;
using namespace lsgas;

PYBIND11_MODULE(lsgas, m) {
  m.doc() = "Non-interacting Bose gas in a 1D Poisson random potential: exact "
            "spectra, grand-canonical thermodynamics, Monte Carlo estimators";
  m.attr("__version__") = kVersion;

  py::register_exception<SubcriticalDensityError>(m, "SubcriticalDensityError",
                                                  PyExc_ValueError);
  py::register_exception<DensityInfeasibleError>(m, "DensityInfeasibleError",
                                                 PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError",
                                          PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<double, double, double, std::uint64_t>(), py::arg("nu"),
           py::arg("rho"), py::arg("beta"), py::arg("n_particles"))
      .def_readonly("nu", &ModelParams::nu)
      .def_readonly("rho", &ModelParams::rho)
      .def_readonly("beta", &ModelParams::beta)
      .def_readonly("n_particles", &ModelParams::n_particles)
      .def("window_length", &ModelParams::window_length);

  py::class_<Configuration>(m, "Configuration")
      .def(py::init<double, std::vector<double>>(), py::arg("window_length"),
           py::arg("points"))
      .def_property_readonly("window_length", &Configuration::window_length)
      .def_property_readonly("points",
                             [](const Configuration& c) { return c.points(); })
      .def_property_readonly("lengths",
                             [](const Configuration& c) { return c.lengths(); })
      .def_property_readonly("count", &Configuration::count);

  py::class_<Level>(m, "Level")
      .def_readonly("energy", &Level::energy)
      .def_readonly("interval", &Level::interval)
      .def_readonly("mode", &Level::mode);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("levels", &Spectrum::levels)
      .def_readonly("cutoff", &Spectrum::cutoff)
      .def_readonly("lengths", &Spectrum::lengths)
      .def("ground_energy", &Spectrum::ground_energy)
      .def("__len__", &Spectrum::size);

  py::class_<EnergyLevels>(m, "EnergyLevels")
      .def(py::init([](double e1, double e2, double e_next) {
             return EnergyLevels{e1, e2, e_next};
           }),
           py::arg("e1"), py::arg("e2"), py::arg("e_c2_plus_1"))
      .def_readonly("e1", &EnergyLevels::e1)
      .def_readonly("e2", &EnergyLevels::e2)
      .def_readonly("e_c2_plus_1", &EnergyLevels::e_c2_plus_1);

  py::class_<GapEventParams>(m, "GapEventParams")
      .def(py::init([](std::size_t c2, double c3, double eta1) {
             GapEventParams gp{c2, c3, eta1};
             gp.validate();
             return gp;
           }),
           py::arg("c2") = 1, py::arg("c3") = 1.0, py::arg("eta1") = 0.4)
      .def_readonly("c2", &GapEventParams::c2)
      .def_readonly("c3", &GapEventParams::c3)
      .def_readonly("eta1", &GapEventParams::eta1);

  py::class_<CriticalDensityResult>(m, "CriticalDensityResult")
      .def_readonly("rho_c", &CriticalDensityResult::rho_c)
      .def_readonly("abs_error_estimate",
                    &CriticalDensityResult::abs_error_estimate)
      .def_readonly("beta", &CriticalDensityResult::beta)
      .def_readonly("nu", &CriticalDensityResult::nu)
      .def("rho0", &CriticalDensityResult::rho0, py::arg("rho"));

  py::class_<GrandCanonicalState>(m, "GrandCanonicalState")
      .def_readonly("mu", &GrandCanonicalState::mu)
      .def_readonly("occupations", &GrandCanonicalState::occupations)
      .def_readonly("tail_mass", &GrandCanonicalState::tail_mass)
      .def_readonly("residual", &GrandCanonicalState::residual);

  py::class_<CondensateFraction>(m, "CondensateFraction")
      .def_readonly("fraction", &CondensateFraction::fraction)
      .def_readonly("raw", &CondensateFraction::raw)
      .def_readonly("per_level", &CondensateFraction::per_level);

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("estimate", &EstimateReport::estimate)
      .def_readonly("std_error", &EstimateReport::std_error)
      .def_readonly("samples", &EstimateReport::samples)
      .def_readonly("master_seed", &EstimateReport::master_seed);

  py::class_<GapProbabilityReport>(m, "GapProbabilityReport")
      .def_readonly("report", &GapProbabilityReport::report)
      .def_readonly("params", &GapProbabilityReport::params)
      .def_readonly("gap", &GapProbabilityReport::gap);

  py::class_<CondensateSample>(m, "CondensateSample")
      .def_readonly("fraction", &CondensateSample::fraction)
      .def_readonly("next_fraction", &CondensateSample::next_fraction)
      .def_readonly("mu", &CondensateSample::mu);

  py::class_<CondensateMomentsReport>(m, "CondensateMomentsReport")
      .def_readonly("deviation_moment", &CondensateMomentsReport::deviation_moment)
      .def_readonly("next_level_moment",
                    &CondensateMomentsReport::next_level_moment)
      .def_readonly("target", &CondensateMomentsReport::target)
      .def_readonly("rho_c", &CondensateMomentsReport::rho_c)
      .def_readonly("c2", &CondensateMomentsReport::c2)
      .def_readonly("r", &CondensateMomentsReport::r);

  py::class_<SinglePathReport>(m, "SinglePathReport")
      .def_readonly("fractions", &SinglePathReport::fractions)
      .def_readonly("tail_half_max", &SinglePathReport::tail_half_max);

  py::class_<GapSurvivalPoint>(m, "GapSurvivalPoint")
      .def_readonly("t", &GapSurvivalPoint::t)
      .def_readonly("empirical", &GapSurvivalPoint::empirical)
      .def_readonly("exact", &GapSurvivalPoint::exact)
      .def_readonly("std_error", &GapSurvivalPoint::std_error)
      .def_readonly("pass_", &GapSurvivalPoint::pass);

  py::class_<ExtremeValueReport>(m, "ExtremeValueReport")
      .def_readonly("largest_threshold", &ExtremeValueReport::largest_threshold)
      .def_readonly("largest_freq", &ExtremeValueReport::largest_freq)
      .def_readonly("largest_pass", &ExtremeValueReport::largest_pass)
      .def_readonly("count_upper_freq", &ExtremeValueReport::count_upper_freq)
      .def_readonly("count_upper_bound", &ExtremeValueReport::count_upper_bound)
      .def_readonly("count_upper_pass", &ExtremeValueReport::count_upper_pass)
      .def_readonly("count_lower_freq", &ExtremeValueReport::count_lower_freq)
      .def_readonly("count_lower_bound", &ExtremeValueReport::count_lower_bound)
      .def_readonly("count_lower_pass", &ExtremeValueReport::count_lower_pass)
      .def_readonly("mean_count_per_length",
                    &ExtremeValueReport::mean_count_per_length)
      .def_readonly("mean_pass", &ExtremeValueReport::mean_pass)
      .def_readonly("gap_survival", &ExtremeValueReport::gap_survival)
      .def_readonly("gap_pass", &ExtremeValueReport::gap_pass)
      .def_readonly("all_pass", &ExtremeValueReport::all_pass);

  py::class_<AssumptionReport>(m, "AssumptionReport")
      .def_readonly("decay_sequence", &AssumptionReport::decay_sequence)
      .def_readonly("decay_monotone", &AssumptionReport::decay_monotone)
      .def_readonly("small_e_ratio", &AssumptionReport::small_e_ratio)
      .def_readonly("tail_integral", &AssumptionReport::tail_integral)
      .def_readonly("tail_integral_finite",
                    &AssumptionReport::tail_integral_finite)
      .def_readonly("ids_ratio", &AssumptionReport::ids_ratio)
      .def_readonly("empirical_c1", &AssumptionReport::empirical_c1);

  // point process
  m.def("derive_seed", &rng::derive_seed, py::arg("master"), py::arg("label"),
        py::arg("index"));
  m.def("sample_configuration", &sample_configuration, py::arg("params"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("interval_lengths",
        [](double window, const std::vector<double>& pts) {
          return interval_lengths(window, pts);
        },
        py::arg("window_length"), py::arg("points"));
  m.def("largest_lengths", &largest_lengths, py::arg("config"), py::arg("k"));
  m.def("extend_configuration", &extend_configuration, py::arg("config"),
        py::arg("new_window_length"), py::arg("nu"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("restrict_configuration", &restrict_configuration, py::arg("config"),
        py::arg("window_length"));
  m.def("top_two_gap_samples", &top_two_gap_samples, py::arg("k"), py::arg("nu"),
        py::arg("trials"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  // spectrum
  m.def("level_energy", &level_energy, py::arg("length"), py::arg("mode"));
  m.def("enumerate_below", &enumerate_below, py::arg("config"), py::arg("e_cut"),
        py::call_guard<py::gil_scoped_release>());
  m.def("k_smallest", &k_smallest, py::arg("config"), py::arg("k"),
        py::call_guard<py::gil_scoped_release>());
  m.def("counting_function", &counting_function, py::arg("config"), py::arg("e"));
  m.def("energy_levels", &energy_levels, py::arg("spectrum"), py::arg("c2"));

  // thermodynamics
  m.def("bose_factor", &bose_factor, py::arg("e"), py::arg("beta"));
  m.def("limiting_ids", &limiting_ids, py::arg("e"), py::arg("nu"));
  m.def("critical_density", &critical_density, py::arg("beta"), py::arg("nu"),
        py::call_guard<py::gil_scoped_release>());
  m.def("grand_canonical_density", &grand_canonical_density, py::arg("spectrum"),
        py::arg("params"), py::arg("mu"));
  m.def("chemical_potential", &chemical_potential, py::arg("spectrum"),
        py::arg("params"), py::arg("tol"),
        py::call_guard<py::gil_scoped_release>());
  m.def("occupations", &occupations, py::arg("spectrum"), py::arg("mu"),
        py::arg("beta"));
  m.def("condensate_fraction", &condensate_fraction, py::arg("state"),
        py::arg("c2"), py::arg("n_particles"));
  m.def("verify_assumptions", &verify_assumptions, py::arg("eta1"),
        py::arg("params"), py::arg("n_grid") = 5, py::arg("samples") = 200,
        py::arg("seed") = 42, py::call_guard<py::gil_scoped_release>());

  // monte carlo
  m.def("gap_event_holds", &gap_event_holds, py::arg("levels"), py::arg("params"),
        py::arg("gp"));
  m.def("estimate_gap_probability", &estimate_gap_probability, py::arg("params"),
        py::arg("gp"), py::arg("samples"), py::arg("seed"),
        py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("condensate_samples", &condensate_samples, py::arg("params"),
        py::arg("c2"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("estimate_condensate_moments", &estimate_condensate_moments,
        py::arg("params"), py::arg("c2"), py::arg("r"), py::arg("samples"),
        py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("single_path_fraction",
        [](const ModelParams& params, const std::vector<std::uint64_t>& ns,
           std::uint64_t seed) {
          py::gil_scoped_release release;
          return single_path_fraction(params, ns, seed);
        },
        py::arg("params"), py::arg("n_sequence"), py::arg("seed"));
  m.def("extreme_value_suite", &extreme_value_suite, py::arg("params"),
        py::arg("samples"), py::arg("seed"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
}
