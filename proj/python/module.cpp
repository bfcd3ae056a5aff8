// Python bindings for the qudit readout toolkit.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qudit/assignment.hpp"
#include "qudit/dispersive.hpp"
#include "qudit/inference.hpp"
#include "qudit/owen.hpp"
#include "qudit/readout.hpp"
#include "qudit/spectrum.hpp"
#include "qudit/strategies.hpp"
#include "qudit/units.hpp"

namespace py = pybind11;
using namespace qudit;

PYBIND11_MODULE(quditread, m) {
    m.doc() = "transmon qudit readout simulation and inference";
    m.attr("__version__") = QUDITREAD_VERSION;
    m.attr("TWO_PI") = two_pi;

    py::register_exception<ResonanceError>(m, "ResonanceError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception<NoRootError>(m, "NoRootError");
    py::register_exception<DegenerateError>(m, "DegenerateError");
    py::register_exception<GeometryError>(m, "GeometryError");
    py::register_exception<StepError>(m, "StepError");
    py::register_exception<ResolutionError>(m, "ResolutionError");
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError");
    py::register_exception<ValidationError>(m, "ValidationError");

    // spectrum
    py::class_<TransmonParams>(m, "TransmonParams")
        .def(py::init<>())
        .def_readwrite("ej_over_ec", &TransmonParams::ej_over_ec)
        .def_readwrite("ec", &TransmonParams::ec)
        .def_readwrite("n_g", &TransmonParams::n_g)
        .def_readwrite("n_cut", &TransmonParams::n_cut)
        .def("validate", &TransmonParams::validate);
    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("levels_ng0", &Spectrum::levels_ng0)
        .def_readonly("levels_nghalf", &Spectrum::levels_nghalf)
        .def_readonly("d", &Spectrum::d)
        .def_static("compute", &Spectrum::compute, py::arg("params"), py::arg("d"));
    m.def("charge_hamiltonian", &charge_hamiltonian);
    m.def("eigenenergies", &eigenenergies, py::arg("params"), py::arg("d"));
    m.def("transition_frequency", &transition_frequency);
    m.def("frequency_difference", &frequency_difference);
    m.def("anharmonicity", &anharmonicity);
    m.def("charge_dispersion", &charge_dispersion);
    py::class_<EjEcFit>(m, "EjEcFit")
        .def_readonly("ej_over_ec", &EjEcFit::ej_over_ec)
        .def_readonly("ec", &EjEcFit::ec);
    m.def("fit_ej_ec", &fit_ej_ec, py::arg("omega01"), py::arg("alpha1"));

    // dispersive model
    py::class_<CouplingSpec>(m, "CouplingSpec")
        .def(py::init<double, double>(), py::arg("g"), py::arg("omega_r"))
        .def_readwrite("g", &CouplingSpec::g)
        .def_readwrite("omega_r", &CouplingSpec::omega_r);
    py::class_<DispersiveModel>(m, "DispersiveModel")
        .def_readonly("chi_pair", &DispersiveModel::chi_pair)
        .def_readonly("chi", &DispersiveModel::chi)
        .def_readonly("omega_tilde", &DispersiveModel::omega_tilde)
        .def_readonly("omega_tilde_r", &DispersiveModel::omega_tilde_r)
        .def_static(
            "compute",
            [](const std::vector<double>& levels, const CouplingSpec& c, int d) {
                return DispersiveModel::compute(levels, c, d);
            },
            py::arg("levels"), py::arg("coupling"), py::arg("d"));
    m.def("coupling", &coupling);
    m.def("chi_pair",
          [](const std::vector<double>& levels, const CouplingSpec& c, int j) {
              return chi_pair(levels, c, j);
          });
    m.def("chi_total",
          [](const std::vector<double>& levels, const CouplingSpec& c, int j) {
              return chi_total(levels, c, j);
          });
    m.def("dressed_transition", &dressed_transition);
    m.def("two_photon_factor",
          [](const std::vector<double>& wt, double wd, int j) {
              return two_photon_factor(wt, wd, j);
          });
    m.def("rabi_angle_first", &rabi_angle_first);
    m.def("rabi_angle_second", &rabi_angle_second);
    py::class_<CalibrationParams>(m, "CalibrationParams")
        .def(py::init<>())
        .def_readwrite("omega_q", &CalibrationParams::omega_q)
        .def_readwrite("omega_d", &CalibrationParams::omega_d)
        .def_readwrite("phi", &CalibrationParams::phi)
        .def_readwrite("durations", &CalibrationParams::durations)
        .def("validate", &CalibrationParams::validate);
    py::class_<PiAmplitudes>(m, "PiAmplitudes")
        .def_readonly("neighbor", &PiAmplitudes::neighbor)
        .def_readonly("two_photon", &PiAmplitudes::two_photon);
    m.def("pi_amplitudes", &pi_amplitudes);

    // readout
    py::class_<ReadoutConfig>(m, "ReadoutConfig")
        .def(py::init<>())
        .def_readwrite("omega_r", &ReadoutConfig::omega_r)
        .def_readwrite("kappa", &ReadoutConfig::kappa)
        .def_readwrite("Omega", &ReadoutConfig::Omega)
        .def_readwrite("phi", &ReadoutConfig::phi)
        .def_readwrite("T", &ReadoutConfig::T)
        .def_readwrite("omega_d", &ReadoutConfig::omega_d)
        .def_readwrite("omega_m", &ReadoutConfig::omega_m)
        .def("kappa_t", &ReadoutConfig::kappa_t)
        .def("long_time_limit_ok", &ReadoutConfig::long_time_limit_ok)
        .def("validate", &ReadoutConfig::validate);
    m.def("resonator_center", &resonator_center);
    m.def("steady_amp_drive_frame", &steady_amp_drive_frame);
    m.def("steady_amp_general_frame", &steady_amp_general_frame);
    m.def("pair_distance", &pair_distance);
    py::class_<OptimalDrive>(m, "OptimalDrive")
        .def_readonly("frequencies", &OptimalDrive::frequencies)
        .def_readonly("distance", &OptimalDrive::distance)
        .def_readonly("split", &OptimalDrive::split);
    m.def("optimal_frequencies", &optimal_frequencies);
    m.def("integrate_mean_field", &integrate_mean_field, py::arg("cfg"), py::arg("chi_j"),
          py::arg("steps") = 20000);

    // assignment
    py::class_<GaussianCloud>(m, "GaussianCloud")
        .def(py::init<std::complex<double>, double>(), py::arg("center"), py::arg("sigma"))
        .def_readwrite("center", &GaussianCloud::center)
        .def_readwrite("sigma", &GaussianCloud::sigma);
    py::enum_<AssignmentMethod>(m, "AssignmentMethod")
        .value("mc", AssignmentMethod::mc)
        .value("owen", AssignmentMethod::owen)
        .value("empirical", AssignmentMethod::empirical);
    py::class_<AssignmentMatrix>(m, "AssignmentMatrix")
        .def_readonly("m", &AssignmentMatrix::m)
        .def_readonly("method", &AssignmentMatrix::method)
        .def("dim", &AssignmentMatrix::dim);
    m.def("gaussian_density", &gaussian_density);
    m.def("classify_mde",
          [](std::complex<double> z, const std::vector<std::complex<double>>& centers) {
              return classify_mde(z, centers);
          });
    m.def("classify_mle",
          [](std::complex<double> z, const std::vector<GaussianCloud>& clouds) {
              return classify_mle(z, clouds);
          });
    m.def("assignment_matrix_mc",
          [](const std::vector<GaussianCloud>& clouds, long long n, std::uint64_t seed) {
              return assignment_matrix_mc(clouds, n, seed);
          },
          py::arg("clouds"), py::arg("n_samples"), py::arg("seed"));
    m.def("assignment_matrix_owen",
          [](const std::vector<GaussianCloud>& clouds) {
              return assignment_matrix_owen(clouds);
          });
    m.def("assignment_matrix_empirical", &assignment_matrix_empirical);
    py::class_<ErrorMeasures>(m, "ErrorMeasures")
        .def_readonly("xi", &ErrorMeasures::xi)
        .def_readonly("xi_avg", &ErrorMeasures::xi_avg);
    m.def("error_measures", &error_measures);
    m.def("owen_t", &owen_t);
    m.def("owen_t_general", &owen_t_general);

    // inference
    py::class_<CountVector>(m, "CountVector")
        .def(py::init([](std::vector<long long> counts) {
                 CountVector c;
                 c.counts = std::move(counts);
                 return c;
             }),
             py::arg("counts"))
        .def_readwrite("counts", &CountVector::counts)
        .def("total", &CountVector::total);
    py::class_<FrequencyBlock>(m, "FrequencyBlock")
        .def(py::init([](Eigen::MatrixXd mat, CountVector counts) {
                 return FrequencyBlock{std::move(mat), std::move(counts)};
             }),
             py::arg("m"), py::arg("counts"))
        .def_readwrite("m", &FrequencyBlock::m)
        .def_readwrite("counts", &FrequencyBlock::counts);
    py::class_<PopulationPosterior>(m, "PopulationPosterior")
        .def(py::init([](std::vector<FrequencyBlock> blocks) {
                 PopulationPosterior p;
                 p.blocks = std::move(blocks);
                 return p;
             }),
             py::arg("blocks"))
        .def_readwrite("blocks", &PopulationPosterior::blocks)
        .def("dim", &PopulationPosterior::dim)
        .def("condition_numbers", &PopulationPosterior::condition_numbers);
    m.def("log_density", [](const PopulationPosterior& post, const std::vector<double>& p) {
        return log_density(post, p);
    });
    py::class_<ModeResult>(m, "ModeResult")
        .def_readonly("p", &ModeResult::p)
        .def_readonly("in_simplex", &ModeResult::in_simplex);
    m.def("posterior_mode", &posterior_mode);
    m.def("mitigate_least_squares", &mitigate_least_squares);
    py::class_<PosteriorSd>(m, "PosteriorSd")
        .def_readonly("sd", &PosteriorSd::sd)
        .def_readonly("sd_avg", &PosteriorSd::sd_avg)
        .def_readonly("ess", &PosteriorSd::ess)
        .def_readonly("ess_warning", &PosteriorSd::ess_warning)
        .def_readonly("log_norm", &PosteriorSd::log_norm);
    m.def("posterior_sd", &posterior_sd, py::arg("posterior"), py::arg("samples"),
          py::arg("seed"));
    py::class_<PopulationGrid>(m, "PopulationGrid")
        .def_static("uniform", &PopulationGrid::uniform, py::arg("d"), py::arg("resolution"))
        .def_readonly("points", &PopulationGrid::points)
        .def_readonly("density", &PopulationGrid::density)
        .def("mode", &PopulationGrid::mode);
    m.def("sequential_update",
          [](PopulationGrid& grid, std::complex<double> z,
             const std::vector<GaussianCloud>& clouds) { sequential_update(grid, z, clouds); });

    // strategies
    py::enum_<Frame>(m, "Frame").value("drive", Frame::drive).value("modulation",
                                                                    Frame::modulation);
    py::class_<StrategyScenario>(m, "StrategyScenario")
        .def(py::init<>())
        .def_readwrite("chi", &StrategyScenario::chi)
        .def_readwrite("cfg", &StrategyScenario::cfg)
        .def_readwrite("sigma", &StrategyScenario::sigma)
        .def_readwrite("shots", &StrategyScenario::shots)
        .def_readwrite("p_true", &StrategyScenario::p_true)
        .def_readwrite("seed", &StrategyScenario::seed)
        .def_readwrite("frame", &StrategyScenario::frame)
        .def_readwrite("grid_points", &StrategyScenario::grid_points)
        .def_readwrite("mc_samples", &StrategyScenario::mc_samples)
        .def_readwrite("sd_samples", &StrategyScenario::sd_samples);
    m.def("default_grid", &default_grid);
    m.def("state_amplitudes", &state_amplitudes);
    m.def("simulate_shots",
          [](const std::vector<double>& p, const std::vector<GaussianCloud>& clouds,
             long long n, std::uint64_t seed) { return simulate_shots(p, clouds, n, seed); });
    py::class_<XiCurve>(m, "XiCurve")
        .def_readonly("omega_d", &XiCurve::omega_d)
        .def_readonly("xi", &XiCurve::xi)
        .def_readonly("xi_avg", &XiCurve::xi_avg);
    m.def("xi_curve", [](const StrategyScenario& sc, const std::vector<double>& grid,
                         Frame frame) { return xi_curve(sc, grid, frame); });
    py::class_<StrategyReport>(m, "StrategyReport")
        .def_readonly("frequencies", &StrategyReport::frequencies)
        .def_readonly("sd", &StrategyReport::sd)
        .def_readonly("sd_avg", &StrategyReport::sd_avg)
        .def_readonly("ess", &StrategyReport::ess)
        .def_readonly("ess_warning", &StrategyReport::ess_warning)
        .def_readonly("pooled_counts", &StrategyReport::pooled_counts);
    m.def("single_frequency_strategy", &single_frequency_strategy);
    m.def("multi_frequency_strategy", &multi_frequency_strategy);
    py::class_<RatioPoint>(m, "RatioPoint")
        .def_readonly("kappa", &RatioPoint::kappa)
        .def_readonly("sigma", &RatioPoint::sigma)
        .def_readonly("sd_single", &RatioPoint::sd_single)
        .def_readonly("sd_multi", &RatioPoint::sd_multi)
        .def_readonly("ratio", &RatioPoint::ratio)
        .def_readonly("flagged", &RatioPoint::flagged);
    m.def("sweep_ratio",
          [](const std::vector<double>& kappas, const std::vector<double>& sigmas,
             const StrategyScenario& tmpl, int seeds) {
              return sweep_ratio(kappas, sigmas, tmpl, seeds);
          },
          py::arg("kappa_grid"), py::arg("sigma_grid"), py::arg("scenario"),
          py::arg("seed_count") = 8);
    m.def("ghz_to_rad", &ghz_to_rad);
    m.def("rad_to_ghz", &rad_to_ghz);
}
