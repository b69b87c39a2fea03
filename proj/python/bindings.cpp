// Python bindings for the main library operations. Array-like values cross
// the boundary as nested lists / numpy arrays; heavy objects (operators,
// eigenvectors) are exposed as Eigen-backed matrices.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qworldline/config.hpp"
#include "qworldline/detector.hpp"
#include "qworldline/geometry.hpp"
#include "qworldline/quantum.hpp"
#include "qworldline/runner.hpp"
#include "qworldline/version.hpp"

namespace py = pybind11;
using namespace qwl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Localized quantum systems on accelerated worldlines";
    m.attr("__version__") = qwl::version;

    // geometry
    py::class_<geometry::FermiFrameSample>(m, "FermiFrameSample")
        .def(py::init<>())
        .def(py::init<double, const geometry::Vec3&, const geometry::Mat3&,
                      const geometry::Ten3&, const geometry::Ten4&>(),
             py::arg("tau"), py::arg("a"), py::arg("R0i0j"),
             py::arg("R0jik") = geometry::Ten3{}, py::arg("Rikjl") = geometry::Ten4{})
        .def_readonly("tau", &geometry::FermiFrameSample::tau)
        .def_readonly("a", &geometry::FermiFrameSample::a)
        .def_readonly("R0i0j", &geometry::FermiFrameSample::R0i0j)
        .def("accel_magnitude", &geometry::FermiFrameSample::accel_magnitude);

    py::class_<geometry::MetricComponents>(m, "MetricComponents")
        .def(py::init<>())
        .def_readwrite("g_tt", &geometry::MetricComponents::g_tt)
        .def_readwrite("g_ti", &geometry::MetricComponents::g_ti)
        .def_readwrite("h", &geometry::MetricComponents::h);

    py::class_<geometry::TrajectoryModel>(m, "TrajectoryModel")
        .def_static("inertial", &geometry::TrajectoryModel::inertial)
        .def_static("uniform_acceleration", &geometry::TrajectoryModel::uniform_acceleration)
        .def_static("constant_curvature", &geometry::TrajectoryModel::constant_curvature)
        .def_static("tabulated", &geometry::TrajectoryModel::tabulated)
        .def("frame_at", &geometry::TrajectoryModel::frame_at)
        .def("tau_range", &geometry::TrajectoryModel::tau_range);

    py::class_<geometry::VolumeFactors>(m, "VolumeFactors")
        .def_readonly("sqrt_g_sigma", &geometry::VolumeFactors::sqrt_g_sigma)
        .def_readonly("sqrt_minus_g", &geometry::VolumeFactors::sqrt_minus_g);

    m.def("constant_curvature_sample", &geometry::constant_curvature_sample, py::arg("tau"),
          py::arg("alpha"), py::arg("a"));
    m.def("spatial_curvature_from_source", &geometry::spatial_curvature_from_source);
    m.def("eval_fermi_metric", &geometry::eval_fermi_metric, py::arg("frame"), py::arg("x"));
    m.def("redshift_exact", &geometry::redshift_exact);
    m.def("redshift_series", &geometry::redshift_series, py::arg("frame"), py::arg("x"));
    m.def("lambda_R", &geometry::lambda_R);
    m.def("fermi_bound", &geometry::fermi_bound, py::arg("trajectory"), py::arg("tau_samples"));
    m.def("volume_factors", &geometry::volume_factors);

    // quantum
    py::class_<quantum::Grid1D>(m, "Grid1D")
        .def_static("uniform", &quantum::Grid1D::uniform, py::arg("n_points"), py::arg("x_min"),
                    py::arg("x_max"))
        .def_static("with_weights", &quantum::Grid1D::with_weights, py::arg("n_points"),
                    py::arg("x_min"), py::arg("x_max"), py::arg("weights"))
        .def_readonly("n_points", &quantum::Grid1D::n_points)
        .def_readonly("x_min", &quantum::Grid1D::x_min)
        .def_readonly("x_max", &quantum::Grid1D::x_max)
        .def_readonly("weights", &quantum::Grid1D::weights)
        .def("spacing", &quantum::Grid1D::spacing)
        .def("x", &quantum::Grid1D::x);

    py::class_<quantum::WaveFunction>(m, "WaveFunction")
        .def_static("from_samples", &quantum::WaveFunction::from_samples)
        .def_readonly("grid", &quantum::WaveFunction::grid)
        .def_readonly("samples", &quantum::WaveFunction::samples);

    py::class_<quantum::OperatorMatrix>(m, "OperatorMatrix")
        .def_readonly("entries", &quantum::OperatorMatrix::entries)
        .def_readonly("hermitian", &quantum::OperatorMatrix::hermitian);

    py::class_<quantum::GridOperatorSet>(m, "GridOperatorSet")
        .def_readonly("grid", &quantum::GridOperatorSet::grid)
        .def_readonly("x", &quantum::GridOperatorSet::x)
        .def_readonly("p", &quantum::GridOperatorSet::p);

    py::class_<quantum::OscillatorSpec>(m, "OscillatorSpec")
        .def(py::init<double, double, int>(), py::arg("m"), py::arg("omega"),
             py::arg("dimension") = 1)
        .def_readonly("m", &quantum::OscillatorSpec::m)
        .def_readonly("omega", &quantum::OscillatorSpec::omega)
        .def_readonly("dimension", &quantum::OscillatorSpec::dimension);

    py::enum_<quantum::HamiltonianMode>(m, "HamiltonianMode")
        .value("Bare", quantum::HamiltonianMode::Bare)
        .value("Symmetrized", quantum::HamiltonianMode::Symmetrized)
        .value("Leading", quantum::HamiltonianMode::Leading);

    py::class_<quantum::EigenPair>(m, "EigenPair")
        .def_readonly("energy", &quantum::EigenPair::energy)
        .def_readonly("state", &quantum::EigenPair::state);

    py::class_<quantum::CorrectedSpectrum>(m, "CorrectedSpectrum")
        .def_readonly("omega_prime", &quantum::CorrectedSpectrum::omega_prime)
        .def_readonly("displacement", &quantum::CorrectedSpectrum::displacement)
        .def_readonly("ground_shift", &quantum::CorrectedSpectrum::ground_shift)
        .def_readonly("valid", &quantum::CorrectedSpectrum::valid);

    py::class_<quantum::ValidityReport>(m, "ValidityReport")
        .def_readonly("localization", &quantum::ValidityReport::localization)
        .def_readonly("bound", &quantum::ValidityReport::bound)
        .def_readonly("energy_ratio", &quantum::ValidityReport::energy_ratio)
        .def_readonly("localized_ok", &quantum::ValidityReport::localized_ok)
        .def_readonly("nonrelativistic_ok", &quantum::ValidityReport::nonrelativistic_ok);

    m.def("build_grid_operators", &quantum::build_grid_operators);
    m.def("inner_product",
          py::overload_cast<const quantum::WaveFunction&, const quantum::WaveFunction&>(
              &quantum::inner_product));
    m.def("apply", &quantum::apply, py::arg("op"), py::arg("psi"));
    m.def("assemble_hamiltonian",
          py::overload_cast<const quantum::OscillatorSpec&, const geometry::FermiFrameSample&,
                            quantum::HamiltonianMode, const quantum::Grid1D&>(
              &quantum::assemble_hamiltonian),
          py::arg("spec"), py::arg("frame"), py::arg("mode"), py::arg("grid"));
    m.def("assemble_hamiltonian",
          py::overload_cast<const std::vector<double>&, const geometry::FermiFrameSample&,
                            quantum::HamiltonianMode, const quantum::Grid1D&>(
              &quantum::assemble_hamiltonian),
          py::arg("potential"), py::arg("frame"), py::arg("mode"), py::arg("grid"));
    m.def("diagonalize", &quantum::diagonalize, py::arg("op"), py::arg("grid"), py::arg("k"));
    m.def("oscillator_corrected_spectrum", &quantum::oscillator_corrected_spectrum,
          py::arg("spec"), py::arg("alpha"), py::arg("a"));
    m.def("validity_report",
          py::overload_cast<double, const geometry::FermiFrameSample&, double, double, double>(
              &quantum::validity_report),
          py::arg("localization"), py::arg("frame"), py::arg("m"), py::arg("h_nr_expectation"),
          py::arg("threshold") = 0.01);
    m.def("hydrogen_threshold_si", &quantum::hydrogen_threshold_si);
    m.def("hydrogen_validity", &quantum::hydrogen_validity, py::arg("n"), py::arg("a_si"),
          py::arg("lambda_r_si"));

    // detector
    py::class_<detector::GaussianSwitching>(m, "GaussianSwitching")
        .def_static("of", &detector::GaussianSwitching::of, py::arg("width"),
                    py::arg("center") = 0.0)
        .def_readonly("width", &detector::GaussianSwitching::width)
        .def_readonly("center", &detector::GaussianSwitching::center);

    py::class_<detector::UDWDetector>(m, "UDWDetector")
        .def(py::init([](double gap, double coupling, detector::GaussianSwitching switching,
                         std::optional<quantum::OscillatorSpec> internal) {
                 detector::UDWDetector det;
                 det.gap = gap;
                 det.coupling = coupling;
                 det.switching = switching;
                 det.internal = std::move(internal);
                 return det;
             }),
             py::arg("gap"), py::arg("coupling"), py::arg("switching"),
             py::arg("internal") = std::nullopt)
        .def_readonly("gap", &detector::UDWDetector::gap)
        .def_readonly("coupling", &detector::UDWDetector::coupling);

    py::class_<detector::WightmanSpec>(m, "WightmanSpec")
        .def_static("inertial", &detector::WightmanSpec::inertial, py::arg("epsilon"))
        .def_static("rindler", &detector::WightmanSpec::rindler, py::arg("a"), py::arg("epsilon"))
        .def_readonly("a", &detector::WightmanSpec::a)
        .def_readonly("epsilon", &detector::WightmanSpec::epsilon);

    py::class_<detector::FieldResponse>(m, "FieldResponse")
        .def_readonly("probability", &detector::FieldResponse::probability)
        .def_readonly("error_estimate", &detector::FieldResponse::error_estimate)
        .def_readonly("converged", &detector::FieldResponse::converged);

    py::class_<detector::BalanceRatio>(m, "BalanceRatio")
        .def_readonly("measured", &detector::BalanceRatio::measured)
        .def_readonly("kms", &detector::BalanceRatio::kms)
        .def_readonly("converged", &detector::BalanceRatio::converged);

    py::class_<detector::ResponseResult>(m, "ResponseResult")
        .def_readonly("p_field", &detector::ResponseResult::p_field)
        .def_readonly("p_rel", &detector::ResponseResult::p_rel)
        .def_readonly("noise_ratio", &detector::ResponseResult::noise_ratio)
        .def_readonly("noise_ratio_defined", &detector::ResponseResult::noise_ratio_defined)
        .def_readonly("probe_valid", &detector::ResponseResult::probe_valid)
        .def_readonly("converged", &detector::ResponseResult::converged)
        .def_readonly("quadrature_error_estimate",
                      &detector::ResponseResult::quadrature_error_estimate);

    m.def("default_epsilon", &detector::default_epsilon, py::arg("switching"), py::arg("a") = 0.0);
    m.def("pulled_back_wightman", &detector::pulled_back_wightman, py::arg("spec"), py::arg("u"));
    m.def("switching_autocorrelation", &detector::switching_autocorrelation, py::arg("chi"),
          py::arg("u"));
    m.def("field_response",
          py::overload_cast<const detector::UDWDetector&, const detector::WightmanSpec&, double>(
              &detector::field_response),
          py::arg("det"), py::arg("spec"), py::arg("omega"));
    m.def("field_response",
          py::overload_cast<const detector::UDWDetector&, const detector::WightmanSpec&>(
              &detector::field_response),
          py::arg("det"), py::arg("spec"));
    m.def("detailed_balance_ratio", &detector::detailed_balance_ratio, py::arg("det"),
          py::arg("a"), py::arg("omega"));
    m.def("rel_noise_probability",
          py::overload_cast<const detector::UDWDetector&, const geometry::FermiFrameSample&, int,
                            int>(&detector::rel_noise_probability),
          py::arg("det"), py::arg("frame"), py::arg("n"), py::arg("m"));
    m.def("response_report", &detector::response_report, py::arg("det"), py::arg("spec"),
          py::arg("frame"), py::arg("n"), py::arg("m"), py::arg("probe_threshold") = 0.1);

    // cli plumbing: run a config document end to end, returning the CSV text.
    m.def("run_config_text", [](const std::string& text) {
        return cli::run(cli::parse_config(text)).to_string();
    });
    m.def("config_hash", [](const std::string& text) {
        return cli::config_hash(cli::parse_config(text));
    });

    py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
}
