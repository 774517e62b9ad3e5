#include "jxfrft/biphoton.hpp"
#include "jxfrft/commands.hpp"
#include "jxfrft/continuum.hpp"
#include "jxfrft/errors.hpp"
#include "jxfrft/lattice.hpp"
#include "jxfrft/specfun.hpp"
#include "jxfrft/transform.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace jxfrft;

namespace {

Field as_field(const Eigen::VectorXcd& amplitudes) { return Field{amplitudes}; }

void register_lattice(py::module_& m) {
    py::class_<LatticeSpec>(m, "LatticeSpec")
        .def(py::init<int, double>(), py::arg("N"), py::arg("kappa0") = 1.0)
        .def_property_readonly("N", &LatticeSpec::size)
        .def_property_readonly("j", &LatticeSpec::j)
        .def_property_readonly("gamma", &LatticeSpec::gamma)
        .def_property_readonly("kappa0", &LatticeSpec::kappa0)
        .def("label", &LatticeSpec::label)
        .def("index", &LatticeSpec::index)
        .def("__repr__", [](const LatticeSpec& s) {
            std::ostringstream os;
            os << "LatticeSpec(N=" << s.size() << ", kappa0=" << s.kappa0() << ")";
            return os.str();
        });

    py::class_<JxMatrix>(m, "JxMatrix")
        .def_readonly("dim", &JxMatrix::dim)
        .def_readonly("offdiag", &JxMatrix::offdiag)
        .def("dense", &JxMatrix::dense);

    py::class_<SpectralBasis>(m, "SpectralBasis")
        .def_readonly("eigenvalues", &SpectralBasis::eigenvalues)
        .def_readonly("vectors", &SpectralBasis::vectors);

    m.def("build_jx", &build_jx, py::arg("spec"));
    m.def("exact_eigenvalues", &exact_eigenvalues, py::arg("spec"));
    m.def("analytic_eigenvector", &analytic_eigenvector, py::arg("spec"), py::arg("m"));
    m.def("analytic_basis", &analytic_basis, py::arg("spec"));
    m.def("numeric_basis", &numeric_basis, py::arg("jx"));
}

void register_transform(py::module_& m) {
    py::class_<GreenMatrix>(m, "GreenMatrix")
        .def_readonly("order", &GreenMatrix::order)
        .def_readonly("entries", &GreenMatrix::entries)
        .def("unitarity_defect", &GreenMatrix::unitarity_defect);

    py::enum_<ProfileKind>(m, "ProfileKind")
        .value("gaussian", ProfileKind::gaussian)
        .value("tophat", ProfileKind::tophat)
        .value("single_site", ProfileKind::single_site)
        .value("custom", ProfileKind::custom);

    py::class_<InputProfileSpec>(m, "InputProfileSpec")
        .def(py::init([](ProfileKind kind, double center, double width, double phase_ramp,
                         std::vector<cplx> custom) {
                 return InputProfileSpec{kind, center, width, phase_ramp, std::move(custom)};
             }),
             py::arg("kind") = ProfileKind::gaussian, py::arg("center") = 0.0, py::arg("width") = 5.0,
             py::arg("phase_ramp") = 0.0, py::arg("custom") = std::vector<cplx>{})
        .def_readwrite("kind", &InputProfileSpec::kind)
        .def_readwrite("center", &InputProfileSpec::center)
        .def_readwrite("width", &InputProfileSpec::width)
        .def_readwrite("phase_ramp", &InputProfileSpec::phase_ramp);

    m.def("green_spectral", &green_spectral, py::arg("basis"), py::arg("Z"));
    m.def("green_closed", &green_closed, py::arg("spec"), py::arg("p"), py::arg("q"), py::arg("Z"));
    m.def("green_closed_matrix", &green_closed_matrix, py::arg("spec"), py::arg("Z"));
    m.def("green_quarter", &green_quarter, py::arg("basis"), py::arg("spec"), py::arg("p"), py::arg("q"));
    m.def(
        "propagate",
        [](const Eigen::VectorXcd& field, const SpectralBasis& basis, double z) {
            return propagate(as_field(field), basis, z).amplitudes;
        },
        py::arg("field"), py::arg("basis"), py::arg("Z"));
    m.def(
        "dfrft",
        [](const Eigen::VectorXcd& field, const SpectralBasis& basis, double order) {
            return dfrft(as_field(field), basis, order).amplitudes;
        },
        py::arg("field"), py::arg("basis"), py::arg("order"));
    m.def(
        "make_input",
        [](const LatticeSpec& spec, const InputProfileSpec& profile) { return make_input(spec, profile).amplitudes; },
        py::arg("spec"), py::arg("profile"));
    m.def(
        "zscan",
        [](const Eigen::VectorXcd& field, const SpectralBasis& basis, const std::vector<double>& grid) {
            return zscan(as_field(field), basis, grid);
        },
        py::arg("field"), py::arg("basis"), py::arg("z_grid"));
    m.def(
        "continuous_frft_gaussian",
        [](double width, double shift, double order, const std::vector<double>& grid) {
            return continuous_frft_gaussian(width, shift, order, grid);
        },
        py::arg("width"), py::arg("shift"), py::arg("order"), py::arg("x_grid"));
}

void register_biphoton(py::module_& m) {
    py::enum_<TwoPhotonKind>(m, "TwoPhotonKind")
        .value("separable", TwoPhotonKind::separable)
        .value("path_entangled", TwoPhotonKind::path_entangled);
    py::enum_<ParityRule>(m, "ParityRule")
        .value("odd_suppressed", ParityRule::odd_suppressed)
        .value("even_suppressed", ParityRule::even_suppressed);

    py::class_<TwoPhotonInput>(m, "TwoPhotonInput")
        .def(py::init([](TwoPhotonKind kind, double a, double b) { return TwoPhotonInput{kind, a, b}; }),
             py::arg("kind"), py::arg("m"), py::arg("n"))
        .def_readonly("kind", &TwoPhotonInput::kind)
        .def_readonly("m", &TwoPhotonInput::m)
        .def_readonly("n", &TwoPhotonInput::n);

    py::class_<SuppressionReport>(m, "SuppressionReport")
        .def_readonly("max_suppressed", &SuppressionReport::max_suppressed)
        .def_readonly("max_allowed", &SuppressionReport::max_allowed)
        .def_readonly("ratio", &SuppressionReport::ratio)
        .def_readonly("passed", &SuppressionReport::pass);
    py::class_<RotationReport>(m, "RotationReport")
        .def_readonly("distance", &RotationReport::distance)
        .def_readonly("passed", &RotationReport::pass);
    py::class_<OutermostCalibration>(m, "OutermostCalibration")
        .def_readonly("constant", &OutermostCalibration::constant)
        .def_readonly("max_residual", &OutermostCalibration::max_residual);

    m.def(
        "correlation",
        [](const SpectralBasis& basis, const TwoPhotonInput& input, double z) {
            return correlation(basis, input, z).gamma;
        },
        py::arg("basis"), py::arg("input"), py::arg("Z"));
    m.def(
        "photon_density",
        [](const SpectralBasis& basis, const TwoPhotonInput& input, double z) {
            return photon_density(basis, input, z).intensities;
        },
        py::arg("basis"), py::arg("input"), py::arg("Z"));
    m.def("correlation_outermost", &correlation_outermost, py::arg("spec"), py::arg("k"), py::arg("l"));
    m.def("calibrate_outermost", &calibrate_outermost, py::arg("spec"), py::arg("basis"));
    m.def("apply_beamsplitter", &apply_beamsplitter, py::arg("input"));
    m.def(
        "suppression_report",
        [](const Eigen::MatrixXd& gamma, ParityRule rule) { return suppression_report(CorrelationMatrix{gamma}, rule); },
        py::arg("gamma"), py::arg("rule"));
    m.def(
        "rotation_comparison",
        [](const Eigen::MatrixXd& sep, const Eigen::MatrixXd& ent) {
            return rotation_comparison(CorrelationMatrix{sep}, CorrelationMatrix{ent});
        },
        py::arg("separable"), py::arg("entangled"));
}

void register_continuum(py::module_& m) {
    m.def(
        "continuum_overlap", [](int n, int level) { return continuum_overlap(ContinuumProbe{n, level}); },
        py::arg("N"), py::arg("level"));
    m.def(
        "convergence_study",
        [](const std::vector<int>& levels, const std::vector<int>& sizes) {
            std::vector<std::tuple<int, int, double>> rows;
            for (const auto& e : convergence_study(levels, sizes).entries) {
                rows.emplace_back(e.sites, e.level, e.overlap);
            }
            return rows;
        },
        py::arg("levels"), py::arg("sizes"));
    m.def("eigenrelation_residual", &eigenrelation_residual, py::arg("basis"), py::arg("spec"), py::arg("m"),
          py::arg("Z"));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete fractional Fourier transform on Jx photonic lattices";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def("log_factorial", &specfun::log_factorial, py::arg("k"));
    m.def(
        "jacobi",
        [](int n, double alpha, double beta, double x) { return specfun::jacobi({n, alpha, beta}, x); },
        py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("x"));
    m.def("hermite_gauss", &specfun::hermite_gauss, py::arg("n"), py::arg("x"));

    register_lattice(m);
    register_transform(m);
    register_biphoton(m);
    register_continuum(m);

    m.def(
        "physical_length",
        [](const LatticeSpec& spec, double z) { return cli::physical_length(spec, z); },
        py::arg("spec"), py::arg("Z"));
    m.def(
        "run_config",
        [](const std::string& config_json) {
            cli::json doc;
            try {
                doc = cli::json::parse(config_json);
            } catch (const cli::json::parse_error& e) {
                throw UsageError(std::string("config is not valid JSON: ") + e.what());
            }
            const auto cfg = cli::parse_config(doc);
            return cli::run(cfg).document.dump();
        },
        py::arg("config_json"), "Run a JSON config and return the JSON result document.");
}
