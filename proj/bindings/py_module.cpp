#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hnf/conjugacy.hpp"
#include "hnf/integrators.hpp"
#include "hnf/json_io.hpp"
#include "hnf/phase_series.hpp"
#include "hnf/regression.hpp"
#include "hnf/slow_phase.hpp"

namespace py = pybind11;
using namespace hnf;

namespace {

NetworkSystem system_from_str(const std::string& config_json) {
    return system_from_json(Json::parse(config_json));
}

py::array_t<std::complex<double>> traj_to_array(const ComplexTrajectory& traj) {
    const auto n = static_cast<py::ssize_t>(traj.n());
    const auto m = static_cast<py::ssize_t>(traj.samples());
    py::array_t<std::complex<double>> out({n, m});
    auto buf = out.mutable_unchecked<2>();
    for (py::ssize_t k = 0; k < n; ++k)
        for (py::ssize_t i = 0; i < m; ++i) buf(k, i) = traj.channels[k][i];
    return out;
}

BasisLibrary library_from_array(const py::array_t<double>& Phi) {
    auto buf = Phi.unchecked<2>();
    BasisLibrary lib;
    lib.Phi.resize(buf.shape(0), buf.shape(1));
    for (py::ssize_t i = 0; i < buf.shape(0); ++i)
        for (py::ssize_t j = 0; j < buf.shape(1); ++j) lib.Phi(i, j) = buf(i, j);
    // anonymous feature descriptors; a constant column is detected by zero
    // variance inside lasso
    for (py::ssize_t j = 0; j < buf.shape(1); ++j) {
        FeatureDescriptor f;
        f.kind = FeatureDescriptor::Kind::Sin;
        f.combo = {static_cast<int>(j)};
        lib.features.push_back(std::move(f));
    }
    return lib;
}

py::dict fit_to_dict(const FitResult& fit) {
    py::list coeffs, support;
    for (long i = 0; i < fit.coeffs.size(); ++i) coeffs.append(fit.coeffs(i));
    for (int s : fit.support) support.append(s);
    py::dict d;
    d["coeffs"] = coeffs;
    d["support"] = support;
    d["mse"] = fit.mse;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hnf, m) {
    m.doc() = "emergent-hypernetwork engine: derive / simulate / recover for weakly "
              "coupled oscillator networks";

    m.def(
        "derive",
        [](const std::string& config_json, double eps_res) {
            NetworkSystem sys = system_from_str(config_json);
            if (eps_res > 0) sys.eps_res = eps_res;
            return hypernetwork_to_json(algorithm1(sys, sys.eps_res)).dump();
        },
        py::arg("config_json"), py::arg("eps_res") = -1.0,
        "Resonance-filtered hypernetwork (hyperedge-list JSON) for a system config");

    m.def(
        "verify_cancellation",
        [](const std::string& config_json) {
            const auto rep = verify_cancellation(system_from_str(config_json));
            py::dict d;
            d["residual_P"] = rep.residual_P;
            d["residual_Q"] = rep.residual_Q;
            d["alpha1_below"] = rep.alpha1_below;
            d["alpha2_mismatch"] = rep.alpha2_mismatch;
            return d;
        },
        py::arg("config_json"));

    m.def(
        "simulate",
        [](const std::string& config_json, double T, double dt, int record_every,
           double transient) {
            const NetworkSystem sys = system_from_str(config_json);
            std::vector<Complex> z0;
            const double r = std::sqrt(std::max(sys.lambda, 0.01));
            for (int k = 0; k < sys.n; ++k) z0.push_back(std::polar(0.9 * r, 0.7 * (k + 1)));
            return traj_to_array(integrate_network(sys, z0, T, dt, record_every, transient));
        },
        py::arg("config_json"), py::arg("T"), py::arg("dt") = 0.01,
        py::arg("record_every") = 1, py::arg("transient") = 0.0,
        "Integrate the network; rows are nodes, columns samples");

    m.def(
        "extract_phases",
        [](const py::array_t<std::complex<double>>& z, double dt) {
            auto buf = z.unchecked<2>();
            ComplexTrajectory traj;
            traj.dt = dt;
            traj.channels.assign(buf.shape(0), {});
            for (py::ssize_t k = 0; k < buf.shape(0); ++k)
                for (py::ssize_t i = 0; i < buf.shape(1); ++i)
                    traj.channels[k].push_back(buf(k, i));
            const auto ps = extract_phase_polar(traj);
            py::array_t<double> out({buf.shape(0), buf.shape(1)});
            auto ob = out.mutable_unchecked<2>();
            for (py::ssize_t k = 0; k < buf.shape(0); ++k)
                for (py::ssize_t i = 0; i < buf.shape(1); ++i) ob(k, i) = ps.theta[k][i];
            return out;
        },
        py::arg("z"), py::arg("dt"), "Unwrapped polar phases per node");

    m.def(
        "stlsq",
        [](const py::array_t<double>& Phi, const py::array_t<double>& y, double threshold) {
            auto yb = y.unchecked<1>();
            std::vector<double> target(yb.data(0), yb.data(0) + yb.shape(0));
            return fit_to_dict(stlsq(library_from_array(Phi), target, threshold));
        },
        py::arg("Phi"), py::arg("y"), py::arg("threshold") = 1e-4,
        "Sequential thresholded least squares on a feature matrix");

    m.def(
        "lasso",
        [](const py::array_t<double>& Phi, const py::array_t<double>& y, double penalty,
           bool debias) {
            auto yb = y.unchecked<1>();
            std::vector<double> target(yb.data(0), yb.data(0) + yb.shape(0));
            return fit_to_dict(lasso(library_from_array(Phi), target, penalty, debias));
        },
        py::arg("Phi"), py::arg("y"), py::arg("penalty"), py::arg("debias") = true,
        "Coordinate-descent LASSO (standardized internally, debiased on the support)");

    m.def(
        "rho",
        [](int p, int q, double r0, const std::vector<double>& omega) {
            const auto t = rho(p, q, r0, omega);
            return py::make_tuple(t.sin_c, t.cos_c);
        },
        py::arg("p"), py::arg("q"), py::arg("r0"), py::arg("omega"),
        "(sin, cos) coefficients of the pair coupling function; 0-based indices");

    m.def(
        "sigma",
        [](int p, int q, int r, double r0, const std::vector<double>& omega) {
            const auto t = sigma(p, q, r, r0, omega);
            return py::make_tuple(t.sin_c, t.cos_c);
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("r0"), py::arg("omega"));

    m.def(
        "conjugacy_deviation",
        [](const std::string& config_json, double T, double dt) {
            return conjugacy_deviation(system_from_str(config_json), T, dt);
        },
        py::arg("config_json"), py::arg("T") = 500.0, py::arg("dt") = 0.01);

    m.attr("__version__") = "0.1.0";
}
