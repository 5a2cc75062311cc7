#include "hnf/slow_phase.hpp"

#include <cmath>

namespace hnf {

namespace {

double trajectory_mse(const SlowPhaseSystem& sp, std::span<const double> phi0,
                      const std::vector<std::vector<double>>& phi, double dt) {
    const std::size_t m = phi.front().size();
    const auto pred = integrate_phase_model(sp, phi0, static_cast<double>(m - 1) * dt, dt,
                                            1e-8);
    double acc = 0.0;
    for (std::size_t c = 0; c < phi.size(); ++c)
        for (std::size_t i = 0; i < m; ++i) {
            const double d = pred.channels[c][i] - phi[c][i];
            acc += d * d;
        }
    return acc / static_cast<double>(m * phi.size());
}

// golden-section on one coordinate
double golden(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double gr = 0.61803398874989484820;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

}  // namespace

SlowPhaseFit fit_slow_phase(const std::vector<std::vector<double>>& phi, double dt,
                            const std::vector<std::vector<int>>& combos,
                            std::span<const double> omega_hint, int smooth_window) {
    const int nc = static_cast<int>(phi.size());
    if (nc == 0) throw std::invalid_argument("fit_slow_phase: no channels");
    const std::size_t m = phi.front().size();
    for (const auto& ch : phi)
        if (ch.size() != m) throw std::invalid_argument("fit_slow_phase: ragged channels");

    // regression features [1, cos(phi_1), sin(phi_1), ..., cos(phi_nc), sin(phi_nc)]
    Eigen::MatrixXd X(m, 1 + 2 * nc);
    X.col(0).setOnes();
    for (int j = 0; j < nc; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            X(static_cast<long>(i), 1 + 2 * j) = std::cos(phi[j][i]);
            X(static_cast<long>(i), 2 + 2 * j) = std::sin(phi[j][i]);
        }

    SlowPhaseFit out;
    out.system.combos = combos;
    out.system.Omega.assign(nc, 0.0);
    out.system.a.assign(nc, std::vector<double>(nc, 0.0));
    out.system.b.assign(nc, std::vector<double>(nc, 0.0));

    for (int i = 0; i < nc; ++i) {
        auto dphi = differentiate(phi[i], dt);
        if (smooth_window > 1) dphi = rolling_mean(dphi, smooth_window);
        const Eigen::Map<const Eigen::VectorXd> y(dphi.data(), static_cast<long>(m));
        const Eigen::VectorXd c =
            X.colPivHouseholderQr().solve(y.eval());
        out.system.Omega[i] = c(0);
        for (int j = 0; j < nc; ++j) {
            out.system.a[i][j] = c(1 + 2 * j);
            out.system.b[i][j] = c(2 + 2 * j);
        }
    }
    (void)omega_hint;

    // initial condition search: cyclic golden-section around the data start
    std::vector<double> phi0(nc);
    for (int i = 0; i < nc; ++i) phi0[i] = phi[i][0];
    double best = trajectory_mse(out.system, phi0, phi, dt);
    const double pi = 3.14159265358979323846;
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (int i = 0; i < nc; ++i) {
            auto f1d = [&](double x) {
                std::vector<double> trial = phi0;
                trial[i] = x;
                return trajectory_mse(out.system, trial, phi, dt);
            };
            const double x = golden(f1d, phi0[i] - pi, phi0[i] + pi, 40);
            const double v = f1d(x);
            if (v < best) {
                best = v;
                phi0[i] = x;
            }
        }
    }
    out.converged = true;
    out.phi0 = phi0;
    out.mse = best;
    out.prediction = integrate_phase_model(out.system, phi0,
                                           static_cast<double>(m - 1) * dt, dt, 1e-8);
    return out;
}

double prediction_cycle_error(std::span<const double> data, std::span<const double> pred) {
    if (data.size() != pred.size() || data.size() < 4)
        throw std::invalid_argument("prediction_cycle_error: bad inputs");
    const std::size_t m = data.size();
    const double two_pi = 2.0 * 3.14159265358979323846;

    // rotating slow phase: error accumulated per 2 pi winding
    const double windings = std::abs(data.back() - data.front()) / two_pi;
    if (windings >= 2.0) {
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            worst = std::max(worst, std::abs(pred[i] - data[i]));
        return worst / (two_pi * windings);
    }

    // librating slow phase: per-oscillation deviation against the swing
    double mean = 0.0;
    for (double v : data) mean += v;
    mean /= static_cast<double>(m);

    // upward mean crossings delimit cycles
    std::vector<std::size_t> marks;
    for (std::size_t i = 1; i < m; ++i)
        if (data[i - 1] < mean && data[i] >= mean) marks.push_back(i);

    std::vector<std::pair<std::size_t, std::size_t>> windows;
    if (marks.size() >= 2)
        for (std::size_t c = 0; c + 1 < marks.size(); ++c)
            windows.emplace_back(marks[c], marks[c + 1]);
    else
        windows.emplace_back(0, m);

    double acc = 0.0;
    std::size_t used = 0;
    for (auto [lo, hi] : windows) {
        double dmin = data[lo], dmax = data[lo], worst = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            dmin = std::min(dmin, data[i]);
            dmax = std::max(dmax, data[i]);
            worst = std::max(worst, std::abs(pred[i] - data[i]));
        }
        if (dmax - dmin <= 0.0) continue;
        acc += worst / (dmax - dmin);
        ++used;
    }
    return used > 0 ? acc / static_cast<double>(used) : 0.0;
}

}  // namespace hnf
