#include "hnf/phase_series.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace hnf {

std::vector<double> unwrap(std::span<const double> wrapped) {
    std::vector<double> out;
    out.reserve(wrapped.size());
    if (wrapped.empty()) return out;
    out.push_back(wrapped[0]);
    for (std::size_t i = 1; i < wrapped.size(); ++i) {
        double d = wrapped[i] - wrapped[i - 1];
        while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
        out.push_back(out.back() + d);
    }
    return out;
}

PhaseSeries extract_phase_polar(const ComplexTrajectory& traj) {
    traj.validate();
    PhaseSeries ps;
    ps.dt = traj.dt;
    ps.t0 = traj.t0;
    ps.transient_cut = traj.transient_cut;
    ps.provenance = PhaseProvenance::Polar;
    ps.theta.reserve(traj.n());
    for (int k = 0; k < traj.n(); ++k) {
        std::vector<double> raw;
        raw.reserve(traj.samples());
        for (const auto& z : traj.channels[k]) {
            if (std::abs(z) < 1e-9)
                throw std::runtime_error(
                    "extract_phase_polar: degenerate amplitude on node " +
                    std::to_string(k + 1));
            raw.push_back(std::arg(z));
        }
        ps.theta.push_back(unwrap(raw));
    }
    return ps;
}

PhaseSeries extract_phase_peaks(const RealTrajectory& traj, double prominence_fraction) {
    traj.validate();
    PhaseSeries ps;
    ps.dt = traj.dt;
    ps.t0 = traj.t0;
    ps.transient_cut = traj.transient_cut;
    ps.provenance = PhaseProvenance::PeakInterpolated;

    for (int k = 0; k < traj.n(); ++k) {
        const auto& v = traj.channels[k];
        double vmin = v[0], vmax = v[0];
        for (double x : v) {
            vmin = std::min(vmin, x);
            vmax = std::max(vmax, x);
        }
        const double floor_level = vmin + prominence_fraction * (vmax - vmin);

        std::vector<double> peaks;  // fractional sample positions
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > floor_level) {
                // quadratic interpolation around the discrete maximum
                const double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
                double shift = 0.0;
                if (denom < 0.0) shift = 0.5 * (v[i - 1] - v[i + 1]) / denom;
                peaks.push_back(static_cast<double>(i) + std::clamp(shift, -0.5, 0.5));
            }
        }
        if (peaks.size() < 3)
            throw std::runtime_error("extract_phase_peaks: fewer than 3 peaks on node " +
                                     std::to_string(k + 1));

        std::vector<double> phase(v.size());
        const double two_pi = 2.0 * std::numbers::pi;
        std::size_t seg = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double x = static_cast<double>(i);
            while (seg + 2 < peaks.size() && x > peaks[seg + 1]) ++seg;
            const double p0 = peaks[seg], p1 = peaks[seg + 1];
            phase[i] = two_pi * (static_cast<double>(seg) + (x - p0) / (p1 - p0));
        }
        ps.theta.push_back(std::move(phase));
    }
    return ps;
}

PhaseSeries detrend(const PhaseSeries& ps, std::span<const double> Omega) {
    if (static_cast<int>(Omega.size()) != ps.n())
        throw std::invalid_argument("detrend: Omega size != n");
    for (double w : Omega)
        if (!std::isfinite(w)) throw std::invalid_argument("detrend: Omega must be finite");
    PhaseSeries out = ps;
    out.detrend_Omega.assign(Omega.begin(), Omega.end());
    for (int k = 0; k < ps.n(); ++k)
        for (std::size_t i = 0; i < ps.samples(); ++i)
            out.theta[k][i] -= Omega[k] * ps.time_at(i);
    return out;
}

std::vector<double> fit_slopes(const PhaseSeries& ps) {
    std::vector<double> slopes(ps.n(), 0.0);
    const std::size_t i0 = ps.transient_cut;
    const std::size_t m = ps.samples() - i0;
    if (m < 2) throw std::invalid_argument("fit_slopes: too few samples");
    double tbar = 0.0;
    for (std::size_t i = 0; i < m; ++i) tbar += ps.time_at(i0 + i);
    tbar /= static_cast<double>(m);
    double stt = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dtc = ps.time_at(i0 + i) - tbar;
        stt += dtc * dtc;
    }
    for (int k = 0; k < ps.n(); ++k) {
        double sty = 0.0, ybar = 0.0;
        for (std::size_t i = 0; i < m; ++i) ybar += ps.theta[k][i0 + i];
        ybar /= static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i)
            sty += (ps.time_at(i0 + i) - tbar) * (ps.theta[k][i0 + i] - ybar);
        slopes[k] = sty / stt;
    }
    return slopes;
}

std::vector<double> estimate_resonant_frequencies(
    const PhaseSeries& ps, const std::vector<std::vector<int>>& constraints) {
    const auto slopes = fit_slopes(ps);
    if (constraints.empty()) return slopes;

    const int n = ps.n();
    const int m = static_cast<int>(constraints.size());
    Eigen::MatrixXd C(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(constraints[i].size()) != n)
            throw std::invalid_argument("estimate_resonant_frequencies: bad constraint size");
        for (int j = 0; j < n; ++j) C(i, j) = constraints[i][j];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(C * C.transpose());
    if (lu.rank() < m)
        throw std::runtime_error("estimate_resonant_frequencies: rank-deficient constraints");

    Eigen::VectorXd w(n);
    for (int j = 0; j < n; ++j) w(j) = slopes[j];
    const Eigen::VectorXd proj = w - C.transpose() * lu.solve(C * w);
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = proj(j);
    return out;
}

std::vector<double> differentiate(std::span<const double> y, double dt) {
    const std::size_t m = y.size();
    std::vector<double> d(m, 0.0);
    if (m < 2) return d;
    d[0] = (y[1] - y[0]) / dt;
    d[m - 1] = (y[m - 1] - y[m - 2]) / dt;
    for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
    return d;
}

std::vector<double> phase_combination(const PhaseSeries& ps, std::span<const int> combo) {
    if (static_cast<int>(combo.size()) != ps.n())
        throw std::invalid_argument("phase_combination: combo size != n");
    std::vector<double> out(ps.samples(), 0.0);
    for (int k = 0; k < ps.n(); ++k) {
        if (combo[k] == 0) continue;
        for (std::size_t i = 0; i < ps.samples(); ++i)
            out[i] += combo[k] * ps.theta[k][i];
    }
    return out;
}

}  // namespace hnf
