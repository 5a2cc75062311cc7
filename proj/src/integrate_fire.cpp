#include "hnf/integrate_fire.hpp"

#include <cmath>

namespace hnf {

void IFConfig::validate() const {
    const int nn = n();
    if (nn == 0) throw std::invalid_argument("IFConfig: empty F");
    for (double f : F)
        if (f <= 0.0) throw std::invalid_argument("IFConfig: F > 0 required");
    if (A_thresh <= 0.0 || A_thresh >= 1.0)
        throw std::invalid_argument("IFConfig: 0 < A_thresh < 1 required");
    if (tau < 0.0) throw std::invalid_argument("IFConfig: tau >= 0 required");
    if (static_cast<int>(adjacency.size()) != nn)
        throw std::invalid_argument("IFConfig: adjacency must be n x n");
    for (const auto& row : adjacency)
        if (static_cast<int>(row.size()) != nn)
            throw std::invalid_argument("IFConfig: adjacency must be n x n");
}

RealTrajectory integrate_if_ring(const IFConfig& cfg, std::span<const double> v0, double T,
                                 double dt, int record_every, double transient) {
    cfg.validate();
    const int n = cfg.n();
    if (static_cast<int>(v0.size()) != n)
        throw std::invalid_argument("integrate_if_ring: v0 size != n");
    if (dt <= 0.0) throw std::invalid_argument("integrate_if_ring: dt > 0 required");

    const double ratio = cfg.tau / dt;
    const auto delay_steps = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(delay_steps)) > 1e-9)
        throw std::invalid_argument("integrate_if_ring: dt must divide tau");

    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    std::vector<double> v(v0.begin(), v0.end());
    std::vector<double> p(n, 1.0);         // rising branch initially
    std::vector<double> p_target(n, 1.0);  // switch state when p_smooth > 0

    // delayed offset-corrected signal, zero-order hold before t = 0
    const std::size_t hist_len = delay_steps + 2;
    std::vector<std::vector<double>> hist(n, std::vector<double>(hist_len));
    for (int k = 0; k < n; ++k)
        for (auto& h : hist[k]) h = v0[k] - cfg.offset;
    std::size_t head = 0;  // slot of the sample at current time t

    // vt_l at time t - tau + frac*dt, linear between history grid points
    auto delayed = [&](int l, std::size_t step_head, double frac) {
        const std::size_t i0 = (step_head + hist_len - delay_steps) % hist_len;
        if (frac <= 0.0) return hist[l][i0];
        const std::size_t i1 = (i0 + 1) % hist_len;
        return (1.0 - frac) * hist[l][i0] + frac * hist[l][i1];
    };

    auto deriv = [&](const std::vector<double>& state, double frac,
                     std::vector<double>& d) {
        for (int k = 0; k < n; ++k) {
            const double vt = state[k] - cfg.offset;
            double coup = 0.0;
            if (cfg.K != 0.0 && p[k] != 0.0) {
                for (int l = 0; l < n; ++l)
                    if (cfg.adjacency[k][l] != 0.0)
                        coup += cfg.adjacency[k][l] *
                                (delay_steps == 0 ? state[l] - cfg.offset
                                                  : delayed(l, head, frac));
                coup *= cfg.K * (vt + vt * vt);
            }
            d[k] = (p[k] * state[k] - (1.0 - p[k]) * state[k] * cfg.B) / cfg.F[k] +
                   p[k] * coup;
        }
    };

    RealTrajectory traj;
    traj.dt = dt * record_every;
    traj.channels.assign(n, {});
    auto record = [&]() {
        for (int k = 0; k < n; ++k) traj.channels[k].push_back(v[k]);
    };
    record();

    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (std::size_t i = 0; i < steps; ++i) {
        deriv(v, 0.0, k1);
        for (int k = 0; k < n; ++k) tmp[k] = v[k] + 0.5 * dt * k1[k];
        deriv(tmp, 0.5, k2);
        for (int k = 0; k < n; ++k) tmp[k] = v[k] + 0.5 * dt * k2[k];
        deriv(tmp, 0.5, k3);
        for (int k = 0; k < n; ++k) tmp[k] = v[k] + dt * k3[k];
        deriv(tmp, 1.0, k4);
        for (int k = 0; k < n; ++k)
            v[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);

        for (int k = 0; k < n; ++k) {
            if (!std::isfinite(v[k])) throw DivergenceError(static_cast<double>(i + 1) * dt);
            if (p_target[k] == 1.0 && v[k] >= 1.0)
                p_target[k] = 0.0;
            else if (p_target[k] == 0.0 && v[k] <= cfg.A_thresh)
                p_target[k] = 1.0;
            if (cfg.p_smooth > 0.0)
                p[k] += (p_target[k] - p[k]) * (1.0 - std::exp(-dt / cfg.p_smooth));
            else
                p[k] = p_target[k];
        }
        head = (head + 1) % hist_len;
        for (int k = 0; k < n; ++k) hist[k][head] = v[k] - cfg.offset;
        if ((i + 1) % record_every == 0) record();
    }
    traj.transient_cut = std::min(
        traj.samples() - 1, static_cast<std::size_t>(std::llround(transient / traj.dt)));
    return traj;
}

}  // namespace hnf
