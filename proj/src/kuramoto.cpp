#include "hnf/kuramoto.hpp"

#include <cmath>
#include <numbers>

#include "hnf/prng.hpp"

namespace hnf {

void EnsembleConfig::validate() const {
    if (M < 1) throw std::invalid_argument("EnsembleConfig: M >= 1 required");
    const int nn = n();
    if (static_cast<int>(sigma.size()) != nn || static_cast<int>(adjacency.size()) != nn)
        throw std::invalid_argument("EnsembleConfig: inconsistent sizes");
    for (const auto& row : adjacency)
        if (static_cast<int>(row.size()) != nn)
            throw std::invalid_argument("EnsembleConfig: adjacency must be n x n");
    for (double s : sigma)
        if (s <= 0.0) throw std::invalid_argument("EnsembleConfig: sigma > 0 required");
}

std::vector<double> sample_lorentzian(int count, double center, double width,
                                      std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double u = rng.next_double();
        out.push_back(center + width * std::tan(std::numbers::pi * (u - 0.5)));
    }
    return out;
}

ComplexTrajectory integrate_microscopic(const EnsembleConfig& cfg, double T, double dt,
                                        int record_every, double transient) {
    cfg.validate();
    const int n = cfg.n();
    const int M = cfg.M;
    const std::size_t total = static_cast<std::size_t>(n) * M;

    std::vector<double> omega(total), psi(total);
    for (int k = 0; k < n; ++k) {
        const auto w = sample_lorentzian(M, cfg.Omega[k], cfg.sigma[k],
                                         cfg.seed + 0x100 * (k + 1));
        SplitMix64 rng(cfg.seed + 0x9000 + k);
        for (int m = 0; m < M; ++m) {
            omega[k * M + m] = w[m];
            psi[k * M + m] = 2.0 * std::numbers::pi * rng.next_double();
        }
    }

    std::vector<double> sbuf(total), cbuf(total);
    std::vector<Complex> z(n), W(n);

    auto mean_fields = [&](const std::vector<double>& state, std::vector<Complex>& out) {
        for (int k = 0; k < n; ++k) {
            double cr = 0.0, ci = 0.0;
            const std::size_t base = static_cast<std::size_t>(k) * M;
            for (int m = 0; m < M; ++m) {
                sbuf[base + m] = std::sin(state[base + m]);
                cbuf[base + m] = std::cos(state[base + m]);
                cr += cbuf[base + m];
                ci += sbuf[base + m];
            }
            out[k] = Complex(cr / M, ci / M);
        }
    };

    auto deriv = [&](const std::vector<double>& state, std::vector<double>& d) {
        mean_fields(state, z);
        for (int k = 0; k < n; ++k) {
            Complex w = cfg.mu * z[k];
            for (int l = 0; l < n; ++l)
                if (cfg.adjacency[k][l] != 0.0)
                    w += cfg.alpha * cfg.adjacency[k][l] * z[l];
            W[k] = 2.0 * w;
        }
        for (int k = 0; k < n; ++k) {
            const double wr = W[k].real(), wi = W[k].imag();
            const std::size_t base = static_cast<std::size_t>(k) * M;
            // Im(W e^{-i psi}) = Im(W) cos(psi) - Re(W) sin(psi)
            for (int m = 0; m < M; ++m)
                d[base + m] = omega[base + m] + wi * cbuf[base + m] - wr * sbuf[base + m];
        }
    };

    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    std::vector<double> k1(total), k2(total), k3(total), k4(total), tmp(total);

    ComplexTrajectory traj;
    traj.dt = dt * record_every;
    traj.channels.assign(n, {});
    std::vector<Complex> zrec(n);
    auto record = [&]() {
        mean_fields(psi, zrec);
        for (int k = 0; k < n; ++k) traj.channels[k].push_back(zrec[k]);
    };
    record();

    for (std::size_t i = 0; i < steps; ++i) {
        deriv(psi, k1);
        for (std::size_t j = 0; j < total; ++j) tmp[j] = psi[j] + 0.5 * dt * k1[j];
        deriv(tmp, k2);
        for (std::size_t j = 0; j < total; ++j) tmp[j] = psi[j] + 0.5 * dt * k2[j];
        deriv(tmp, k3);
        for (std::size_t j = 0; j < total; ++j) tmp[j] = psi[j] + dt * k3[j];
        deriv(tmp, k4);
        for (std::size_t j = 0; j < total; ++j)
            psi[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        if ((i + 1) % record_every == 0) record();
    }
    traj.transient_cut = std::min(
        traj.samples() - 1, static_cast<std::size_t>(std::llround(transient / traj.dt)));
    return traj;
}

}  // namespace hnf
