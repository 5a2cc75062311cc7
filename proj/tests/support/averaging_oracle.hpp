#pragma once

// Test-only oracle: trapezoidal time average of the frozen-amplitude phase
// field of the FULL emergent coupling (fast terms included) under free
// rotation theta(t) = theta0 + omega t. With the resonant combinations made
// exact, fast terms average out ~ 1/(nu T) and the result must match the
// averaged (reduced) phase model. Independent of the polar_reduce path: it
// consumes the unfiltered hypernetwork coefficients directly.

#include <cmath>
#include <numbers>
#include <vector>

#include "hnf/normal_form.hpp"
#include "hnf/phase_reduction.hpp"

namespace hnf_test {

// coupling part of dtheta_k/dt at frozen radius r0, full (unfiltered) G
inline double full_phase_coupling(const hnf::Hypernetwork& full,
                                  const hnf::NetworkSystem& sys, double r0, int node,
                                  const std::vector<double>& theta) {
    double acc = 0.0;
    const double a2 = sys.alpha * sys.alpha;
    for (const auto& e : full.edges) {
        if (e.node != node) continue;
        double arg = -theta[node];
        int degree = 0;
        for (int j = 0; j < full.n; ++j) {
            arg += (static_cast<int>(e.mono.s[j]) - static_cast<int>(e.mono.t[j])) *
                   theta[j];
            degree += e.mono.s[j] + e.mono.t[j];
        }
        const double scale = a2 * std::pow(r0, degree - 1);
        acc -= scale * (e.coeff.real() * std::sin(arg) + e.coeff.imag() * std::cos(arg));
    }
    return acc;
}

// reduced (averaged) coupling part from the PhaseModel terms
inline double reduced_phase_coupling(const hnf::PhaseModel& pm, int node,
                                     const std::vector<double>& theta) {
    double acc = 0.0;
    for (const auto& t : pm.terms) {
        if (t.node != node) continue;
        double arg = 0.0;
        for (int j = 0; j < pm.n; ++j) arg += t.m[j] * theta[j];
        acc += t.sin_c * std::sin(arg) + t.cos_c * std::cos(arg);
    }
    return acc;
}

inline double time_average_coupling(const hnf::Hypernetwork& full,
                                    const hnf::NetworkSystem& sys, double r0, int node,
                                    const std::vector<double>& theta0, double T,
                                    double dt) {
    const auto steps = static_cast<std::size_t>(T / dt);
    std::vector<double> theta(theta0);
    double acc = 0.5 * full_phase_coupling(full, sys, r0, node, theta);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        for (int j = 0; j < sys.n; ++j) theta[j] = theta0[j] + sys.omega[j] * t;
        const double v = full_phase_coupling(full, sys, r0, node, theta);
        acc += (i == steps) ? 0.5 * v : v;
    }
    return acc / static_cast<double>(steps);
}

struct FourierPair {
    double a = 0.0;  // sin coefficient
    double b = 0.0;  // cos coefficient
    double c = 0.0;  // mean
};

// least-squares fit of f(x_i) = a sin x + b cos x + c on a uniform grid
inline FourierPair fourier_fit(const std::vector<double>& x,
                               const std::vector<double>& f) {
    FourierPair out;
    double ss = 0, cc = 0, n = static_cast<double>(x.size());
    double fs = 0, fc = 0, fm = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ss += std::sin(x[i]) * std::sin(x[i]);
        cc += std::cos(x[i]) * std::cos(x[i]);
        fs += f[i] * std::sin(x[i]);
        fc += f[i] * std::cos(x[i]);
        fm += f[i];
    }
    out.a = fs / ss;
    out.b = fc / cc;
    out.c = fm / n;
    return out;
}

// Sweep node `sweep` over [0, 2pi), average the full field and evaluate the
// reduced field at the same points, and return both Fourier fits.
struct OracleComparison {
    FourierPair numeric;
    FourierPair reduced;
};

inline OracleComparison compare_on_sweep(const hnf::Hypernetwork& full,
                                         const hnf::PhaseModel& pm,
                                         const hnf::NetworkSystem& sys, double r0,
                                         int node, int sweep, double T = 2000.0,
                                         double dt = 0.02, int grid = 16) {
    std::vector<double> xs, fnum, fred;
    std::vector<double> theta0(sys.n, 0.0);
    for (int i = 0; i < grid; ++i) {
        const double x = 2.0 * std::numbers::pi * i / grid;
        theta0[sweep] = x;
        xs.push_back(x);
        fnum.push_back(time_average_coupling(full, sys, r0, node, theta0, T, dt));
        fred.push_back(reduced_phase_coupling(pm, node, theta0));
    }
    return {fourier_fit(xs, fnum), fourier_fit(xs, fred)};
}

}  // namespace hnf_test
