#include "hnf/conjugacy.hpp"

#include <cmath>

namespace hnf {

std::vector<Complex> CoordinateTransform::apply(std::span<const Complex> z) const {
    const int n = static_cast<int>(P.size());
    std::vector<Complex> w(n), u(n);
    for (int k = 0; k < n; ++k) w[k] = z[k] - alpha * P[k].eval(z);
    for (int k = 0; k < n; ++k) u[k] = w[k] - alpha * Q[k].eval(w);
    return u;
}

CoordinateTransform build_transform(const NetworkSystem& sys) {
    CoordinateTransform t;
    t.alpha = sys.alpha;
    t.P = compute_P(sys, sys.eps_res);
    t.Q = compute_second_transform(sys, t.P).Q;
    return t;
}

double conjugacy_deviation(const NetworkSystem& sys, double T, double dt, double settle,
                           int sample_every) {
    const auto transform = build_transform(sys);
    const auto hn = algorithm1(sys, sys.eps_res);
    const CompiledField original(sys);
    const CompiledField reduced(sys.gamma(), sys.beta, hn.G,
                                Complex(-sys.alpha * sys.alpha));

    // settle the original system onto its attractor first
    std::vector<Complex> z0;
    const double r = std::sqrt(std::max(sys.lambda, 0.01));
    for (int k = 0; k < sys.n; ++k) z0.push_back(std::polar(0.9 * r, 0.7 * (k + 1)));
    const auto pre = integrate_field(original, z0, settle, dt, sample_every);
    std::vector<Complex> z_start(sys.n);
    for (int k = 0; k < sys.n; ++k) z_start[k] = pre.channels[k].back();

    const auto traj_z = integrate_field(original, z_start, T, dt, sample_every);
    const auto u_start = transform.apply(z_start);
    const auto traj_u = integrate_field(reduced, u_start, T, dt, sample_every);

    double dev = 0.0;
    std::vector<Complex> z(sys.n);
    for (std::size_t i = 0; i < traj_z.samples(); ++i) {
        for (int k = 0; k < sys.n; ++k) z[k] = traj_z.channels[k][i];
        const auto u_from_z = transform.apply(z);
        for (int k = 0; k < sys.n; ++k)
            dev = std::max(dev, std::abs(u_from_z[k] - traj_u.channels[k][i]));
    }
    return dev;
}

}  // namespace hnf
