#include "hnf/integrators.hpp"

#include <cmath>

namespace hnf {

CompiledField::CompiledField(const NetworkSystem& sys) : n_(sys.n) {
    sys.validate();
    gamma_ = sys.gamma().gamma;
    beta_ = sys.beta;
    compile(assemble_H(sys, 255), Complex(sys.alpha));
}

CompiledField::CompiledField(const GammaVector& gamma, std::span<const Complex> beta,
                             std::span<const ConjPolynomial> extra, Complex scale)
    : n_(gamma.n()),
      gamma_(gamma.gamma),
      beta_(beta.begin(), beta.end()) {
    if (static_cast<int>(beta.size()) != n_ || static_cast<int>(extra.size()) != n_)
        throw DimensionError("CompiledField: inconsistent sizes");
    compile(extra, scale);
}

void CompiledField::compile(std::span<const ConjPolynomial> extra, Complex scale) {
    terms_.assign(n_, {});
    for (int k = 0; k < n_; ++k)
        for (const auto& [e, c] : extra[k].terms()) {
            Term t;
            t.c = c * scale;
            for (int j = 0; j < n_; ++j)
                if (e.s[j] > 0 || e.t[j] > 0) t.factors.push_back({j, e.s[j], e.t[j]});
            terms_[k].push_back(std::move(t));
        }
}

void CompiledField::eval(const Complex* z, Complex* dz) const {
    for (int k = 0; k < n_; ++k) {
        Complex d = gamma_[k] * z[k] + beta_[k] * z[k] * std::norm(z[k]);
        for (const auto& t : terms_[k]) {
            Complex m = t.c;
            for (const auto& f : t.factors) {
                const Complex v = z[f.var];
                for (int r = 0; r < f.s; ++r) m *= v;
                if (f.t > 0) {
                    const Complex vc = std::conj(v);
                    for (int r = 0; r < f.t; ++r) m *= vc;
                }
            }
            d += m;
        }
        dz[k] = d;
    }
}

ComplexTrajectory integrate_network(const NetworkSystem& sys, std::span<const Complex> z0,
                                    double T, double dt, int record_every,
                                    double transient) {
    if (static_cast<int>(z0.size()) != sys.n)
        throw std::invalid_argument("integrate_network: initial state size != n");
    return integrate_field(CompiledField(sys), z0, T, dt, record_every, transient);
}

ComplexTrajectory integrate_field(const CompiledField& field, std::span<const Complex> z0,
                                  double T, double dt, int record_every,
                                  double transient) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_field: dt must be positive");
    if (static_cast<int>(z0.size()) != field.n())
        throw std::invalid_argument("integrate_field: initial state size != n");
    const int n = field.n();
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));

    std::vector<Complex> z(z0.begin(), z0.end());
    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);

    ComplexTrajectory traj;
    traj.dt = dt * record_every;
    traj.channels.assign(n, {});
    const std::size_t expected = steps / record_every + 1;
    for (auto& c : traj.channels) c.reserve(expected);

    auto record = [&]() {
        for (int k = 0; k < n; ++k) traj.channels[k].push_back(z[k]);
    };
    record();

    for (std::size_t i = 0; i < steps; ++i) {
        field.eval(z.data(), k1.data());
        for (int k = 0; k < n; ++k) tmp[k] = z[k] + 0.5 * dt * k1[k];
        field.eval(tmp.data(), k2.data());
        for (int k = 0; k < n; ++k) tmp[k] = z[k] + 0.5 * dt * k2[k];
        field.eval(tmp.data(), k3.data());
        for (int k = 0; k < n; ++k) tmp[k] = z[k] + dt * k3[k];
        field.eval(tmp.data(), k4.data());
        for (int k = 0; k < n; ++k)
            z[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        for (int k = 0; k < n; ++k)
            if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag()))
                throw DivergenceError(static_cast<double>(i + 1) * dt);
        if ((i + 1) % record_every == 0) record();
    }
    traj.transient_cut =
        std::min(traj.samples() - 1,
                 static_cast<std::size_t>(std::llround(transient / traj.dt)));
    return traj;
}

RealTrajectory integrate_rk4(const RealField& f, std::span<const double> y0, double T,
                             double dt, int record_every, double transient) {
    if (dt <= 0.0) throw std::invalid_argument("integrate_rk4: dt must be positive");
    const int n = static_cast<int>(y0.size());
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));

    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

    RealTrajectory traj;
    traj.dt = dt * record_every;
    traj.channels.assign(n, {});
    auto record = [&]() {
        for (int k = 0; k < n; ++k) traj.channels[k].push_back(y[k]);
    };
    record();

    double t = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        f(t, y.data(), k1.data());
        for (int k = 0; k < n; ++k) tmp[k] = y[k] + 0.5 * dt * k1[k];
        f(t + 0.5 * dt, tmp.data(), k2.data());
        for (int k = 0; k < n; ++k) tmp[k] = y[k] + 0.5 * dt * k2[k];
        f(t + 0.5 * dt, tmp.data(), k3.data());
        for (int k = 0; k < n; ++k) tmp[k] = y[k] + dt * k3[k];
        f(t + dt, tmp.data(), k4.data());
        for (int k = 0; k < n; ++k)
            y[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        t += dt;
        for (double v : y)
            if (!std::isfinite(v)) throw DivergenceError(t);
        if ((i + 1) % record_every == 0) record();
    }
    traj.transient_cut = std::min(
        traj.samples() - 1, static_cast<std::size_t>(std::llround(transient / traj.dt)));
    return traj;
}

namespace {

// Cash-Karp tableau
constexpr double CK_C[6] = {0.0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
constexpr double CK_A[6][5] = {
    {0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0},
    {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
    {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
    {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
constexpr double CK_B5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
constexpr double CK_B4[6] = {2825.0 / 27648, 0,           18575.0 / 48384,
                             13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

}  // namespace

RealTrajectory integrate_adaptive(const RealField& f, std::span<const double> y0, double T,
                                  double dt_out, double abs_tol) {
    if (dt_out <= 0.0) throw std::invalid_argument("integrate_adaptive: dt_out > 0 required");
    const int n = static_cast<int>(y0.size());
    const auto samples = static_cast<std::size_t>(std::llround(T / dt_out));

    std::vector<double> y(y0.begin(), y0.end());
    std::vector<std::vector<double>> k(6, std::vector<double>(n));
    std::vector<double> ytmp(n), y5(n), err(n);

    RealTrajectory traj;
    traj.dt = dt_out;
    traj.channels.assign(n, {});
    for (int j = 0; j < n; ++j) traj.channels[j].push_back(y[j]);

    double t = 0.0;
    double h = dt_out;
    const double hmin = 1e-12 * std::max(1.0, T);

    for (std::size_t i = 1; i <= samples; ++i) {
        const double t_target = static_cast<double>(i) * dt_out;
        while (t < t_target - 1e-12 * std::max(1.0, t_target)) {
            h = std::min(h, t_target - t);
            // one attempted Cash-Karp step
            f(t, y.data(), k[0].data());
            for (int s = 1; s < 6; ++s) {
                for (int j = 0; j < n; ++j) {
                    double acc = y[j];
                    for (int q = 0; q < s; ++q) acc += h * CK_A[s][q] * k[q][j];
                    ytmp[j] = acc;
                }
                f(t + CK_C[s] * h, ytmp.data(), k[s].data());
            }
            double emax = 0.0;
            for (int j = 0; j < n; ++j) {
                double v5 = y[j], v4 = y[j];
                for (int s = 0; s < 6; ++s) {
                    v5 += h * CK_B5[s] * k[s][j];
                    v4 += h * CK_B4[s] * k[s][j];
                }
                y5[j] = v5;
                emax = std::max(emax, std::abs(v5 - v4));
            }
            if (emax <= abs_tol || h <= hmin) {
                if (h <= hmin && emax > abs_tol)
                    throw std::runtime_error(
                        "integrate_adaptive: step size underflow at t = " + std::to_string(t));
                t += h;
                y = y5;
                for (double v : y)
                    if (!std::isfinite(v)) throw DivergenceError(t);
                const double grow =
                    emax > 0.0 ? 0.9 * std::pow(abs_tol / emax, 0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::max(0.1, 0.9 * std::pow(abs_tol / emax, 0.25));
            }
            if (h < hmin) h = hmin;
        }
        for (int j = 0; j < n; ++j) traj.channels[j].push_back(y[j]);
    }
    return traj;
}

RealField phase_model_field(const PhaseModel& pm) {
    return [pm](double, const double* th, double* d) {
        for (int k = 0; k < pm.n; ++k) d[k] = pm.Omega[k];
        for (const auto& term : pm.terms) {
            double arg = 0.0;
            for (int j = 0; j < pm.n; ++j)
                if (term.m[j] != 0) arg += term.m[j] * th[j];
            d[term.node] += term.sin_c * std::sin(arg) + term.cos_c * std::cos(arg);
        }
    };
}

RealField slow_phase_field_fn(const SlowPhaseSystem& sp) {
    const int nc = static_cast<int>(sp.combos.size());
    return [sp, nc](double, const double* phi, double* d) {
        for (int i = 0; i < nc; ++i) {
            double v = sp.Omega[i];
            for (int j = 0; j < nc; ++j)
                v += sp.a[i][j] * std::cos(phi[j]) + sp.b[i][j] * std::sin(phi[j]);
            d[i] = v;
        }
    };
}

RealTrajectory integrate_phase_model(const PhaseModel& pm, std::span<const double> theta0,
                                     double T, double dt, double abs_tol) {
    if (static_cast<int>(theta0.size()) != pm.n)
        throw std::invalid_argument("integrate_phase_model: state size != n");
    return integrate_adaptive(phase_model_field(pm), theta0, T, dt, abs_tol);
}

RealTrajectory integrate_phase_model(const SlowPhaseSystem& sp,
                                     std::span<const double> phi0, double T, double dt,
                                     double abs_tol) {
    if (phi0.size() != sp.combos.size())
        throw std::invalid_argument("integrate_phase_model: state size != combos");
    return integrate_adaptive(slow_phase_field_fn(sp), phi0, T, dt, abs_tol);
}

}  // namespace hnf
