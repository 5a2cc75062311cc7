#pragma once

#include <functional>

#include "hnf/network_system.hpp"
#include "hnf/phase_reduction.hpp"
#include "hnf/trajectory.hpp"

namespace hnf {

// Flattened right-hand side of a NetworkSystem; evaluation avoids walking
// polynomial maps in the inner loop.
class CompiledField {
public:
    explicit CompiledField(const NetworkSystem& sys);
    // dz_k/dt = gamma_k z_k + beta_k z_k |z_k|^2 + scale * extra_k(z)
    CompiledField(const GammaVector& gamma, std::span<const Complex> beta,
                  std::span<const ConjPolynomial> extra, Complex scale);
    int n() const { return n_; }
    void eval(const Complex* z, Complex* dz) const;

private:
    void compile(std::span<const ConjPolynomial> extra, Complex scale);

    struct Factor {
        int var;
        std::uint8_t s, t;
    };
    struct Term {
        Complex c;
        std::vector<Factor> factors;
    };
    int n_;
    std::vector<Complex> gamma_, beta_;
    std::vector<std::vector<Term>> terms_;  // per node, alpha already folded in
};

// Classical fixed-step RK4 for the complex network; records every
// record_every-th step. Throws DivergenceError on non-finite state.
ComplexTrajectory integrate_network(const NetworkSystem& sys, std::span<const Complex> z0,
                                    double T, double dt, int record_every = 1,
                                    double transient = 0.0);

ComplexTrajectory integrate_field(const CompiledField& field, std::span<const Complex> z0,
                                  double T, double dt, int record_every = 1,
                                  double transient = 0.0);

using RealField = std::function<void(double t, const double* y, double* dy)>;

// Fixed-step RK4 on a generic real field.
RealTrajectory integrate_rk4(const RealField& f, std::span<const double> y0, double T,
                             double dt, int record_every = 1, double transient = 0.0);

// Cash-Karp 4(5) embedded pair with absolute error control; samples on the
// uniform dt_out grid. Throws on step-size underflow.
RealTrajectory integrate_adaptive(const RealField& f, std::span<const double> y0, double T,
                                  double dt_out, double abs_tol = 1e-9);

RealField phase_model_field(const PhaseModel& pm);
RealField slow_phase_field_fn(const SlowPhaseSystem& sp);

RealTrajectory integrate_phase_model(const PhaseModel& pm, std::span<const double> theta0,
                                     double T, double dt, double abs_tol = 1e-9);
RealTrajectory integrate_phase_model(const SlowPhaseSystem& sp,
                                     std::span<const double> phi0, double T, double dt,
                                     double abs_tol = 1e-9);

}  // namespace hnf
