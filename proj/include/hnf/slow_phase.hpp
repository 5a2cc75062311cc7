#pragma once

#include "hnf/integrators.hpp"
#include "hnf/phase_reduction.hpp"
#include "hnf/regression.hpp"

namespace hnf {

struct SlowPhaseFit {
    SlowPhaseSystem system;
    std::vector<double> phi0;   // optimized initial condition
    double mse = 0.0;           // trajectory MSE of the prediction
    RealTrajectory prediction;  // integrated fitted field on the data grid
    bool converged = true;
};

// Fit dphi_i/dt = Omega_i + sum_j a_ij cos(phi_j) + b_ij sin(phi_j) to the
// slow-phase channels by least squares on the finite-difference derivative
// (optionally pre-smoothed with a rolling mean window in samples), then
// optimize the initial condition by cyclic golden-section minimizing the
// trajectory MSE, and integrate the fitted field for the prediction.
SlowPhaseFit fit_slow_phase(const std::vector<std::vector<double>>& phi, double dt,
                            const std::vector<std::vector<int>>& combos,
                            std::span<const double> omega_hint = {},
                            int smooth_window = 0);

// Mean over cycles of max|pred - data| / peak-to-peak(data); cycles are
// delimited by upward mean crossings of the data. Falls back to a single
// window when the data do not complete a cycle.
double prediction_cycle_error(std::span<const double> data, std::span<const double> pred);

}  // namespace hnf
