#pragma once

#include <vector>

#include "hnf/trajectory.hpp"

namespace hnf {

// Autocatalytic integrate-and-fire ring with delayed nonlinear coupling:
//
//   dv_k/dt = [p_k v_k - (1 - p_k) v_k B] / F_k
//             + p_k K sum_l A[k][l] (vt_k + vt_k^2) vt_l(t - tau),
//
// vt = v - offset. p_k flips 1 -> 0 when v_k crosses 1 from below and
// 0 -> 1 when v_k crosses A_thresh from above, at sample resolution.
struct IFConfig {
    std::vector<double> F;                  // per-node timescale rescalers
    double A_thresh = 0.36;
    double B = 3.333;
    double K = 0.0;
    double tau = 0.0;                       // delay, must be a multiple of dt
    double offset = 0.626;
    double p_smooth = 0.0;  // 0: instantaneous switch; > 0: relaxation time of p
    std::vector<std::vector<double>> adjacency;

    int n() const { return static_cast<int>(F.size()); }
    void validate() const;
};

RealTrajectory integrate_if_ring(const IFConfig& cfg, std::span<const double> v0, double T,
                                 double dt, int record_every = 1, double transient = 0.0);

}  // namespace hnf
