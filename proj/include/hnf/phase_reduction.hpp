#pragma once

#include <vector>

#include "hnf/normal_form.hpp"

namespace hnf {

// Averaged phase equations on the emergent hypernetwork:
//
//   dtheta_k/dt = Omega[k] + sum_terms [ sin_c * sin(m . theta) + cos_c * cos(m . theta) ]
//
// Every stored integer combination m is slow: |m . omega| <= eps_res.
struct PhaseTerm {
    int node = 0;
    std::vector<int> m;
    double sin_c = 0.0;
    double cos_c = 0.0;
};

struct PhaseModel {
    int n = 0;
    std::vector<double> Omega;
    std::vector<PhaseTerm> terms;
};

// Slow-phase vector field phi_i = combos[i] . theta:
//
//   dphi_i/dt = Omega[i] + sum_j a[i][j] cos(phi_j) + b[i][j] sin(phi_j)
struct SlowPhaseSystem {
    std::vector<std::vector<int>> combos;
    std::vector<double> Omega;            // detunings combos[i] . omega
    std::vector<std::vector<double>> a;   // cosine coefficients
    std::vector<std::vector<double>> b;   // sine coefficients
};

// Polar substitution u_k = r0 e^{i theta_k} with r frozen at r0 = sqrt(lambda),
// then averaging: combinations with |m . omega| > eps_res are dropped,
// zero-combination terms fold into the frequencies.
PhaseModel polar_reduce(const Hypernetwork& hn, const NetworkSystem& sys, double lambda,
                        double eps_res);
// Same, with an explicit limit-cycle radius (mean-field case r0 != sqrt(lambda)).
PhaseModel polar_reduce_r0(const Hypernetwork& hn, const NetworkSystem& sys, double r0,
                           double eps_res);

// Closed-form averaged coupling functions for h = (z + z^2) conj(w) on the
// resonant ring; delta_pq = omega_p - omega_q. Returned as (sin coefficient,
// cos coefficient) of the function multiplying -alpha^2 r0^3 in the phase
// equation.
struct TrigPair {
    double sin_c = 0.0;
    double cos_c = 0.0;
};

TrigPair rho(int p, int q, double r0, std::span<const double> omega);
TrigPair sigma(int p, int q, int r, double r0, std::span<const double> omega);

// Chain-rule combination of per-node phase equations into the slow-phase
// field. Every coupling term of pm must match +-combos[j] for some j.
SlowPhaseSystem slow_phase_field(const PhaseModel& pm,
                                 const std::vector<std::vector<int>>& combos);

// Mean-field network of Kuramoto subpopulations after the Ott-Antonsen
// reduction: gamma_k = (mu - sigma_k) + i Omega_k, beta_k = -mu,
// h(z, w) = w + conj(w) z^2 scaled by alpha. Throws when mu <= sigma_k.
NetworkSystem oa_build(std::span<const double> Omega, std::span<const double> sigma,
                       double mu, double alpha,
                       const std::vector<std::vector<double>>& adjacency);

// Reference subpopulation amplitude sqrt((mu - sigma_k) / mu).
std::vector<double> oa_amplitudes(std::span<const double> sigma, double mu);

}  // namespace hnf
