#pragma once

#include <vector>

#include "hnf/trajectory.hpp"

namespace hnf {

// Subpopulations of Kuramoto oscillators with internal coupling mu and
// inter-population coupling alpha:
//
//   dpsi_km/dt = omega_km + Im[ 2 (mu z_k + alpha sum_l A[k][l] z_l) e^{-i psi_km} ]
//
// z_k = (1/M) sum_m e^{i psi_km}. Frequencies are Lorentzian(Omega_k, sigma_k)
// via the inverse CDF with a SplitMix64 stream, so runs are reproducible
// across platforms. The factor 2 pairs this microscopic model with the
// Ott-Antonsen mean field gamma_k = (mu - sigma_k) + i Omega_k, beta_k = -mu,
// h = alpha (z_l + conj(z_l) z_k^2) used throughout.
struct EnsembleConfig {
    int M = 1000;                         // oscillators per subpopulation
    std::vector<double> Omega;            // subpopulation mean frequencies
    std::vector<double> sigma;            // Lorentzian widths
    double mu = 0.5;
    double alpha = 0.1;
    std::vector<std::vector<double>> adjacency;
    std::uint64_t seed = 1;

    int n() const { return static_cast<int>(Omega.size()); }
    void validate() const;
};

std::vector<double> sample_lorentzian(int count, double center, double width,
                                      std::uint64_t seed);

// RK4 on the full ensemble; records the per-subpopulation order parameters.
ComplexTrajectory integrate_microscopic(const EnsembleConfig& cfg, double T, double dt,
                                        int record_every = 1, double transient = 0.0);

}  // namespace hnf
