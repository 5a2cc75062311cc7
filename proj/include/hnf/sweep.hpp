#pragma once

#include <vector>

#include "hnf/network_system.hpp"

namespace hnf {

struct TongueGrid {
    std::vector<double> delta;  // frequency mismatch values
    std::vector<double> alpha;  // coupling values
    std::vector<std::vector<double>> E;  // E[i][j] for (delta[i], alpha[j])
};

struct TongueFit {
    std::vector<double> delta;    // deltas with a detected boundary
    std::vector<double> alpha_c;  // first locked alpha per delta
    double c = 0.0;               // alpha_c = c sqrt(delta)
    double r2 = 0.0;
};

// Mean synchronization error E = mean |phi(t)| over the post-transient
// window, phi = theta_1 - theta_2 unwrapped. The template system's omega[0]
// is replaced by omega[1] + delta and alpha by the grid value, cell by cell.
// Cells run in parallel on `threads` workers (0 = hardware concurrency,
// capped by the HNF_THREADS environment variable).
TongueGrid sweep_sync_tongue(const NetworkSystem& tmpl, std::span<const double> delta_grid,
                             std::span<const double> alpha_grid, double T, double dt,
                             double transient, int threads = 0);

// Locking boundary alpha_c(delta): first alpha with E < rel_cut * E(alpha=0),
// then a least-squares fit of alpha_c against sqrt(delta) over
// [delta_min, delta_max].
TongueFit fit_tongue_boundary(const TongueGrid& grid, double delta_min, double delta_max,
                              double rel_cut = 0.1);

int resolve_thread_count(int requested);

}  // namespace hnf
