#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hnf/network_system.hpp"

namespace hnf {

// One entry of the pairwise non-resonance check: the frequency combination
// (d1-d2-1) omega_k + (d3-d4) omega_l for a coupling monomial on edge (k,l).
struct NonresonanceEntry {
    int k = 0;  // receiving node, 0-based
    int l = 0;  // sending node
    Exponents mono;  // 2-slot exponents of the h monomial
    double value = 0.0;
    bool pass = false;
};

struct NonresonanceReport {
    std::vector<NonresonanceEntry> entries;
    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
    double min_margin() const;
    std::vector<NonresonanceEntry> failures() const;
};

NonresonanceReport check_nonresonance(const NetworkSystem& sys, double eps_res);

// P_k = modified H^5_k; solves gamma_k P_k + H_k - Gamma P_k = 0.
std::vector<ConjPolynomial> compute_P(const NetworkSystem& sys, double eps_res,
                                      int trunc_degree = 5);

// Second transformation data: L1_k = [P_k || (beta_j z_j |z_j|^2)_j],
// L2_k = [beta_k z_k |z_k|^2 || P], S_k = L2_k - L1_k (with the stored beta
// convention dz = gamma z + beta z|z|^2 + ...), Q_k = modified S_k.
struct SecondTransform {
    std::vector<ConjPolynomial> L1, L2, S, Q;
};

SecondTransform compute_second_transform(const NetworkSystem& sys,
                                         std::span<const ConjPolynomial> P);

// Emergent triplet coupling: one entry per (target node, monomial,
// provenance). The transformed system reads
//
//   du_k/dt = gamma_k u_k + beta_k u_k |u_k|^2 - alpha^2 * sum coeff * u^s conj(u)^t
//
// summed over this node's hyperedges, i.e. coefficients are the G_k
// coefficients of the emergent equations (eta, zeta, ... appear literally).
struct Hyperedge {
    int node = 0;        // target node k, 0-based
    Exponents mono;      // n-variable exponents
    Complex coeff{0.0};
    char family = '1';   // '1': via two in-neighbours of k, '2': via a 2-step tree
    int l = 0;           // in-neighbour of k
    int p = 0;           // second neighbour (of k for '1', of l for '2')
};

struct Hypernetwork {
    int n = 0;
    std::vector<ConjPolynomial> G;   // per-node emergent polynomial (full or filtered)
    std::vector<Hyperedge> edges;    // per-provenance entries matching G

    // Total coefficient of a monomial at a node, aggregated over provenances.
    Complex coeff(int node, const Exponents& mono) const;
    bool has_edge(int node, char family, int l, int p) const;
};

// G_k = [modified H_k || H], decomposed per Eq.-(18)-style provenance and
// retained through degree retain_degree (higher orders are remainder).
Hypernetwork compute_G(const NetworkSystem& sys, int retain_degree = 4,
                       int trunc_degree = 5);

// Triple resonance filter on compute_G: keep a monomial at node k iff
// |sum_j (s_j - t_j) omega_j - omega_k| <= eps_res.
Hypernetwork algorithm1(const NetworkSystem& sys, double eps_res);
Hypernetwork filter_resonant(const Hypernetwork& full, const NetworkSystem& sys,
                             double eps_res);

// Residual diagnostics of the two homological equations plus the full
// re-expansion of the transformed vector field as a series in alpha.
struct CancellationReport {
    double residual_P = 0.0;       // max |gamma_k P_k + H_k - Gamma P_k| coefficient
    double residual_Q = 0.0;       // max |gamma_k Q_k + S_k - Gamma Q_k| coefficient
    double alpha1_below = 0.0;     // max |alpha^1 coefficient| of degree <= degree_cut
    int degree_cut = 5;
    double alpha2_mismatch = 0.0;  // max |alpha^2 - (-G_k)| coefficient, degree <= retain
};

CancellationReport verify_cancellation(const NetworkSystem& sys, int trunc_degree = 5,
                                       int retain_degree = 4);

// Natural frequencies under an additional linear coupling term; imaginary
// parts of eig(lambda I + i diag(omega) + alpha A), matched to nodes by
// maximal eigenvector overlap. degenerate is set when two uncoupled
// frequencies are closer than alpha.
struct FrequencyShift {
    std::vector<double> shifted;  // new omega_k
    std::vector<double> shift;    // shifted - omega
    bool degenerate = false;
};

FrequencyShift linear_frequency_shift(const NetworkSystem& sys);

// Two-triangle-plus-matching 6-node topology; validates the shape, then
// runs the resonance filter.
Hypernetwork six_ring_reduction(const NetworkSystem& sys, double eps_res);

// SN10-style reduction for h(z,w) = w + conj(w) z^2 (linear + cubic, both
// scaled by sys.alpha): the cubic part is removed by the standard two-step
// transformation while the linear part is kept, which leaves three families
// of third-order alpha^2 terms. Returns the triple-resonance-filtered
// hypernetwork in the same sign convention as compute_G.
Hypernetwork mean_field_normal_form(const NetworkSystem& sys, double eps_res);
std::vector<Hyperedge> mean_field_candidates(const NetworkSystem& sys);

}  // namespace hnf
