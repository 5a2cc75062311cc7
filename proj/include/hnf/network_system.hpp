#pragma once

#include <span>
#include <vector>

#include "hnf/conj_polynomial.hpp"

namespace hnf {

// Coupled Hopf normal-form network
//
//   dz_k/dt = gamma_k z_k + beta_k z_k |z_k|^2 + alpha * sum_l A[k][l] h(z_k, z_l)
//
// with gamma_k = lambda + i omega_k. The default beta_k = -1 gives the
// uncoupled limit cycle |z_k| = sqrt(lambda). The two-slot coupling h lives
// in a 2-variable ConjPolynomial: variable 0 is the receiving node (z),
// variable 1 the sending node (w).
struct NetworkSystem {
    int n = 0;
    std::vector<std::vector<double>> A;  // n x n adjacency / weight matrix
    double lambda = 0.0;
    std::vector<double> omega;
    std::vector<Complex> beta;
    ConjPolynomial h{2};
    double alpha = 0.0;
    double eps_res = 0.1;

    GammaVector gamma() const { return GammaVector(lambda, omega); }

    bool has_self_loops() const {
        for (int k = 0; k < n; ++k)
            if (A[k][k] != 0.0) return true;
        return false;
    }

    void validate() const;
};

// h with slot substitution (z -> z_k, w -> z_l) as an n-variable polynomial.
ConjPolynomial slot_substitute(const ConjPolynomial& h2, int n, int k, int l);

// Per-node interaction polynomials H_k(z) = sum_l A[k][l] h(z_k, z_l),
// Taylor-truncated at trunc_degree (default 5, the H^5 of the derivation).
std::vector<ConjPolynomial> assemble_H(const NetworkSystem& sys, int trunc_degree = 5);

}  // namespace hnf
