#include "hnf/network_system.hpp"

namespace hnf {

void NetworkSystem::validate() const {
    if (n <= 0) throw std::invalid_argument("NetworkSystem: n must be positive");
    if (static_cast<int>(A.size()) != n)
        throw std::invalid_argument("NetworkSystem: adjacency must be n x n");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("NetworkSystem: adjacency must be n x n");
    if (static_cast<int>(omega.size()) != n)
        throw std::invalid_argument("NetworkSystem: omega must have n entries");
    if (static_cast<int>(beta.size()) != n)
        throw std::invalid_argument("NetworkSystem: beta must have n entries");
    if (h.n() != 2) throw std::invalid_argument("NetworkSystem: coupling must use 2 slots");
    if (!h.is_zero()) {
        if (h.degree_bounds().first < 1)
            throw std::invalid_argument("NetworkSystem: coupling has a constant term");
    }
}

ConjPolynomial slot_substitute(const ConjPolynomial& h2, int n, int k, int l) {
    std::vector<ConjPolynomial> subs{ConjPolynomial::variable(n, k),
                                     ConjPolynomial::variable(n, l)};
    return h2.substituted(subs, 255);
}

std::vector<ConjPolynomial> assemble_H(const NetworkSystem& sys, int trunc_degree) {
    sys.validate();
    std::vector<ConjPolynomial> H(sys.n, ConjPolynomial(sys.n));
    for (int k = 0; k < sys.n; ++k) {
        for (int l = 0; l < sys.n; ++l) {
            if (sys.A[k][l] == 0.0) continue;
            H[k] += slot_substitute(sys.h, sys.n, k, l).scaled(sys.A[k][l]);
        }
        H[k] = H[k].truncated(trunc_degree);
    }
    return H;
}

}  // namespace hnf
