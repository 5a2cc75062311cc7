#include "hnf/normal_form.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hnf/alpha_series.hpp"

namespace hnf {

double NonresonanceReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::min(m, std::abs(e.value));
    return m;
}

std::vector<NonresonanceEntry> NonresonanceReport::failures() const {
    std::vector<NonresonanceEntry> f;
    for (const auto& e : entries)
        if (!e.pass) f.push_back(e);
    return f;
}

NonresonanceReport check_nonresonance(const NetworkSystem& sys, double eps_res) {
    sys.validate();
    NonresonanceReport report;
    for (int k = 0; k < sys.n; ++k) {
        for (int l = 0; l < sys.n; ++l) {
            if (sys.A[k][l] == 0.0) continue;
            for (const auto& [e, c] : sys.h.terms()) {
                const int d1 = e.s[0], d2 = e.t[0], d3 = e.s[1], d4 = e.t[1];
                NonresonanceEntry entry;
                entry.k = k;
                entry.l = l;
                entry.mono = e;
                entry.value = (d1 - d2 - 1) * sys.omega[k] + (d3 - d4) * sys.omega[l];
                entry.pass = std::abs(entry.value) > eps_res;
                report.entries.push_back(entry);
            }
        }
    }
    return report;
}

std::vector<ConjPolynomial> compute_P(const NetworkSystem& sys, double eps_res,
                                      int trunc_degree) {
    const auto H = assemble_H(sys, trunc_degree);
    const GammaVector g = sys.gamma();
    std::vector<ConjPolynomial> P;
    P.reserve(sys.n);
    for (int k = 0; k < sys.n; ++k) P.push_back(modified_poly(H[k], k, g, eps_res));
    return P;
}

namespace {

// beta_j z_j |z_j|^2 as an n-variable polynomial.
ConjPolynomial cubic_term(int n, int j, Complex beta) {
    Exponents e(n);
    e.s[j] = 2;
    e.t[j] = 1;
    return ConjPolynomial::monomial(e, beta);
}

}  // namespace

SecondTransform compute_second_transform(const NetworkSystem& sys,
                                         std::span<const ConjPolynomial> P) {
    const GammaVector g = sys.gamma();
    std::vector<ConjPolynomial> cubic;
    cubic.reserve(sys.n);
    for (int j = 0; j < sys.n; ++j) cubic.push_back(cubic_term(sys.n, j, sys.beta[j]));

    SecondTransform st;
    st.L1.reserve(sys.n);
    st.L2.reserve(sys.n);
    st.S.reserve(sys.n);
    st.Q.reserve(sys.n);
    for (int k = 0; k < sys.n; ++k) {
        st.L1.push_back(bracket(P[k], cubic));
        st.L2.push_back(bracket(cubic[k], P));
        st.S.push_back(st.L2[k] - st.L1[k]);
        st.Q.push_back(modified_poly(st.S[k], k, g, sys.eps_res));
    }
    return st;
}

Complex Hypernetwork::coeff(int node, const Exponents& mono) const {
    Complex c(0.0);
    for (const auto& e : edges)
        if (e.node == node && e.mono == mono) c += e.coeff;
    return c;
}

bool Hypernetwork::has_edge(int node, char family, int l, int p) const {
    for (const auto& e : edges)
        if (e.node == node && e.family == family && e.l == l && e.p == p) return true;
    return false;
}

Hypernetwork compute_G(const NetworkSystem& sys, int retain_degree, int trunc_degree) {
    sys.validate();
    const GammaVector g = sys.gamma();

    // h and modified h with slots substituted, cached per (k,l) pair
    auto h_kl = [&](int k, int l) {
        return slot_substitute(sys.h, sys.n, k, l).truncated(trunc_degree);
    };
    auto hhat_kl = [&](int k, int l) {
        return modified_poly(h_kl(k, l), k, g, sys.eps_res);
    };

    Hypernetwork hn;
    hn.n = sys.n;
    hn.G.assign(sys.n, ConjPolynomial(sys.n));

    auto emit = [&](int k, char family, int l, int p, const ConjPolynomial& contrib,
                    double weight) {
        const ConjPolynomial kept = contrib.truncated(retain_degree).scaled(weight);
        if (kept.is_zero()) return;
        hn.G[k] += kept;
        for (const auto& [e, c] : kept.terms()) {
            Hyperedge edge;
            edge.node = k;
            edge.mono = e;
            edge.coeff = c;
            edge.family = family;
            edge.l = l;
            edge.p = p;
            hn.edges.push_back(edge);
        }
    };

    for (int k = 0; k < sys.n; ++k) {
        for (int l = 0; l < sys.n; ++l) {
            if (sys.A[k][l] == 0.0) continue;
            const ConjPolynomial hhat = hhat_kl(k, l);
            const ConjPolynomial dk = hhat.derivative(k, false);
            const ConjPolynomial dkb = hhat.derivative(k, true);
            const ConjPolynomial dl = hhat.derivative(l, false);
            const ConjPolynomial dlb = hhat.derivative(l, true);
            for (int p = 0; p < sys.n; ++p) {
                // two in-neighbours of k
                if (sys.A[k][p] != 0.0 && (!dk.is_zero() || !dkb.is_zero())) {
                    const ConjPolynomial hkp = h_kl(k, p);
                    emit(k, '1', l, p, dk * hkp + dkb * hkp.conjugated(),
                         sys.A[k][l] * sys.A[k][p]);
                }
                // two-step tree k <- l <- p; for a self-loop l == k the whole
                // derivative already sits in the '1' family above
                if (l != k && sys.A[l][p] != 0.0 && (!dl.is_zero() || !dlb.is_zero())) {
                    const ConjPolynomial hlp = h_kl(l, p);
                    emit(k, '2', l, p, dl * hlp + dlb * hlp.conjugated(),
                         sys.A[k][l] * sys.A[l][p]);
                }
            }
        }
    }
    return hn;
}

Hypernetwork filter_resonant(const Hypernetwork& full, const NetworkSystem& sys,
                             double eps_res) {
    Hypernetwork out;
    out.n = full.n;
    out.G.assign(full.n, ConjPolynomial(full.n));
    for (const auto& e : full.edges) {
        double freq = -sys.omega[e.node];
        for (int j = 0; j < full.n; ++j)
            freq += (static_cast<int>(e.mono.s[j]) - static_cast<int>(e.mono.t[j])) *
                    sys.omega[j];
        if (std::abs(freq) > eps_res) continue;
        out.edges.push_back(e);
        out.G[e.node] += ConjPolynomial::monomial(e.mono, e.coeff);
    }
    return out;
}

Hypernetwork algorithm1(const NetworkSystem& sys, double eps_res) {
    return filter_resonant(compute_G(sys), sys, eps_res);
}

CancellationReport verify_cancellation(const NetworkSystem& sys, int trunc_degree,
                                       int retain_degree) {
    const GammaVector g = sys.gamma();
    const auto H = assemble_H(sys, trunc_degree);
    const auto P = compute_P(sys, sys.eps_res, trunc_degree);
    const auto st = compute_second_transform(sys, P);
    const auto hn = compute_G(sys, retain_degree, trunc_degree);

    CancellationReport rep;
    rep.degree_cut = trunc_degree;

    double hscale = 0.0, sscale = 0.0;
    for (int k = 0; k < sys.n; ++k) {
        hscale = std::max(hscale, H[k].max_abs_coeff());
        sscale = std::max(sscale, st.S[k].max_abs_coeff());
        ConjPolynomial rP = gamma_op(P[k], g).scaled(-1.0) + P[k].scaled(g.gamma[k]) + H[k];
        ConjPolynomial rQ =
            gamma_op(st.Q[k], g).scaled(-1.0) + st.Q[k].scaled(g.gamma[k]) + st.S[k];
        rep.residual_P = std::max(rep.residual_P, rP.max_abs_coeff());
        rep.residual_Q = std::max(rep.residual_Q, rQ.max_abs_coeff());
    }
    if (hscale > 0.0) rep.residual_P /= hscale;
    if (sscale > 0.0) rep.residual_Q /= sscale;

    // Full re-expansion in the original coordinates: u(z) as a series in
    // alpha, du/dt = [u || F], compared against the target normal form.
    const int order = 2;
    const int cap = trunc_degree + 3;  // safe cap; checked coefficients sit below it

    std::vector<AlphaSeries> F;  // dz_j/dt
    F.reserve(sys.n);
    for (int j = 0; j < sys.n; ++j) {
        AlphaSeries f(sys.n, order);
        f.at(0) = ConjPolynomial::variable(sys.n, j).scaled(g.gamma[j]) +
                  cubic_term(sys.n, j, sys.beta[j]);
        f.at(1) = H[j];
        F.push_back(f);
    }

    std::vector<AlphaSeries> w(sys.n), u(sys.n);
    for (int j = 0; j < sys.n; ++j) {
        w[j] = AlphaSeries::from_poly(ConjPolynomial::variable(sys.n, j), order) -
               AlphaSeries::from_poly(P[j], order, 1);
    }
    for (int j = 0; j < sys.n; ++j) {
        // u_j = w_j - alpha Q_j(w)
        AlphaSeries Qw = substituted(st.Q[j], w, cap);
        AlphaSeries shifted(sys.n, order);
        for (int m = 1; m <= order; ++m) shifted.at(m) = Qw.at(m - 1);
        u[j] = w[j] - shifted;
    }

    for (int k = 0; k < sys.n; ++k) {
        AlphaSeries dudt = bracket(u[k], F, cap);

        AlphaSeries target = u[k].scaled(g.gamma[k]);
        target += u[k].multiplied(u[k], cap).multiplied(u[k].conjugated(), cap)
                      .scaled(sys.beta[k]);
        AlphaSeries Gu = substituted(hn.G[k], u, cap);
        AlphaSeries Gshift(sys.n, order);
        Gshift.at(2) = Gu.at(0);
        target -= Gshift;

        AlphaSeries res = dudt - target;
        rep.alpha1_below =
            std::max(rep.alpha1_below, res.at(1).truncated(trunc_degree).max_abs_coeff());
        rep.alpha2_mismatch =
            std::max(rep.alpha2_mismatch, res.at(2).truncated(retain_degree).max_abs_coeff());
    }
    return rep;
}

FrequencyShift linear_frequency_shift(const NetworkSystem& sys) {
    sys.validate();
    Exponents lin_w(2);
    lin_w.s[1] = 1;
    Exponents lin_wbar(2);
    lin_wbar.t[1] = 1;
    Exponents lin_z(2);
    lin_z.s[0] = 1;
    const Complex hw = sys.h.coeff(lin_w);
    if (hw == Complex(0.0))
        throw std::invalid_argument("linear_frequency_shift: coupling has no linear w term");
    if (sys.h.coeff(lin_wbar) != Complex(0.0))
        throw std::invalid_argument(
            "linear_frequency_shift: conj-linear coupling is not diagonalizable here");
    const Complex hz = sys.h.coeff(lin_z);

    Eigen::MatrixXcd M(sys.n, sys.n);
    for (int k = 0; k < sys.n; ++k) {
        double row_sum = 0.0;
        for (int l = 0; l < sys.n; ++l) {
            M(k, l) = sys.alpha * hw * sys.A[k][l];
            row_sum += sys.A[k][l];
        }
        M(k, k) += Complex(sys.lambda, sys.omega[k]) + sys.alpha * hz * row_sum;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M);
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();

    FrequencyShift out;
    out.shifted.assign(sys.n, 0.0);
    out.shift.assign(sys.n, 0.0);
    for (int i = 0; i < sys.n; ++i)
        for (int j = i + 1; j < sys.n; ++j)
            if (std::abs(sys.omega[i] - sys.omega[j]) < sys.alpha) out.degenerate = true;

    // greedy assignment by largest eigenvector component overlap
    std::vector<std::tuple<double, int, int>> overlaps;
    for (int k = 0; k < sys.n; ++k)
        for (int j = 0; j < sys.n; ++j)
            overlaps.emplace_back(std::abs(vecs(k, j)), k, j);
    std::sort(overlaps.begin(), overlaps.end(), [](auto& a, auto& b) {
        return std::get<0>(a) > std::get<0>(b);
    });
    std::vector<bool> node_done(sys.n, false), eig_done(sys.n, false);
    for (const auto& [ov, k, j] : overlaps) {
        if (node_done[k] || eig_done[j]) continue;
        node_done[k] = true;
        eig_done[j] = true;
        out.shifted[k] = vals(j).imag();
        out.shift[k] = out.shifted[k] - sys.omega[k];
    }
    return out;
}

Hypernetwork six_ring_reduction(const NetworkSystem& sys, double eps_res) {
    if (sys.n != 6)
        throw std::invalid_argument("six_ring_reduction: needs 6 nodes");
    for (int k = 0; k < 6; ++k) {
        int degree = 0;
        for (int l = 0; l < 6; ++l) {
            if (sys.A[k][l] != sys.A[l][k])
                throw std::invalid_argument("six_ring_reduction: adjacency not symmetric");
            if (sys.A[k][l] != 0.0) ++degree;
        }
        if (degree != 3)
            throw std::invalid_argument(
                "six_ring_reduction: expected two triangles joined by a matching");
    }
    return algorithm1(sys, eps_res);
}

std::vector<Hyperedge> mean_field_candidates(const NetworkSystem& sys) {
    sys.validate();
    // expect h = c1 w + c2 z^2 conj(w)
    Exponents lin(2);
    lin.s[1] = 1;
    Exponents cub(2);
    cub.s[0] = 2;
    cub.t[1] = 1;
    const Complex c1 = sys.h.coeff(lin);
    const Complex c2 = sys.h.coeff(cub);
    if (c1 == Complex(0.0) || c2 == Complex(0.0) || sys.h.term_count() != 2)
        throw std::invalid_argument(
            "mean_field_candidates: coupling must be c1*w + c2*z^2*conj(w)");

    const GammaVector g = sys.gamma();
    std::vector<Hyperedge> out;
    auto push = [&](int k, char fam, int l, int p, Exponents mono, Complex coeff) {
        Hyperedge e;
        e.node = k;
        e.family = fam;
        e.l = l;
        e.p = p;
        e.mono = std::move(mono);
        e.coeff = coeff;
        out.push_back(e);
    };

    // In du_k/dt = ... + alpha^2 (F1 - F2 - F3), stored with the compute_G
    // sign convention du_k/dt = ... - alpha^2 * coeff * mono:
    //   F1: sum_{l,p} A_kl A_lp c1 c2 / (gamma_l + conj gamma_p) u_l^2 conj(u_p)
    //   F2: sum_{l,p} A_kl A_lp conj(c1) c2 / (gamma_k + conj gamma_l) u_k^2 conj(u_p)
    //   F3: 2 sum_{l,p} A_kl A_kp c1 c2 / (gamma_k + conj gamma_l) u_k conj(u_l) u_p
    for (int k = 0; k < sys.n; ++k)
        for (int l = 0; l < sys.n; ++l) {
            if (sys.A[k][l] == 0.0) continue;
            for (int p = 0; p < sys.n; ++p) {
                if (sys.A[l][p] != 0.0) {
                    Exponents m1(sys.n);
                    m1.s[l] = 2;
                    m1.t[p] = static_cast<std::uint8_t>(m1.t[p] + 1);
                    push(k, '2', l, p, m1,
                         -sys.A[k][l] * sys.A[l][p] * c1 * c2 /
                             (g.gamma[l] + std::conj(g.gamma[p])));

                    Exponents m2(sys.n);
                    m2.s[k] = 2;
                    m2.t[p] = static_cast<std::uint8_t>(m2.t[p] + 1);
                    push(k, '2', l, p, m2,
                         sys.A[k][l] * sys.A[l][p] * std::conj(c1) * c2 /
                             (g.gamma[k] + std::conj(g.gamma[l])));
                }
                if (sys.A[k][p] != 0.0) {
                    Exponents m3(sys.n);
                    m3.s[k] = static_cast<std::uint8_t>(m3.s[k] + 1);
                    m3.t[l] = static_cast<std::uint8_t>(m3.t[l] + 1);
                    m3.s[p] = static_cast<std::uint8_t>(m3.s[p] + 1);
                    push(k, '1', l, p, m3,
                         2.0 * sys.A[k][l] * sys.A[k][p] * c1 * c2 /
                             (g.gamma[k] + std::conj(g.gamma[l])));
                }
            }
        }
    return out;
}

Hypernetwork mean_field_normal_form(const NetworkSystem& sys, double eps_res) {
    Hypernetwork full;
    full.n = sys.n;
    full.G.assign(sys.n, ConjPolynomial(sys.n));
    full.edges = mean_field_candidates(sys);
    for (const auto& e : full.edges)
        full.G[e.node] += ConjPolynomial::monomial(e.mono, e.coeff);
    return filter_resonant(full, sys, eps_res);
}

}  // namespace hnf
