#include <doctest.h>

#include <random>

#include "hnf/alpha_series.hpp"
#include "hnf/conj_polynomial.hpp"
#include "hnf/json_io.hpp"

using namespace hnf;

namespace {

ConjPolynomial z(int n, int j) { return ConjPolynomial::variable(n, j); }
ConjPolynomial zb(int n, int j) { return ConjPolynomial::conj_variable(n, j); }

ConjPolynomial random_poly(int n, int max_degree, std::mt19937& rng, int terms = 6) {
    std::uniform_int_distribution<int> exp_dist(0, max_degree);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    ConjPolynomial p(n);
    for (int i = 0; i < terms; ++i) {
        Exponents e(n);
        int budget = max_degree;
        for (int j = 0; j < n && budget > 0; ++j) {
            const int s = exp_dist(rng) % (budget + 1);
            e.s[j] = static_cast<std::uint8_t>(s);
            budget -= s;
            const int t = exp_dist(rng) % (budget + 1);
            e.t[j] = static_cast<std::uint8_t>(t);
            budget -= t;
        }
        p.add_term(e, Complex(coeff(rng), coeff(rng)));
    }
    return p;
}

double max_coeff_diff(const ConjPolynomial& a, const ConjPolynomial& b) {
    return (a - b).is_zero() ? 0.0 : (a - b).max_abs_coeff();
}

}  // namespace

TEST_CASE("arithmetic basics") {
    const int n = 2;
    auto p = z(n, 0) * zb(n, 0);
    Exponents e(n);
    e.s[0] = 1;
    e.t[0] = 1;
    CHECK(p.coeff(e) == Complex(1.0));
    CHECK(p.term_count() == 1);

    std::mt19937 rng(7);
    auto q = random_poly(3, 4, rng);
    CHECK(q.conjugated().conjugated() == q);
    CHECK((q + q.scaled(-1.0)).is_zero());
}

TEST_CASE("canonicalization is idempotent and deterministic") {
    std::mt19937 rng(11);
    auto p = random_poly(3, 4, rng);
    auto q = random_poly(3, 4, rng);
    auto r1 = p * q + p;
    auto r2 = p * q + p;
    CHECK(r1 == r2);
    // serialization round trip preserves the term map exactly
    CHECK(poly_from_json(poly_to_json(r1)) == r1);
}

TEST_CASE("json terms appear in graded-lex order") {
    const int n = 2;
    auto p = z(n, 0) * z(n, 0) * zb(n, 1) + z(n, 0) + z(n, 1) * zb(n, 1);
    const auto j = poly_to_json(p);
    int prev = -1;
    for (const auto& t : j.at("terms")) {
        int deg = 0;
        for (int v : t.at("s").get<std::vector<int>>()) deg += v;
        for (int v : t.at("t").get<std::vector<int>>()) deg += v;
        CHECK(deg >= prev);
        prev = deg;
    }
}

TEST_CASE("bracket on the worked example") {
    // [z1^2 ~z2 || (g1 z1, g2 z2)] = (2 g1 + conj(g2)) z1^2 ~z2
    const int n = 2;
    const Complex g1(0.3, 1.1), g2(0.3, -0.7);
    auto R = z(n, 0) * z(n, 0) * zb(n, 1);
    std::vector<ConjPolynomial> S{z(n, 0).scaled(g1), z(n, 1).scaled(g2)};
    const auto out = bracket(R, S);
    CHECK(out.term_count() == 1);
    Exponents e(n);
    e.s[0] = 2;
    e.t[1] = 1;
    CHECK(std::abs(out.coeff(e) - (2.0 * g1 + std::conj(g2))) < 1e-15);

    // gamma_op agrees with the explicit bracket against (gamma_j z_j)
    GammaVector g({g1, g2});
    CHECK(gamma_op(R, g) == out);
}

TEST_CASE("bracket of zero and degree bookkeeping") {
    const int n = 2;
    std::vector<ConjPolynomial> S{z(n, 1) * z(n, 1), ConjPolynomial(n)};
    CHECK(bracket(ConjPolynomial(n), S).is_zero());

    // [z1 ~z2 || (z2^2, 0)] = z2^2 ~z2, degree 3 = 2 + 2 - 1
    auto out = bracket(z(n, 0) * zb(n, 1), S);
    Exponents e(n);
    e.s[1] = 2;
    e.t[1] = 1;
    CHECK(out.term_count() == 1);
    CHECK(out.coeff(e) == Complex(1.0));
    CHECK(out.degree_bounds() == std::pair<int, int>(3, 3));
}

TEST_CASE("bracket linearity: complex in R, real in S") {
    std::mt19937 rng(23);
    const int n = 3;
    for (int trial = 0; trial < 20; ++trial) {
        auto R1 = random_poly(n, 4, rng);
        auto R2 = random_poly(n, 4, rng);
        std::vector<ConjPolynomial> S, S2;
        for (int j = 0; j < n; ++j) {
            S.push_back(random_poly(n, 3, rng, 3));
            S2.push_back(random_poly(n, 3, rng, 3));
        }
        const Complex lam(1.3, -0.4), mu(-0.2, 2.2);
        auto lhs = bracket(R1.scaled(lam) + R2.scaled(mu), S);
        auto rhs = bracket(R1, S).scaled(lam) + bracket(R2, S).scaled(mu);
        CHECK(max_coeff_diff(lhs, rhs) < 1e-12);

        const double a = 0.7, b = -1.9;
        std::vector<ConjPolynomial> mix;
        for (int j = 0; j < n; ++j) mix.push_back(S[j].scaled(a) + S2[j].scaled(b));
        auto lhs2 = bracket(R1, mix);
        auto rhs2 = bracket(R1, S).scaled(a) + bracket(R1, S2).scaled(b);
        CHECK(max_coeff_diff(lhs2, rhs2) < 1e-12);
    }
}

TEST_CASE("bracket degree bounds") {
    std::mt19937 rng(31);
    const int n = 3;
    for (int trial = 0; trial < 30; ++trial) {
        auto R = random_poly(n, 5, rng);
        if (R.is_zero()) continue;
        std::vector<ConjPolynomial> S;
        bool all_ok = true;
        int pprime = 0, qprime = 255;
        for (int j = 0; j < n; ++j) {
            auto s = random_poly(n, 4, rng, 3);
            if (s.is_zero()) all_ok = false;
            S.push_back(s);
            if (!s.is_zero()) {
                pprime = std::max(pprime, s.degree_bounds().second);
                qprime = std::min(qprime, s.degree_bounds().first);
            }
        }
        if (!all_ok) continue;
        auto out = bracket(R, S);
        if (out.is_zero()) continue;
        const auto [q, p] = R.degree_bounds();
        const auto [qo, po] = out.degree_bounds();
        CHECK(po <= p + pprime - 1);
        CHECK(qo >= q + qprime - 1);
    }
}

TEST_CASE("resonance values") {
    // ring frequencies: monomial u1^2 ~u2 u3 at node 1 has combination 0.01
    GammaVector g(0.15, std::vector<double>{1.01, 2.5, 1.5, 2.49});
    Exponents e(4);
    e.s[0] = 2;
    e.t[1] = 1;
    e.s[2] = 1;
    const Complex v = resonance_value(e, 0, g);
    CHECK(v.imag() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(v.real() == doctest::Approx(3 * 0.15).epsilon(1e-12));

    // z_k ~z_l at node k: imaginary part -omega_l
    Exponents e2(4);
    e2.s[0] = 1;
    e2.t[1] = 1;
    CHECK(resonance_value(e2, 0, g).imag() == doctest::Approx(-2.5));

    // identity monomial z_k at node k: always resonant (zero imaginary part)
    Exponents e3(4);
    e3.s[2] = 1;
    CHECK(resonance_value(e3, 2, g).imag() == doctest::Approx(0.0));
    CHECK(resonance_value(e3, 2, g).real() == doctest::Approx(0.0));
}

TEST_CASE("modified polynomial: replacement rule and homological identity") {
    GammaVector g(0.15, std::vector<double>{1.01, 2.5, 1.5});
    const int n = 3;

    // z_k ~z_l -> z_k ~z_l / conj(gamma_l)
    auto q1 = z(n, 0) * zb(n, 1);
    auto m1 = modified_poly(q1, 0, g, 0.1);
    Exponents e(n);
    e.s[0] = 1;
    e.t[1] = 1;
    CHECK(std::abs(m1.coeff(e) - 1.0 / std::conj(g.gamma[1])) < 1e-15);

    // z_k^2 ~z_l -> z_k^2 ~z_l / (gamma_k + conj(gamma_l))
    auto q2 = z(n, 0) * z(n, 0) * zb(n, 1);
    auto m2 = modified_poly(q2, 0, g, 0.1);
    Exponents e2(n);
    e2.s[0] = 2;
    e2.t[1] = 1;
    CHECK(std::abs(m2.coeff(e2) - 1.0 / (g.gamma[0] + std::conj(g.gamma[1]))) < 1e-15);

    // Gamma(Q_hat) - gamma_k Q_hat == Q on random non-resonant polynomials
    std::mt19937 rng(5);
    int checked = 0;
    while (checked < 10) {
        auto Q = random_poly(n, 4, rng);
        try {
            auto Qh = modified_poly(Q, 1, g, 1e-6);
            auto resid = gamma_op(Qh, g) - Qh.scaled(g.gamma[1]) - Q;
            CHECK(resid.max_abs_coeff() <= 1e-12 * std::max(1.0, Q.max_abs_coeff()));
            ++checked;
        } catch (const ResonantTermError&) {
            // draw again; the random monomial hit the resonance cut
        }
    }
}

TEST_CASE("modified polynomial rejects resonant monomials by name") {
    GammaVector g(0.0, std::vector<double>{1.0, 2.5, 1.5});
    // omega_1 - omega_2 + omega_3 = 0 and lambda = 0: exact resonance
    auto q = z(3, 0) * z(3, 0) * zb(3, 1) * z(3, 2);
    CHECK_THROWS_AS(modified_poly(q, 0, g, 0.1), ResonantTermError);
    try {
        modified_poly(q, 0, g, 0.1);
    } catch (const ResonantTermError& err) {
        const std::string what = err.what();
        CHECK(what.find("node 1") != std::string::npos);
    }
}

TEST_CASE("non-resonance equivalence under |u_j|^2 R and u_k^2 conj(R)") {
    std::mt19937 rng(17);
    GammaVector g(0.2, std::vector<double>{1.3, 0.8, 2.1});
    const int n = 3;
    std::uniform_int_distribution<int> node(0, n - 1);
    for (int trial = 0; trial < 50; ++trial) {
        auto R = random_poly(n, 4, rng, 1);
        if (R.is_zero()) continue;
        const auto& [e, c] = *R.terms().begin();
        const int k = node(rng);
        const int j = node(rng);
        const double base = resonance_value(e, k, g).imag();

        Exponents ej = e;  // |u_j|^2 R
        ej.s[j] = static_cast<std::uint8_t>(ej.s[j] + 1);
        ej.t[j] = static_cast<std::uint8_t>(ej.t[j] + 1);
        CHECK(resonance_value(ej, k, g).imag() == doctest::Approx(base).epsilon(1e-12));

        Exponents ec = e.conjugated();  // u_k^2 conj(R)
        ec.s[k] = static_cast<std::uint8_t>(ec.s[k] + 2);
        CHECK(resonance_value(ec, k, g).imag() == doctest::Approx(-base).epsilon(1e-12));
    }
}

TEST_CASE("degree bounds and errors") {
    const int n = 2;
    auto p = z(n, 0) + z(n, 0) * z(n, 0) * zb(n, 1);
    CHECK(p.degree_bounds() == std::pair<int, int>(1, 3));
    CHECK((z(n, 0) * zb(n, 1)).degree_bounds() == std::pair<int, int>(2, 2));
    CHECK_THROWS_AS(ConjPolynomial(n).degree_bounds(), std::domain_error);
    CHECK_THROWS_AS(z(2, 0) + z(3, 0), DimensionError);
}

TEST_CASE("substitution") {
    const int n = 2;
    std::vector<ConjPolynomial> id{z(n, 0), z(n, 1)};
    CHECK(z(n, 0).substituted(id, 10) == z(n, 0));

    // swap: z1 ~z2 -> z2 ~z1
    std::vector<ConjPolynomial> swap{z(n, 1), z(n, 0)};
    CHECK((z(n, 0) * zb(n, 1)).substituted(swap, 10) == z(n, 1) * zb(n, 0));
}

TEST_CASE("inverse transformation round trip in the alpha series") {
    // w = z - alpha P(z); z = w + alpha P(w) + alpha^2 [P||P](w) recovers w
    // up to the alpha truncation order
    std::mt19937 rng(41);
    const int n = 2;
    std::vector<ConjPolynomial> P;
    for (int j = 0; j < n; ++j) {
        auto p = random_poly(n, 2, rng, 3).tail_from(2);  // lower degree >= 2
        P.push_back(p);
    }
    const int cap = 8;
    std::vector<AlphaSeries> zs;  // z in terms of w
    for (int j = 0; j < n; ++j) {
        AlphaSeries s = AlphaSeries::from_poly(ConjPolynomial::variable(n, j), 2);
        s += AlphaSeries::from_poly(P[j], 2, 1);
        s += AlphaSeries::from_poly(bracket(P[j], P).truncated(cap), 2, 2);
        zs.push_back(s);
    }
    for (int j = 0; j < n; ++j) {
        // w_j = z_j - alpha P_j(z), expanded in w
        AlphaSeries w = zs[j];
        AlphaSeries Pz = substituted(P[j], zs, cap);
        AlphaSeries shift(n, 2);
        for (int m = 1; m <= 2; ++m) shift.at(m) = Pz.at(m - 1);
        w -= shift;
        CHECK(w.at(0) == ConjPolynomial::variable(n, j));
        CHECK(w.at(1).is_zero());
        // alpha^2 terms cancel below the bracket truncation cap
        CHECK(w.at(2).truncated(cap - 2).max_abs_coeff() < 1e-12);
    }
}
