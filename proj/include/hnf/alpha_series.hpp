#pragma once

#include <span>
#include <vector>

#include "hnf/conj_polynomial.hpp"

namespace hnf {

// Formal power series in the real coupling parameter alpha, with
// ConjPolynomial coefficients. Alpha is kept as a separate grading and never
// folded into the complex coefficients; both the alpha order and the
// polynomial degree are truncated explicitly.
class AlphaSeries {
public:
    AlphaSeries() = default;
    AlphaSeries(int n, int alpha_order) : coeffs_(alpha_order + 1, ConjPolynomial(n)) {}

    static AlphaSeries from_poly(const ConjPolynomial& p, int alpha_order, int at_order = 0) {
        AlphaSeries s(p.n(), alpha_order);
        if (at_order <= alpha_order) s.coeffs_[at_order] = p;
        return s;
    }

    int n() const { return coeffs_.empty() ? 0 : coeffs_.front().n(); }
    int alpha_order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const ConjPolynomial& at(int m) const { return coeffs_.at(m); }
    ConjPolynomial& at(int m) { return coeffs_.at(m); }

    AlphaSeries& operator+=(const AlphaSeries& o);
    AlphaSeries& operator-=(const AlphaSeries& o);
    friend AlphaSeries operator+(AlphaSeries a, const AlphaSeries& b) { return a += b; }
    friend AlphaSeries operator-(AlphaSeries a, const AlphaSeries& b) { return a -= b; }

    AlphaSeries scaled(Complex c) const;
    AlphaSeries conjugated() const;

    // Product with both gradings truncated: alpha order at the common order,
    // polynomial degree at max_degree.
    AlphaSeries multiplied(const AlphaSeries& o, int max_degree) const;

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    std::vector<ConjPolynomial> coeffs_;  // coeffs_[m] multiplies alpha^m
};

// Order-by-order bracket: [R||S]^(m) = sum_{p+q=m} [R^(p)||S^(q)]. Valid
// because the bracket is real linear in S and alpha is a real parameter.
AlphaSeries bracket(const AlphaSeries& R, std::span<const AlphaSeries> S, int max_degree);

// Substitute z_j -> subs[j] (an AlphaSeries) into the plain polynomial P,
// truncating at max_degree and the subs' alpha order.
AlphaSeries substituted(const ConjPolynomial& P, std::span<const AlphaSeries> subs,
                        int max_degree);

}  // namespace hnf
