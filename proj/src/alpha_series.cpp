#include "hnf/alpha_series.hpp"

namespace hnf {

AlphaSeries& AlphaSeries::operator+=(const AlphaSeries& o) {
    if (alpha_order() != o.alpha_order() || n() != o.n())
        throw DimensionError("AlphaSeries: mismatched shape in +=");
    for (int m = 0; m <= alpha_order(); ++m) coeffs_[m] += o.coeffs_[m];
    return *this;
}

AlphaSeries& AlphaSeries::operator-=(const AlphaSeries& o) {
    if (alpha_order() != o.alpha_order() || n() != o.n())
        throw DimensionError("AlphaSeries: mismatched shape in -=");
    for (int m = 0; m <= alpha_order(); ++m) coeffs_[m] -= o.coeffs_[m];
    return *this;
}

AlphaSeries AlphaSeries::scaled(Complex c) const {
    AlphaSeries r = *this;
    for (auto& p : r.coeffs_) p = p.scaled(c);
    return r;
}

AlphaSeries AlphaSeries::conjugated() const {
    AlphaSeries r = *this;
    for (auto& p : r.coeffs_) p = p.conjugated();
    return r;
}

AlphaSeries AlphaSeries::multiplied(const AlphaSeries& o, int max_degree) const {
    if (n() != o.n()) throw DimensionError("AlphaSeries: mismatched n in multiply");
    const int order = std::min(alpha_order(), o.alpha_order());
    AlphaSeries r(n(), order);
    for (int m = 0; m <= order; ++m)
        for (int p = 0; p <= m; ++p) {
            if (coeffs_[p].is_zero() || o.coeffs_[m - p].is_zero()) continue;
            r.coeffs_[m] += (coeffs_[p] * o.coeffs_[m - p]).truncated(max_degree);
        }
    return r;
}

AlphaSeries bracket(const AlphaSeries& R, std::span<const AlphaSeries> S, int max_degree) {
    if (static_cast<int>(S.size()) != R.n())
        throw DimensionError("bracket(AlphaSeries): S size != n");
    const int order = R.alpha_order();
    AlphaSeries out(R.n(), order);
    std::vector<ConjPolynomial> Sq(S.size(), ConjPolynomial(R.n()));
    for (int m = 0; m <= order; ++m)
        for (int p = 0; p <= m; ++p) {
            if (R.at(p).is_zero()) continue;
            for (std::size_t j = 0; j < S.size(); ++j) Sq[j] = S[j].at(m - p);
            out.at(m) += bracket(R.at(p), Sq).truncated(max_degree);
        }
    return out;
}

AlphaSeries substituted(const ConjPolynomial& P, std::span<const AlphaSeries> subs,
                        int max_degree) {
    if (static_cast<int>(subs.size()) != P.n())
        throw DimensionError("substituted(AlphaSeries): subs size != n");
    const int order = subs.empty() ? 0 : subs.front().alpha_order();
    const int m = subs.empty() ? P.n() : subs.front().n();

    AlphaSeries result(m, order);
    for (const auto& [e, c] : P.terms()) {
        AlphaSeries mono = AlphaSeries::from_poly(ConjPolynomial::constant(m, c), order);
        for (int j = 0; j < P.n(); ++j) {
            for (int r = 0; r < e.s[j]; ++r) mono = mono.multiplied(subs[j], max_degree);
            if (e.t[j] > 0) {
                const AlphaSeries cj = subs[j].conjugated();
                for (int r = 0; r < e.t[j]; ++r) mono = mono.multiplied(cj, max_degree);
            }
        }
        result += mono;
    }
    return result;
}

}  // namespace hnf
