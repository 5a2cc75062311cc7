#include "hnf/conj_polynomial.hpp"

#include <cmath>
#include <sstream>

namespace hnf {

ConjPolynomial ConjPolynomial::constant(int n, Complex c) {
    ConjPolynomial p(n);
    p.add_term(Exponents(n), c);
    return p;
}

ConjPolynomial ConjPolynomial::variable(int n, int j) {
    Exponents e(n);
    e.s[j] = 1;
    return monomial(e, Complex(1.0, 0.0));
}

ConjPolynomial ConjPolynomial::conj_variable(int n, int j) {
    Exponents e(n);
    e.t[j] = 1;
    return monomial(e, Complex(1.0, 0.0));
}

ConjPolynomial ConjPolynomial::monomial(Exponents e, Complex c) {
    ConjPolynomial p(e.n());
    p.add_term(std::move(e), c);
    return p;
}

Complex ConjPolynomial::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

void ConjPolynomial::add_term(const Exponents& e, Complex c) {
    if (c == Complex(0.0)) return;
    if (e.n() != n_) throw DimensionError("ConjPolynomial::add_term: exponent size != n");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) terms_.erase(it);
    }
}

ConjPolynomial& ConjPolynomial::operator+=(const ConjPolynomial& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ConjPolynomial& ConjPolynomial::operator-=(const ConjPolynomial& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

ConjPolynomial operator*(const ConjPolynomial& a, const ConjPolynomial& b) {
    a.check_dim(b);
    ConjPolynomial r(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e = ea;
            for (int j = 0; j < e.n(); ++j) {
                e.s[j] = static_cast<std::uint8_t>(e.s[j] + eb.s[j]);
                e.t[j] = static_cast<std::uint8_t>(e.t[j] + eb.t[j]);
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

ConjPolynomial ConjPolynomial::scaled(Complex c) const {
    ConjPolynomial r(n_);
    if (c == Complex(0.0)) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

ConjPolynomial ConjPolynomial::conjugated() const {
    ConjPolynomial r(n_);
    for (const auto& [e, v] : terms_) r.terms_.emplace(e.conjugated(), std::conj(v));
    return r;
}

ConjPolynomial ConjPolynomial::derivative(int j, bool conjugate_var) const {
    ConjPolynomial r(n_);
    for (const auto& [e, v] : terms_) {
        const std::uint8_t exp = conjugate_var ? e.t[j] : e.s[j];
        if (exp == 0) continue;
        Exponents d = e;
        if (conjugate_var)
            --d.t[j];
        else
            --d.s[j];
        r.add_term(d, v * static_cast<double>(exp));
    }
    return r;
}

ConjPolynomial ConjPolynomial::truncated(int max_degree) const {
    ConjPolynomial r(n_);
    for (const auto& [e, v] : terms_)
        if (e.degree() <= max_degree) r.terms_.emplace(e, v);
    return r;
}

ConjPolynomial ConjPolynomial::tail_from(int min_degree) const {
    ConjPolynomial r(n_);
    for (const auto& [e, v] : terms_)
        if (e.degree() >= min_degree) r.terms_.emplace(e, v);
    return r;
}

std::pair<int, int> ConjPolynomial::degree_bounds() const {
    if (terms_.empty())
        throw std::domain_error("degree_bounds: zero polynomial has no degree");
    // graded order: first term carries the lower degree, last the degree
    return {terms_.begin()->first.degree(), terms_.rbegin()->first.degree()};
}

double ConjPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, v] : terms_) m = std::max(m, std::abs(v));
    return m;
}

ConjPolynomial ConjPolynomial::substituted(std::span<const ConjPolynomial> subs,
                                           int truncate_at) const {
    if (static_cast<int>(subs.size()) != n_)
        throw DimensionError("substituted: subs size != n");
    for (const auto& s : subs)
        if (s.n() != subs.front().n())
            throw DimensionError("substituted: inconsistent subs dimensions");
    const int m = subs.empty() ? n_ : subs.front().n();

    ConjPolynomial result(m);
    for (const auto& [e, c] : terms_) {
        ConjPolynomial mono = ConjPolynomial::constant(m, c);
        for (int j = 0; j < n_ && !mono.is_zero(); ++j) {
            for (int r = 0; r < e.s[j] && !mono.is_zero(); ++r)
                mono = (mono * subs[j]).truncated(truncate_at);
            if (e.t[j] > 0) {
                const ConjPolynomial cj = subs[j].conjugated();
                for (int r = 0; r < e.t[j] && !mono.is_zero(); ++r)
                    mono = (mono * cj).truncated(truncate_at);
            }
        }
        result += mono;
    }
    return result;
}

Complex ConjPolynomial::eval(std::span<const Complex> z) const {
    if (static_cast<int>(z.size()) != n_) throw DimensionError("eval: point size != n");
    Complex acc(0.0);
    for (const auto& [e, c] : terms_) {
        Complex m = c;
        for (int j = 0; j < n_; ++j) {
            for (int r = 0; r < e.s[j]; ++r) m *= z[j];
            if (e.t[j] > 0) {
                const Complex zc = std::conj(z[j]);
                for (int r = 0; r < e.t[j]; ++r) m *= zc;
            }
        }
        acc += m;
    }
    return acc;
}

std::string ConjPolynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (int j = 0; j < n_; ++j) {
            if (e.s[j] > 0) {
                os << "*z" << j + 1;
                if (e.s[j] > 1) os << "^" << int(e.s[j]);
            }
            if (e.t[j] > 0) {
                os << "*~z" << j + 1;
                if (e.t[j] > 1) os << "^" << int(e.t[j]);
            }
        }
    }
    return os.str();
}

ConjPolynomial bracket(const ConjPolynomial& R, std::span<const ConjPolynomial> S) {
    if (static_cast<int>(S.size()) != R.n())
        throw DimensionError("bracket: S size != n");
    for (const auto& s : S)
        if (s.n() != R.n()) throw DimensionError("bracket: component dimension mismatch");

    // [R||S] = sum_j dR/dz_j * S_j + dR/dconj(z_j) * conj(S_j)
    ConjPolynomial out(R.n());
    for (int j = 0; j < R.n(); ++j) {
        ConjPolynomial dz = R.derivative(j, false);
        if (!dz.is_zero()) out += dz * S[j];
        ConjPolynomial dzb = R.derivative(j, true);
        if (!dzb.is_zero()) out += dzb * S[j].conjugated();
    }
    return out;
}

ConjPolynomial gamma_op(const ConjPolynomial& R, const GammaVector& g) {
    if (g.n() != R.n()) throw DimensionError("gamma_op: gamma size != n");
    ConjPolynomial out(R.n());
    for (const auto& [e, c] : R.terms()) {
        Complex factor(0.0);
        for (int j = 0; j < R.n(); ++j)
            factor += static_cast<double>(e.s[j]) * g.gamma[j] +
                      static_cast<double>(e.t[j]) * std::conj(g.gamma[j]);
        out.add_term(e, c * factor);
    }
    return out;
}

Complex resonance_value(const Exponents& e, int k, const GammaVector& g) {
    if (e.n() != g.n()) throw DimensionError("resonance_value: dimension mismatch");
    if (k < 0 || k >= g.n()) throw std::out_of_range("resonance_value: node index");
    Complex v(0.0);
    for (int j = 0; j < e.n(); ++j)
        v += static_cast<double>(e.s[j]) * g.gamma[j] +
             static_cast<double>(e.t[j]) * std::conj(g.gamma[j]);
    return v - g.gamma[k];
}

ConjPolynomial modified_poly(const ConjPolynomial& Q, int k, const GammaVector& g,
                             double eps_res) {
    if (g.n() != Q.n()) throw DimensionError("modified_poly: dimension mismatch");
    ConjPolynomial out(Q.n());
    for (const auto& [e, c] : Q.terms()) {
        const Complex denom = resonance_value(e, k, g);
        if (std::abs(denom) <= eps_res) {
            std::ostringstream os;
            os << "modified_poly: resonant monomial at node " << k + 1 << ": "
               << ConjPolynomial::monomial(e, c).str() << " (|denominator| = "
               << std::abs(denom) << " <= " << eps_res << ")";
            throw ResonantTermError(os.str());
        }
        out.add_term(e, c / denom);
    }
    return out;
}

}  // namespace hnf
