#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnf {

using Complex = std::complex<double>;

// Exponents of one monomial in n complex variables and their conjugates:
// z_1^{s_1}...z_n^{s_n} * conj(z_1)^{t_1}...conj(z_n)^{t_n}.
struct Exponents {
    std::vector<std::uint8_t> s;
    std::vector<std::uint8_t> t;

    Exponents() = default;
    explicit Exponents(int n) : s(n, 0), t(n, 0) {}

    int n() const { return static_cast<int>(s.size()); }
    int degree() const {
        int d = 0;
        for (auto e : s) d += e;
        for (auto e : t) d += e;
        return d;
    }
    Exponents conjugated() const {
        Exponents r;
        r.s = t;
        r.t = s;
        return r;
    }
    bool operator==(const Exponents& o) const { return s == o.s && t == o.t; }
};

// Graded lexicographic order on the concatenated (s, t) vector; gives
// deterministic term iteration and serialization.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    }
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised by modified_poly when a denominator falls inside the resonance cut.
struct ResonantTermError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Complex polynomial in z_1..z_n and their conjugates. Canonical form is
// maintained by every operation: no exactly-zero coefficients, terms keyed
// by exponent vector in graded-lex order. Numerically tiny coefficients are
// kept; pruning is a caller decision.
class ConjPolynomial {
public:
    using TermMap = std::map<Exponents, Complex, GradedLexLess>;

    ConjPolynomial() : n_(0) {}
    explicit ConjPolynomial(int n) : n_(n) {}

    static ConjPolynomial constant(int n, Complex c);
    static ConjPolynomial variable(int n, int j);       // z_j, 0-based
    static ConjPolynomial conj_variable(int n, int j);  // conj(z_j)
    static ConjPolynomial monomial(Exponents e, Complex c);

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Complex coeff(const Exponents& e) const;
    void add_term(const Exponents& e, Complex c);

    ConjPolynomial& operator+=(const ConjPolynomial& o);
    ConjPolynomial& operator-=(const ConjPolynomial& o);
    friend ConjPolynomial operator+(ConjPolynomial a, const ConjPolynomial& b) { return a += b; }
    friend ConjPolynomial operator-(ConjPolynomial a, const ConjPolynomial& b) { return a -= b; }
    friend ConjPolynomial operator*(const ConjPolynomial& a, const ConjPolynomial& b);

    ConjPolynomial scaled(Complex c) const;
    ConjPolynomial conjugated() const;  // maps (s,t) -> (t,s), conjugates coefficients

    // Partial derivative with respect to z_j (conjugate_var=false) or conj(z_j).
    ConjPolynomial derivative(int j, bool conjugate_var) const;

    ConjPolynomial truncated(int max_degree) const;   // drop terms with degree > max_degree
    ConjPolynomial tail_from(int min_degree) const;   // drop terms with degree < min_degree

    // (lower degree, degree); throws on the zero polynomial.
    std::pair<int, int> degree_bounds() const;

    double max_abs_coeff() const;

    // Replace z_j by subs[j] and conj(z_j) by conj(subs[j]); expand and drop
    // terms above truncate_at.
    ConjPolynomial substituted(std::span<const ConjPolynomial> subs, int truncate_at) const;

    // Numeric evaluation at a point.
    Complex eval(std::span<const Complex> z) const;

    std::string str() const;  // human-readable, graded-lex order

    bool operator==(const ConjPolynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    void check_dim(const ConjPolynomial& o) const {
        if (n_ != o.n_) throw DimensionError("ConjPolynomial: mismatched variable count");
    }

    int n_;
    TermMap terms_;
};

// gamma_k = lambda + i*omega_k for all nodes; the diagonal linearization.
struct GammaVector {
    std::vector<Complex> gamma;

    GammaVector() = default;
    GammaVector(double lambda, std::span<const double> omega) {
        gamma.reserve(omega.size());
        for (double w : omega) gamma.emplace_back(lambda, w);
    }
    explicit GammaVector(std::vector<Complex> g) : gamma(std::move(g)) {}

    int n() const { return static_cast<int>(gamma.size()); }
};

// Directional derivative of R along the formal vector field S: each z_j
// transported by S_j, each conj(z_j) by conj(S_j). Complex linear in R,
// real linear in S.
ConjPolynomial bracket(const ConjPolynomial& R, std::span<const ConjPolynomial> S);

// Bracket against S_j = gamma_j z_j; diagonal on monomials, each multiplied
// by sum(s_j gamma_j) + sum(t_j conj(gamma_j)).
ConjPolynomial gamma_op(const ConjPolynomial& R, const GammaVector& g);

// sum(s_j gamma_j) + sum(t_j conj(gamma_j)) - gamma_k. Its imaginary part is
// the frequency combination of the non-resonance condition at node k.
Complex resonance_value(const Exponents& e, int k, const GammaVector& g);

// Replacement rule: divide each monomial by its resonance_value at node k.
// Throws ResonantTermError when |denominator| <= eps_res.
ConjPolynomial modified_poly(const ConjPolynomial& Q, int k, const GammaVector& g,
                             double eps_res);

}  // namespace hnf
