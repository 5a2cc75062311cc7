#include "hnf/phase_reduction.hpp"

#include <cmath>

namespace hnf {

PhaseModel polar_reduce_r0(const Hypernetwork& hn, const NetworkSystem& sys, double r0,
                           double eps_res) {
    if (r0 <= 0.0) throw std::invalid_argument("polar_reduce: r0 must be positive");
    PhaseModel pm;
    pm.n = hn.n;
    pm.Omega = sys.omega;
    const double a2 = sys.alpha * sys.alpha;

    std::map<std::pair<int, std::vector<int>>, PhaseTerm> acc;
    for (const auto& e : hn.edges) {
        std::vector<int> m(hn.n, 0);
        double mw = 0.0;
        int degree = 0;
        for (int j = 0; j < hn.n; ++j) {
            m[j] = static_cast<int>(e.mono.s[j]) - static_cast<int>(e.mono.t[j]);
            degree += e.mono.s[j] + e.mono.t[j];
        }
        m[e.node] -= 1;
        for (int j = 0; j < hn.n; ++j) mw += m[j] * sys.omega[j];
        if (std::abs(mw) > eps_res) continue;  // fast: averaged away

        // du_k/dt -= alpha^2 c u^s conj(u)^t  =>
        // dtheta_k/dt -= alpha^2 r0^(deg-1) [Re(c) sin(m.theta) + Im(c) cos(m.theta)]
        const double scale = a2 * std::pow(r0, degree - 1);
        const double sin_c = -scale * e.coeff.real();
        const double cos_c = -scale * e.coeff.imag();

        bool zero = true;
        for (int v : m)
            if (v != 0) zero = false;
        if (zero) {
            pm.Omega[e.node] += cos_c;  // constant frequency shift
            continue;
        }
        auto& term = acc[{e.node, m}];
        term.node = e.node;
        term.m = m;
        term.sin_c += sin_c;
        term.cos_c += cos_c;
    }
    for (auto& [key, t] : acc)
        if (t.sin_c != 0.0 || t.cos_c != 0.0) pm.terms.push_back(std::move(t));
    return pm;
}

PhaseModel polar_reduce(const Hypernetwork& hn, const NetworkSystem& sys, double lambda,
                        double eps_res) {
    if (lambda <= 0.0)
        throw std::invalid_argument("polar_reduce: lambda <= 0 gives no limit cycle");
    for (auto b : sys.beta)
        if (b != Complex(-1.0, 0.0))
            throw std::invalid_argument("polar_reduce: expects beta_k = -1 (r0^2 = lambda)");
    return polar_reduce_r0(hn, sys, std::sqrt(lambda), eps_res);
}

TrigPair rho(int p, int q, double r0, std::span<const double> omega) {
    if (r0 <= 0.0) throw std::invalid_argument("rho: r0 must be positive");
    const double r2 = r0 * r0;
    const double d = omega[p] - omega[q];
    const double den = 4.0 * r2 * r2 + d * d;
    return {2.0 * r2 / den, -d / den};
}

TrigPair sigma(int p, int q, int r, double r0, std::span<const double> omega) {
    if (r0 <= 0.0) throw std::invalid_argument("sigma: r0 must be positive");
    const double r2 = r0 * r0;
    const double r4 = r2 * r2;
    const double dpq = omega[p] - omega[q];
    const double dpr = omega[p] - omega[r];
    const double chi = r2 * (4.0 / (4.0 * r4 + dpq * dpq) + 4.0 / (4.0 * r4 + dpr * dpr) +
                             1.0 / (r4 + omega[q] * omega[q]) +
                             1.0 / (r4 + omega[r] * omega[r]));
    const double upsilon = -2.0 * dpq / (4.0 * r4 + dpq * dpq) -
                           2.0 * dpr / (4.0 * r4 + dpr * dpr) +
                           omega[q] / (r4 + omega[q] * omega[q]) +
                           omega[r] / (r4 + omega[r] * omega[r]);
    return {-chi, upsilon};
}

SlowPhaseSystem slow_phase_field(const PhaseModel& pm,
                                 const std::vector<std::vector<int>>& combos) {
    for (const auto& v : combos)
        if (static_cast<int>(v.size()) != pm.n)
            throw std::invalid_argument("slow_phase_field: combo length != n");

    SlowPhaseSystem sp;
    sp.combos = combos;
    const int nc = static_cast<int>(combos.size());
    sp.Omega.assign(nc, 0.0);
    sp.a.assign(nc, std::vector<double>(nc, 0.0));
    sp.b.assign(nc, std::vector<double>(nc, 0.0));

    for (int i = 0; i < nc; ++i)
        for (int k = 0; k < pm.n; ++k) sp.Omega[i] += combos[i][k] * pm.Omega[k];

    for (const auto& t : pm.terms) {
        // match m against +-combos[j]
        int j = -1;
        double sign = 1.0;
        for (int c = 0; c < nc; ++c) {
            bool plus = true, minus = true;
            for (int k = 0; k < pm.n; ++k) {
                if (t.m[k] != combos[c][k]) plus = false;
                if (t.m[k] != -combos[c][k]) minus = false;
            }
            if (plus) {
                j = c;
                sign = 1.0;
                break;
            }
            if (minus) {
                j = c;
                sign = -1.0;
                break;
            }
        }
        if (j < 0)
            throw std::invalid_argument(
                "slow_phase_field: phase term does not match any slow combination");
        // sin(sign phi) = sign sin(phi), cos(sign phi) = cos(phi)
        for (int i = 0; i < nc; ++i) {
            const double w = sp.combos[i][t.node];
            if (w == 0.0) continue;
            sp.b[i][j] += w * sign * t.sin_c;
            sp.a[i][j] += w * t.cos_c;
        }
    }
    return sp;
}

NetworkSystem oa_build(std::span<const double> Omega, std::span<const double> sigma,
                       double mu, double alpha,
                       const std::vector<std::vector<double>>& adjacency) {
    const int n = static_cast<int>(Omega.size());
    if (static_cast<int>(sigma.size()) != n)
        throw std::invalid_argument("oa_build: Omega/sigma length mismatch");
    for (double s : sigma)
        if (mu <= s)
            throw std::invalid_argument(
                "oa_build: mu <= sigma_k, mean field is below its oscillation threshold");
    // gamma_k = (mu - sigma_k) + i Omega_k requires a shared real part
    for (double s : sigma)
        if (s != sigma[0])
            throw std::invalid_argument("oa_build: per-node sigma must agree (shared lambda)");

    NetworkSystem sys;
    sys.n = n;
    sys.A = adjacency;
    sys.lambda = mu - sigma[0];
    sys.omega.assign(Omega.begin(), Omega.end());
    sys.beta.assign(n, Complex(-mu, 0.0));
    sys.alpha = alpha;
    // h(z, w) = w + conj(w) z^2
    ConjPolynomial h(2);
    Exponents lin(2);
    lin.s[1] = 1;
    h.add_term(lin, Complex(1.0));
    Exponents cub(2);
    cub.s[0] = 2;
    cub.t[1] = 1;
    h.add_term(cub, Complex(1.0));
    sys.h = h;
    sys.validate();
    return sys;
}

std::vector<double> oa_amplitudes(std::span<const double> sigma, double mu) {
    std::vector<double> r;
    r.reserve(sigma.size());
    for (double s : sigma) {
        if (mu <= s) throw std::invalid_argument("oa_amplitudes: mu <= sigma_k");
        r.push_back(std::sqrt((mu - s) / mu));
    }
    return r;
}

}  // namespace hnf
