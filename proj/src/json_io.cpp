#include "hnf/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace hnf {

Json poly_to_json(const ConjPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["s"] = std::vector<int>(e.s.begin(), e.s.end());
        t["t"] = std::vector<int>(e.t.begin(), e.t.end());
        t["re"] = c.real();
        t["im"] = c.imag();
        terms.push_back(std::move(t));
    }
    return Json{{"n", p.n()}, {"terms", std::move(terms)}};
}

ConjPolynomial poly_from_json(const Json& j) {
    ConjPolynomial p(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
        Exponents e(p.n());
        const auto s = t.at("s").get<std::vector<int>>();
        const auto tt = t.at("t").get<std::vector<int>>();
        if (static_cast<int>(s.size()) != p.n() || static_cast<int>(tt.size()) != p.n())
            throw std::invalid_argument("polynomial json: exponent length != n");
        for (int i = 0; i < p.n(); ++i) {
            e.s[i] = static_cast<std::uint8_t>(s[i]);
            e.t[i] = static_cast<std::uint8_t>(tt[i]);
        }
        p.add_term(e, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    }
    return p;
}

Json system_to_json(const NetworkSystem& sys) {
    std::vector<double> bre, bim;
    for (auto b : sys.beta) {
        bre.push_back(b.real());
        bim.push_back(b.imag());
    }
    return Json{{"n", sys.n},
                {"adjacency", sys.A},
                {"lambda", sys.lambda},
                {"omega", sys.omega},
                {"beta_re", bre},
                {"beta_im", bim},
                {"coupling", poly_to_json(sys.h)},
                {"alpha", sys.alpha},
                {"eps_res", sys.eps_res}};
}

NetworkSystem system_from_json(const Json& j) {
    NetworkSystem sys;
    sys.n = j.at("n").get<int>();
    sys.A = j.at("adjacency").get<std::vector<std::vector<double>>>();
    sys.lambda = j.at("lambda").get<double>();
    sys.omega = j.at("omega").get<std::vector<double>>();
    const auto bre = j.value("beta_re", std::vector<double>(sys.n, -1.0));
    const auto bim = j.value("beta_im", std::vector<double>(sys.n, 0.0));
    if (static_cast<int>(bre.size()) != sys.n || static_cast<int>(bim.size()) != sys.n)
        throw std::invalid_argument("system json: beta length != n");
    for (int k = 0; k < sys.n; ++k) sys.beta.emplace_back(bre[k], bim[k]);
    sys.h = poly_from_json(j.at("coupling"));
    sys.alpha = j.at("alpha").get<double>();
    sys.eps_res = j.value("eps_res", 0.1);
    sys.validate();
    return sys;
}

Json hypernetwork_to_json(const Hypernetwork& hn) {
    std::vector<Hyperedge> sorted = hn.edges;
    GradedLexLess less;
    std::sort(sorted.begin(), sorted.end(), [&](const Hyperedge& a, const Hyperedge& b) {
        if (a.node != b.node) return a.node < b.node;
        if (!(a.mono == b.mono)) return less(a.mono, b.mono);
        if (a.family != b.family) return a.family < b.family;
        if (a.l != b.l) return a.l < b.l;
        return a.p < b.p;
    });
    Json edges = Json::array();
    for (const auto& e : sorted) {
        Json je;
        je["node"] = e.node + 1;
        je["s"] = std::vector<int>(e.mono.s.begin(), e.mono.s.end());
        je["t"] = std::vector<int>(e.mono.t.begin(), e.mono.t.end());
        je["re"] = e.coeff.real();
        je["im"] = e.coeff.imag();
        je["tag"] = e.family == '1' ? "1G" : "2G";
        je["l"] = e.l + 1;
        je["p"] = e.p + 1;
        edges.push_back(std::move(je));
    }
    return Json{{"n", hn.n}, {"hyperedges", std::move(edges)}};
}

Hypernetwork hypernetwork_from_json(const Json& j) {
    Hypernetwork hn;
    hn.n = j.at("n").get<int>();
    hn.G.assign(hn.n, ConjPolynomial(hn.n));
    for (const auto& je : j.at("hyperedges")) {
        Hyperedge e;
        e.node = je.at("node").get<int>() - 1;
        e.mono = Exponents(hn.n);
        const auto s = je.at("s").get<std::vector<int>>();
        const auto t = je.at("t").get<std::vector<int>>();
        for (int i = 0; i < hn.n; ++i) {
            e.mono.s[i] = static_cast<std::uint8_t>(s[i]);
            e.mono.t[i] = static_cast<std::uint8_t>(t[i]);
        }
        e.coeff = Complex(je.at("re").get<double>(), je.at("im").get<double>());
        e.family = je.at("tag").get<std::string>() == "1G" ? '1' : '2';
        e.l = je.at("l").get<int>() - 1;
        e.p = je.at("p").get<int>() - 1;
        hn.edges.push_back(e);
        hn.G[e.node] += ConjPolynomial::monomial(e.mono, e.coeff);
    }
    return hn;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace hnf
