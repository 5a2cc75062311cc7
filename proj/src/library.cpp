#include "hnf/library.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace hnf {

std::string FeatureDescriptor::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Constant:
            return "1";
        case Kind::Drift:
            os << "t";
            if (drift_power > 1) os << "^" << drift_power;
            return os.str();
        case Kind::Sin:
        case Kind::Cos: {
            os << (kind == Kind::Sin ? "sin(" : "cos(");
            if (harmonic != 1) os << harmonic << "*(";
            bool first = true;
            for (std::size_t k = 0; k < combo.size(); ++k) {
                if (combo[k] == 0) continue;
                if (combo[k] > 0 && !first) os << "+";
                if (combo[k] == -1)
                    os << "-";
                else if (combo[k] != 1)
                    os << combo[k] << "*";
                os << "th" << k + 1;
                first = false;
            }
            if (harmonic != 1) os << ")";
            os << ")";
            return os.str();
        }
    }
    return "?";
}

namespace {

BasisLibrary assemble(const std::vector<std::vector<double>>& phase_channels,
                      const std::vector<double>& times, int drift_degree, int harmonics,
                      const std::vector<std::vector<int>>* combos) {
    const std::size_t rows = times.size();
    BasisLibrary lib;

    lib.features.push_back({FeatureDescriptor::Kind::Constant, 0, {}, 1});
    for (int p = 1; p <= drift_degree; ++p)
        lib.features.push_back({FeatureDescriptor::Kind::Drift, p, {}, 1});
    for (std::size_t c = 0; c < phase_channels.size(); ++c) {
        std::vector<int> combo = combos ? (*combos)[c] : std::vector<int>{};
        for (int h = 1; h <= harmonics; ++h) {
            lib.features.push_back({FeatureDescriptor::Kind::Sin, 0, combo, h});
            lib.features.push_back({FeatureDescriptor::Kind::Cos, 0, combo, h});
        }
    }

    lib.Phi.resize(static_cast<long>(rows), lib.cols());
    lib.time = times;
    int col = 0;
    lib.Phi.col(col++).setOnes();
    for (int p = 1; p <= drift_degree; ++p, ++col)
        for (std::size_t i = 0; i < rows; ++i)
            lib.Phi(static_cast<long>(i), col) = std::pow(times[i], p);
    for (const auto& ch : phase_channels) {
        for (int h = 1; h <= harmonics; ++h) {
            for (std::size_t i = 0; i < rows; ++i) {
                lib.Phi(static_cast<long>(i), col) = std::sin(h * ch[i]);
                lib.Phi(static_cast<long>(i), col + 1) = std::cos(h * ch[i]);
            }
            col += 2;
        }
    }
    return lib;
}

}  // namespace

BasisLibrary build_library(const PhaseSeries& ps,
                           const std::vector<std::vector<int>>& combos, int drift_degree,
                           int harmonics, int row_stride) {
    if (combos.empty()) throw std::invalid_argument("build_library: no combinations");
    {
        std::set<std::vector<int>> seen;
        for (const auto& c : combos)
            if (!seen.insert(c).second)
                throw std::invalid_argument("build_library: duplicate combination");
    }
    if (row_stride < 1) throw std::invalid_argument("build_library: row_stride >= 1");

    std::vector<std::vector<double>> channels;
    channels.reserve(combos.size());
    std::vector<double> times;
    for (std::size_t i = ps.transient_cut; i < ps.samples(); i += row_stride)
        times.push_back(ps.time_at(i) - ps.time_at(ps.transient_cut));
    for (const auto& combo : combos) {
        const auto full = phase_combination(ps, combo);
        std::vector<double> ch;
        ch.reserve(times.size());
        for (std::size_t i = ps.transient_cut; i < ps.samples(); i += row_stride)
            ch.push_back(full[i]);
        channels.push_back(std::move(ch));
    }
    return assemble(channels, times, drift_degree, harmonics, &combos);
}

BasisLibrary build_library_from_channels(const std::vector<std::vector<double>>& channels,
                                         double dt, int drift_degree, int harmonics,
                                         const std::vector<std::vector<int>>* combos) {
    if (channels.empty()) throw std::invalid_argument("build_library_from_channels: empty");
    std::vector<double> times(channels.front().size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = static_cast<double>(i) * dt;
    return assemble(channels, times, drift_degree, harmonics, combos);
}

std::vector<std::vector<int>> single_combos(int n) {
    std::vector<std::vector<int>> out;
    for (int k = 0; k < n; ++k) {
        std::vector<int> v(n, 0);
        v[k] = 1;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<int>> pair_difference_combos(int n) {
    std::vector<std::vector<int>> out;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            std::vector<int> v(n, 0);
            v[p] = 1;
            v[q] = -1;
            out.push_back(std::move(v));
        }
    return out;
}

std::vector<std::vector<int>> triplet_combos(int n) {
    std::vector<std::vector<int>> out;
    for (int a = 0; a < n; ++a)
        for (int c = a + 1; c < n; ++c)
            for (int b = 0; b < n; ++b) {
                if (b == a || b == c) continue;
                std::vector<int> v(n, 0);
                v[a] = 1;
                v[c] = 1;
                v[b] = -1;
                out.push_back(std::move(v));
            }
    return out;
}

std::vector<std::vector<int>> full_phase_family(int n) {
    auto out = single_combos(n);
    for (auto& v : pair_difference_combos(n)) out.push_back(std::move(v));
    for (auto& v : triplet_combos(n)) out.push_back(std::move(v));
    return out;
}

std::vector<double> rolling_mean(std::span<const double> y, int window_samples) {
    if (window_samples < 1) throw std::invalid_argument("rolling_mean: window >= 1");
    const int m = static_cast<int>(y.size());
    const int half = window_samples / 2;
    std::vector<double> out(m);
    double acc = 0.0;
    int lo = 0, hi = -1;  // inclusive window [lo, hi]
    for (int i = 0; i < m; ++i) {
        const int nlo = std::max(0, i - half);
        const int nhi = std::min(m - 1, i + half);
        while (hi < nhi) acc += y[++hi];
        while (lo < nlo) acc -= y[lo++];
        out[i] = acc / static_cast<double>(nhi - nlo + 1);
    }
    return out;
}

}  // namespace hnf
