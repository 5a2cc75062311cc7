#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hnf/phase_series.hpp"

namespace hnf {

struct FeatureDescriptor {
    enum class Kind { Constant, Drift, Sin, Cos };
    Kind kind = Kind::Constant;
    int drift_power = 0;     // t^p
    std::vector<int> combo;  // integer phase combination
    int harmonic = 1;        // sin/cos(harmonic * combo . theta)

    std::string name() const;
    bool same_phase(const FeatureDescriptor& o) const {
        return combo == o.combo && harmonic == o.harmonic;
    }
};

// Column order: [1, t, ..., t^drift_degree, then (sin, cos) x harmonics per
// combo in the given order]. Rows are the post-transient samples.
struct BasisLibrary {
    std::vector<FeatureDescriptor> features;
    Eigen::MatrixXd Phi;
    std::vector<double> time;  // row times (relative to the window start)

    int cols() const { return static_cast<int>(features.size()); }
    long rows() const { return Phi.rows(); }
};

BasisLibrary build_library(const PhaseSeries& ps,
                           const std::vector<std::vector<int>>& combos, int drift_degree,
                           int harmonics = 1, int row_stride = 1);

// The same columns evaluated on explicit slow-phase channels (one channel per
// combo); used when the combinations are precomputed or pre-smoothed.
BasisLibrary build_library_from_channels(const std::vector<std::vector<double>>& channels,
                                         double dt, int drift_degree, int harmonics = 1,
                                         const std::vector<std::vector<int>>* combos = nullptr);

// Common combination families.
std::vector<std::vector<int>> single_combos(int n);
std::vector<std::vector<int>> pair_difference_combos(int n);
// e_a - e_b + e_c over distinct triples, sign-canonicalized.
std::vector<std::vector<int>> triplet_combos(int n);
// singles + pair differences + triplets
std::vector<std::vector<int>> full_phase_family(int n);

std::vector<double> rolling_mean(std::span<const double> y, int window_samples);

}  // namespace hnf
