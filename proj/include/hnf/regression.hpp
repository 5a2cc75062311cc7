#pragma once

#include "hnf/library.hpp"

namespace hnf {

struct FitResult {
    std::vector<FeatureDescriptor> features;
    Eigen::VectorXd coeffs;    // exactly zero outside the support
    std::vector<int> support;  // active column indices
    double mse = 0.0;
    double penalty = 0.0;      // regularization actually used (0 for STLSQ)
    double threshold = 0.0;    // STLSQ threshold (0 for LASSO)
    bool rank_warning = false;

    double coeff_of(const std::string& feature_name) const;
    bool in_support(const std::string& feature_name) const;
};

// Sequential thresholded least squares: iterate { least squares on the
// active set; zero coefficients with |c| < threshold } to a fixed point.
FitResult stlsq(const BasisLibrary& lib, std::span<const double> target, double threshold,
                int max_iter = 100);

// Coordinate-descent LASSO, (1/2N)||y - Phi c||^2 + penalty * ||c||_1 on
// internally standardized columns (coefficients are reported in the original
// scale). The constant column is folded into an unpenalized intercept.
// Debias: after support selection, refit the support by least squares.
FitResult lasso(const BasisLibrary& lib, std::span<const double> target, double penalty,
                bool debias = true, double gap_tol = 1e-8, int max_iter = 100000);

// Penalty-path scan: 50 log-spaced penalties from the all-zero bound down,
// selecting the largest penalty whose MSE <= mse_factor * (unpenalized MSE).
// With relative_to_explainable, the allowance (mse_factor - 1) applies to the
// explainable variance (baseline = constant + drift columns only) instead of
// the full MSE, which keeps the rule meaningful when the trig features
// explain a small share of a noisy target.
FitResult lasso_auto(const BasisLibrary& lib, std::span<const double> target,
                     double mse_factor = 1.2, int path_points = 50, bool debias = true,
                     bool relative_to_explainable = false);

// Triplet interaction strength sqrt(C^2 + D^2) aggregated per phase
// combination (and harmonic) present in the fit.
struct TripletAmplitude {
    std::vector<int> combo;
    int harmonic = 1;
    double amplitude = 0.0;
};
std::vector<TripletAmplitude> triplet_amplitudes(const FitResult& fit);

}  // namespace hnf
