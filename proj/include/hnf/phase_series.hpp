#pragma once

#include <string>
#include <vector>

#include "hnf/trajectory.hpp"

namespace hnf {

enum class PhaseProvenance { Polar, PeakInterpolated };

// Unwrapped per-node phases on a uniform grid.
struct PhaseSeries {
    double dt = 0.0;
    double t0 = 0.0;
    std::size_t transient_cut = 0;
    std::vector<std::vector<double>> theta;
    PhaseProvenance provenance = PhaseProvenance::Polar;
    std::vector<double> detrend_Omega;  // empty until detrended

    int n() const { return static_cast<int>(theta.size()); }
    std::size_t samples() const { return theta.empty() ? 0 : theta.front().size(); }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
};

// Unwrap assuming |delta theta| < pi per step.
std::vector<double> unwrap(std::span<const double> wrapped);

// arg(z) per sample, cumulative unwrap. Throws on |z| < 1e-9.
PhaseSeries extract_phase_polar(const ComplexTrajectory& traj);

// Peak finding with a prominence floor (fraction of the channel peak-to-peak)
// and quadratic sub-sample peak localization; phase advances 2 pi per peak,
// linear in between, linearly extrapolated outside the first/last peak.
PhaseSeries extract_phase_peaks(const RealTrajectory& traj,
                                double prominence_fraction = 0.1);

PhaseSeries detrend(const PhaseSeries& ps, std::span<const double> Omega);

// Per-node least-squares phase slopes.
std::vector<double> fit_slopes(const PhaseSeries& ps);

// Slopes projected (in the Euclidean sense) onto {Omega : C Omega = 0} where
// each constraint row is an integer combination; exact constraint
// satisfaction. Throws when the constraint rows are rank deficient.
std::vector<double> estimate_resonant_frequencies(
    const PhaseSeries& ps, const std::vector<std::vector<int>>& constraints);

// Centered finite differences (one-sided at the ends).
std::vector<double> differentiate(std::span<const double> y, double dt);

// combo . theta per sample.
std::vector<double> phase_combination(const PhaseSeries& ps, std::span<const int> combo);

}  // namespace hnf
