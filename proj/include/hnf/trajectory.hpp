#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hnf/conj_polynomial.hpp"

namespace hnf {

struct DivergenceError : std::runtime_error {
    double t;
    explicit DivergenceError(double time)
        : std::runtime_error("integration diverged at t = " + std::to_string(time)),
          t(time) {}
};

// Uniformly sampled multichannel series; channels[k][i] is node k at
// t = t0 + i * dt. transient_cut marks the first sample kept by analyses.
template <typename T>
struct BasicTrajectory {
    double dt = 0.0;
    double t0 = 0.0;
    std::size_t transient_cut = 0;
    std::vector<std::vector<T>> channels;

    std::size_t samples() const { return channels.empty() ? 0 : channels.front().size(); }
    int n() const { return static_cast<int>(channels.size()); }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }

    void validate() const {
        for (const auto& c : channels)
            if (c.size() != samples())
                throw std::invalid_argument("trajectory: unequal channel lengths");
        if (transient_cut >= samples() && samples() > 0)
            throw std::invalid_argument("trajectory: transient cut beyond data");
    }
};

using ComplexTrajectory = BasicTrajectory<Complex>;
using RealTrajectory = BasicTrajectory<double>;

// CSV with a "t,<name>1,..." header; complex channels split into _re/_im.
void save_csv(const std::string& path, const ComplexTrajectory& traj,
              const std::string& name = "z");
void save_csv(const std::string& path, const RealTrajectory& traj,
              const std::string& name = "x");
ComplexTrajectory load_complex_csv(const std::string& path);
RealTrajectory load_real_csv(const std::string& path);

// Mean unit phasor per sample over per-oscillator phase channels.
std::vector<Complex> order_parameter(const std::vector<std::vector<double>>& phases);

}  // namespace hnf
