#pragma once

#include "hnf/integrators.hpp"
#include "hnf/normal_form.hpp"

namespace hnf {

// Numeric application of the two-step change of coordinates
// w = z - alpha P(z), u = w - alpha Q(w).
struct CoordinateTransform {
    std::vector<ConjPolynomial> P, Q;
    double alpha = 0.0;

    std::vector<Complex> apply(std::span<const Complex> z) const;
};

CoordinateTransform build_transform(const NetworkSystem& sys);

// Max-norm deviation over the window between (i) the transform applied to
// the original trajectory and (ii) the resonant normal form integrated from
// the transformed initial state. settle is integrated first and discarded.
double conjugacy_deviation(const NetworkSystem& sys, double T, double dt,
                           double settle = 200.0, int sample_every = 10);

}  // namespace hnf
