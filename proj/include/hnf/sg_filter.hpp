#pragma once

#include <span>
#include <vector>

namespace hnf {

// Savitzky-Golay smoothing: local least-squares polynomial of degree
// poly_order over an odd window, exact on polynomials of that degree.
// Boundaries are handled by shrinking the window symmetrically.
std::vector<double> savitzky_golay(std::span<const double> y, int window_samples,
                                   int poly_order);

// Central-point filter weights for an interior window; their squared sum is
// the white-noise variance gain.
std::vector<double> savitzky_golay_weights(int window_samples, int poly_order);

}  // namespace hnf
