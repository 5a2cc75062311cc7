#include "hnf/sg_filter.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace hnf {

namespace {

// weights of the fitted value at offset 0 for a window [-half, half]
std::vector<double> center_weights(int half, int poly_order) {
    const int w = 2 * half + 1;
    Eigen::MatrixXd V(w, poly_order + 1);
    for (int i = 0; i < w; ++i) {
        double x = 1.0;
        for (int p = 0; p <= poly_order; ++p) {
            V(i, p) = x;
            x *= static_cast<double>(i - half);
        }
    }
    // value at x = 0 is the constant coefficient of the local fit
    const Eigen::MatrixXd pinv = (V.transpose() * V).ldlt().solve(V.transpose());
    std::vector<double> weights(w);
    for (int i = 0; i < w; ++i) weights[i] = pinv(0, i);
    return weights;
}

}  // namespace

std::vector<double> savitzky_golay_weights(int window_samples, int poly_order) {
    if (window_samples % 2 == 0 || window_samples <= poly_order)
        throw std::invalid_argument("savitzky_golay: window must be odd and > poly_order");
    return center_weights(window_samples / 2, poly_order);
}

std::vector<double> savitzky_golay(std::span<const double> y, int window_samples,
                                   int poly_order) {
    if (window_samples % 2 == 0 || window_samples <= poly_order)
        throw std::invalid_argument("savitzky_golay: window must be odd and > poly_order");
    const int half = window_samples / 2;
    const int m = static_cast<int>(y.size());
    std::vector<double> out(m, 0.0);

    std::vector<std::vector<double>> cache(half + 1);
    cache[half] = center_weights(half, poly_order);

    for (int i = 0; i < m; ++i) {
        int h = std::min({half, i, m - 1 - i});
        if (2 * h + 1 <= poly_order) h = std::min(i, m - 1 - i);  // tiny edge windows
        if (2 * h + 1 <= poly_order) {
            out[i] = y[i];
            continue;
        }
        if (cache[h].empty()) cache[h] = center_weights(h, poly_order);
        const auto& wts = cache[h];
        double acc = 0.0;
        for (int j = -h; j <= h; ++j) acc += wts[j + h] * y[i + j];
        out[i] = acc;
    }
    return out;
}

}  // namespace hnf
