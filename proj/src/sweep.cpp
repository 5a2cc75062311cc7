#include "hnf/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "hnf/integrators.hpp"

namespace hnf {

int resolve_thread_count(int requested) {
    int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    if (const char* env = std::getenv("HNF_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) t = std::min(t, cap);
    }
    return t;
}

namespace {

double wrap_pi(double x) {
    while (x > std::numbers::pi) x -= 2.0 * std::numbers::pi;
    while (x < -std::numbers::pi) x += 2.0 * std::numbers::pi;
    return x;
}

// Integrate one cell and accumulate E on the fly: no trajectory storage.
double sync_error(const NetworkSystem& sys, double T, double dt, double transient) {
    const CompiledField field(sys);
    const int n = sys.n;
    std::vector<Complex> z(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(0.5, 0.7 * (k + 1));

    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    const auto skip = static_cast<std::size_t>(std::llround(transient / dt));

    double th1 = std::arg(z[0]), th2 = std::arg(z[1]);
    double a1 = th1, a2 = th2;
    double acc = 0.0;
    std::size_t count = 0;
    bool rebased = false;

    for (std::size_t i = 0; i < steps; ++i) {
        field.eval(z.data(), k1.data());
        for (int k = 0; k < n; ++k) tmp[k] = z[k] + 0.5 * dt * k1[k];
        field.eval(tmp.data(), k2.data());
        for (int k = 0; k < n; ++k) tmp[k] = z[k] + 0.5 * dt * k2[k];
        field.eval(tmp.data(), k3.data());
        for (int k = 0; k < n; ++k) tmp[k] = z[k] + dt * k3[k];
        field.eval(tmp.data(), k4.data());
        for (int k = 0; k < n; ++k)
            z[k] += dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        if (!std::isfinite(z[0].real()) || !std::isfinite(z[1].real()))
            throw DivergenceError(static_cast<double>(i + 1) * dt);

        const double b1 = std::arg(z[0]), b2 = std::arg(z[1]);
        th1 += wrap_pi(b1 - a1);
        th2 += wrap_pi(b2 - a2);
        a1 = b1;
        a2 = b2;
        if (i >= skip) {
            if (!rebased) {
                // phases unwrap from the first post-transient sample
                const double off = th1 - th2 - wrap_pi(th1 - th2);
                th1 -= off;
                rebased = true;
            }
            acc += std::abs(th1 - th2);
            ++count;
        }
    }
    return count > 0 ? acc / static_cast<double>(count) : 0.0;
}

}  // namespace

TongueGrid sweep_sync_tongue(const NetworkSystem& tmpl, std::span<const double> delta_grid,
                             std::span<const double> alpha_grid, double T, double dt,
                             double transient, int threads) {
    tmpl.validate();
    TongueGrid grid;
    grid.delta.assign(delta_grid.begin(), delta_grid.end());
    grid.alpha.assign(alpha_grid.begin(), alpha_grid.end());
    grid.E.assign(grid.delta.size(), std::vector<double>(grid.alpha.size(), 0.0));

    const std::size_t cells = grid.delta.size() * grid.alpha.size();
    std::atomic<std::size_t> next{0};
    const int nthreads = resolve_thread_count(threads);

    auto worker = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= cells) return;
            const std::size_t i = c / grid.alpha.size();
            const std::size_t j = c % grid.alpha.size();
            NetworkSystem sys = tmpl;
            sys.omega[0] = sys.omega[1] + grid.delta[i];
            sys.alpha = grid.alpha[j];
            grid.E[i][j] = sync_error(sys, T, dt, transient);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return grid;
}

TongueFit fit_tongue_boundary(const TongueGrid& grid, double delta_min, double delta_max,
                              double rel_cut) {
    TongueFit fit;
    for (std::size_t i = 0; i < grid.delta.size(); ++i) {
        const double d = grid.delta[i];
        if (d < delta_min || d > delta_max) continue;
        // E at alpha = 0 is the free-drift reference
        double efree = -1.0;
        for (std::size_t j = 0; j < grid.alpha.size(); ++j)
            if (grid.alpha[j] == 0.0) efree = grid.E[i][j];
        if (efree <= 0.0) continue;
        for (std::size_t j = 0; j < grid.alpha.size(); ++j) {
            if (grid.alpha[j] == 0.0) continue;
            if (grid.E[i][j] < rel_cut * efree) {
                fit.delta.push_back(d);
                fit.alpha_c.push_back(grid.alpha[j]);
                break;
            }
        }
    }
    if (fit.delta.size() < 3) return fit;

    // alpha_c = c sqrt(delta): least squares through the origin, R^2 on alpha_c
    double sxy = 0.0, sxx = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < fit.delta.size(); ++i) {
        const double x = std::sqrt(fit.delta[i]);
        sxy += x * fit.alpha_c[i];
        sxx += x * x;
        mean += fit.alpha_c[i];
    }
    mean /= static_cast<double>(fit.delta.size());
    fit.c = sxy / sxx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < fit.delta.size(); ++i) {
        const double pred = fit.c * std::sqrt(fit.delta[i]);
        ss_res += (fit.alpha_c[i] - pred) * (fit.alpha_c[i] - pred);
        ss_tot += (fit.alpha_c[i] - mean) * (fit.alpha_c[i] - mean);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace hnf
