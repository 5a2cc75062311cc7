#include <doctest.h>

#include <numbers>
#include <random>

#include "hnf/conjugacy.hpp"
#include "hnf/integrate_fire.hpp"
#include "hnf/integrators.hpp"
#include "hnf/kuramoto.hpp"
#include "hnf/sweep.hpp"

using namespace hnf;

namespace {

ConjPolynomial coupling_zwbar(bool quadratic) {
    ConjPolynomial h(2);
    Exponents e1(2);
    e1.s[0] = 1;
    e1.t[1] = 1;
    h.add_term(e1, Complex(1.0));
    if (quadratic) {
        Exponents e2(2);
        e2.s[0] = 2;
        e2.t[1] = 1;
        h.add_term(e2, Complex(1.0));
    }
    return h;
}

NetworkSystem ring_sn5() {
    NetworkSystem sys;
    sys.n = 4;
    sys.A = {{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}};
    sys.lambda = 0.15;
    sys.omega = {1.01, 2.5, 1.5, 2.49};
    sys.beta.assign(4, Complex(-1.0));
    sys.h = coupling_zwbar(true);
    sys.alpha = 0.18;
    return sys;
}

IFConfig if_sn9(double K) {
    IFConfig cfg;
    cfg.F = {4.95, 1.955, 3.177, 1.97};
    cfg.K = K;
    cfg.tau = K == 0.0 ? 0.0 : 1.65;
    cfg.adjacency = {{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}};
    return cfg;
}

}  // namespace

TEST_CASE("uncoupled Stuart-Landau relaxes to the sqrt(lambda) circle") {
    auto sys = ring_sn5();
    sys.alpha = 0.0;
    std::vector<Complex> z0(4, Complex(0.05, 0.02));
    const auto traj = integrate_network(sys, z0, 200.0, 0.01, 100);
    for (int k = 0; k < 4; ++k) {
        const double rT = std::abs(traj.channels[k].back());
        CHECK(rT == doctest::Approx(std::sqrt(0.15)).epsilon(1e-6));
    }
}

TEST_CASE("fixed-step integrator is 4th order") {
    auto sys = ring_sn5();
    std::vector<Complex> z0;
    for (int k = 0; k < 4; ++k) z0.push_back(std::polar(0.3, 0.9 * k));
    const double T = 10.0;
    auto ref = integrate_network(sys, z0, T, 0.04 / 8.0, 8 * 64);
    std::vector<double> dts{0.04, 0.02, 0.01}, errs;
    for (double dt : dts) {
        auto traj = integrate_network(sys, z0, T, dt, std::lround(0.04 * 64 / dt));
        double err = 0.0;
        for (int k = 0; k < 4; ++k)
            err = std::max(err, std::abs(traj.channels[k].back() - ref.channels[k].back()));
        errs.push_back(err);
    }
    const double slope01 = std::log2(errs[0] / errs[1]);
    const double slope12 = std::log2(errs[1] / errs[2]);
    CHECK(slope01 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(slope12 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("determinism: identical inputs give identical trajectories") {
    auto sys = ring_sn5();
    std::vector<Complex> z0;
    for (int k = 0; k < 4; ++k) z0.push_back(std::polar(0.3, 0.9 * k));
    const auto a = integrate_network(sys, z0, 50.0, 0.01, 10);
    const auto b = integrate_network(sys, z0, 50.0, 0.01, 10);
    CHECK(a.channels == b.channels);

    EnsembleConfig ens;
    ens.M = 50;
    ens.Omega = {2, 3, 4, 1};
    ens.sigma.assign(4, 0.48);
    ens.adjacency = ring_sn5().A;
    ens.seed = 42;
    const auto ma = integrate_microscopic(ens, 5.0, 0.01, 10);
    const auto mb = integrate_microscopic(ens, 5.0, 0.01, 10);
    CHECK(ma.channels == mb.channels);
}

TEST_CASE("divergence raises with a time stamp") {
    NetworkSystem sys = ring_sn5();
    sys.beta.assign(4, Complex(1.0));  // anti-damped cubic blows up
    std::vector<Complex> z0(4, Complex(1.0, 0.0));
    CHECK_THROWS_AS(integrate_network(sys, z0, 100.0, 0.01), DivergenceError);
}

TEST_CASE("adaptive integrator respects its tolerance") {
    auto sys = ring_sn5();
    const auto hn = algorithm1(sys, 0.1);
    const auto pm = polar_reduce(hn, sys, sys.lambda, 0.1);
    std::vector<double> th0{0.1, 0.2, 0.3, 0.4};
    const double T = 200.0;
    const auto adaptive = integrate_phase_model(pm, th0, T, 0.5, 1e-10);
    const auto fixed = integrate_rk4(phase_model_field(pm), th0, T, 0.5 / 128.0, 128);
    REQUIRE(adaptive.samples() == fixed.samples());
    double err = 0.0;
    for (int k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < adaptive.samples(); ++i)
            err = std::max(err, std::abs(adaptive.channels[k][i] - fixed.channels[k][i]));
    CHECK(err < 1e-6);

    // zero coupling: exact linear growth
    PhaseModel bare;
    bare.n = 2;
    bare.Omega = {1.3, 2.7};
    const auto lin =
        integrate_phase_model(bare, std::vector<double>{0.0, 1.0}, 100.0, 1.0, 1e-10);
    CHECK(lin.channels[0].back() == doctest::Approx(130.0).epsilon(1e-9));
    CHECK(lin.channels[1].back() == doctest::Approx(1.0 + 270.0).epsilon(1e-9));
}

TEST_CASE("conjugacy deviation scales like alpha^2") {
    auto sys = ring_sn5();
    sys.alpha = 0.18;
    const double dev_full = conjugacy_deviation(sys, 500.0, 0.01);
    sys.alpha = 0.09;
    const double dev_half = conjugacy_deviation(sys, 500.0, 0.01);
    const double factor = dev_full / dev_half;
    CHECK(factor >= 3.4);
    CHECK(factor <= 4.6);
}

TEST_CASE("order parameter") {
    std::vector<std::vector<double>> same(7, std::vector<double>(3, 1.234));
    for (auto z : order_parameter(same)) CHECK(std::abs(z) == doctest::Approx(1.0));

    // uniform grid of M phases sums to zero
    const int M = 12;
    std::vector<std::vector<double>> grid;
    for (int m = 0; m < M; ++m) grid.push_back({2.0 * std::numbers::pi * m / M});
    CHECK(std::abs(order_parameter(grid)[0]) < 1e-12);

    // random uniform phases: finite-size modulus stays small
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
        std::vector<std::vector<double>> rnd;
        for (int m = 0; m < 5000; ++m) rnd.push_back({u(rng)});
        worst = std::max(worst, std::abs(order_parameter(rnd)[0]));
    }
    CHECK(worst < 0.05);

    CHECK_THROWS_AS(order_parameter({}), std::invalid_argument);
}

TEST_CASE("microscopic Kuramoto: full sync and the OA fixed point") {
    EnsembleConfig ens;
    ens.M = 800;
    ens.Omega = {2, 3, 4, 1};
    ens.sigma.assign(4, 1e-4);  // nearly identical oscillators
    ens.mu = 0.5;
    ens.alpha = 0.0;
    ens.adjacency = ring_sn5().A;
    ens.seed = 7;
    const auto sync = integrate_microscopic(ens, 60.0, 0.02, 100);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(sync.channels[k].back()) > 0.97);

    // mu = 0.5, sigma = 0.48: |z| settles near sqrt((mu - sigma)/mu) = 0.2
    ens.sigma.assign(4, 0.48);
    ens.M = 2000;
    const auto traj = integrate_microscopic(ens, 400.0, 0.02, 100, 200.0);
    for (int k = 0; k < 4; ++k) {
        double mean = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = traj.transient_cut; i < traj.samples(); ++i, ++cnt)
            mean += std::abs(traj.channels[k][i]);
        mean /= static_cast<double>(cnt);
        CHECK(mean == doctest::Approx(0.2).epsilon(0.25));
    }
}

TEST_CASE("integrate-and-fire: free frequencies follow the rescalers") {
    auto cfg = if_sn9(0.0);
    std::vector<double> v0{0.5, 0.62, 0.74, 0.86};
    const auto traj = integrate_if_ring(cfg, v0, 600.0, 0.01, 1, 50.0);

    std::vector<double> freq(4, 0.0);
    for (int k = 0; k < 4; ++k) {
        int crossings = 0;
        for (std::size_t i = traj.transient_cut + 1; i < traj.samples(); ++i)
            if (traj.channels[k][i - 1] < 0.65 && traj.channels[k][i] >= 0.65) ++crossings;
        freq[k] = crossings / (600.0 - 50.0);
    }
    CHECK(freq[1] / freq[0] == doctest::Approx(2.5).epsilon(0.05));
    CHECK(freq[2] / freq[0] == doctest::Approx(1.5).epsilon(0.05));
    CHECK(freq[3] / freq[0] == doctest::Approx(2.5).epsilon(0.05));

    // bounded invariant region
    for (int k = 0; k < 4; ++k)
        for (double v : traj.channels[k]) {
            CHECK(v > 0.0);
            CHECK(v < 1.05);
        }
}

TEST_CASE("integrate-and-fire: larger B shortens the decay (sawtooth limit)") {
    std::vector<double> v0{0.5, 0.62, 0.74, 0.86};
    // dt must resolve the decay branch (time constant F/B) so the
    // sample-resolution switching does not overshoot the lower threshold
    double prev_period = 1e9;
    for (double B : {3.333, 10.0, 100.0}) {
        auto cfg = if_sn9(0.0);
        cfg.B = B;
        const auto traj = integrate_if_ring(cfg, v0, 200.0, 0.002);
        int crossings = 0;
        for (std::size_t i = 1; i < traj.samples(); ++i)
            if (traj.channels[0][i - 1] < 0.65 && traj.channels[0][i] >= 0.65) ++crossings;
        const double period = 200.0 / std::max(1, crossings);
        CHECK(period < prev_period);
        prev_period = period;
    }
}

TEST_CASE("integrate-and-fire config validation") {
    auto cfg = if_sn9(0.234);
    std::vector<double> v0{0.5, 0.62, 0.74, 0.86};
    CHECK_THROWS_AS(integrate_if_ring(cfg, v0, 10.0, 0.013), std::invalid_argument);
    cfg.A_thresh = 1.5;
    CHECK_THROWS_AS(integrate_if_ring(cfg, v0, 10.0, 0.01), std::invalid_argument);
}

TEST_CASE("tongue sweep on a coarse grid") {
    NetworkSystem tmpl;
    tmpl.n = 4;
    tmpl.A = {{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}};
    tmpl.lambda = 1.0;
    tmpl.omega = {1.0, 1.0, 5.0, 6.0};
    tmpl.beta.assign(4, Complex(-1.0));
    tmpl.h = coupling_zwbar(false);
    tmpl.alpha = 0.0;

    std::vector<double> deltas{0.0, 0.02, 0.04};
    std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    const auto grid = sweep_sync_tongue(tmpl, deltas, alphas, 4000.0, 0.01, 500.0, 2);

    // zero detuning locks for moderate coupling (the plateau can sit at a
    // nonzero phase offset, so "small" means small against the drift scale)
    CHECK(grid.E[0][3] < 3.2);
    CHECK(grid.E[1][0] > 20.0);          // free drift ~ delta T / 2
    CHECK(grid.E[2][0] > grid.E[1][0]);  // and grows with |delta|

    const auto fit = fit_tongue_boundary(grid, 0.01, 0.2, 0.1);
    REQUIRE(fit.delta.size() == 2);
    CHECK(fit.alpha_c[1] >= fit.alpha_c[0]);
}
