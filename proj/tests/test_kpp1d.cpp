#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "frontlab/kpp1d.hpp"
#include "frontlab/front.hpp"
#include "frontlab/wave.hpp"

using namespace frontlab;

namespace {

Solver1DConfig moving_cfg(const Grid1D& g, double dt = 0.02) {
    Solver1DConfig c;
    c.grid = g;
    c.dt = dt;
    c.frame = Frame::moving;
    return c;
}

const WaveProfile& wave() {
    static WaveProfile p = compute_wave(40.0, 0.005);
    return p;
}

}  // namespace

TEST_CASE("kpp1d: zero state stays zero away from the left boundary") {
    Grid1D g(-30.0, 30.0, 1200);
    Field1D u(g, Frame::moving);
    Kpp1D drv(u, moving_cfg(g));
    for (int k = 0; k < 10; ++k) drv.step();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (g.point(i) < -25.0) continue;  // Dirichlet-1 influence zone
        REQUIRE(std::abs(drv.state().values[i]) <= 1e-12);
    }
}

TEST_CASE("kpp1d: u = 1 is an interior equilibrium") {
    Grid1D g(-30.0, 30.0, 1200);
    Field1D u(g, Frame::moving);
    for (auto& v : u.values) v = 1.0;
    Kpp1D drv(u, moving_cfg(g));
    for (int k = 0; k < 10; ++k) drv.step();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (g.point(i) > 25.0) continue;  // Dirichlet-0 influence zone
        REQUIRE(std::abs(drv.state().values[i] - 1.0) <= 1e-12);
    }
}

TEST_CASE("kpp1d: Strang splitting is locally third order (Richardson)") {
    Grid1D g(-30.0, 30.0, 1200);
    Field1D u(g, Frame::moving);
    for (std::size_t i = 0; i < u.size(); ++i)
        u.values[i] = 0.5 * (1.0 - std::tanh(0.5 * g.point(i)));

    auto split_diff = [&](double dt) {
        auto cfg1 = moving_cfg(g, dt);
        auto cfg2 = moving_cfg(g, dt / 2.0);
        Kpp1D one(u, cfg1);
        one.step();
        Kpp1D two(u, cfg2);
        two.step();
        two.step();
        double worst = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            worst = std::max(worst,
                             std::abs(one.state().values[i] - two.state().values[i]));
        return worst;
    };
    double d1 = split_diff(0.04);
    double d2 = split_diff(0.02);
    REQUIRE(d1 / d2 == Catch::Approx(8.0).margin(2.5));
}

TEST_CASE("kpp1d: range preservation and x-monotonicity preservation") {
    Grid1D g(-30.0, 30.0, 1200);
    Field1D u(g, Frame::moving);
    for (std::size_t i = 0; i < u.size(); ++i)
        u.values[i] = (g.point(i) + 2.0 <= 0.0) ? 1.0 : 0.0;
    Kpp1D drv(u, moving_cfg(g));
    for (int k = 0; k < 300; ++k) {
        drv.step();
        const auto& v = drv.state().values;
        for (std::size_t i = 0; i < v.size(); ++i) {
            REQUIRE(v[i] >= -1e-12);
            REQUIRE(v[i] <= 1.0 + 1e-12);
            if (i > 0) REQUIRE(v[i] <= v[i - 1] + 1e-10);
        }
    }
}

TEST_CASE("kpp1d: comparison monotonicity for ordered data") {
    Grid1D g(-30.0, 30.0, 1200);
    Field1D ua(g, Frame::moving), ub(g, Frame::moving);
    for (std::size_t i = 0; i < ua.size(); ++i) {
        double x = g.point(i);
        ua.values[i] = (x + 2.0 <= -1.0) ? 1.0 : 0.0;  // lower datum
        ub.values[i] = (x + 2.0 <= 0.0) ? 1.0 : 0.0;   // upper datum
    }
    Kpp1D da(ua, moving_cfg(g)), db(ub, moving_cfg(g));
    for (int k = 0; k < 500; ++k) {
        da.step();
        db.step();
        if (k % 50 != 0) continue;
        for (std::size_t i = 0; i < ua.size(); ++i)
            REQUIRE(da.state().values[i] <= db.state().values[i] + 1e-8);
    }
}

TEST_CASE("kpp1d: CN backend enforces the advective CFL safeguard") {
    Grid1D g(-10.0, 10.0, 400);  // h = 0.05
    Field1D u(g, Frame::moving);
    auto cfg = moving_cfg(g, 0.06);
    cfg.backend = LinearBackend::cn;
    Kpp1D drv(u, cfg);
    REQUIRE_THROWS_AS(drv.step(), CFLViolation);
}

TEST_CASE("kpp1d: lab-frame front speed from the wave datum is ~2") {
    // also an A/B check of the two linear backends' dispersion bias
    Grid1D g(-50.0, 140.0, 3800);  // h = 0.05
    Field1D u(g, Frame::lab);
    const auto& p = wave();
    for (std::size_t i = 0; i < u.size(); ++i)
        u.values[i] = evaluate_shifted(p, g.point(i));

    auto speed = [&](LinearBackend be) {
        Solver1DConfig cfg;
        cfg.grid = g;
        cfg.dt = 0.02;
        cfg.frame = Frame::lab;
        cfg.backend = be;
        Kpp1D drv(u, cfg);
        auto s0 = extract_front_1d(drv.state(), 0.5, p);
        for (int k = 0; k < 2000; ++k) drv.step();  // t: 1 -> 41
        auto s1 = extract_front_1d(drv.state(), 0.5, p);
        REQUIRE(s0.has_value());
        REQUIRE(s1.has_value());
        return (*s1 - *s0) / 40.0;
    };
    double c_kernel = speed(LinearBackend::kernel);
    double c_cn = speed(LinearBackend::cn);
    REQUIRE(std::abs(c_kernel - 2.0) <= 0.05);  // pre-asymptotic tolerance
    REQUIRE(std::abs(c_cn - 2.0) <= 0.05);
    // the exact-symbol propagator has no mesh dispersion at the front decay rate
    REQUIRE(std::abs(c_kernel - 2.0) <= 2e-4);
    REQUIRE(std::abs(c_kernel - 2.0) <= std::abs(c_cn - 2.0));
}

TEST_CASE("kpp1d: checkpoint schedule is log-spaced and hits required times") {
    auto cps = checkpoint_schedule(1.0, 100.0, 0.02, 32, {50.0});
    REQUIRE(!cps.empty());
    REQUIRE(cps.back() == Catch::Approx(100.0).margin(1e-9));
    bool has50 = false;
    for (double t : cps)
        if (std::abs(t - 50.0) < 1e-9) has50 = true;
    REQUIRE(has50);
    for (std::size_t i = 1; i < cps.size(); ++i) REQUIRE(cps[i] > cps[i - 1]);
}

TEST_CASE("kpp1d: run_1d invokes observers on the schedule") {
    Grid1D g(-30.0, 30.0, 1200);
    Field1D u(g, Frame::moving);
    for (std::size_t i = 0; i < u.size(); ++i)
        u.values[i] = (g.point(i) + 2.0 <= 0.0) ? 1.0 : 0.0;
    auto cfg = moving_cfg(g);
    auto cps = checkpoint_schedule(1.0, 5.0, cfg.dt, 32, {});
    std::vector<double> seen;
    run_1d(u, cfg, 5.0, cps, [&](double t, const Field1D&) { seen.push_back(t); });
    REQUIRE(seen.size() == cps.size());
    for (std::size_t i = 0; i < seen.size(); ++i)
        REQUIRE(seen[i] == Catch::Approx(cps[i]).margin(1e-9));
}
