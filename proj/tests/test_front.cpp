#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "frontlab/front.hpp"
#include "frontlab/wave.hpp"

using namespace frontlab;

namespace {
const WaveProfile& wave() {
    static WaveProfile p = compute_wave(40.0, 0.005);
    return p;
}
}  // namespace

TEST_CASE("extract_front: exact shifted profile reads sigma_inf = s") {
    const auto& p = wave();
    const double s = 1.7;
    Grid2D g{Grid1D(-20.0, 20.0, 20000), Grid1D(0.0, 4.0, 8)};  // h_x = 0.002
    Field2D u(g, Frame::moving);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix)
            u.at(ix, iy) = evaluate_shifted(p, g.gx.point(ix) - s);
    for (double level : {0.5, 0.3, 0.7}) {
        auto row = extract_front(u, level, p);
        for (std::size_t iy = 0; iy < u.ny(); ++iy) {
            REQUIRE(row.present[iy] == 1);
            REQUIRE(std::abs(row.sigma_inf[iy] - s) <= 1e-6);
        }
    }
}

TEST_CASE("extract_front: sharp Heaviside crossing sits at the jump") {
    const auto& p = wave();
    Grid2D g{Grid1D(-20.0, 20.0, 800), Grid1D(0.0, 2.0, 4)};
    Field2D u(g, Frame::moving);
    const double drop = -2.0;
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix)
            u.at(ix, iy) = (g.gx.point(ix) <= drop) ? 1.0 : 0.0;
    auto row = extract_front(u, 0.5, p);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        REQUIRE(std::abs(row.sigma[iy] - drop) <= g.gx.h() + 1e-12);
}

TEST_CASE("extract_front: translation equivariance on the grid") {
    const auto& p = wave();
    Grid2D g{Grid1D(-20.0, 20.0, 800), Grid1D(0.0, 2.0, 4)};
    Field2D u(g, Frame::moving), v(g, Frame::moving);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix) {
            u.at(ix, iy) = evaluate_shifted(p, g.gx.point(ix));
            v.at(ix, iy) = evaluate_shifted(p, g.gx.point(ix) - 5.0);  // shift by 100 cells
        }
    auto ru = extract_front(u, 0.5, p);
    auto rv = extract_front(v, 0.5, p);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        REQUIRE(rv.sigma[iy] - ru.sigma[iy] == Catch::Approx(5.0).margin(1e-12));
}

TEST_CASE("extract_front: NoFront when most rows have no crossing") {
    const auto& p = wave();
    Grid2D g{Grid1D(-20.0, 20.0, 100), Grid1D(0.0, 2.0, 4)};
    Field2D u(g, Frame::moving);  // all zeros
    REQUIRE_THROWS_AS(extract_front(u, 0.5, p), NoFront);
    REQUIRE_THROWS_AS(extract_front(u, 0.01, p), ConfigError);
}

TEST_CASE("fit_bramson: exact model recovery") {
    std::vector<double> ts, sig;
    for (int i = 0; i < 24; ++i) {
        double t = 10.0 * std::pow(10.0, i / 8.0);
        ts.push_back(t);
        sig.push_back(2.0 * t - 1.5 * std::log(t) - 3.0);
    }
    auto f = fit_bramson(ts, sig, 10.0, ts.back(), Frame::lab);
    REQUIRE(std::abs(f.beta + 1.5) <= 1e-9);
    REQUIRE(std::abs(f.x_inf - 3.0) <= 1e-9);
    REQUIRE(f.rms <= 1e-9);
}

TEST_CASE("fit_bramson: seeded noise keeps the slope within 0.01") {
    std::mt19937 rng(4242);
    std::normal_distribution<double> N(0.0, 1e-3);
    std::vector<double> ts, sig;
    for (int i = 0; i < 64; ++i) {
        double t = 10.0 * std::pow(10.0, i / 24.0);
        ts.push_back(t);
        sig.push_back(2.0 * t - 1.5 * std::log(t) - 3.0 + N(rng));
    }
    auto f = fit_bramson(ts, sig, 10.0, ts.back(), Frame::lab);
    REQUIRE(std::abs(f.beta + 1.5) <= 0.01);
}

TEST_CASE("fit_bramson: InsufficientData below 8 points") {
    std::vector<double> ts{1, 2, 3, 4, 5, 6, 7}, sig(7, 0.0);
    REQUIRE_THROWS_AS(fit_bramson(ts, sig, 0.5, 10.0, Frame::moving), InsufficientData);
}

TEST_CASE("shape_error: self-comparison vanishes") {
    const auto& p = wave();
    Grid1D gx(-30.0, 20.0, 1000);
    const double s = 0.8;
    std::vector<double> u(gx.points());
    auto xs = gx.coords();
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = evaluate_shifted(p, xs[i] - s);
    auto e = shape_error_row(xs, u.data(), u.size(), p, s, s, 1000.0);
    REQUIRE(e.sup <= 1e-10);
    REQUIRE(e.weighted <= 1e-10);
}

TEST_CASE("sandwich: degenerate and swapped bounds") {
    Grid2D g{Grid1D(-10.0, 10.0, 200), Grid1D(0.0, 2.0, 4)};
    Field2D u(g, Frame::moving);
    Field1D hi(g.gx, Frame::moving), lo(g.gx, Frame::moving);
    for (std::size_t ix = 0; ix < g.gx.points(); ++ix) {
        double x = g.gx.point(ix);
        hi.values[ix] = 1.0 / (1.0 + std::exp(x));        // upper
        lo.values[ix] = 1.0 / (1.0 + std::exp(x + 1.0));  // lower
    }
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix)
            u.at(ix, iy) = 0.5 * (hi.values[ix] + lo.values[ix]);

    REQUIRE(sandwich_violation(u, hi, lo) <= 0.0);

    // identical bounds equal to the field: degenerate sandwich, violation ~ 0
    Field2D v(g, Frame::moving);
    for (std::size_t iy = 0; iy < v.ny(); ++iy)
        for (std::size_t ix = 0; ix < v.nx(); ++ix) v.at(ix, iy) = hi.values[ix];
    REQUIRE(std::abs(sandwich_violation(v, hi, hi)) <= 1e-10);

    // swapped bounds: violation is about the gap u1 - u2 > 0
    double swapped = sandwich_violation(u, lo, hi);
    double gap = 0.0;
    for (std::size_t ix = 0; ix < g.gx.points(); ++ix)
        gap = std::max(gap, hi.values[ix] - lo.values[ix]);
    REQUIRE(swapped > 0.0);
    REQUIRE(swapped <= gap);
    REQUIRE(swapped >= 0.25 * gap);

    Field1D wrong(Grid1D(-10.0, 10.0, 100), Frame::moving);
    REQUIRE_THROWS_AS(sandwich_violation(u, wrong, lo), GridMismatch);
}
