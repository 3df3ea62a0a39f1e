#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "frontlab/kpp1d.hpp"
#include "frontlab/kpp2d.hpp"

using namespace frontlab;

namespace {

Grid2D small_grid() {
    return Grid2D{Grid1D(-20.0, 20.0, 400), Grid1D(0.0, 10.0, 40)};
}

Field2D heaviside2d(const Grid2D& g) {
    Field2D u(g, Frame::moving);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix)
            u.at(ix, iy) = (g.gx.point(ix) + 2.0 <= 0.0) ? 1.0 : 0.0;
    return u;
}

}  // namespace

TEST_CASE("kpp2d: y-independent data reduce exactly to the 1D scheme") {
    auto g = small_grid();
    auto u = heaviside2d(g);
    Solver2DConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.02;
    Kpp2D drv(u, cfg);

    Solver1DConfig c1;
    c1.grid = g.gx;
    c1.dt = 0.02;
    c1.frame = Frame::moving;
    Field1D u1(g.gx, Frame::moving);
    for (std::size_t i = 0; i < u1.size(); ++i) u1.values[i] = u.at(i, 0);
    Kpp1D d1(u1, c1);

    for (int k = 0; k < 100; ++k) {
        drv.step();
        d1.step();
    }
    double row_dev = 0.0, vs1d = 0.0;
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix) {
            row_dev = std::max(row_dev,
                               std::abs(drv.state().at(ix, iy) - drv.state().at(ix, 0)));
            vs1d = std::max(vs1d,
                            std::abs(drv.state().at(ix, iy) - d1.state().values[ix]));
        }
    REQUIRE(row_dev <= 1e-12);
    REQUIRE(vs1d <= 1e-10);
}

TEST_CASE("kpp2d: u = 1 equilibrium in the interior") {
    auto g = small_grid();
    Field2D u(g, Frame::moving);
    for (auto& v : u.values) v = 1.0;
    Solver2DConfig cfg;
    cfg.grid = g;
    Kpp2D drv(u, cfg);
    for (int k = 0; k < 10; ++k) drv.step();
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix) {
            if (g.gx.point(ix) > 15.0) continue;
            REQUIRE(std::abs(drv.state().at(ix, iy) - 1.0) <= 1e-12);
        }
}

TEST_CASE("kpp2d: periodic data stay periodic with periodic closure") {
    Grid2D g{Grid1D(-20.0, 20.0, 400), Grid1D(0.0, 20.0, 80)};
    Field2D u(g, Frame::moving);
    const double P = 10.0;  // two periods across the domain
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix) {
            double x = g.gx.point(ix), y = g.gy.point(iy);
            double off = 0.7 * std::sin(2.0 * 3.14159265358979323846 * y / P);
            u.at(ix, iy) = 1.0 / (1.0 + std::exp(2.0 * (x + 2.0 + off)));
        }
    Solver2DConfig cfg;
    cfg.grid = g;
    cfg.y_bc = YBoundary::periodic;
    Kpp2D drv(u, cfg);
    for (int k = 0; k < 50; ++k) drv.step();
    // period P = 40 grid rows; the grid covers exactly two periods (row 80 = row 0)
    double worst = 0.0;
    for (std::size_t iy = 0; iy + 40 < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix)
            worst = std::max(worst,
                             std::abs(drv.state().at(ix, iy) - drv.state().at(ix, iy + 40)));
    REQUIRE(worst <= 1e-12);
}

TEST_CASE("kpp2d: bitwise determinism across thread counts") {
    auto g = small_grid();
    auto u = heaviside2d(g);
    std::vector<std::vector<double>> results;
    for (unsigned threads : {1u, 2u, 3u}) {
        Solver2DConfig cfg;
        cfg.grid = g;
        cfg.threads = threads;
        Kpp2D drv(u, cfg);
        for (int k = 0; k < 60; ++k) drv.step();
        results.push_back(drv.state().values);
    }
    REQUIRE(std::memcmp(results[0].data(), results[1].data(),
                        results[0].size() * sizeof(double)) == 0);
    REQUIRE(std::memcmp(results[0].data(), results[2].data(),
                        results[0].size() * sizeof(double)) == 0);
}

TEST_CASE("kpp2d: zero-flux closure preserves y-symmetric data") {
    Grid2D g{Grid1D(-20.0, 20.0, 400), Grid1D(-10.0, 10.0, 80)};
    Field2D u(g, Frame::moving);
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix) {
            double x = g.gx.point(ix), y = g.gy.point(iy);
            u.at(ix, iy) = 1.0 / (1.0 + std::exp(2.0 * (x + 2.0 + 0.5 * std::cos(0.3 * y))));
        }
    Solver2DConfig cfg;
    cfg.grid = g;
    Kpp2D drv(u, cfg);
    for (int k = 0; k < 50; ++k) drv.step();
    // even initial data stay even: mirror row iy <-> ny-1-iy
    double worst = 0.0;
    for (std::size_t iy = 0; iy < u.ny(); ++iy)
        for (std::size_t ix = 0; ix < u.nx(); ++ix)
            worst = std::max(worst, std::abs(drv.state().at(ix, iy) -
                                             drv.state().at(ix, u.ny() - 1 - iy)));
    REQUIRE(worst <= 1e-13);
}
