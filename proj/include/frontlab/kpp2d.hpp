#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/kpp1d.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/splitting.hpp"

namespace frontlab {

enum class YBoundary { neumann, periodic };

struct Solver2DConfig {
    Grid2D grid;
    double dt = 0.02;
    double t0 = 1.0;
    YBoundary y_bc = YBoundary::neumann;
    double bc_left = 1.0;   // x Dirichlet far field
    double bc_right = 0.0;
    unsigned threads = 0;   // 0 = default_threads()
    // The y-propagator is applied every y_every steps with variance
    // 2*y_every*dt. A sampled Gaussian only carries the exact heat symbol
    // when its variance resolves the grid ((2 pi/h)^2 * var/2 >~ 12), so
    // coarse y-grids batch several steps into one wider kernel.
    // 0 = choose automatically from dt and h_y.
    unsigned y_every = 0;

    unsigned effective_y_every() const {
        if (y_every) return y_every;
        const double two_pi = 6.283185307179586;
        double per_step = std::pow(two_pi / grid.gy.h(), 2) * dt;
        unsigned k = static_cast<unsigned>(std::ceil(12.0 / per_step));
        return k < 1 ? 1 : k;
    }
};

/// 2D stepper in the moving frame. The Strang cycle is
///   half logistic -> exact x-propagator (diffusion + frame advection)
///   -> exact y-propagator (diffusion) -> half logistic.
/// Both linear substeps are sampled-Gaussian convolutions, so the 2D linear
/// step is their exact tensor product (no direction-splitting error), every
/// output value is a convex combination of old values (range- and
/// monotonicity-preserving), and results are bitwise independent of the
/// thread partition.
class Kpp2D {
  public:
    Kpp2D(Field2D state, Solver2DConfig cfg)
        : state_(std::move(state)), buf_(state_), cfg_(std::move(cfg)), t_(cfg_.t0) {
        if (!(state_.grid == cfg_.grid)) throw GridMismatch("Kpp2D: grid mismatch");
        if (state_.frame != Frame::moving)
            throw ConfigError("Kpp2D: state must be in the moving frame");
        nthreads_ = cfg_.threads ? cfg_.threads : default_threads();
    }

    void step() {
        const std::size_t nx = state_.nx(), ny = state_.ny();
        const double hx = cfg_.grid.gx.h(), hy = cfg_.grid.gy.h();
        const double dt = cfg_.dt;
        const unsigned ky = cfg_.effective_y_every();
        const bool do_y = ((step_count_ + 1) % ky == 0);

        const int Rx = StepKernel::required_radius(dt, hx, 22.0);
        Kx_.build(dt, hx, moving_frame_shift(t_, dt), Rx);
        int Ry = 0;
        if (do_y) {
            const double vdt = dt * static_cast<double>(ky);
            Ry = StepKernel::required_radius(vdt, hy, 22.0);
            Ky_.build(vdt, hy, 0.0, Ry);
        }

        // half logistic + x-propagator, row by row
        parallel_for(ny, nthreads_, [&](std::size_t lo, std::size_t hi) {
            std::vector<double> pad(nx + 2 * static_cast<std::size_t>(Rx));
            for (std::size_t iy = lo; iy < hi; ++iy) {
                double* r = state_.row(iy);
                logistic_flow(r, nx, 0.5 * dt);
                fill_pad_dirichlet(r, nx, cfg_.bc_left, cfg_.bc_right,
                                   Kx_.off - static_cast<long>(Rx), pad.data(),
                                   pad.size());
                convolve_line(pad.data(), buf_.row(iy), nx, Kx_.w);
            }
        });

        // y-propagator (batched): out-row = sum over taps of in-rows
        // (reflected/wrapped), then second half logistic
        parallel_for(ny, nthreads_, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t iy = lo; iy < hi; ++iy) {
                double* out = state_.row(iy);
                if (do_y) {
                    for (std::size_t i = 0; i < nx; ++i) out[i] = 0.0;
                    for (int j = -Ry; j <= Ry; ++j) {
                        long src = static_cast<long>(iy) + j;
                        src = map_row(src, static_cast<long>(ny));
                        const double w = Ky_.w[static_cast<std::size_t>(j + Ry)];
                        const double* in = buf_.row(static_cast<std::size_t>(src));
                        for (std::size_t i = 0; i < nx; ++i) out[i] += w * in[i];
                    }
                } else {
                    const double* in = buf_.row(iy);
                    for (std::size_t i = 0; i < nx; ++i) out[i] = in[i];
                }
                logistic_flow(out, nx, 0.5 * dt);
                clip_unit(out, nx);
            }
        });

        ++step_count_;
        t_ = cfg_.t0 + static_cast<double>(step_count_) * dt;
    }

    double t() const { return t_; }
    const Field2D& state() const { return state_; }
    const Solver2DConfig& config() const { return cfg_; }

  private:
    long map_row(long i, long n) const {
        if (cfg_.y_bc == YBoundary::periodic) {
            // the last grid point duplicates the first, so the index period is n-1
            long p = n - 1;
            long m = i % p;
            return m < 0 ? m + p : m;
        }
        // zero-flux: reflect about the walls as often as needed
        while (i < 0 || i >= n) {
            if (i < 0) i = -i;
            if (i >= n) i = 2 * (n - 1) - i;
        }
        return i;
    }

    Field2D state_, buf_;
    Solver2DConfig cfg_;
    double t_;
    std::size_t step_count_ = 0;
    unsigned nthreads_ = 1;
    StepKernel Kx_, Ky_;
};

inline Field2D step_2d(const Field2D& state, double t, const Solver2DConfig& cfg) {
    Solver2DConfig c = cfg;
    c.t0 = t;
    Kpp2D drv(state, c);
    drv.step();
    return drv.state();
}

using Observer2D = std::function<void(double t, const Field2D&)>;

/// Observers fire on the first y-complete step at or after each checkpoint
/// (the y-propagator is batched, so intermediate steps carry pending
/// y-diffusion).
inline void run_2d(const Field2D& u0, const Solver2DConfig& cfg, double t_end,
                   const std::vector<double>& checkpoints, const Observer2D& observer) {
    Kpp2D drv(u0, cfg);
    const unsigned ky = cfg.effective_y_every();
    std::size_t ci = 0;
    while (ci < checkpoints.size() && checkpoints[ci] <= cfg.t0 + 1e-12) ++ci;
    const auto total = static_cast<std::size_t>(std::llround((t_end - cfg.t0) / cfg.dt));
    for (std::size_t k = 0; k < total; ++k) {
        drv.step();
        if ((k + 1) % ky != 0 && k + 1 != total) continue;
        while (ci < checkpoints.size() && drv.t() >= checkpoints[ci] - 1e-9) {
            observer(drv.t(), drv.state());
            ++ci;
        }
    }
}

}  // namespace frontlab
