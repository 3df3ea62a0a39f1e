#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/splitting.hpp"
#include "frontlab/tridiag.hpp"

namespace frontlab {

enum class LinearBackend {
    kernel,  // exact sampled-Gaussian propagator (default)
    cn       // Crank-Nicolson with centered advection, kept for comparison
};

struct Solver1DConfig {
    Grid1D grid;
    double dt = 0.02;
    double t0 = 1.0;
    Frame frame = Frame::moving;
    double bc_left = 1.0;
    double bc_right = 0.0;
    LinearBackend backend = LinearBackend::kernel;
};

namespace detail {

inline void linear_substep_kernel_1d(std::vector<double>& u, double t,
                                     const Solver1DConfig& cfg, StepKernel& K,
                                     std::vector<double>& pad, std::vector<double>& out) {
    const double h = cfg.grid.h();
    const double delta =
        (cfg.frame == Frame::moving) ? moving_frame_shift(t, cfg.dt) : 0.0;
    const int R = StepKernel::required_radius(cfg.dt, h);
    K.build(cfg.dt, h, delta, R);
    const std::size_t n = u.size();
    const std::size_t pad_n = n + 2 * static_cast<std::size_t>(R);
    pad.resize(pad_n);
    out.resize(n);
    fill_pad_dirichlet(u.data(), n, cfg.bc_left, cfg.bc_right,
                       K.off - static_cast<long>(R), pad.data(), pad_n);
    convolve_line(pad.data(), out.data(), n, K.w);
    u.swap(out);
}

inline void linear_substep_cn_1d(std::vector<double>& u, double t,
                                 const Solver1DConfig& cfg, TridiagWorkspace& ws,
                                 std::vector<double>& lo, std::vector<double>& di,
                                 std::vector<double>& up, std::vector<double>& rhs) {
    const double h = cfg.grid.h();
    if (cfg.frame == Frame::moving && cfg.dt > h)
        throw CFLViolation("step_1d: advective safeguard dt <= h violated");
    const double c = (cfg.frame == Frame::moving) ? 2.0 - 3.0 / (2.0 * (t + 0.5 * cfg.dt))
                                                  : 0.0;
    const double al = cfg.dt / (2.0 * h * h);
    const double be = c * cfg.dt / (4.0 * h);
    const std::size_t n = u.size();
    lo.assign(n - 1, -al + be);
    up.assign(n - 1, -al - be);
    di.assign(n, 1.0 + 2.0 * al);
    rhs.resize(n);
    for (std::size_t i = 1; i + 1 < n; ++i)
        rhs[i] = (al - be) * u[i - 1] + (1.0 - 2.0 * al) * u[i] + (al + be) * u[i + 1];
    // Dirichlet rows
    di[0] = 1.0;
    up[0] = 0.0;
    rhs[0] = cfg.bc_left;
    di[n - 1] = 1.0;
    lo[n - 2] = 0.0;
    rhs[n - 1] = cfg.bc_right;
    ws.solve(lo.data(), di.data(), up.data(), rhs.data(), n);
    u.swap(rhs);
}

}  // namespace detail

/// Driver holding the reusable buffers for repeated stepping.
class Kpp1D {
  public:
    Kpp1D(Field1D state, Solver1DConfig cfg)
        : state_(std::move(state)), cfg_(std::move(cfg)), t_(cfg_.t0), step_count_(0) {
        if (state_.grid.points() != cfg_.grid.points() || !(state_.grid == cfg_.grid))
            throw GridMismatch("Kpp1D: state grid differs from config grid");
    }

    /// One Strang cycle: half logistic, linear step, half logistic.
    void step() {
        auto& u = state_.values;
        logistic_flow(u.data(), u.size(), 0.5 * cfg_.dt);
        if (cfg_.backend == LinearBackend::kernel)
            detail::linear_substep_kernel_1d(u, t_, cfg_, K_, pad_, out_);
        else
            detail::linear_substep_cn_1d(u, t_, cfg_, ws_, lo_, di_, up_, rhs_);
        logistic_flow(u.data(), u.size(), 0.5 * cfg_.dt);
        clip_unit(u.data(), u.size());
        ++step_count_;
        t_ = cfg_.t0 + static_cast<double>(step_count_) * cfg_.dt;
    }

    double t() const { return t_; }
    const Field1D& state() const { return state_; }
    Field1D& state() { return state_; }
    const Solver1DConfig& config() const { return cfg_; }

  private:
    Field1D state_;
    Solver1DConfig cfg_;
    double t_;
    std::size_t step_count_;
    StepKernel K_;
    TridiagWorkspace ws_;
    std::vector<double> pad_, out_, lo_, di_, up_, rhs_;
};

/// Single Strang step as a pure function (copies the field).
inline Field1D step_1d(const Field1D& state, double t, const Solver1DConfig& cfg) {
    Solver1DConfig c = cfg;
    c.t0 = t;
    Kpp1D drv(state, c);
    drv.step();
    return drv.state();
}

/// Checkpoint times: log-spaced with `per_decade` points per decade plus any
/// required times, all snapped to the step lattice t0 + k*dt.
inline std::vector<double> checkpoint_schedule(double t0, double t_end, double dt,
                                               int per_decade = 32,
                                               const std::vector<double>& required = {}) {
    std::set<long> ks;
    double lt = std::log10(std::max(t0, 1.0) + dt);
    const double lend = std::log10(t_end);
    while (lt <= lend + 1e-12) {
        double t = std::pow(10.0, lt);
        long k = std::llround((t - t0) / dt);
        if (k > 0) ks.insert(k);
        lt += 1.0 / per_decade;
    }
    for (double t : required) {
        long k = std::llround((t - t0) / dt);
        if (k > 0) ks.insert(k);
    }
    ks.insert(std::llround((t_end - t0) / dt));
    std::vector<double> out;
    for (long k : ks) {
        double t = t0 + static_cast<double>(k) * dt;
        if (t <= t_end + 0.5 * dt) out.push_back(t);
    }
    return out;
}

using Observer1D = std::function<void(double t, const Field1D&)>;

/// Integrate to t_end, invoking the observer at every checkpoint.
inline void run_1d(const Field1D& u0, const Solver1DConfig& cfg, double t_end,
                   const std::vector<double>& checkpoints, const Observer1D& observer) {
    Kpp1D drv(u0, cfg);
    std::size_t ci = 0;
    while (ci < checkpoints.size() && checkpoints[ci] <= cfg.t0 + 1e-12) ++ci;
    const auto total = static_cast<std::size_t>(std::llround((t_end - cfg.t0) / cfg.dt));
    for (std::size_t k = 0; k < total; ++k) {
        drv.step();
        while (ci < checkpoints.size() && drv.t() >= checkpoints[ci] - 1e-9) {
            observer(drv.t(), drv.state());
            ++ci;
        }
    }
}

}  // namespace frontlab
