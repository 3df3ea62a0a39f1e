#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/interp.hpp"
#include "frontlab/wave.hpp"

namespace frontlab {

/// Level-set trace: sigma is the moving-frame crossing coordinate of the
/// level, sigma_inf = sigma - U^{-1}(level) is the same quantity anchored so
/// that a pure translate U(x - s) reads sigma_inf = s at any level.
struct FrontRow {
    std::vector<double> ys;
    std::vector<double> sigma;
    std::vector<double> sigma_inf;
    std::vector<char> present;
    std::size_t n_present = 0;
};

struct FrontTrace {
    double level = 0.5;
    std::vector<double> times;
    std::vector<double> ys;
    std::vector<FrontRow> rows;  // one per checkpoint

    void push(double t, FrontRow row) {
        times.push_back(t);
        if (ys.empty()) ys = row.ys;
        rows.push_back(std::move(row));
    }
    /// Series sigma_inf(t, y index iy).
    std::vector<double> series_at(std::size_t iy) const {
        std::vector<double> out(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) out[k] = rows[k].sigma_inf[iy];
        return out;
    }
};

inline FrontRow extract_front(const Field2D& state, double level,
                              const WaveProfile& profile) {
    if (!(level > 0.05 && level < 0.95))
        throw ConfigError("extract_front: level outside (0.05, 0.95)");
    const double anchor = inverse_level(profile, level);
    FrontRow row;
    row.ys = state.grid.gy.coords();
    const auto xs = state.grid.gx.coords();
    row.sigma.assign(state.ny(), 0.0);
    row.sigma_inf.assign(state.ny(), 0.0);
    row.present.assign(state.ny(), 0);
    std::vector<double> vals(state.nx());
    for (std::size_t iy = 0; iy < state.ny(); ++iy) {
        const double* r = state.row(iy);
        vals.assign(r, r + state.nx());
        auto c = interp_level_crossing(xs, vals, level);
        if (c) {
            row.sigma[iy] = *c;
            row.sigma_inf[iy] = *c - anchor;
            row.present[iy] = 1;
            ++row.n_present;
        }
    }
    if (2 * row.n_present < state.ny())
        throw NoFront("extract_front: fewer than half the rows have a crossing");
    return row;
}

inline std::optional<double> extract_front_1d(const Field1D& state, double level,
                                              const WaveProfile& profile) {
    auto c = interp_level_crossing(state.grid.coords(), state.values, level);
    if (!c) return std::nullopt;
    return *c - inverse_level(profile, level);
}

struct BramsonFit {
    double beta;    // ln t coefficient
    double x_inf;   // -c, the offset in sigma = ... - x_inf
    double rms;
    double c;       // fitted constant
    std::size_t n_points;
};

/// Least squares of the trace against beta*ln t + c on the window.
/// Lab traces are reduced by 2t first; moving traces are fitted directly
/// (the frame already subtracts 2t - (3/2)ln t, so beta is expected ~0 and
/// the lab-frame ln t coefficient is beta - 3/2).
inline BramsonFit fit_bramson(const std::vector<double>& times,
                              const std::vector<double>& sigma, double t_lo, double t_hi,
                              Frame frame) {
    double su = 0, suu = 0, sv = 0, suv = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double t = times[i];
        if (t < t_lo - 1e-9 || t > t_hi + 1e-9) continue;
        double u = std::log(t);
        double v = (frame == Frame::lab) ? sigma[i] - 2.0 * t : sigma[i];
        su += u;
        suu += u * u;
        sv += v;
        suv += u * v;
        ++n;
    }
    if (n < 8) throw InsufficientData("fit_bramson: need >= 8 checkpoints in window");
    double dn = static_cast<double>(n);
    double det = dn * suu - su * su;
    BramsonFit f{};
    f.beta = (dn * suv - su * sv) / det;
    f.c = (sv - f.beta * su) / dn;
    f.x_inf = -f.c;
    f.n_points = n;
    double ss = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double t = times[i];
        if (t < t_lo - 1e-9 || t > t_hi + 1e-9) continue;
        double v = (frame == Frame::lab) ? sigma[i] - 2.0 * t : sigma[i];
        double r = v - (f.beta * std::log(t) + f.c);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / dn);
    return f;
}

struct ShapeError {
    double sup;       // sup |u - U(. - sigma_inf)| over [sigma-40, min(sigma+t^(1/4), sigma+10)]
    double weighted;  // sup e^{x-sigma} |u - U(. - sigma_inf)| over [sigma-40, sigma]
};

inline ShapeError shape_error_row(const std::vector<double>& xs,
                                  const double* u, std::size_t n,
                                  const WaveProfile& profile, double sigma,
                                  double sigma_inf, double t) {
    ShapeError e{0.0, 0.0};
    const double lo = sigma - 40.0;
    const double hi = sigma + std::min(std::pow(t, 0.25), 10.0);
    for (std::size_t i = 0; i < n; ++i) {
        double x = xs[i];
        if (x < lo || x > hi) continue;
        double d = std::abs(u[i] - evaluate_shifted(profile, x - sigma_inf));
        if (d > e.sup) e.sup = d;
        if (x <= sigma) {
            double w = std::exp(x - sigma) * d;
            if (w > e.weighted) e.weighted = w;
        }
    }
    return e;
}

inline ShapeError shape_error(const Field2D& state, const WaveProfile& profile,
                              const FrontRow& row, std::size_t iy, double t) {
    if (!row.present[iy]) throw NoFront("shape_error: no crossing in this row");
    return shape_error_row(state.grid.gx.coords(), state.row(iy), state.nx(), profile,
                           row.sigma[iy], row.sigma_inf[iy], t);
}

/// Sandwich violation of one 2D state against 1D bounds on the same x-grid:
/// returns max(u_lo - u, u - u_hi) over all points (negative = strictly inside).
inline double sandwich_violation(const Field2D& state, const Field1D& hi,
                                 const Field1D& lo) {
    if (!(state.grid.gx == hi.grid) || !(state.grid.gx == lo.grid))
        throw GridMismatch("sandwich_violation: x-grids differ");
    double worst = -1e300;
    const std::size_t nx = state.nx();
    for (std::size_t iy = 0; iy < state.ny(); ++iy) {
        const double* r = state.row(iy);
        for (std::size_t i = 0; i < nx; ++i) {
            double a = lo.values[i] - r[i];
            double b = r[i] - hi.values[i];
            if (a > worst) worst = a;
            if (b > worst) worst = b;
        }
    }
    return worst;
}

struct ComparisonReport {
    std::vector<double> times;
    std::vector<double> violation;  // per checkpoint
    double max_violation = -1e300;
    bool pass(double tol = 1e-8) const { return max_violation <= tol; }
    void push(double t, double v) {
        times.push_back(t);
        violation.push_back(v);
        if (v > max_violation) max_violation = v;
    }
};

}  // namespace frontlab
