#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/special.hpp"
#include "frontlab/tridiag.hpp"

namespace frontlab {

/// Piecewise-constant data on the line: k breakpoints, k+1 interval values,
/// extended constant beyond the extremes.
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> values;
    bool even_symmetric = false;

    PiecewiseConstant() = default;
    PiecewiseConstant(std::vector<double> b, std::vector<double> v, bool even = false)
        : breakpoints(std::move(b)), values(std::move(v)), even_symmetric(even) {
        if (values.size() != breakpoints.size() + 1)
            throw ConfigError("PiecewiseConstant: need k+1 values for k breakpoints");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (!(breakpoints[i - 1] < breakpoints[i]))
                throw ConfigError("PiecewiseConstant: breakpoints must increase");
    }

    double operator()(double y) const {
        std::size_t i = 0;
        while (i < breakpoints.size() && y > breakpoints[i]) ++i;
        if (i < breakpoints.size() && y == breakpoints[i])
            return 0.5 * (values[i] + values[i + 1]);
        return values[i];
    }

    /// Even extension of half-line data (breakpoints > 0, value[0] on (0,b0)).
    static PiecewiseConstant evenized(const std::vector<double>& half_breaks,
                                      const std::vector<double>& half_values) {
        std::vector<double> b, v;
        for (std::size_t i = half_breaks.size(); i-- > 0;) b.push_back(-half_breaks[i]);
        for (double x : half_breaks) b.push_back(x);
        for (std::size_t i = half_values.size(); i-- > 1;) v.push_back(half_values[i]);
        for (double x : half_values) v.push_back(x);
        PiecewiseConstant out(std::move(b), std::move(v));
        out.even_symmetric = true;
        return out;
    }
};

/// Exact heat solution (unit diffusivity, clock origin t = 1) for
/// piecewise-constant data: a finite erf sum over the intervals.
inline double heat_exact_piecewise(const PiecewiseConstant& a0, double t, double y) {
    if (t < 1.0) throw ConfigError("heat_exact_piecewise: t >= 1 required");
    if (t == 1.0) return a0(y);
    const double s = 2.0 * std::sqrt(t - 1.0);
    const auto& b = a0.breakpoints;
    const auto& v = a0.values;
    double prev_cdf = 0.0;  // Phi((b_{-1} - y)/s) with b_{-1} = -inf
    double acc = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        double c = heat_cdf((b[i] - y) / s);
        acc += v[i] * (c - prev_cdf);
        prev_cdf = c;
    }
    acc += v.back() * (1.0 - prev_cdf);
    return acc;
}

/// Fold y into [y_lo, y_hi] by repeated wall reflections.
inline double fold_into_box(double y, double y_lo, double y_hi) {
    const double L = y_hi - y_lo;
    double z = std::fmod(y - y_lo, 2.0 * L);
    if (z < 0.0) z += 2.0 * L;
    return (z <= L) ? y_lo + z : y_lo + (2.0 * L - z);
}

/// Piecewise-constant oracle consistent with a zero-flux box [y_lo, y_hi]:
/// the even-periodic extension of the boxed data, with enough mirror images
/// to cover the diffusion range `reach` on both sides.
inline PiecewiseConstant neumann_mirrored(const PiecewiseConstant& a0, double y_lo,
                                          double y_hi, double reach) {
    const double L = y_hi - y_lo;
    const int n_per = static_cast<int>(std::ceil(reach / L)) + 1;
    std::vector<double> b;
    for (int k = -n_per; k <= n_per; ++k) {
        double even_base = y_lo + 2.0 * std::floor(k / 2.0) * L;
        for (double x : a0.breakpoints) {
            if (!(x > y_lo && x < y_hi)) continue;
            b.push_back((k % 2 == 0) ? even_base + (x - y_lo)
                                     : even_base + 2.0 * L - (x - y_lo));
        }
        b.push_back(y_lo + static_cast<double>(k) * L);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [](double p, double q) { return std::abs(p - q) < 1e-12; }),
            b.end());
    std::vector<double> v;
    v.push_back(a0(fold_into_box(b.front() - 1.0, y_lo, y_hi)));
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        v.push_back(a0(fold_into_box(0.5 * (b[i] + b[i + 1]), y_lo, y_hi)));
    v.push_back(a0(fold_into_box(b.back() + 1.0, y_lo, y_hi)));
    return PiecewiseConstant(std::move(b), std::move(v));
}

/// One Crank-Nicolson step for d_t a = D d_yy a with zero-flux (Neumann)
/// closure, walls at the end nodes (mirror ghost a_{-1} = a_1). Conserves the
/// trapezoidal mass h*(a_0/2 + a_1 + ... + a_{n-1}/2) to rounding.
inline void heat_step_cn_inplace(std::vector<double>& a, double h, double dt,
                                 double diffusivity, TridiagWorkspace& ws,
                                 std::vector<double>& lower, std::vector<double>& diag,
                                 std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = a.size();
    const double r = diffusivity * dt / (2.0 * h * h);
    lower.assign(n - 1, -r);
    upper.assign(n - 1, -r);
    diag.assign(n, 1.0 + 2.0 * r);
    upper[0] = -2.0 * r;
    lower[n - 2] = -2.0 * r;
    rhs.resize(n);
    rhs[0] = (1.0 - 2.0 * r) * a[0] + 2.0 * r * a[1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        rhs[i] = r * a[i - 1] + (1.0 - 2.0 * r) * a[i] + r * a[i + 1];
    rhs[n - 1] = (1.0 - 2.0 * r) * a[n - 1] + 2.0 * r * a[n - 2];
    ws.solve(lower.data(), diag.data(), upper.data(), rhs.data(), n);
    a.swap(rhs);
}

inline Field1D heat_step_cn(const Field1D& a, double dt, double diffusivity = 1.0) {
    Field1D out = a;
    TridiagWorkspace ws;
    std::vector<double> lo, di, up, rhs;
    heat_step_cn_inplace(out.values, a.grid.h(), dt, diffusivity, ws, lo, di, up, rhs);
    return out;
}

/// Evolve samples on a zero-flux box by the exact heat semigroup over
/// pseudo-time s (i.e. multiply cosine modes by e^{-k^2 s}). Spectrally exact
/// for smooth data; grid has points at both walls (DCT-I modes).
inline void heat_evolve_neumann_exact(std::vector<double>& a, double L, double s) {
    const std::size_t n = a.size() - 1;  // cells
    if (s <= 0.0) return;
    const double pi = 3.14159265358979323846;
    std::vector<double> coef(n + 1, 0.0);
    // forward: trapezoid-weighted projection on cos(pi m j / n)
    for (std::size_t m = 0; m <= n; ++m) {
        double acc = 0.5 * a[0];
        for (std::size_t j = 1; j < n; ++j)
            acc += a[j] * std::cos(pi * static_cast<double>(m * j) / static_cast<double>(n));
        acc += 0.5 * a[n] * ((m % 2 == 0) ? 1.0 : -1.0);
        double norm = (m == 0 || m == n) ? 1.0 / static_cast<double>(n)
                                         : 2.0 / static_cast<double>(n);
        double k = pi * static_cast<double>(m) / L;
        coef[m] = acc * norm * std::exp(-k * k * s);
    }
    for (std::size_t j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (std::size_t m = 0; m <= n; ++m)
            acc += coef[m] * std::cos(pi * static_cast<double>(m * j) / static_cast<double>(n));
        a[j] = acc;
    }
}

/// Unique bounded solution of a'' + (zeta/2) a' = 0 with limits
/// a(+/-inf) = e^{-sigma_pm}.
inline double alpha_c_infty(double sigma_plus, double sigma_minus, double zeta) {
    double ap = std::exp(-sigma_plus), am = std::exp(-sigma_minus);
    return am + (ap - am) * 0.5 * (1.0 + frontlab::erf(0.5 * zeta));
}

}  // namespace frontlab
