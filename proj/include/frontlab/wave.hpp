#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/interp.hpp"

namespace frontlab {

/// Critical traveling wave U'' + 2U' + U(1-U) = 0, U(-inf)=1, U(+inf)=0,
/// sampled on [-L_w, L_w] and normalized so U(0) = 1/2.
///
/// Large-x behaviour is (a*x + b) e^{-x} for this translate. The often-quoted
/// form (x + k) e^{-x} holds for the translate with unit slope coefficient;
/// shifting to it gives k_normalized = ln(a) + b/a. Both are recorded.
struct WaveProfile {
    double x_min = 0.0, h = 0.0;
    std::vector<double> us;
    double c = 2.0;
    double k_hat = 0.0;     // mean of e^x U - x over the default window [8,12]
    double tail_a = 1.0;    // fitted slope of e^x U(x) at large x
    double tail_b = 0.0;    // fitted intercept
    double k_normalized = 0.0;

    double x_max() const { return x_min + h * static_cast<double>(us.size() - 1); }
    std::size_t size() const { return us.size(); }
    double x_at(std::size_t i) const { return x_min + h * static_cast<double>(i); }
};

struct TailFit {
    double k_hat;         // mean of e^x U - x over the window
    double max_dev;       // sup |e^x U - x - k_hat| over the window
    double amp;           // slope a of e^x U ~ a x + b on the window
    double amp_b;         // intercept b
    double k_normalized;  // ln(a) + b/a: tail constant of the unit-slope translate
    double max_dev_normalized;  // sup |e^x U / a - x - mean| over the window
};

namespace detail {

inline void wave_rhs(double u, double v, double& du, double& dv) {
    double f = (u >= 0.0 && u <= 1.0) ? u * (1.0 - u) : 0.0;
    du = v;
    dv = -2.0 * v - f;
}

inline void wave_rk4_step(double& u, double& v, double h) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    wave_rhs(u, v, k1u, k1v);
    wave_rhs(u + 0.5 * h * k1u, v + 0.5 * h * k1v, k2u, k2v);
    wave_rhs(u + 0.5 * h * k2u, v + 0.5 * h * k2v, k3u, k3v);
    wave_rhs(u + h * k3u, v + h * k3v, k4u, k4v);
    u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
}

/// 6-point Lagrange interpolation of a uniform-grid trajectory at index s
/// (real-valued); callers keep s well inside [2, n-4].
inline double lagrange6(const std::vector<double>& f, double s) {
    auto i = static_cast<long>(std::floor(s));
    i = std::max<long>(2, std::min<long>(i, static_cast<long>(f.size()) - 4));
    double t = s - static_cast<double>(i);
    double acc = 0.0;
    for (int k = -2; k <= 3; ++k) {
        double w = 1.0;
        for (int j = -2; j <= 3; ++j) {
            if (j == k) continue;
            w *= (t - static_cast<double>(j)) / static_cast<double>(k - j);
        }
        acc += w * f[static_cast<std::size_t>(i + k)];
    }
    return acc;
}

}  // namespace detail

/// Fit the tail law on [x_lo, x_hi]; window must satisfy 5 <= lo < hi <= L_w - 2.
inline TailFit fit_tail_k(const WaveProfile& p, double x_lo, double x_hi) {
    if (!(5.0 <= x_lo && x_lo < x_hi && x_hi <= p.x_max() - 2.0))
        throw WindowOutOfRange("fit_tail_k: window must sit in [5, L_w - 2]");
    double sum = 0, sx = 0, sxx = 0, sg = 0, sxg = 0;
    std::size_t cnt = 0;
    std::size_t i0 = static_cast<std::size_t>(std::ceil((x_lo - p.x_min) / p.h - 1e-12));
    for (std::size_t i = i0; i < p.size(); ++i) {
        double x = p.x_at(i);
        if (x > x_hi + 1e-12) break;
        double g = std::exp(x) * p.us[i];  // ~ a x + b
        sum += g - x;
        sx += x;
        sxx += x * x;
        sg += g;
        sxg += x * g;
        ++cnt;
    }
    if (cnt < 4) throw WindowOutOfRange("fit_tail_k: too few samples in window");
    TailFit out{};
    out.k_hat = sum / static_cast<double>(cnt);
    double det = static_cast<double>(cnt) * sxx - sx * sx;
    out.amp = (static_cast<double>(cnt) * sxg - sx * sg) / det;
    out.amp_b = (sg - out.amp * sx) / static_cast<double>(cnt);
    out.k_normalized = std::log(out.amp) + out.amp_b / out.amp;
    double dev = 0, devn = 0, mn = 0;
    std::size_t j = 0;
    for (std::size_t i = i0; i < p.size(); ++i) {
        double x = p.x_at(i);
        if (x > x_hi + 1e-12) break;
        mn += std::exp(x) * p.us[i] / out.amp - x;
        ++j;
    }
    mn /= static_cast<double>(j);
    for (std::size_t i = i0; i < p.size(); ++i) {
        double x = p.x_at(i);
        if (x > x_hi + 1e-12) break;
        double g = std::exp(x) * p.us[i];
        dev = std::max(dev, std::abs(g - x - out.k_hat));
        devn = std::max(devn, std::abs(g / out.amp - x - mn));
    }
    out.max_dev = dev;
    out.max_dev_normalized = devn;
    return out;
}

/// Construct the critical wave by forward integration along the
/// one-dimensional unstable manifold of (U,U') = (1,0): start at
/// U = 1 - delta, U' = -mu delta with mu = sqrt(2) - 1 (the decay exponent
/// at the invaded state for c = 2). The 1/2-crossing of the stored
/// trajectory is located to ~1e-14 with a local interpolant, and the profile
/// is resampled about it so that U(0) = 1/2 lands exactly on a grid point.
inline WaveProfile compute_wave(double L_w = 40.0, double h_ode = 0.005) {
    if (L_w < 30.0) throw ConfigError("compute_wave: need L_w >= 30");
    if (h_ode > 1e-2) throw ConfigError("compute_wave: need h_ode <= 1e-2");
    const double mu = std::sqrt(2.0) - 1.0;
    const double delta = 1e-8 * std::min(1.0, std::exp(-mu * (L_w - 36.0)));

    const auto max_steps = static_cast<std::size_t>(std::ceil(600.0 / h_ode));
    const auto k_left = static_cast<std::size_t>(std::llround(L_w / h_ode));
    std::vector<double> us;
    us.reserve(max_steps / 4);
    double u = 1.0 - delta, v = -mu * delta;
    us.push_back(u);
    std::size_t icross = 0, need = 0;
    for (std::size_t i = 0; i < max_steps; ++i) {
        detail::wave_rk4_step(u, v, h_ode);
        us.push_back(u);
        if (icross == 0 && u < 0.5) {
            icross = us.size() - 2;
            need = icross + k_left + 8;
        }
        if (need > 0 && us.size() > need) break;
    }
    if (icross == 0 || us.size() <= icross + k_left + 6)
        throw NonConvergence("compute_wave: no 1/2-crossing within the domain");
    if (icross < k_left + 3)
        throw NonConvergence("compute_wave: crossing too close to the left state");

    // exact crossing index (bisection on the interpolant; U is decreasing)
    double slo = static_cast<double>(icross), shi = slo + 1.0;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (slo + shi);
        (detail::lagrange6(us, mid) > 0.5 ? slo : shi) = mid;
    }
    const double s_cross = 0.5 * (slo + shi);

    WaveProfile p;
    p.x_min = -L_w;
    p.h = h_ode;
    p.us.resize(2 * k_left + 1);
    for (std::size_t j = 0; j < p.us.size(); ++j) {
        double s = s_cross - static_cast<double>(k_left) + static_cast<double>(j);
        p.us[j] = detail::lagrange6(us, s);
    }
    p.c = 2.0;

    // Tail coefficients from a late window where the e^{-2x} correction is dead.
    double lo = std::max(14.0, L_w - 16.0), hi = L_w - 2.0;
    TailFit late = fit_tail_k(p, lo, hi);
    p.tail_a = late.amp;
    p.tail_b = late.amp_b;
    p.k_normalized = late.k_normalized;
    p.k_hat = fit_tail_k(p, 8.0, std::min(12.0, hi)).k_hat;
    return p;
}

/// Evaluate U(x + shift): 1 left of the domain, cubic inside,
/// (a z + b) e^{-z} tail extrapolation on the right.
inline double evaluate_shifted(const WaveProfile& p, double x, double shift = 0.0) {
    double z = x + shift;
    if (z <= p.x_min) return 1.0;
    if (z >= p.x_max()) return (p.tail_a * z + p.tail_b) * std::exp(-z);
    return cubic_interp_uniform(p.us, p.x_min, p.h, z);
}

/// Unique x with U(x) = theta, by bisection (profile is strictly decreasing).
inline double inverse_level(const WaveProfile& p, double theta) {
    if (!(theta > 1e-6 && theta < 1.0 - 1e-6))
        throw ConfigError("inverse_level: theta out of (1e-6, 1-1e-6)");
    if (theta == 0.5) return 0.0;
    double lo = p.x_min, hi = p.x_max();
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (evaluate_shifted(p, mid) > theta)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-11) break;
    }
    return 0.5 * (lo + hi);
}

/// RMS of the discrete ODE residual U'' + 2U' + U(1-U) over the interior,
/// with 4th-order centered differences (independent of the RK4 route).
inline double ode_residual_rms(const WaveProfile& p) {
    const double h = p.h;
    double ss = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 2; i + 2 < p.size(); ++i) {
        double d1 = (p.us[i - 2] - 8 * p.us[i - 1] + 8 * p.us[i + 1] - p.us[i + 2]) / (12 * h);
        double d2 = (-p.us[i - 2] + 16 * p.us[i - 1] - 30 * p.us[i] + 16 * p.us[i + 1] -
                     p.us[i + 2]) /
                    (12 * h * h);
        double r = d2 + 2.0 * d1 + p.us[i] * (1.0 - p.us[i]);
        ss += r * r;
        ++cnt;
    }
    return std::sqrt(ss / static_cast<double>(cnt));
}

}  // namespace frontlab
