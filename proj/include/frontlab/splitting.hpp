#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

/// Exact flow of u' = u(1-u) over time a, applied pointwise. Maps [0,1]
/// into itself for any a, which is what keeps the splitting range-preserving.
inline void logistic_flow(double* u, std::size_t n, double a) {
    const double E = std::exp(a);
    const double Em1 = E - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = u[i];
        u[i] = v * E / (1.0 + v * Em1);
    }
}

inline void clip_unit(double* u, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] < 0.0) u[i] = 0.0;
        if (u[i] > 1.0) u[i] = 1.0;
    }
}

/// Sampled heat kernel for one linear substep of d_t u = d_xx u + c(t) d_x u.
/// The substep is applied as u_new(x) = sum_j K_j u_old(x + off*h + j*h),
/// i.e. an exact Gaussian convolution combined with the exact advective
/// shift delta = int c dt, split into an integer grid offset plus a
/// fractional part folded into the kernel center.
///
/// On a uniform grid this discrete convolution reproduces the continuum
/// symbol e^{dt(mu^2 - c mu)} at the front decay rate mu = 1 to rounding
/// (aliasing and truncation are pushed below e^{-30}), so the scheme carries
/// no mesh-induced front-speed bias, unlike centered implicit differencing.
struct StepKernel {
    std::vector<double> w;  // taps, length 2R+1
    int radius = 0;
    long off = 0;  // integer part of the shift, in grid units

    static int required_radius(double dt, double h, double growth_budget = 34.0) {
        // (Rh)^2/(4 dt) - Rh >= budget
        double rh = 2.0 * dt + std::sqrt(4.0 * dt * dt + 4.0 * growth_budget * dt);
        return static_cast<int>(std::ceil(rh / h)) + 2;
    }

    /// Build taps for variance 2*dt and total shift delta (0 for pure diffusion).
    void build(double dt, double h, double delta, int R) {
        radius = R;
        double s = delta / h;
        off = static_cast<long>(std::floor(s));
        double frac = (s - static_cast<double>(off)) * h;
        w.resize(2 * static_cast<std::size_t>(R) + 1);
        double sum = 0.0;
        for (int j = -R; j <= R; ++j) {
            double z = static_cast<double>(j) * h - frac;
            double g = std::exp(-z * z / (4.0 * dt));
            w[static_cast<std::size_t>(j + R)] = g;
            sum += g;
        }
        for (double& x : w) x /= sum;
    }
};

/// Convolve one padded line: out[i] = sum_j w[j] pad[i + j], i in [0, n).
/// pad must have length n + 2*radius and represent u at offsets already
/// shifted by (off - radius).
inline void convolve_line(const double* pad, double* out, std::size_t n,
                          const std::vector<double>& w) {
    const std::size_t taps = w.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    for (std::size_t j = 0; j < taps; ++j) {
        const double wj = w[j];
        const double* src = pad + j;
        for (std::size_t i = 0; i < n; ++i) out[i] += wj * src[i];
    }
}

/// Fill pad for a line with Dirichlet far-field values on both sides.
/// Element i of the line contributes at pad index i - start, where
/// start = off - radius (so pad[k] = u[start + k], clamped to boundary data).
inline void fill_pad_dirichlet(const double* u, std::size_t n, double left, double right,
                               long start, double* pad, std::size_t pad_n) {
    for (std::size_t k = 0; k < pad_n; ++k) {
        long idx = start + static_cast<long>(k);
        if (idx < 0)
            pad[k] = left;
        else if (idx >= static_cast<long>(n))
            pad[k] = right;
        else
            pad[k] = u[idx];
    }
}

/// Advective displacement of the moving frame over [t, t+dt]:
/// int (2 - 3/(2s)) ds, exact.
inline double moving_frame_shift(double t, double dt) {
    return 2.0 * dt - 1.5 * std::log((t + dt) / t);
}

}  // namespace frontlab
