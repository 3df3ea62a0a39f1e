#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

/// Largest x where the piecewise-linear interpolant of (xs, vals) equals
/// `level` with a downward transition (vals[i] >= level > vals[i+1]).
/// Fronts here decay to 0 on the right, so the rightmost such crossing is
/// the physical one. Returns nullopt if no downward crossing exists.
inline std::optional<double> interp_level_crossing(const std::vector<double>& xs,
                                                   const std::vector<double>& vals,
                                                   double level) {
    if (xs.size() != vals.size() || xs.size() < 2)
        throw GridMismatch("interp_level_crossing: xs/vals size mismatch");
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
        if (vals[i] >= level && vals[i + 1] < level) {
            double denom = vals[i] - vals[i + 1];
            double frac = (vals[i] - level) / denom;
            return xs[i] + frac * (xs[i + 1] - xs[i]);
        }
    }
    return std::nullopt;
}

/// Cubic Hermite interpolation on a uniform grid (finite-difference slopes,
/// one-sided at the ends). Continuous with continuous first derivative.
inline double cubic_interp_uniform(const std::vector<double>& ys, double x0, double h,
                                   double x) {
    const std::size_t n = ys.size();
    double s = (x - x0) / h;
    if (s <= 0.0) return ys.front();
    if (s >= static_cast<double>(n - 1)) return ys.back();
    auto i = static_cast<std::size_t>(s);
    if (i >= n - 1) i = n - 2;
    double t = s - static_cast<double>(i);
    double m0 = (i == 0) ? (ys[1] - ys[0]) : 0.5 * (ys[i + 1] - ys[i - 1]);
    double m1 = (i + 2 >= n) ? (ys[n - 1] - ys[n - 2]) : 0.5 * (ys[i + 2] - ys[i]);
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ys[i] + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * ys[i + 1] + (t3 - t2) * m1;
}

}  // namespace frontlab
