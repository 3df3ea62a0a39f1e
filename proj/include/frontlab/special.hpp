#pragma once

#include <cmath>
#include <limits>

namespace frontlab {

namespace detail {

// erf on [0,3] via the non-alternating Maclaurin form
//   erf(z) = (2/sqrt(pi)) e^{-z^2} sum_k (2 z^2)^k z / (2k+1)!!
// (all terms positive, so no cancellation near z = 3).
inline double erf_series(double z) {
    const double z2 = z * z;
    double term = z;
    double sum = z;
    for (int k = 1; k < 200; ++k) {
        term *= 2.0 * z2 / (2.0 * k + 1.0);
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return 1.1283791670955126 /* 2/sqrt(pi) */ * std::exp(-z2) * sum;
}

// erfc on z > 3 via the Laplace continued fraction
//   erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// evaluated with modified Lentz.
inline double erfc_cf(double z) {
    const double tiny = 1e-300;
    double f = z, C = z, D = 0.0;
    for (int k = 1; k < 300; ++k) {
        double a = 0.5 * k;
        D = z + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = z + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        double delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-z * z) / (1.7724538509055160 /* sqrt(pi) */ * f);
}

}  // namespace detail

/// Error function, absolute error <= 1e-12 on all finite inputs,
/// odd symmetry exact by construction.
inline double erf(double z) {
    if (std::isnan(z)) return z;
    const double a = std::abs(z);
    double v;
    if (a <= 3.0)
        v = detail::erf_series(a);
    else if (a < 7.0)
        v = 1.0 - detail::erfc_cf(a);
    else
        v = 1.0;  // erfc(7) ~ 4e-23, below double resolution of 1
    return z < 0.0 ? -v : v;
}

inline double erfc(double z) {
    const double a = std::abs(z);
    double v = (a <= 3.0) ? 1.0 - detail::erf_series(a)
                          : (a < 27.0 ? detail::erfc_cf(a) : 0.0);
    return z < 0.0 ? 2.0 - v : v;
}

/// Heat-kernel CDF: Phi(z) = (1 + erf(z))/2.
inline double heat_cdf(double z) { return 0.5 * (1.0 + erf(z)); }

}  // namespace frontlab
