#pragma once

#include <cmath>
#include <vector>

#include "frontlab/core.hpp"

namespace frontlab {

/// Thomas algorithm, no pivoting. All systems built here are diagonally
/// dominant (implicit diffusion with positive time step).
/// lower/upper have length n-1, diag and rhs length n.
inline std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    if (n == 0) throw SingularSystem("solve_tridiagonal: empty system");
    if (lower.size() + 1 != n || upper.size() + 1 != n || rhs.size() != n)
        throw GridMismatch("solve_tridiagonal: inconsistent band lengths");

    std::vector<double> c(n - 1), x(n);
    double piv = diag[0];
    if (std::abs(piv) < 1e-300) throw SingularSystem("solve_tridiagonal: zero pivot");
    if (n > 1) c[0] = upper[0] / piv;
    x[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = diag[i] - lower[i - 1] * c[i - 1];
        if (std::abs(piv) < 1e-300) throw SingularSystem("solve_tridiagonal: zero pivot");
        if (i < n - 1) c[i] = upper[i] / piv;
        x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

/// In-place workspace variant used inside solver loops (no allocation).
struct TridiagWorkspace {
    std::vector<double> c;
    void solve(const double* lower, const double* diag, const double* upper,
               double* x /* in: rhs, out: solution */, std::size_t n) {
        c.resize(n);
        double piv = diag[0];
        if (std::abs(piv) < 1e-300) throw SingularSystem("tridiag: zero pivot");
        c[0] = upper[0] / piv;
        x[0] /= piv;
        for (std::size_t i = 1; i < n; ++i) {
            piv = diag[i] - lower[i - 1] * c[i - 1];
            if (std::abs(piv) < 1e-300) throw SingularSystem("tridiag: zero pivot");
            c[i] = (i < n - 1) ? upper[i] / piv : 0.0;
            x[i] = (x[i] - lower[i - 1] * x[i - 1]) / piv;
        }
        for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    }
};

}  // namespace frontlab
