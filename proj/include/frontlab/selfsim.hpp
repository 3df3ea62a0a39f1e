#pragma once

#include <cmath>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/interp.hpp"

namespace frontlab {

/// Unit eigenfunction spanning the null space of M: e0 = xi e^{-xi^2/8}/sqrt(2 sqrt(pi)).
inline double e0(double xi) {
    return xi * std::exp(-xi * xi / 8.0) / 1.8827925275534296;
}

/// Field in self-similar variables (tau = ln t, xi = x/sqrt(t), y unchanged).
struct SelfSimilarField {
    double tau = 0.0;
    Field2D field;  // grid.gx = xi axis, grid.gy = y axis
};

/// w(ln t, x/sqrt(t), y) = e^x u(t,x,y)/sqrt(t), resampled on the xi grid.
/// Interpolation runs on ln u (the field decays exponentially), falling back
/// to linear interpolation of u near clipped zeros.
inline SelfSimilarField to_selfsimilar(const Field2D& state, double t,
                                       const Grid1D& xi_grid) {
    if (state.frame != Frame::moving)
        throw ConfigError("to_selfsimilar: moving-frame field required");
    if (t < 1.0) throw ConfigError("to_selfsimilar: t >= 1 required");
    SelfSimilarField out;
    out.tau = std::log(t);
    out.field = Field2D(Grid2D{xi_grid, state.grid.gy}, Frame::selfsimilar);
    const double rt = std::sqrt(t);
    const double hx = state.grid.gx.h();
    const double x0 = state.grid.gx.x_min;
    const std::size_t nx = state.nx();
    std::vector<double> lnu(nx);
    for (std::size_t iy = 0; iy < state.ny(); ++iy) {
        const double* r = state.row(iy);
        bool all_pos = true;
        for (std::size_t i = 0; i < nx; ++i) {
            if (r[i] > 0.0)
                lnu[i] = std::log(r[i]);
            else {
                lnu[i] = -800.0;
                all_pos = false;
            }
        }
        for (std::size_t j = 0; j < xi_grid.points(); ++j) {
            double x = xi_grid.point(j) * rt;
            double w;
            if (x <= x0 || x >= state.grid.gx.x_max) {
                w = 0.0;  // outside the resolved domain
                if (x <= x0) w = std::exp(x - 0.5 * std::log(t));  // u ~ 1 far left
            } else {
                double s = (x - x0) / hx;
                auto i = static_cast<std::size_t>(s);
                double fr = s - static_cast<double>(i);
                bool near_node = fr < 1e-12 || fr > 1.0 - 1e-12;
                if (near_node) {
                    std::size_t k = (fr < 0.5) ? i : i + 1;
                    w = (r[k] > 0.0) ? std::exp(lnu[k] + x - 0.5 * std::log(t)) : 0.0;
                } else if (all_pos || (r[i] > 0 && r[i + 1] > 0 && (i == 0 || r[i - 1] > 0) &&
                                       (i + 2 >= nx || r[i + 2] > 0))) {
                    double lv = cubic_interp_uniform(lnu, x0, hx, x);
                    w = std::exp(lv + x - 0.5 * std::log(t));
                } else {
                    double uv = r[i] * (1.0 - fr) + r[i + 1] * fr;
                    w = (uv > 0.0) ? std::exp(std::log(uv) + x - 0.5 * std::log(t)) : 0.0;
                }
            }
            out.field.at(j, iy) = w;
        }
    }
    return out;
}

/// Inverse map u(t,x,y) = sqrt(t) w(ln t, x/sqrt(t), y) e^{-x}; exact where
/// x/sqrt(t) lands on a xi node.
inline Field2D from_selfsimilar(const SelfSimilarField& w, const Grid1D& x_grid) {
    const double t = std::exp(w.tau);
    const double rt = std::sqrt(t);
    Field2D out(Grid2D{x_grid, w.field.grid.gy}, Frame::moving);
    const auto& xg = w.field.grid.gx;
    std::vector<double> row(w.field.nx());
    for (std::size_t iy = 0; iy < out.ny(); ++iy) {
        const double* src = w.field.row(iy);
        row.assign(src, src + w.field.nx());
        for (std::size_t j = 0; j < x_grid.points(); ++j) {
            double x = x_grid.point(j);
            double xi = x / rt;
            double s = (xi - xg.x_min) / xg.h();
            double snap = std::round(s);
            double wv;
            if (std::abs(s - snap) < 1e-12 && snap >= 0 &&
                snap < static_cast<double>(xg.points()))
                wv = row[static_cast<std::size_t>(snap)];
            else
                wv = cubic_interp_uniform(row, xg.x_min, xg.h(), xi);
            out.at(j, iy) = rt * wv * std::exp(-x);
        }
    }
    return out;
}

namespace detail {

/// 4th-order first/second derivatives with two ghost layers:
/// odd reflection about xi=0 on the left (Dirichlet), zeros on the right (decay).
/// For full-line profiles (apply_N) pass left_dirichlet = false.
inline double ghosted(const std::vector<double>& w, long i, bool left_dirichlet) {
    long n = static_cast<long>(w.size());
    if (i >= 0 && i < n) return w[static_cast<std::size_t>(i)];
    if (i < 0) {
        if (!left_dirichlet) return 0.0;
        long j = -i;
        return j < n ? 2.0 * w[0] - w[static_cast<std::size_t>(j)] : 0.0;
    }
    return 0.0;
}

inline void fd4_derivs(const std::vector<double>& w, double h, bool left_dirichlet,
                       std::vector<double>& d1, std::vector<double>& d2) {
    const long n = static_cast<long>(w.size());
    d1.resize(w.size());
    d2.resize(w.size());
    for (long i = 0; i < n; ++i) {
        double m2 = ghosted(w, i - 2, left_dirichlet);
        double m1 = ghosted(w, i - 1, left_dirichlet);
        double p1 = ghosted(w, i + 1, left_dirichlet);
        double p2 = ghosted(w, i + 2, left_dirichlet);
        double c = w[static_cast<std::size_t>(i)];
        d1[static_cast<std::size_t>(i)] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        d2[static_cast<std::size_t>(i)] =
            (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    }
}

}  // namespace detail

/// L w = w'' + (xi/2) w' + w on a uniform grid starting at xi = 0.
inline std::vector<double> apply_L(const std::vector<double>& w, double h) {
    std::vector<double> d1, d2, out(w.size());
    detail::fd4_derivs(w, h, true, d1, d2);
    for (std::size_t i = 0; i < w.size(); ++i) {
        double xi = h * static_cast<double>(i);
        out[i] = d2[i] + 0.5 * xi * d1[i] + w[i];
    }
    return out;
}

/// M w = w'' + (3/4 - xi^2/16) w on a uniform grid starting at xi = 0.
inline std::vector<double> apply_M(const std::vector<double>& w, double h) {
    std::vector<double> d1, d2, out(w.size());
    detail::fd4_derivs(w, h, true, d1, d2);
    for (std::size_t i = 0; i < w.size(); ++i) {
        double xi = h * static_cast<double>(i);
        out[i] = d2[i] + (0.75 - xi * xi / 16.0) * w[i];
    }
    return out;
}

/// N w = w'' + (zeta/2) w' on a uniform full-line grid starting at zeta0.
inline std::vector<double> apply_N(const std::vector<double>& w, double zeta0, double h) {
    std::vector<double> d1, d2, out(w.size());
    detail::fd4_derivs(w, h, false, d1, d2);
    for (std::size_t i = 0; i < w.size(); ++i) {
        double z = zeta0 + h * static_cast<double>(i);
        out[i] = d2[i] + 0.5 * z * d1[i];
    }
    return out;
}

/// Composite Simpson on a uniform grid (3/8 rule on the tail if the interval
/// count is odd).
inline double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size() - 1;  // intervals
    if (n < 3) {
        double acc = 0.5 * (f.front() + f.back());
        for (std::size_t i = 1; i < n; ++i) acc += f[i];
        return acc * h;
    }
    std::size_t m = (n % 2 == 0) ? n : n - 3;
    double acc = 0.0;
    if (m >= 2) {
        acc += f[0] + f[m];
        for (std::size_t i = 1; i < m; i += 2) acc += 4.0 * f[i];
        for (std::size_t i = 2; i < m; i += 2) acc += 2.0 * f[i];
        acc *= h / 3.0;
    }
    if (n % 2 != 0)
        acc += 3.0 * h / 8.0 * (f[n - 3] + 3.0 * f[n - 2] + 3.0 * f[n - 1] + f[n]);
    return acc;
}

/// <w, e0> on the xi half-line (profile sampled from xi = 0, spacing h).
inline double project_e0(const std::vector<double>& w, double h) {
    std::vector<double> f(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) f[i] = w[i] * e0(h * static_cast<double>(i));
    return simpson(f, h);
}

/// r = w - <w,e0> e0.
inline std::vector<double> q_residual(const std::vector<double>& w, double h) {
    double a = project_e0(w, h);
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        r[i] = w[i] - a * e0(h * static_cast<double>(i));
    return r;
}

/// q(w) = int (w')^2 + (xi^2/16 - 3/4) w^2 dxi (Dirichlet-compatible w).
inline double qform(const std::vector<double>& w, double h) {
    std::vector<double> d1, d2;
    detail::fd4_derivs(w, h, true, d1, d2);
    std::vector<double> f(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double xi = h * static_cast<double>(i);
        f[i] = d1[i] * d1[i] + (xi * xi / 16.0 - 0.75) * w[i] * w[i];
    }
    return simpson(f, h);
}

inline double l2_norm_halfline(const std::vector<double>& w, double h) {
    std::vector<double> f(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) f[i] = w[i] * w[i];
    return std::sqrt(simpson(f, h));
}

/// Per-tau extremal ratios w/(xi e^{-xi^2/4}) over a xi window, plus the
/// excess beyond a reference band measured against the xi e^{-xi^2/7} shape.
struct BarrierSeries {
    std::vector<double> taus;
    std::vector<double> eta_minus, eta_plus;
    std::vector<double> q_minus, q_plus;
};

struct BarrierCheck {
    BarrierSeries series;
    double eta0 = 0.0, eta1 = 0.0;  // envelope over the checked tau range
    bool pass = false;
};

/// Record eta+-(tau) over the window; the correction amplitudes q+- are the
/// positive excess beyond the reference band [band_lo, band_hi], measured
/// against the xi e^{-xi^2/7} shape of the correction term.
inline void barrier_accumulate(BarrierSeries& s, const SelfSimilarField& w, double xi_lo,
                               double xi_hi, double band_lo, double band_hi) {
    const auto& gx = w.field.grid.gx;
    double emin = 1e300, emax = -1e300, qm = 0.0, qp = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < gx.points(); ++j) {
        double xi = gx.point(j);
        if (xi < xi_lo || xi > xi_hi) continue;
        double shape = xi * std::exp(-xi * xi / 4.0);
        double corr = xi * std::exp(-xi * xi / 7.0);
        for (std::size_t iy = 0; iy < w.field.ny(); ++iy) {
            double v = w.field.at(j, iy);
            double rho = v / shape;
            emin = std::min(emin, rho);
            emax = std::max(emax, rho);
            qp = std::max(qp, (v - band_hi * shape) / corr);
            qm = std::max(qm, (band_lo * shape - v) / corr);
            any = true;
        }
    }
    if (!any) throw WindowEmpty("barrier_accumulate: no grid points in window");
    s.taus.push_back(w.tau);
    s.eta_minus.push_back(emin);
    s.eta_plus.push_back(emax);
    s.q_minus.push_back(std::max(0.0, qm));
    s.q_plus.push_back(std::max(0.0, qp));
}

/// Boundedness of the barrier ratios on tau in [tau_lo, tau_hi]: all ratios
/// must stay inside [eta0, eta1] with eta0 > 0.
inline BarrierCheck barrier_check(const BarrierSeries& s, double tau_lo, double tau_hi,
                                  double eta0, double eta1) {
    BarrierCheck out;
    out.series = s;
    out.eta0 = eta0;
    out.eta1 = eta1;
    bool ok = true, seen = false;
    for (std::size_t k = 0; k < s.taus.size(); ++k) {
        if (s.taus[k] < tau_lo || s.taus[k] > tau_hi) continue;
        seen = true;
        if (!(s.eta_minus[k] >= eta0 && s.eta_plus[k] <= eta1)) ok = false;
    }
    out.pass = ok && seen;
    return out;
}

}  // namespace frontlab
