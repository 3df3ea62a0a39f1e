#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/heat.hpp"
#include "frontlab/selfsim.hpp"
#include "frontlab/tridiag.hpp"

namespace frontlab {

/// One separable component of the initial data: v0(xi, y) = g(xi) * m(y).
/// The y-factors are piecewise constant so their heat evolution has a
/// closed form at any pseudo-time.
struct SeparableComponent {
    std::vector<double> g;  // v-picture xi-profile on the xi grid
    PiecewiseConstant m;
    bool receives_forcing = false;  // the y-uniform component that absorbs f
};

/// d_tau v = L v + (e^tau/eps^2) d_yy v
///           + eps^{2 lambda} e^{-lambda tau} (phi v + psi d_xi v + f),
/// v(tau, 0, y) = 0, on xi > 0, y in R.
///
/// phi, psi, f carry no y-dependence, so the y-diffusion commutes with the
/// rest of the flow: the solution is the xi-dynamics applied per component,
/// composed with the exact y-heat semigroup at rescaled time
/// s(tau) = (e^tau - 1)/eps^2. The xi-sweep is Crank-Nicolson on the
/// symmetrized operator M (with the midpoint-sampled lower-order terms taken
/// explicitly), and the y-step is evaluated in closed form. This removes the
/// stiffness of the exponentially growing y-diffusivity entirely.
struct DirichletProblem {
    double epsilon = 0.1;
    double lambda = 0.4;
    double C0 = 1.0;
    std::function<double(double)> phi;          // tau -> coefficient
    std::function<double(double)> psi;          // tau -> coefficient
    std::function<double(double, double)> f;    // (tau, xi) -> forcing
    double f_support_hi = 0.0;                  // f vanishes for xi beyond this
    std::vector<SeparableComponent> v0;
    Grid1D xi_grid{0.0, 18.0, 360};
    Grid1D y_grid{-20.0, 20.0, 160};
    double dtau = 1e-3;
    double eps0 = 0.2;  // admissible range guard
};

struct DecompositionRecord {
    std::vector<double> taus;
    std::vector<double> ys;
    std::vector<std::vector<double>> alpha;    // [rec][y]
    std::vector<std::vector<double>> alpha_c;  // heat-evolved part
    std::vector<std::vector<double>> beta;     // alpha - alpha_c
    std::vector<double> beta_sup;              // per rec
    std::vector<double> beta_dy_sup, beta_dyy_sup;
    std::vector<double> r_norm;       // sup_y L2_xi norm of the e0-orthogonal part
    std::vector<double> vtilde_sup;   // sup |e^{lambda tau/2} e^{-xi^2/8} r / xi|
    std::vector<double> v_over_xi_sup;
    double r0_norm = 0.0;
    // residual profile (w-picture, interior points) at the last recording,
    // taken at the middle of the y window
    std::vector<double> r_profile_final;
    double xi_h = 0.0;
};

namespace detail {

/// Symmetric discrete M = D2 + V on the interior of [0, Xi], Dirichlet ends.
/// V is chosen so that the sampled e0 is an exact null vector of the
/// discrete operator; V -> 3/4 - xi^2/16 as h -> 0.
struct DiscreteM {
    double h;
    std::size_t n;  // interior points
    std::vector<double> V;
    std::vector<double> e0h;  // discrete-normalized null vector

    explicit DiscreteM(const Grid1D& g) : h(g.h()), n(g.points() - 2) {
        V.resize(n);
        e0h.resize(n);
        std::vector<double> e(n + 2);
        for (std::size_t i = 0; i < n + 2; ++i) e[i] = e0(g.point(i));
        e[n + 1] = 0.0;  // Dirichlet truncation at Xi_max
        for (std::size_t i = 1; i <= n; ++i) {
            V[i - 1] = -(e[i - 1] - 2.0 * e[i] + e[i + 1]) / (h * h * e[i]);
            e0h[i - 1] = e[i];
        }
        double nrm = 0.0;
        for (double x : e0h) nrm += x * x;
        nrm = std::sqrt(nrm * h);
        for (double& x : e0h) x /= nrm;
    }

    double project(const std::vector<double>& w) const {
        double a = 0.0;
        for (std::size_t i = 0; i < n; ++i) a += w[i] * e0h[i];
        return a * h;
    }
};

}  // namespace detail

/// Integrate the problem to tau_end, recording every `record_dtau`.
inline DecompositionRecord run_dirichlet(const DirichletProblem& p, double tau_end,
                                         double record_dtau = 0.05) {
    if (!(p.epsilon > 0.0 && p.epsilon <= p.eps0))
        throw ConfigError("run_dirichlet: epsilon outside (0, eps0]");
    for (double tau = 0.0; tau <= tau_end; tau += 0.1) {
        if (std::abs(p.phi(tau)) > p.C0 + 1e-12 || std::abs(p.psi(tau)) > p.C0 + 1e-12)
            throw ConfigError("run_dirichlet: phi/psi exceed the stated bound C0");
    }
    const Grid1D& gx = p.xi_grid;
    detail::DiscreteM M(gx);
    const std::size_t n = M.n;
    const double h = M.h;
    const double dtau = p.dtau;
    const double e2l = std::pow(p.epsilon, 2.0 * p.lambda);

    // w-picture initial data per component; weighted-space precondition check
    std::vector<std::vector<double>> w(p.v0.size(), std::vector<double>(n));
    for (std::size_t c = 0; c < p.v0.size(); ++c) {
        if (p.v0[c].g.size() != gx.points())
            throw GridMismatch("run_dirichlet: v0 profile not on the xi grid");
        for (std::size_t i = 0; i < n; ++i) {
            double xi = gx.point(i + 1);
            w[c][i] = std::exp(xi * xi / 8.0) * p.v0[c].g[i + 1];
            if (!std::isfinite(w[c][i]))
                throw ConfigError("run_dirichlet: v0 not in the weighted space");
        }
    }

    // CN bands for (I -+ dtau/2 M)
    std::vector<double> lo(n - 1, -0.5 * dtau / (h * h));
    std::vector<double> up(n - 1, -0.5 * dtau / (h * h));
    std::vector<double> di(n);
    for (std::size_t i = 0; i < n; ++i)
        di[i] = 1.0 + dtau / (h * h) - 0.5 * dtau * M.V[i];

    DecompositionRecord rec;
    rec.ys = p.y_grid.coords();
    const std::size_t ny = rec.ys.size();

    // r0 = sup_y of the e0-orthogonal L2 norm at tau = 0
    {
        std::vector<double> acc(n);
        double worst = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t c = 0; c < w.size(); ++c) {
                double mv = p.v0[c].m(rec.ys[j]);
                for (std::size_t i = 0; i < n; ++i) acc[i] += mv * w[c][i];
            }
            double a = M.project(acc);
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = acc[i] - a * M.e0h[i];
                ss += r * r;
            }
            worst = std::max(worst, std::sqrt(ss * h));
        }
        rec.r0_norm = worst;
    }

    std::vector<double> a0(w.size());
    for (std::size_t c = 0; c < w.size(); ++c) a0[c] = M.project(w[c]);

    TridiagWorkspace ws;
    std::vector<double> rhs(n), d1(n);

    auto lower_order_half = [&](std::vector<double>& wc, bool forced, double tau_mid) {
        double coef = e2l * std::exp(-p.lambda * tau_mid) * 0.5 * dtau;
        if (coef == 0.0) return;
        double ph = p.phi(tau_mid), ps = p.psi(tau_mid);
        // d_xi on the w-picture with Dirichlet ghosts
        for (std::size_t i = 0; i < n; ++i) {
            double wm = (i == 0) ? 0.0 : wc[i - 1];
            double wp = (i + 1 == n) ? 0.0 : wc[i + 1];
            d1[i] = (wp - wm) / (2.0 * h);
        }
        for (std::size_t i = 0; i < n; ++i) {
            double xi = gx.point(i + 1);
            double src = forced ? std::exp(xi * xi / 8.0) * p.f(tau_mid, xi) : 0.0;
            wc[i] += coef * ((ph - 0.25 * xi * ps) * wc[i] + ps * d1[i] + src);
        }
    };

    double tau = 0.0;
    double next_rec = 0.0;
    const auto nsteps = static_cast<std::size_t>(std::llround(tau_end / dtau));

    auto record = [&](double tau_now) {
        const double s = (std::exp(tau_now) - 1.0) / (p.epsilon * p.epsilon);
        const double t_equiv = 1.0 + s;
        std::vector<double> al(ny, 0.0), alc(ny, 0.0);
        std::vector<double> a_now(w.size());
        for (std::size_t c = 0; c < w.size(); ++c) a_now[c] = M.project(w[c]);
        std::vector<std::vector<double>> msamp(w.size(), std::vector<double>(ny));
        for (std::size_t c = 0; c < w.size(); ++c)
            for (std::size_t j = 0; j < ny; ++j)
                msamp[c][j] = heat_exact_piecewise(p.v0[c].m, t_equiv, rec.ys[j]);
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t c = 0; c < w.size(); ++c) {
                al[j] += a_now[c] * msamp[c][j];
                alc[j] += a0[c] * msamp[c][j];
            }
        std::vector<double> be(ny);
        double bs = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            be[j] = al[j] - alc[j];
            bs = std::max(bs, std::abs(be[j]));
        }
        double bdy = 0.0, bdyy = 0.0;
        const double hy = p.y_grid.h();
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            bdy = std::max(bdy, std::abs((be[j + 1] - be[j - 1]) / (2.0 * hy)));
            bdyy = std::max(bdyy,
                            std::abs((be[j + 1] - 2.0 * be[j] + be[j - 1]) / (hy * hy)));
        }
        // residual r and the derived sups
        std::vector<double> racc(n);
        double rn = 0.0, vt = 0.0, vx = 0.0;
        for (std::size_t j = 0; j < ny; ++j) {
            std::fill(racc.begin(), racc.end(), 0.0);
            double vfull_sup = 0.0;
            for (std::size_t c = 0; c < w.size(); ++c) {
                double mv = msamp[c][j];
                for (std::size_t i = 0; i < n; ++i) racc[i] += mv * w[c][i];
            }
            double a = M.project(racc);
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double xi = gx.point(i + 1);
                double vov = std::exp(-xi * xi / 8.0) * racc[i] / xi;
                vfull_sup = std::max(vfull_sup, std::abs(vov));
                double r = racc[i] - a * M.e0h[i];
                ss += r * r;
                double vtl = std::exp(-xi * xi / 8.0) * r / xi;
                if (xi <= 8.0) vt = std::max(vt, std::abs(vtl));
            }
            rn = std::max(rn, std::sqrt(ss * h));
            vx = std::max(vx, vfull_sup);
            if (j == ny / 2) {
                double a_mid = a;
                rec.r_profile_final.assign(n, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    rec.r_profile_final[i] = racc[i] - a_mid * M.e0h[i];
                rec.xi_h = h;
            }
        }
        rec.taus.push_back(tau_now);
        rec.alpha.push_back(std::move(al));
        rec.alpha_c.push_back(std::move(alc));
        rec.beta.push_back(std::move(be));
        rec.beta_sup.push_back(bs);
        rec.beta_dy_sup.push_back(bdy);
        rec.beta_dyy_sup.push_back(bdyy);
        rec.r_norm.push_back(rn);
        rec.vtilde_sup.push_back(vt * std::exp(0.5 * p.lambda * tau_now));
        rec.v_over_xi_sup.push_back(vx);
    };

    record(0.0);
    next_rec = record_dtau;
    for (std::size_t k = 0; k < nsteps; ++k) {
        for (std::size_t c = 0; c < w.size(); ++c) {
            lower_order_half(w[c], p.v0[c].receives_forcing, tau + 0.25 * dtau);
            // CN on M: (I - dtau/2 M) w_new = (I + dtau/2 M) w_old
            for (std::size_t i = 0; i < n; ++i) {
                double wm = (i == 0) ? 0.0 : w[c][i - 1];
                double wp = (i + 1 == n) ? 0.0 : w[c][i + 1];
                rhs[i] = w[c][i] +
                         0.5 * dtau *
                             ((wm - 2.0 * w[c][i] + wp) / (h * h) + M.V[i] * w[c][i]);
            }
            ws.solve(lo.data(), di.data(), up.data(), rhs.data(), n);
            w[c].swap(rhs);
            lower_order_half(w[c], p.v0[c].receives_forcing, tau + 0.75 * dtau);
        }
        tau = static_cast<double>(k + 1) * dtau;
        if (tau >= next_rec - 1e-12 || k + 1 == nsteps) {
            record(tau);
            next_rec += record_dtau;
        }
    }
    return rec;
}

/// Prop-4.1 style diagnostic: for y-vanishing data, the series sup |v/xi|.
inline std::vector<std::pair<double, double>> prop41_decay(const DirichletProblem& p,
                                                           double tau_end) {
    for (const auto& c : p.v0) {
        if (std::abs(c.m.values.front()) > 0.0 || std::abs(c.m.values.back()) > 0.0)
            throw ConfigError("prop41_decay: v0 must vanish as |y| -> infinity");
    }
    auto rec = run_dirichlet(p, tau_end);
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k < rec.taus.size(); ++k)
        out.emplace_back(rec.taus[k], rec.v_over_xi_sup[k]);
    return out;
}

}  // namespace frontlab
