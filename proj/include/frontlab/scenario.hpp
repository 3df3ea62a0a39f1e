#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/heat.hpp"
#include "frontlab/special.hpp"

namespace frontlab {

enum class ScenarioKind {
    heaviside_trapped,
    two_limit,
    periodic_y,
    asympt_periodic_y,
    oscillating
};

inline const char* scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::heaviside_trapped: return "heaviside_trapped";
        case ScenarioKind::two_limit: return "two_limit";
        case ScenarioKind::periodic_y: return "periodic_y";
        case ScenarioKind::asympt_periodic_y: return "asympt_periodic_y";
        default: return "oscillating";
    }
}

/// 1D datum together with its own Heaviside sandwich witnesses.
struct Datum1D {
    std::function<double(double)> f;
    double x1 = 0.0;  // upper witness: f(x) = 0 for x > x1
    double x2 = 0.0;  // lower witness: f(x) = 1 for x <= x2
};

/// Probe sequence for the oscillating family.
struct OscillationSequence {
    std::vector<double> xs;  // band edges x_1 < x_2 < ...
    std::vector<double> ts;  // probe times, one per consecutive pair
    double M = 4.0;
    double lambda_amp = 0.125;
};

struct SequenceReport {
    std::vector<double> ratio_growth;    // x_{n+1}/x_n
    std::vector<double> ratio_lo;        // x_n^2/t_n
    std::vector<double> ratio_hi;        // x_{n+1}^2/t_n
    bool xs_increasing = true;
    bool ts_increasing = true;
    bool finite_surrogate = false;  // ratios stay away from the 0/inf limits
};

inline SequenceReport check_sequence(const OscillationSequence& s) {
    SequenceReport r;
    for (std::size_t i = 1; i < s.xs.size(); ++i) {
        if (!(s.xs[i] > s.xs[i - 1])) r.xs_increasing = false;
        r.ratio_growth.push_back(s.xs[i] / s.xs[i - 1]);
    }
    for (std::size_t i = 1; i < s.ts.size(); ++i)
        if (!(s.ts[i] > s.ts[i - 1])) r.ts_increasing = false;
    for (std::size_t n = 0; n < s.ts.size() && n + 1 < s.xs.size(); ++n) {
        r.ratio_lo.push_back(s.xs[n] * s.xs[n] / s.ts[n]);
        r.ratio_hi.push_back(s.xs[n + 1] * s.xs[n + 1] / s.ts[n]);
    }
    for (double q : r.ratio_lo)
        if (q > 0.01) r.finite_surrogate = true;
    return r;
}

/// The factorial example x_n = sqrt(n!), t_n = sqrt(n) n! (usable directly
/// for n up to ~20; beyond that work with the closed-form ratios instead).
inline OscillationSequence factorial_sequence(std::size_t n_max, double M = 4.0) {
    OscillationSequence s;
    s.M = M;
    double fact = 1.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        fact *= static_cast<double>(n);
        s.xs.push_back(std::sqrt(fact));
        if (n < n_max) s.ts.push_back(std::sqrt(static_cast<double>(n)) * fact);
    }
    return s;
}

/// a(t_n, 0) for the factorial band profile (x_k = sqrt(k!), t_n = sqrt(n) n!,
/// bands alternating 1 and M), from the closed-form erf sum with the band
/// edges computed in log space; usable at any n without overflow.
inline double factorial_probe_amplitude(std::size_t n, double M) {
    const double log_tn =
        0.5 * std::log(static_cast<double>(n)) + std::lgamma(static_cast<double>(n) + 1.0);
    double log_s;  // log(2 sqrt(t_n - 1))
    if (log_tn < 30.0)
        log_s = std::log(2.0) + 0.5 * std::log(std::exp(log_tn) - 1.0);
    else
        log_s = std::log(2.0) + 0.5 * log_tn;
    double acc = 0.0;
    double prev = 0.0;  // erf(z_k), starting from z_0-as-0 boundary of band (0, x_1)
    double vk = 1.0;    // value on (0, x_1)
    for (std::size_t k = 1;; ++k) {
        double lz = 0.5 * std::lgamma(static_cast<double>(k) + 1.0) - log_s;
        double e = (lz > 2.2) ? frontlab::erf(std::exp(std::min(lz, 4.0)))
                              : frontlab::erf(std::exp(lz));
        acc += vk * (e - prev);
        prev = e;
        vk = (k % 2 == 1) ? M : 1.0;  // value on (x_k, x_{k+1})
        if (1.0 - e < 1e-17 && k > n) break;
        if (k > n + 80) break;
    }
    acc += vk * (1.0 - prev);
    return acc;
}

struct Scenario {
    ScenarioKind kind;
    std::string name;
    double x1 = 0.0;  // sandwich witnesses, x2 < x1
    double x2 = -1.0;
    double y_lo = -20.0, y_hi = 20.0;  // required y extent
    bool y_periodic = false;
    std::function<double(double, double)> u0;  // lab-frame datum
    PiecewiseConstant alpha_M;                 // oscillating only
    OscillationSequence seq;                   // oscillating only
};

/// Sample a scenario onto a grid. For the moving frame the datum is
/// pre-shifted by 2 (frame origin X(1) = 2), and the sandwich
/// 1 - H(x - x2) <= u0 <= 1 - H(x - x1) is verified pointwise (hard gate).
inline Field2D materialize(const Scenario& sc, const Grid2D& grid, Frame frame) {
    Field2D f(grid, frame);
    const double shift = (frame == Frame::moving) ? 2.0 : 0.0;
    const double w1 = sc.x1 - shift, w2 = sc.x2 - shift;
    for (std::size_t iy = 0; iy < f.ny(); ++iy) {
        double y = grid.gy.point(iy);
        double* r = f.row(iy);
        for (std::size_t ix = 0; ix < f.nx(); ++ix) {
            double x = grid.gx.point(ix);
            double v = sc.u0(x + shift, y);
            if (v < 0.0 || v > 1.0 || !std::isfinite(v))
                throw SandwichViolation("materialize: datum escapes [0,1]");
            if (x <= w2 && v < 1.0)
                throw SandwichViolation("materialize: lower Heaviside violated");
            if (x > w1 && v > 0.0)
                throw SandwichViolation("materialize: upper Heaviside violated");
            r[ix] = v;
        }
    }
    return f;
}

inline Field1D materialize_1d(const Datum1D& d, const Grid1D& grid, Frame frame) {
    Field1D f(grid, frame);
    const double shift = (frame == Frame::moving) ? 2.0 : 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = d.f(grid.point(i) + shift);
    return f;
}

inline Datum1D heaviside_datum(double drop) {
    return Datum1D{[drop](double x) { return x <= drop ? 1.0 : 0.0; }, drop, drop};
}

/// Sharp: indicator {x <= (x1+x2)/2}. exp_profile: min(1, e^{-(x-x2)}) cut at x1.
inline Scenario make_heaviside_trapped(double x1, double x2, bool exp_profile = false) {
    if (!(x2 < x1)) throw SandwichViolation("make_heaviside_trapped: need x2 < x1");
    Scenario sc;
    sc.kind = ScenarioKind::heaviside_trapped;
    sc.name = "heaviside_trapped";
    sc.x1 = x1;
    sc.x2 = x2;
    if (exp_profile)
        sc.u0 = [x1, x2](double x, double) {
            if (x > x1) return 0.0;
            return std::min(1.0, std::exp(-(x - x2)));
        };
    else {
        double mid = 0.5 * (x1 + x2);
        sc.u0 = [mid](double x, double) { return x <= mid ? 1.0 : 0.0; };
    }
    return sc;
}

/// u0(x,y) = chi(y/W) u0p(x) + (1 - chi(y/W)) u0m(x), chi smooth monotone
/// 0 -> 1; limits attained to 1e-9 by |y| ~ 8W.
inline Scenario make_two_limit(const Datum1D& u0_plus, const Datum1D& u0_minus,
                               double W) {
    Scenario sc;
    sc.kind = ScenarioKind::two_limit;
    sc.name = "two_limit";
    sc.x1 = std::max(u0_plus.x1, u0_minus.x1);
    sc.x2 = std::min(u0_plus.x2, u0_minus.x2);
    if (!(sc.x2 < sc.x1)) sc.x2 = sc.x1 - 1e-9;
    auto fp = u0_plus.f, fm = u0_minus.f;
    sc.u0 = [fp, fm, W](double x, double y) {
        double chi = 0.5 * (1.0 + std::tanh(1.4 * y / W));
        return chi * fp(x) + (1.0 - chi) * fm(x);
    };
    return sc;
}

/// u0(x,y) = base(x + A sin(2 pi y / P)); the asymptotic variant fades the
/// modulation in near y = 0 so the datum is only asymptotically periodic.
inline Scenario make_periodic_y(const Datum1D& base, double A, double P,
                                bool asymptotic = false) {
    Scenario sc;
    sc.kind = asymptotic ? ScenarioKind::asympt_periodic_y : ScenarioKind::periodic_y;
    sc.name = scenario_kind_name(sc.kind);
    sc.x1 = base.x1 + std::abs(A);
    sc.x2 = base.x2 - std::abs(A);
    sc.y_periodic = !asymptotic;
    auto f = base.f;
    const double two_pi = 6.283185307179586;
    if (asymptotic) {
        const double Y0 = 25.0;
        sc.u0 = [f, A, P, two_pi, Y0](double x, double y) {
            double amp = A * (1.0 - std::exp(-(y / Y0) * (y / Y0)));
            return f(x + amp * std::sin(two_pi * y / P));
        };
    } else {
        sc.u0 = [f, A, P, two_pi](double x, double y) {
            return f(x + A * std::sin(two_pi * y / P));
        };
    }
    return sc;
}

/// Transverse band profile alpha_M (even, alternating 1 and M across the
/// band edges), imprinted on the critical e^{-x} envelope behind a hard cut:
///   u0(x,y) = min(1, lambda alpha_M(y) e^{-x}) for x <= 0, 0 for x > 0.
/// The cut keeps the datum inside the Heaviside sandwich; the witnesses are
/// x2 = ln(lambda) (where the min saturates for the lowest band) and x1 = 0.
inline Scenario make_oscillating(const OscillationSequence& seq) {
    if (seq.xs.size() < 2) throw ConfigError("make_oscillating: need >= 2 band edges");
    if (!(seq.lambda_amp > 0.0) || seq.lambda_amp * seq.M > 1.0)
        throw SandwichViolation("make_oscillating: lambda_amp * M must be <= 1");
    std::vector<double> vals;
    for (std::size_t i = 0; i <= seq.xs.size(); ++i)
        vals.push_back(i % 2 == 0 ? 1.0 : seq.M);
    Scenario sc;
    sc.kind = ScenarioKind::oscillating;
    sc.name = "oscillating";
    sc.alpha_M = PiecewiseConstant::evenized(seq.xs, vals);
    sc.seq = seq;
    sc.x1 = 0.0;
    sc.x2 = std::log(seq.lambda_amp);
    double lam = seq.lambda_amp;
    PiecewiseConstant am = sc.alpha_M;
    sc.u0 = [lam, am](double x, double y) {
        if (x > 0.0) return 0.0;
        return std::min(1.0, lam * am(y) * std::exp(-x));
    };
    return sc;
}

}  // namespace frontlab
