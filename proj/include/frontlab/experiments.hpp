#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/config.hpp"
#include "frontlab/dirichlet.hpp"
#include "frontlab/front.hpp"
#include "frontlab/heat.hpp"
#include "frontlab/io.hpp"
#include "frontlab/kpp1d.hpp"
#include "frontlab/kpp2d.hpp"
#include "frontlab/scenario.hpp"
#include "frontlab/selfsim.hpp"
#include "frontlab/wave.hpp"

namespace frontlab {

struct GateResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool lower_is_pass = true;  // pass iff measured <= threshold (or >= if false)
    bool pass = false;
    std::string note;
};

struct Gates {
    std::vector<GateResult> items;

    GateResult& add_le(const std::string& name, double measured, double threshold,
                       const std::string& note = "") {
        items.push_back({name, measured, threshold, true, measured <= threshold, note});
        return items.back();
    }
    GateResult& add_ge(const std::string& name, double measured, double threshold,
                       const std::string& note = "") {
        items.push_back({name, measured, threshold, false, measured >= threshold, note});
        return items.back();
    }
    GateResult& add_range(const std::string& name, double measured, double lo, double hi,
                          const std::string& note = "") {
        items.push_back({name, measured, hi, true, measured >= lo && measured <= hi,
                         note + " (range [" + fmt_g(lo) + ", " + fmt_g(hi) + "])"});
        return items.back();
    }
    void merge(const Gates& o) {
        items.insert(items.end(), o.items.begin(), o.items.end());
    }
    bool all_pass() const {
        for (const auto& g : items)
            if (!g.pass) return false;
        return true;
    }
    json to_json() const {
        json arr = json::array();
        for (const auto& g : items)
            arr.push_back({{"name", g.name},
                           {"measured", g.measured},
                           {"threshold", g.threshold},
                           {"comparison", g.lower_is_pass ? "<=" : ">="},
                           {"pass", g.pass},
                           {"note", g.note}});
        return arr;
    }
};

struct ExperimentContext {
    std::filesystem::path outdir = "out";
    unsigned threads = 0;
    bool write_artifacts = true;

    void ensure_outdir() const { std::filesystem::create_directories(outdir); }
};

inline const WaveProfile& shared_wave() {
    static WaveProfile p = compute_wave(40.0, 0.005);
    return p;
}

// ---------------------------------------------------------------------------
// wave pipeline
// ---------------------------------------------------------------------------

struct WaveResult {
    Gates gates;
    TailFit tail;
    double residual_rms = 0.0;
    double seconds = 0.0;
};

inline WaveResult run_wave_experiment(const ExperimentContext& ctx) {
    WaveResult out;
    auto t0 = std::chrono::steady_clock::now();
    WaveProfile p = compute_wave(40.0, 0.005);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.residual_rms = ode_residual_rms(p);
    out.tail = fit_tail_k(p, 8.0, 12.0);
    auto late = fit_tail_k(p, 24.0, 38.0);

    out.gates.add_le("wave.ode_residual_rms", out.residual_rms, 1e-6);
    out.gates.add_le("wave.tail_dev_[8,12]", out.tail.max_dev, 1e-2,
                     "sup |e^x U - x - k_hat|; the U(0)=1/2 translate has tail "
                     "(a x + b) e^{-x} with a = " + fmt_g(out.tail.amp) +
                     ", so this literal diagnostic grows ~(a-1) x");
    out.gates.add_le("wave.runtime_s", out.seconds, 1.0);

    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < p.size(); ++i) rows.push_back({p.x_at(i), p.us[i]});
        write_csv(ctx.outdir / "wave.csv", {"x", "U"}, rows);
        write_json(ctx.outdir / "wave_tail.json",
                   {{"k_hat_literal_[8,12]", out.tail.k_hat},
                    {"max_dev_literal_[8,12]", out.tail.max_dev},
                    {"tail_slope_a", late.amp},
                    {"tail_intercept_b", late.amp_b},
                    {"k_normalized", late.k_normalized},
                    {"max_dev_normalized_[24,38]", late.max_dev_normalized},
                    {"ode_residual_rms", out.residual_rms}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1D reference run (Bramson fit, shape, barriers)
// ---------------------------------------------------------------------------

struct Bramson1DResult {
    Gates gates;
    std::vector<double> times;
    std::vector<double> sigma_inf;
    BramsonFit fit{};
    BarrierSeries barriers;
    std::vector<std::vector<double>> shape_rows;  // t, sup, weighted
};

inline Field2D wrap_rows(const Field1D& f, std::size_t copies = 3) {
    Field2D g(Grid2D{f.grid, Grid1D(0.0, 1.0, copies - 1)}, f.frame);
    for (std::size_t iy = 0; iy < g.ny(); ++iy)
        std::copy(f.values.begin(), f.values.end(), g.row(iy));
    return g;
}

inline Bramson1DResult run_bramson1d(const ExperimentContext& ctx) {
    Bramson1DResult out;
    const auto& p = shared_wave();
    const double t_end = 2000.0;
    Grid1D g = Grid1D::with_spacing(-60.0, 60.0 + 4.0 * std::sqrt(t_end), 0.05);
    Solver1DConfig cfg;
    cfg.grid = g;
    cfg.dt = 0.02;
    cfg.frame = Frame::moving;

    Field1D u0(g, Frame::moving);
    for (std::size_t i = 0; i < u0.size(); ++i)
        u0.values[i] = (g.point(i) + 2.0 <= 0.0) ? 1.0 : 0.0;  // 1 - H(x), pre-shifted

    // barrier sampling at tau = 2..7 (t = e^tau)
    std::vector<double> barrier_ts;
    for (double tau = 2.0; tau <= 7.01; tau += 0.5) barrier_ts.push_back(std::exp(tau));
    std::vector<double> req = {50.0, 100.0, 500.0, 1000.0, 2000.0};
    req.insert(req.end(), barrier_ts.begin(), barrier_ts.end());
    auto cps = checkpoint_schedule(cfg.t0, t_end, cfg.dt, 32, req);

    Grid1D gxi(0.0, 8.0, 400);
    double shape_t1000_sup = -1.0;
    run_1d(u0, cfg, t_end, cps, [&](double t, const Field1D& f) {
        auto s = extract_front_1d(f, 0.5, p);
        if (!s) return;
        out.times.push_back(t);
        out.sigma_inf.push_back(*s);
        if (t >= 100.0 - 1e-6) {
            auto e = shape_error_row(f.grid.coords(), f.values.data(), f.size(), p, *s,
                                     *s, t);
            out.shape_rows.push_back({t, e.sup, e.weighted});
            if (std::abs(t - 1000.0) < 1e-6) shape_t1000_sup = e.sup;
        }
        for (double bt : barrier_ts) {
            if (std::abs(t - bt) <= cfg.dt) {
                auto w = to_selfsimilar(wrap_rows(f), t, gxi);
                barrier_accumulate(out.barriers, w, 0.2, 3.0, 0.3, 1.2);
                break;
            }
        }
    });

    auto fit_m = fit_bramson(out.times, out.sigma_inf, 50.0, 2000.0, Frame::moving);
    out.fit = fit_m;
    double beta_lab = fit_m.beta - 1.5;
    auto at = [&](double t) {
        for (std::size_t i = 0; i < out.times.size(); ++i)
            if (std::abs(out.times[i] - t) < 1e-6) return out.sigma_inf[i];
        throw InsufficientData("missing checkpoint");
    };
    double drift = std::abs(at(2000.0) - at(500.0));

    out.gates.add_range("bramson.beta_lab_[50,2000]", beta_lab, -1.65, -1.35,
                        "ln t coefficient in the lab frame");
    out.gates.add_le("bramson.moving_drift_|s(2000)-s(500)|", drift, 0.1);
    out.gates.add_le("shape.sup_t1000", shape_t1000_sup, 0.02,
                     "sup-norm distance to the wave translate at t = 1000");

    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < out.times.size(); ++i)
            rows.push_back({out.times[i],
                            out.sigma_inf[i] /* x_level: theta=1/2 anchor is 0 */,
                            out.sigma_inf[i]});
        write_csv(ctx.outdir / "front.csv", {"t", "x_level", "sigma_inf"}, rows);
        write_csv(ctx.outdir / "shape_error.csv", {"t", "unweighted", "weighted"},
                  out.shape_rows);
        write_json(ctx.outdir / "bramson_fit.json",
                   {{"beta_moving", fit_m.beta},
                    {"beta_lab", beta_lab},
                    {"x_inf", fit_m.x_inf},
                    {"rms", fit_m.rms},
                    {"window", {50.0, 2000.0}},
                    {"drift_500_2000", drift}});
        std::vector<std::vector<double>> brows;
        for (std::size_t i = 0; i < out.barriers.taus.size(); ++i)
            brows.push_back({out.barriers.taus[i], out.barriers.eta_minus[i],
                             out.barriers.eta_plus[i]});
        write_csv(ctx.outdir / "barriers.csv", {"tau", "eta_minus", "eta_plus"}, brows);
    }
    return out;
}

// ---------------------------------------------------------------------------
// shared machinery for the 2D scenario runs
// ---------------------------------------------------------------------------

struct Bounds1D {
    std::vector<double> times;
    std::vector<Field1D> hi, lo;          // fields at checkpoints
    std::vector<double> sigma_hi, sigma_lo;  // sigma_inf traces
};

inline Bounds1D run_bounds(const Scenario& sc, const Grid1D& gx, double dt, double t_end,
                           const std::vector<double>& cps, const WaveProfile& p) {
    Bounds1D out;
    Solver1DConfig cfg;
    cfg.grid = gx;
    cfg.dt = dt;
    cfg.frame = Frame::moving;
    auto run_one = [&](double drop, std::vector<Field1D>& store,
                       std::vector<double>& trace, bool record_times) {
        Field1D u0(gx, Frame::moving);
        for (std::size_t i = 0; i < u0.size(); ++i)
            u0.values[i] = (gx.point(i) + 2.0 <= drop) ? 1.0 : 0.0;
        run_1d(u0, cfg, t_end, cps, [&](double t, const Field1D& f) {
            store.push_back(f);
            auto s = extract_front_1d(f, 0.5, p);
            trace.push_back(s ? *s : std::nan(""));
            if (record_times) out.times.push_back(t);
        });
    };
    run_one(sc.x1, out.hi, out.sigma_hi, true);
    run_one(sc.x2, out.lo, out.sigma_lo, false);
    return out;
}

struct Scenario2DRun {
    std::vector<double> times;
    FrontTrace trace;
    double sandwich_worst = -1e300;
    std::map<double, Field2D> snapshots;  // at requested times
    Bounds1D bounds;
};

inline Scenario2DRun run_scenario_2d(const Scenario& sc, const Grid2D& grid, double dt,
                                     double t_end, const std::vector<double>& snap_at,
                                     const ExperimentContext& ctx,
                                     const WaveProfile& p, int per_decade = 32) {
    Scenario2DRun out;
    Solver2DConfig cfg;
    cfg.grid = grid;
    cfg.dt = dt;
    cfg.threads = ctx.threads;
    cfg.y_bc = sc.y_periodic ? YBoundary::periodic : YBoundary::neumann;
    const double lattice = dt * cfg.effective_y_every();

    std::vector<double> req = snap_at;
    req.insert(req.end(), {500.0, 1000.0, t_end});
    for (double& r : req) r = std::round(r / lattice) * lattice;
    auto cps = checkpoint_schedule(cfg.t0, t_end, lattice, per_decade, req);

    out.bounds = run_bounds(sc, grid.gx, dt, t_end, cps, p);
    auto u0 = materialize(sc, grid, Frame::moving);
    out.trace.level = 0.5;

    std::size_t ci = 0;
    run_2d(u0, cfg, t_end, cps, [&](double t, const Field2D& f) {
        out.times.push_back(t);
        while (ci < out.bounds.times.size() && out.bounds.times[ci] < t - 1e-9) ++ci;
        if (ci < out.bounds.times.size() &&
            std::abs(out.bounds.times[ci] - t) < 1e-9) {
            double v = sandwich_violation(f, out.bounds.hi[ci], out.bounds.lo[ci]);
            out.sandwich_worst = std::max(out.sandwich_worst, v);
        }
        out.trace.push(t, extract_front(f, 0.5, p));
        for (double ts : snap_at)
            if (std::abs(t - ts) <= lattice * 0.51 && !out.snapshots.count(ts))
                out.snapshots.emplace(ts, f);
    });
    return out;
}

inline void write_front2d_csv(const std::filesystem::path& path, const FrontTrace& tr) {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        for (std::size_t j = 0; j < tr.ys.size(); ++j) {
            if (!tr.rows[k].present[j]) continue;
            rows.push_back({tr.times[k], tr.ys[j], tr.rows[k].sigma[j],
                            tr.rows[k].sigma_inf[j]});
        }
    write_csv(path, {"t", "y", "x_level", "sigma_inf"}, rows);
}

inline json scenario_json(const Scenario& sc) {
    json j{{"kind", scenario_kind_name(sc.kind)},
           {"name", sc.name},
           {"x1", sc.x1},
           {"x2", sc.x2},
           {"y_periodic", sc.y_periodic}};
    if (sc.kind == ScenarioKind::oscillating) {
        j["sequence"] = {{"xs", sc.seq.xs},
                         {"ts", sc.seq.ts},
                         {"M", sc.seq.M},
                         {"lambda_amp", sc.seq.lambda_amp}};
        auto rep = check_sequence(sc.seq);
        j["sequence_report"] = {{"ratio_growth", rep.ratio_growth},
                                {"ratio_lo", rep.ratio_lo},
                                {"ratio_hi", rep.ratio_hi},
                                {"finite_surrogate", rep.finite_surrogate}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// two-limit scenario: sandwich + heat slaving + merge formula
// ---------------------------------------------------------------------------

struct TwoLimitResult {
    Gates gates;
    double sigma_hat_plus = 0.0, sigma_hat_minus = 0.0;
};

inline TwoLimitResult run_two_limit(const ExperimentContext& ctx) {
    TwoLimitResult out;
    const auto& p = shared_wave();
    const double t_end = 2000.0, dt = 0.05, T_eps = 100.0;
    auto sc = make_two_limit(heaviside_datum(0.0), heaviside_datum(-1.0), 10.0);
    Grid2D grid{Grid1D::with_spacing(-60.0, 60.0 + 4.0 * std::sqrt(t_end), 0.05),
                Grid1D::with_spacing(-120.0, 120.0, 0.5)};

    auto run = run_scenario_2d(sc, grid, dt, t_end, {T_eps, t_end}, ctx, p);

    // criterion 4 ingredient
    out.gates.add_le("two_limit.sandwich_violation", run.sandwich_worst, 1e-8);

    // heat slaving: amplitude profile extracted at T_eps, evolved exactly,
    // compared through sigma_inf = ln a + c0 (crossing convention)
    const Field2D& f100 = run.snapshots.at(T_eps);
    Grid1D gxi(0.0, 12.0, 240);
    auto w100 = to_selfsimilar(f100, T_eps, gxi);
    std::vector<double> a0(w100.field.ny());
    std::vector<double> col(w100.field.nx());
    for (std::size_t j = 0; j < w100.field.ny(); ++j) {
        for (std::size_t i = 0; i < w100.field.nx(); ++i) col[i] = w100.field.at(i, j);
        a0[j] = project_amplitude(col, gxi.h());
    }

    const double Ly = grid.gy.x_max - grid.gy.x_min;
    auto evolve_a = [&](double t) {
        std::vector<double> a = a0;
        heat_evolve_neumann_exact(a, Ly, t - T_eps);
        return a;
    };

    // c0 anchored at t = 500
    std::size_t k500 = 0;
    for (std::size_t k = 0; k < run.times.size(); ++k)
        if (std::abs(run.times[k] - 500.0) < 0.5) k500 = k;
    auto a500 = evolve_a(run.times[k500]);
    double c0 = 0.0;
    for (std::size_t j = 0; j < a500.size(); ++j)
        c0 += run.trace.rows[k500].sigma_inf[j] - std::log(a500[j]);
    c0 /= static_cast<double>(a500.size());

    double slaving_worst = 0.0;
    std::vector<std::vector<double>> heat_rows;
    for (std::size_t k = 0; k < run.times.size(); ++k) {
        double t = run.times[k];
        if (t < 500.0 - 1e-9) continue;
        auto a = evolve_a(t);
        for (std::size_t j = 0; j < a.size(); ++j) {
            double dev = std::abs(run.trace.rows[k].sigma_inf[j] - std::log(a[j]) - c0);
            slaving_worst = std::max(slaving_worst, dev);
        }
        if (ctx.write_artifacts && (k % 8 == 0 || t == t_end))
            for (std::size_t j = 0; j < a.size(); j += 8)
                heat_rows.push_back({t, run.trace.ys[j], a[j]});
    }
    out.gates.add_le("slaving.max|sigma_inf - ln a - c0|_[500,2000]", slaving_worst, 0.1,
                     "a extracted at T_eps = 100 (eps = 0.1) and evolved by the heat "
                     "module; c0 fitted once at t = 500");

    // merge formula, crossing convention: sigma_inf(t,0) -> ln((e^{s+}+e^{s-})/2)
    auto mean_trace = [&](const std::vector<double>& tr) {
        double acc = 0.0;
        std::size_t n = 0;
        for (std::size_t k = 0; k < run.bounds.times.size(); ++k) {
            if (run.bounds.times[k] < 500.0 || run.bounds.times[k] > 2000.0) continue;
            acc += tr[k];
            ++n;
        }
        return acc / static_cast<double>(n);
    };
    out.sigma_hat_plus = mean_trace(run.bounds.sigma_hi);
    out.sigma_hat_minus = mean_trace(run.bounds.sigma_lo);
    double target =
        std::log(0.5 * (std::exp(out.sigma_hat_plus) + std::exp(out.sigma_hat_minus)));
    std::size_t j0 = grid.gy.floor_index(0.0);
    double measured = run.trace.rows.back().sigma_inf[j0];
    out.gates.add_le("merge.|sigma_inf(2000,0) - ln((e^{s+}+e^{s-})/2)|",
                     std::abs(measured - target), 0.1,
                     "s_hat+ = " + fmt_g(out.sigma_hat_plus) +
                         ", s_hat- = " + fmt_g(out.sigma_hat_minus) +
                         ", measured = " + fmt_g(measured));

    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        write_front2d_csv(ctx.outdir / "front2d_two_limit.csv", run.trace);
        write_csv(ctx.outdir / "heat_profile.csv", {"t", "y", "a"}, heat_rows);
        write_json(ctx.outdir / "scenario_two_limit.json", scenario_json(sc));
        dump_field(ctx.outdir / "two_limit_t100", f100, T_eps,
                   {{"scenario", "two_limit"}});
        dump_field(ctx.outdir / "two_limit_t2000", run.snapshots.at(t_end), t_end,
                   {{"scenario", "two_limit"}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// periodic scenario
// ---------------------------------------------------------------------------

inline Gates run_periodic(const ExperimentContext& ctx) {
    Gates gates;
    const auto& p = shared_wave();
    const double t_end = 2000.0, dt = 0.05, P = 20.0;
    auto sc = make_periodic_y(heaviside_datum(0.0), 0.5, P);
    Grid2D grid{Grid1D::with_spacing(-60.0, 60.0 + 4.0 * std::sqrt(t_end), 0.05),
                Grid1D::with_spacing(0.0, P, 0.25)};
    auto run = run_scenario_2d(sc, grid, dt, t_end, {t_end}, ctx, p);

    gates.add_le("periodic.sandwich_violation", run.sandwich_worst, 1e-8);

    auto osc_at = [&](std::size_t k) {
        double mn = 1e300, mx = -1e300;
        for (std::size_t j = 0; j < run.trace.ys.size(); ++j) {
            mn = std::min(mn, run.trace.rows[k].sigma_inf[j]);
            mx = std::max(mx, run.trace.rows[k].sigma_inf[j]);
        }
        return mx - mn;
    };
    std::size_t k1000 = 0, k2000 = run.times.size() - 1;
    for (std::size_t k = 0; k < run.times.size(); ++k)
        if (std::abs(run.times[k] - 1000.0) < 0.5) k1000 = k;
    gates.add_le("periodic.sup_y_oscillation_t2000", osc_at(k2000), 0.05);
    double drift = 0.0;
    for (std::size_t j = 0; j < run.trace.ys.size(); ++j)
        drift = std::max(drift, std::abs(run.trace.rows[k2000].sigma_inf[j] -
                                         run.trace.rows[k1000].sigma_inf[j]));
    gates.add_le("periodic.|sigma_inf(2000,y)-sigma_inf(1000,y)|", drift, 0.05);

    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        write_front2d_csv(ctx.outdir / "front2d_periodic.csv", run.trace);
        write_json(ctx.outdir / "scenario_periodic.json", scenario_json(sc));
    }
    return gates;
}

// ---------------------------------------------------------------------------
// oscillating scenario: desk probes + factorial-scale oracle
// ---------------------------------------------------------------------------

struct OscillatingResult {
    Gates gates;
    json table;
};

inline OscillatingResult run_oscillating_oracle(const ExperimentContext& ctx) {
    OscillatingResult out;
    const double M = 4.0;
    // Eq-(e6.1)-style limits probed at n = 8 (t_{2n} and t_{2n+1})
    double even8 = factorial_probe_amplitude(16, M);
    double odd8 = factorial_probe_amplitude(17, M);
    out.gates.add_le("oracle.|a(t_16,0)-1|", std::abs(even8 - 1.0), 0.05,
                     "factorial sequence, even probe at n = 8");
    out.gates.add_le("oracle.|a(t_17,0)-M|", std::abs(odd8 - M), 0.05 * M,
                     "factorial sequence, odd probe at n = 8");
    // convergence table: the approach to the limits is ~n^{-1/4}
    json rows = json::array();
    for (std::size_t n : {8u, 16u, 64u, 256u, 1024u, 4096u, 16384u, 65536u, 262144u,
                          1048576u, 4194304u}) {
        double ae = factorial_probe_amplitude(n % 2 == 0 ? n : n + 1, M);
        double ao = factorial_probe_amplitude(n % 2 == 0 ? n + 1 : n, M);
        rows.push_back({{"n", n}, {"a_even", ae}, {"a_odd", ao}});
    }
    out.table = rows;
    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        write_json(ctx.outdir / "oscillation_oracle.json",
                   {{"M", M},
                    {"probe_n8_even", even8},
                    {"probe_n8_odd", odd8},
                    {"convergence", rows}});
    }
    return out;
}

inline OscillatingResult run_oscillating(const ExperimentContext& ctx) {
    OscillatingResult out;
    const auto& p = shared_wave();
    OscillationSequence seq;
    seq.xs = {1.0, 6.0, 36.0};
    seq.ts = {6.0, 216.0};
    seq.M = 4.0;
    seq.lambda_amp = 0.125;
    auto sc = make_oscillating(seq);

    const double t_end = 216.0, dt = 0.02;
    Grid2D grid{Grid1D::with_spacing(-60.0, 60.0 + 4.0 * std::sqrt(t_end), 0.05),
                Grid1D::with_spacing(0.0, 72.0, 0.25)};
    auto run = run_scenario_2d(sc, grid, dt, t_end, {6.0, 216.0}, ctx, p);

    out.gates.add_le("oscillating.sandwich_violation", run.sandwich_worst, 1e-8);

    // oracle amplitudes consistent with the zero-flux box
    auto mir = neumann_mirrored(sc.alpha_M, 0.0, 72.0, 10.0 * std::sqrt(4.0 * t_end));
    std::vector<double> meas, pred;
    for (double tn : seq.ts) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < run.times.size(); ++i)
            if (std::abs(run.times[i] - tn) < 0.5) k = i;
        std::size_t j0 = grid.gy.floor_index(0.0);
        meas.push_back(run.trace.rows[k].sigma_inf[j0]);
        pred.push_back(std::log(heat_exact_piecewise(mir, tn, 0.0)));
    }
    double c0 = 0.5 * ((meas[0] - pred[0]) + (meas[1] - pred[1]));
    double worst = 0.0;
    for (std::size_t i = 0; i < meas.size(); ++i)
        worst = std::max(worst, std::abs(meas[i] - pred[i] - c0));
    out.gates.add_le("oscillating.probe_match", worst, 0.15,
                     "max_n |sigma_inf(t_n,0) - ln a(t_n,0) - c0|; the desk probes "
                     "t = 6 and 216 sit deep in the pre-asymptotic regime");
    double gap_meas = meas[1] - meas[0];
    double gap_pred = pred[1] - pred[0];
    out.gates.add_ge("oscillating.gap_fraction", std::abs(gap_meas) / std::abs(gap_pred),
                     0.5,
                     "measured gap " + fmt_g(gap_meas) + " vs oracle gap " +
                         fmt_g(gap_pred) + " (signed ratio " +
                         fmt_g(gap_meas / gap_pred) + ")");

    out.table = {{"t_probes", seq.ts},
                 {"sigma_inf_measured", meas},
                 {"ln_a_oracle", pred},
                 {"c0", c0}};
    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        write_front2d_csv(ctx.outdir / "front2d_oscillating.csv", run.trace);
        write_json(ctx.outdir / "scenario_oscillating.json", scenario_json(sc));
        write_json(ctx.outdir / "oscillating_probes.json", out.table);
    }
    return out;
}

// ---------------------------------------------------------------------------
// heat oracle equivalence (CN vs erf closed form)
// ---------------------------------------------------------------------------

inline Gates run_heat_oracle(const ExperimentContext& ctx) {
    Gates gates;
    const double h = 0.05, dt = 0.01, t_end = 100.0;
    Grid1D g = Grid1D::with_spacing(-100.0, 100.0, h);
    PiecewiseConstant pc({-3.0, 2.0}, {0.5, 2.0, 1.0});
    Field1D a(g);
    for (std::size_t i = 0; i < a.size(); ++i) a.values[i] = pc(g.point(i));
    TridiagWorkspace ws;
    std::vector<double> lo, di, up, rhs;
    const auto nst = static_cast<std::size_t>(std::llround((t_end - 1.0) / dt));
    for (std::size_t k = 0; k < nst; ++k)
        heat_step_cn_inplace(a.values, h, dt, 1.0, ws, lo, di, up, rhs);
    double worst = 0.0;
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double exact = heat_exact_piecewise(pc, t_end, g.point(i));
        worst = std::max(worst, std::abs(a.values[i] - exact));
        if (ctx.write_artifacts && i % 40 == 0)
            rows.push_back({t_end, g.point(i), a.values[i]});
    }
    gates.add_le("heat.cn_vs_erf_Linf_t100", worst, 1e-6, "h = 0.05, dt = 0.01");
    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        write_csv(ctx.outdir / "heat_oracle.csv", {"t", "y", "a"}, rows);
    }
    return gates;
}

// ---------------------------------------------------------------------------
// spectral structure of L and M
// ---------------------------------------------------------------------------

inline Gates run_spectral(const ExperimentContext& ctx) {
    (void)ctx;
    Gates gates;
    const double h = 1e-3, Xi = 18.0;
    const auto n = static_cast<std::size_t>(std::llround(Xi / h));
    std::vector<double> ev(n + 1), gv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double xi = h * static_cast<double>(i);
        ev[i] = e0(xi);
        gv[i] = xi * std::exp(-xi * xi / 4.0);
    }
    auto Me = apply_M(ev, h);
    auto Lg = apply_L(gv, h);
    double me = 0.0, lg = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        me = std::max(me, std::abs(Me[i]));
        lg = std::max(lg, std::abs(Lg[i]));
    }
    gates.add_le("spectral.||M e0||_inf", me, 1e-8);
    gates.add_le("spectral.||L xi e^{-xi^2/4}||_inf", lg, 1e-8);

    const double hq = 2e-3;
    const auto nq = static_cast<std::size_t>(std::llround(Xi / hq));
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double pi = 3.14159265358979323846;
    double worst_rayleigh = 1e300;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> w(nq + 1, 0.0);
        for (int k = 1; k <= 12; ++k) {
            double ak = U(rng);
            for (std::size_t i = 0; i <= nq; ++i) {
                double xi = hq * static_cast<double>(i);
                w[i] += ak * std::sin(static_cast<double>(k) * pi * xi / 14.0) *
                        std::exp(-xi * xi / 8.0);
            }
        }
        auto r = q_residual(w, hq);
        double nn = l2_norm_halfline(r, hq);
        if (nn < 1e-8) continue;
        worst_rayleigh = std::min(worst_rayleigh, qform(r, hq) / (nn * nn));
    }
    gates.add_ge("spectral.min_rayleigh_complement", worst_rayleigh, 0.99,
                 "100 random band-limited profiles, e0 component removed");
    return gates;
}

// ---------------------------------------------------------------------------
// Dirichlet-problem scaling sweep and y-localized decay
// ---------------------------------------------------------------------------

inline DirichletProblem standard_dirichlet_problem(double epsilon, double lambda,
                                                   bool with_forcing) {
    DirichletProblem p;
    p.epsilon = epsilon;
    p.lambda = lambda;
    p.C0 = 1.0;
    if (with_forcing) {
        p.phi = [](double tau) { return std::cos(tau); };
        p.psi = [](double tau) { return 0.8 * std::sin(1.3 * tau + 0.4); };
        p.f = [](double tau, double xi) {
            if (xi >= 3.0) return 0.0;
            double b = std::sin(3.14159265358979323846 * xi / 3.0);
            return std::cos(0.7 * tau) * b * b;
        };
        p.f_support_hi = 3.0;
    } else {
        p.phi = [](double) { return 0.0; };
        p.psi = [](double) { return 0.0; };
        p.f = [](double, double) { return 0.0; };
    }
    p.xi_grid = Grid1D(0.0, 18.0, 360);
    p.y_grid = Grid1D(-20.0, 20.0, 160);
    p.dtau = 1e-3;

    SeparableComponent a;
    a.g.resize(p.xi_grid.points());
    for (std::size_t i = 0; i < a.g.size(); ++i) {
        double xi = p.xi_grid.point(i);
        a.g[i] = xi * std::exp(-xi * xi / 4.0);
    }
    a.m = PiecewiseConstant({-6.0, 6.0}, {0.4, 1.0, 0.4});
    SeparableComponent b;
    b.g.resize(p.xi_grid.points());
    for (std::size_t i = 0; i < b.g.size(); ++i) {
        double xi = p.xi_grid.point(i);
        b.g[i] = 0.25 * xi * xi * xi * std::exp(-xi * xi / 4.0);
    }
    b.m = PiecewiseConstant({-3.0, 3.0}, {0.2, 0.8, 0.2});
    SeparableComponent c;
    c.g.assign(p.xi_grid.points(), 0.0);
    c.m = PiecewiseConstant({}, {1.0});
    c.receives_forcing = true;
    p.v0 = {a, b, c};
    return p;
}

inline Gates run_dirichlet_sweep(const ExperimentContext& ctx) {
    Gates gates;
    const double lambda = 0.4, tau_end = 8.0;
    std::vector<double> chats;
    for (double eps : {0.05, 0.1, 0.2}) {
        auto p = standard_dirichlet_problem(eps, lambda, true);
        auto rec = run_dirichlet(p, tau_end);
        const double e2l = std::pow(eps, 2.0 * lambda);
        double chat = 0.0;
        for (double b : rec.beta_sup) chat = std::max(chat, b / e2l);
        chats.push_back(chat);
        gates.add_le("thm41.beta_hat_C_eps" + fmt_g(eps), chat, 10.0,
                     "sup_tau ||beta||_inf / eps^{2 lambda}");
        double renv_worst = 0.0;
        for (std::size_t k = 0; k < rec.taus.size(); ++k) {
            double tau = rec.taus[k];
            if (tau < 1.0) continue;
            double env = std::max(10.0 * e2l * std::exp(-lambda * tau),
                                  10.0 * std::exp(-0.75 * tau) * rec.r0_norm);
            renv_worst = std::max(renv_worst, rec.r_norm[k] / env);
        }
        gates.add_le("thm41.r_envelope_eps" + fmt_g(eps), renv_worst, 1.0,
                     "max_tau ||r|| / max(10 eps^{2l} e^{-l tau}, 10 e^{-0.75 tau} ||r0||)");
        if (ctx.write_artifacts) {
            ctx.ensure_outdir();
            std::vector<std::vector<double>> rows;
            for (std::size_t k = 0; k < rec.taus.size(); ++k) {
                double asup = 0.0;
                for (double v : rec.alpha[k]) asup = std::max(asup, std::abs(v));
                rows.push_back({rec.taus[k], asup, rec.beta_sup[k], rec.r_norm[k],
                                rec.vtilde_sup[k]});
            }
            write_csv(ctx.outdir / ("decomposition_eps" + fmt_g(eps) + ".csv"),
                      {"tau", "alpha_sup", "beta_sup", "r_norm", "vtilde_sup"}, rows);
        }
    }
    double ratio = *std::max_element(chats.begin(), chats.end()) /
                   *std::min_element(chats.begin(), chats.end());
    gates.add_le("thm41.C_hat_max_over_min", ratio, 3.0,
                 "epsilon-independence of the fitted constant");

    // alpha_c slaving with the lower-order terms switched off
    auto p0 = standard_dirichlet_problem(0.1, lambda, false);
    auto rec0 = run_dirichlet(p0, 6.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < rec0.taus.size(); ++k) {
        double s = (std::exp(rec0.taus[k]) - 1.0) / (0.1 * 0.1);
        for (std::size_t j = 0; j < rec0.ys.size(); ++j) {
            double oracle = 0.0;
            for (const auto& c : p0.v0) {
                std::vector<double> col(p0.xi_grid.points());
                (void)col;
            }
            (void)s;
            (void)j;
        }
        (void)k;
        break;
    }
    // oracle: alpha(0,.) is a piecewise-constant combination; evolve it exactly
    {
        std::vector<double> coef;
        for (const auto& comp : p0.v0) {
            std::vector<double> wv(p0.xi_grid.points() - 2);
            for (std::size_t i = 0; i + 2 < p0.xi_grid.points(); ++i) {
                double xi = p0.xi_grid.point(i + 1);
                wv[i] = std::exp(xi * xi / 8.0) * comp.g[i + 1];
            }
            detail::DiscreteM M(p0.xi_grid);
            coef.push_back(M.project(wv));
        }
        worst = 0.0;
        for (std::size_t k = 0; k < rec0.taus.size(); ++k) {
            double s = (std::exp(rec0.taus[k]) - 1.0) / (0.1 * 0.1);
            for (std::size_t j = 0; j < rec0.ys.size(); ++j) {
                double oracle = 0.0;
                for (std::size_t c = 0; c < p0.v0.size(); ++c)
                    oracle += coef[c] *
                              heat_exact_piecewise(p0.v0[c].m, 1.0 + s, rec0.ys[j]);
                worst = std::max(worst, std::abs(rec0.alpha[k][j] - oracle));
            }
        }
    }
    gates.add_le("thm41.alpha_c_slaving", worst, 1e-6,
                 "free e0-projection vs the erf oracle in rescaled time");
    return gates;
}

inline Gates run_prop41(const ExperimentContext& ctx) {
    Gates gates;
    auto p = standard_dirichlet_problem(0.1, 0.4, false);
    SeparableComponent c;
    c.g.resize(p.xi_grid.points());
    for (std::size_t i = 0; i < c.g.size(); ++i) {
        double xi = p.xi_grid.point(i);
        c.g[i] = xi * std::exp(-xi * xi / 4.0);
    }
    c.m = PiecewiseConstant({-5.0, 5.0}, {0.0, 1.0, 0.0});
    p.v0 = {c};
    auto series = prop41_decay(p, 6.0);
    double v0 = series.front().second;
    double v1 = 0.0, v6 = 0.0;
    double env_worst = 1.0;
    for (auto& [tau, v] : series) {
        if (std::abs(tau - 1.0) < 1e-9) v1 = v;
        if (std::abs(tau - 6.0) < 1e-9) v6 = v;
    }
    for (auto& [tau, v] : series) {
        if (tau < 1.0) continue;
        double env = v1 * std::exp(-0.5 * (tau - 1.0));
        env_worst = std::max(env_worst, std::max(v / (2.0 * env), 0.5 * env / v));
    }
    gates.add_le("prop41.decay_ratio_tau6", v6 / v0, 0.1);
    gates.add_le("prop41.envelope_factor", env_worst, 1.0,
                 "v(tau)/v(1) within a factor 2 of e^{-(tau-1)/2} on [1,6]");
    if (ctx.write_artifacts) {
        ctx.ensure_outdir();
        std::vector<std::vector<double>> rows;
        for (auto& [tau, v] : series) rows.push_back({tau, v});
        write_csv(ctx.outdir / "prop41_decay.csv", {"tau", "sup_v_over_xi"}, rows);
    }
    return gates;
}

}  // namespace frontlab
