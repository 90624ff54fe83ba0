// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "enclose/engine.hpp"
#include "enclose/logio.hpp"
#include "enclose/pe.hpp"
#include "enclose/scenario_json.hpp"

namespace fs = std::filesystem;
using namespace enclose;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double fitted_slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double log10_floor(double v) { return std::log10(std::max(v, 1e-300)); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

Measurement make_measurement(const Vec2& p, const Vec2& v) {
    Measurement m;
    m.d_now = p.norm();
    m.d_next = (p + v).norm();
    m.v_ij = v;
    return m;
}

// ---- criterion 1: range-combination identity --------------------------------

Outcome criterion_cosine_law() {
    std::mt19937_64 gen(101);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const Vec2 p{uniform(gen, -5.0, 5.0), uniform(gen, -5.0, 5.0)};
        const Vec2 v{uniform(gen, -2.0, 2.0), uniform(gen, -2.0, 2.0)};
        const double z = zeta(make_measurement(p, v));
        const double scale = std::max({1.0, std::abs(v.dot(p)), v.norm() * p.norm()});
        worst = std::max(worst, std::abs(z - v.dot(p)) / scale);
    }
    return {worst < 1e-12, fmt("worst relative error %.3g over 1e4 pairs", worst)};
}

// ---- criterion 2: recursive estimate vs batch minimizer ---------------------

Outcome criterion_rlse_oracle() {
    std::mt19937_64 gen(102);
    double worst = 0.0;
    for (int history = 0; history < 20; ++history) {
        Vec2 p{uniform(gen, -5.0, 5.0), uniform(gen, -5.0, 5.0)};
        EdgeEstimator est;
        est.beta_f = 0.7;
        std::vector<Measurement> prefix;
        for (int k = 0; k < 200; ++k) {
            const Vec2 v{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
            const Measurement m = make_measurement(p, v);
            p += v;
            est = rlse_update(est, m);
            prefix.push_back(m);
            const Vec2 batch = batch_oracle(prefix, {0.0, 0.0}, Mat2::identity(), 0.7);
            const double err = (est.p_hat - batch).norm() / std::max(1.0, batch.norm());
            worst = std::max(worst, err);
        }
    }
    return {worst < 1e-6, fmt("worst recursive/batch gap %.3g over 20x200 steps", worst)};
}

// ---- criterion 3: gain matrix positive definiteness --------------------------

Outcome criterion_gamma_pd() {
    double least = 1e300;
    for (const double beta_f : {0.5, 0.7, 0.95}) {
        std::mt19937_64 gen(103);
        EdgeEstimator est;
        est.beta_f = beta_f;
        Vec2 p{1.0, -1.0};
        for (int k = 0; k < 100000; ++k) {
            const Vec2 v{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
            est = rlse_update(est, make_measurement(p, v));
            p += v;
            const double lo = symmetric_eigenvalues(est.gamma).min;
            least = std::min(least, lo);
            if (lo <= 0.0)
                return {false, fmt("eigenvalue %.3g at beta_f %.2f", lo, beta_f)};
        }
    }
    return {true, fmt("smallest eigenvalue %.3g across 3x1e5 updates", least)};
}

// ---- criterion 4: oscillator equilibrium -------------------------------------

Outcome criterion_oscillator() {
    std::mt19937_64 gen(104);
    for (std::size_t n : {3u, 4u, 5u}) {
        OscillatorState s;
        s.omega = M_PI / 2.0;
        s.gains = default_gains(n);
        s.adjacency = uniform_adjacency(n);
        const double theta0 = uniform(gen, 0.0, 2.0 * M_PI);
        for (std::size_t i = 0; i < n; ++i)
            s.phases.push_back(theta0 + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n) +
                               uniform(gen, -0.3, 0.3));
        for (int k = 0; k < 2000; ++k) s = phase_step(s, 0.125);
        const double spread = phase_spread(s.phases, n);
        if (spread >= 1e-3)
            return {false, fmt("n=%g spread %.3g after 2000 steps", static_cast<double>(n), spread)};

        OscillatorState balanced = s;
        for (std::size_t i = 0; i < n; ++i)
            balanced.phases[i] =
                theta0 + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(coupling_term(balanced, i)) >= 1e-12)
                return {false, "coupling does not vanish at the balanced pattern"};
    }
    return {true, "spread < 1e-3 by step 2000 for n in {3,4,5}; balanced coupling < 1e-12"};
}

// ---- criteria 5-6, 8-9 operate on the bundled tracking scenario --------------

struct ScenarioARun {
    ScenarioConfig cfg;
    TrajectoryLog log;
    MetricSeries series;
    std::size_t k_o = 0;
};

ScenarioARun run_scenario_a(const fs::path& scenario_dir) {
    ScenarioARun r;
    r.cfg = parse_scenario(scenario_dir / "paper_sim_a.json");
    r.log = run(r.cfg);
    r.series = metrics(r.log);
    const auto k_o = detect_equilibrium(r.series.phase_spread, 1e-3, 50);
    if (!k_o) throw NumericError("scenario A never reaches phase equilibrium");
    r.k_o = *k_o;
    return r;
}

Outcome criterion_scenario_a(const ScenarioARun& r) {
    const double final_loc = r.series.max_rel_loc_error.back();
    std::vector<double> log_loc, log_pbar;
    for (std::size_t k = r.k_o; k < r.series.max_rel_loc_error.size(); ++k) {
        log_loc.push_back(log10_floor(r.series.max_rel_loc_error[k]));
        log_pbar.push_back(log10_floor(r.series.max_pbar[k]));
    }
    const double slope_loc = fitted_slope(log_loc);
    const double slope_pbar = fitted_slope(log_pbar);
    const double track_600 = r.series.tracking_error.at(600);

    const bool pass = final_loc < 1e-2 && slope_loc < 0.0 && track_600 < 5e-2 &&
                      slope_pbar < 0.0;
    return {pass, fmt("final loc err %.3g, post-equilibrium slopes %.3g", final_loc, slope_loc) +
                      fmt(" / %.3g, tracking at k=600 %.3g", slope_pbar, track_600)};
}

Outcome criterion_pe(const ScenarioARun& r) {
    const std::size_t N = window_period(r.cfg.T, r.cfg.omega);
    if (N != 32) return {false, fmt("expected N=32, got %g", static_cast<double>(N))};
    const double bound =
        alpha2_bound(N, r.cfg.T, r.cfg.rho_schedule.base_rho, r.cfg.omega_cap, r.cfg.u_bar);

    double worst_min = 1e300, worst_max = 0.0;
    for (const EdgeKey& edge : r.log.edge_columns) {
        // Realized relative displacements of this edge over the whole run.
        std::vector<Vec2> v;
        auto pos = [&](const StepRecord& rec, AgentId id) {
            if (id == kTargetId) return rec.target_pos;
            for (std::size_t a = 0; a < rec.alive.size(); ++a)
                if (rec.alive[a] == id) return rec.positions[a];
            throw NumericError("agent missing from record");
        };
        for (std::size_t k = 0; k + 1 < r.log.records.size(); ++k) {
            const Vec2 d_hi = pos(r.log.records[k + 1], edge.hi) - pos(r.log.records[k], edge.hi);
            const Vec2 d_lo = pos(r.log.records[k + 1], edge.lo) - pos(r.log.records[k], edge.lo);
            v.push_back(d_hi - d_lo);
        }
        for (std::size_t l = r.k_o; l + N <= v.size(); ++l) {
            const PEReport rep = gramian(v, l, N, edge, bound);
            worst_min = std::min(worst_min, rep.lambda_min);
            worst_max = std::max(worst_max, rep.lambda_max);
            if (rep.lambda_min <= 1e-8 || rep.lambda_max > bound + 1e-9)
                return {false, fmt("edge window l=%g: lambda_min %.3g, lambda_max %.3g",
                                   static_cast<double>(l), rep.lambda_min, rep.lambda_max)};
        }
    }
    return {true, fmt("all windows: lambda_min >= %.3g, lambda_max <= %.4g (bound %.4g)",
                      worst_min, worst_max, bound)};
}

// ---- criterion 7: maneuver scenario with mid-run fault ------------------------

Outcome criterion_scenario_b(const fs::path& scenario_dir) {
    const ScenarioConfig cfg = parse_scenario(scenario_dir / "paper_sim_b.json");
    const TrajectoryLog log = run(cfg);

    // Radius schedule: |r_i(k)| must equal 2 sin(k pi / 100) + 4 exactly.
    double worst_rho = 0.0;
    for (const StepRecord& rec : log.records) {
        const double expected =
            2.0 * std::sin(static_cast<double>(rec.k) * M_PI / 100.0) + 4.0;
        const AffineParams affine = cfg.rho_schedule.affine.at(rec.k);
        for (double theta : rec.phases) {
            const Vec2 r = affine_apply(affine, desired_position(theta, cfg.rho_schedule.base_rho));
            worst_rho = std::max(worst_rho, std::abs(r.norm() - expected));
        }
    }
    if (worst_rho >= 1e-9)
        return {false, fmt("radius schedule deviates by %.3g", worst_rho)};

    // Fault recovery: the surviving trio re-balances within 1500 steps.
    const std::size_t fault_step = 250;
    std::vector<double> spread_after;
    for (const StepRecord& rec : log.records)
        if (rec.k > fault_step) spread_after.push_back(rec.phase_spread);
    const auto rebalance = detect_equilibrium(spread_after, 1e-3, 1);
    if (!rebalance || *rebalance >= 1500)
        return {false, "survivors did not re-balance within 1500 steps of the fault"};
    if (log.records[fault_step].alive.size() != 4 ||
        log.records[fault_step + 1].alive.size() != 3)
        return {false, "fault did not remove UAV 4 at step 250"};
    return {true, fmt("radius deviation %.3g; trio re-balanced %g steps after the fault",
                      worst_rho, static_cast<double>(*rebalance + 1))};
}

// ---- criterion 8: control contracts ------------------------------------------

Outcome criterion_control(const ScenarioARun& r, const fs::path& scenario_dir) {
    std::mt19937_64 gen(108);
    for (int trial = 0; trial < 10000; ++trial) {
        const Vec2 u{uniform(gen, -10.0, 10.0), uniform(gen, -10.0, 10.0)};
        const double cap = uniform(gen, 0.1, 5.0);
        const Vec2 s = saturate(u, cap);
        const double expect = std::min(u.norm(), cap);
        if (std::abs(s.norm() - expect) > 1e-12 * std::max(1.0, expect))
            return {false, "saturation norm contract violated"};
        if (std::abs(u.cross(s)) > 1e-12 * std::max(1.0, u.norm() * s.norm()))
            return {false, "saturation direction contract violated"};
    }

    // Frame independence: translate a mid-run world and compare one step.
    WorldState w = make_world(r.cfg);
    ScenarioConfig cfg = r.cfg;
    for (int k = 0; k < 120; ++k) w = step(w, cfg).world;
    WorldState moved = w;
    const Vec2 shift{271.5, -98.25};
    for (std::size_t i = 1; i < moved.positions.size(); ++i) moved.positions[i] += shift;
    moved.target_pos += shift;
    for (Vec2& p : moved.target_path) p += shift;
    const StepResult sa = step(w, cfg);
    const StepResult sb = step(moved, cfg);
    double worst_shift = 0.0;
    for (std::size_t i = 0; i < sa.controls.inputs.size(); ++i)
        worst_shift =
            std::max(worst_shift, (sa.controls.inputs[i].u - sb.controls.inputs[i].u).norm());
    if (worst_shift >= 1e-12)
        return {false, fmt("translation changed a command by %.3g", worst_shift)};

    // Velocity budget u_bar + rho*Omega + U0 on both bundled runs.
    const double u0_a = *r.cfg.target_model.u0_max;
    const double budget_a =
        r.cfg.u_bar + r.cfg.rho_schedule.effective_rho_upper() * r.cfg.omega_cap + u0_a;
    double worst_a = 0.0;
    for (const ControlRecord& rec : r.log.controls)
        for (const ControlInput& c : rec.inputs) worst_a = std::max(worst_a, c.u.norm());
    if (worst_a > budget_a + 1e-9)
        return {false, fmt("tracking run: |u| %.4g exceeds budget %.4g", worst_a, budget_a)};

    const ScenarioConfig cfg_b = parse_scenario(scenario_dir / "paper_sim_b.json");
    const TrajectoryLog log_b = run(cfg_b);
    const double budget_b = cfg_b.u_bar +
                            cfg_b.rho_schedule.effective_rho_upper() * cfg_b.omega_cap +
                            *cfg_b.target_model.u0_max;
    double worst_b = 0.0;
    for (const ControlRecord& rec : log_b.controls)
        for (const ControlInput& c : rec.inputs) worst_b = std::max(worst_b, c.u.norm());
    if (worst_b > budget_b + 1e-9)
        return {false, fmt("maneuver run: |u| %.4g exceeds budget %.4g", worst_b, budget_b)};

    return {true, fmt("saturation exact; translation gap %.3g; peak |u| %.4g / %.4g within budget",
                      worst_shift, worst_a, worst_b)};
}

// ---- criterion 9: byte-identical reruns ---------------------------------------

Outcome criterion_determinism(const ScenarioARun& r) {
    const fs::path dir = fs::temp_directory_path() / "enclose_acceptance_det";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const TrajectoryLog again = run(r.cfg);
    write_trajectory_csv(r.log, dir / "traj_1.csv");
    write_trajectory_csv(again, dir / "traj_2.csv");
    write_metrics_csv(r.log, dir / "metrics_1.csv");
    write_metrics_csv(again, dir / "metrics_2.csv");

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    };
    const bool traj_same = slurp(dir / "traj_1.csv") == slurp(dir / "traj_2.csv");
    const bool metrics_same = slurp(dir / "metrics_1.csv") == slurp(dir / "metrics_2.csv");
    return {traj_same && metrics_same,
            traj_same && metrics_same ? "trajectory and metrics CSVs byte-identical"
                                      : "rerun produced different bytes"};
}

}  // namespace

int main(int argc, char* argv[]) {
    const fs::path scenario_dir = argc > 1 ? fs::path(argv[1]) : fs::path("scenarios");

    int failures = 0;
    int index = 0;
    auto report = [&](const std::string& name, const std::function<Outcome()>& fn) {
        ++index;
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %-28s %s\n", out.pass ? "PASS" : "FAIL", index,
                    name.c_str(), out.detail.c_str());
        if (!out.pass) ++failures;
    };

    try {
        report("cosine-law identity", criterion_cosine_law);
        report("recursion vs batch minimizer", criterion_rlse_oracle);
        report("gain positive definiteness", criterion_gamma_pd);
        report("oscillator equilibrium", criterion_oscillator);

        const ScenarioARun a = run_scenario_a(scenario_dir);
        std::printf("       (tracking scenario: equilibrium at k_o=%zu)\n", a.k_o);
        report("tracking scenario regression", [&] { return criterion_scenario_a(a); });
        report("persistent excitation", [&] { return criterion_pe(a); });
        report("maneuver scenario regression",
               [&] { return criterion_scenario_b(scenario_dir); });
        report("control contracts", [&] { return criterion_control(a, scenario_dir); });
        report("deterministic reruns", [&] { return criterion_determinism(a); });
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance suite aborted: %s\n", e.what());
        return 99;
    }

    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures;
}
