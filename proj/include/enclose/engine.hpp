#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "enclose/control.hpp"
#include "enclose/errors.hpp"
#include "enclose/formation.hpp"
#include "enclose/graph.hpp"
#include "enclose/localization.hpp"
#include "enclose/oscillator.hpp"
#include "enclose/random.hpp"
#include "enclose/scenario.hpp"
#include "enclose/validate.hpp"

namespace enclose {

// Full simulation state. True positions live here and are hidden from the
// controllers, which only ever see estimates and measurements.
struct WorldState {
    std::size_t k = 0;
    ExtendedGraph graph;                    // survivors only
    std::vector<Vec2> positions;            // indexed by agent id; [0] unused
    Vec2 target_pos;
    std::vector<double> phases;             // indexed by agent id, unwrapped
    std::vector<double> osc_gains;          // for the current fleet size
    std::map<EdgeKey, EdgeEstimator> estimators;
    std::vector<Vec2> target_path;          // positions for steps 0..steps
    Rng noise_rng{0};

    std::vector<AgentId> alive() const {
        return {graph.uavs.begin(), graph.uavs.end()};
    }
};

// State of the world at one step, as logged.
struct StepRecord {
    std::size_t k = 0;
    Vec2 target_pos;
    std::vector<AgentId> alive;
    std::vector<Vec2> positions;   // aligned with alive
    std::vector<double> phases;    // aligned with alive
    double phase_spread = 0.0;
    double tracking_error = 0.0;
    double max_rel_loc_error = 0.0;
    std::map<EdgeKey, double> edge_errors;
};

// Commands applied at one step (the step from k to k+1).
struct ControlRecord {
    std::size_t k = 0;
    std::vector<AgentId> agents;
    std::vector<ControlInput> inputs;  // aligned with agents
};

struct TrajectoryLog {
    ScenarioConfig cfg;                  // resolved
    std::vector<EdgeKey> edge_columns;   // initial extended edges, fixes the CSV schema
    std::vector<StepRecord> records;     // steps+1 entries
    std::vector<ControlRecord> controls; // steps entries
};

struct MetricSeries {
    std::vector<double> tracking_error;
    std::vector<double> max_rel_loc_error;
    std::vector<double> phase_spread;
    std::vector<double> max_pbar;  // max_i |p_i - r_i - p_0| over survivors
    std::map<AgentId, std::vector<double>> pbar;  // per-agent |p_i - r_i - p_0|, NaN once removed
};

namespace detail {

inline Vec2 position_of(const WorldState& w, AgentId id) {
    return id == kTargetId ? w.target_pos : w.positions[static_cast<std::size_t>(id)];
}

// Relative-position estimate p_i - p_j read off the canonical edge store.
inline Vec2 estimate_for(const std::map<EdgeKey, EdgeEstimator>& est, AgentId i, AgentId j) {
    const EdgeKey key(i, j);
    const auto it = est.find(key);
    if (it == est.end())
        throw NumericError("engine: missing estimator for edge " + std::to_string(key.lo) +
                           "-" + std::to_string(key.hi));
    return i == key.hi ? it->second.p_hat : -it->second.p_hat;
}

inline Vec2 setpoint_at(const ScenarioConfig& cfg, const AffineParams& affine, double theta) {
    return affine_apply(affine, desired_position(theta, cfg.rho_schedule.base_rho));
}

}  // namespace detail

// Initial world: estimators at zero with identity gain, phases and positions
// from the scenario or, when absent, seeded draws (positions first, then
// phases) around the target's start.
inline WorldState make_world(const ScenarioConfig& raw) {
    ScenarioConfig cfg = raw;
    cfg.resolve();

    WorldState w;
    w.graph = build_topology(cfg.n, cfg.target_sensors);
    w.target_path = cfg.target_model.make_path(cfg.steps + 1, cfg.T);
    w.target_pos = w.target_path.front();
    w.osc_gains = cfg.osc_gains;
    w.noise_rng = Rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

    const std::size_t n = static_cast<std::size_t>(cfg.n);
    w.positions.assign(n + 1, Vec2{});
    w.phases.assign(n + 1, 0.0);

    Rng init_rng(cfg.seed);
    if (cfg.initial_positions) {
        if (cfg.initial_positions->size() != n)
            throw ValidationError("make_world: initial_positions length must equal n");
        for (std::size_t i = 0; i < n; ++i)
            w.positions[i + 1] = (*cfg.initial_positions)[i];
    } else {
        for (std::size_t i = 0; i < n; ++i)
            w.positions[i + 1] = w.target_pos + init_rng.in_disk(2.0 * cfg.rho_schedule.base_rho);
    }
    if (cfg.initial_phases) {
        if (cfg.initial_phases->size() != n)
            throw ValidationError("make_world: initial_phases length must equal n");
        for (std::size_t i = 0; i < n; ++i)
            w.phases[i + 1] = (*cfg.initial_phases)[i];
    } else {
        for (std::size_t i = 0; i < n; ++i)
            w.phases[i + 1] = init_rng.uniform(0.0, 2.0 * M_PI);
    }

    EdgeEstimator init;
    init.p_hat = Vec2{};
    init.gamma = Mat2::identity();
    init.beta_f = cfg.beta_f;
    for (const EdgeKey& e : w.graph.extended_edges()) w.estimators[e] = init;
    return w;
}

// Removes a UAV mid-run: survivors keep their states and estimator memory;
// the topology, weights, and oscillator gains are rebuilt for the smaller
// fleet, and estimators on severed edges are dropped.
inline WorldState inject_fault(const WorldState& world, AgentId uav) {
    if (!world.graph.contains(uav))
        throw ValidationError("inject_fault: UAV " + std::to_string(uav) +
                              " is unknown or already removed");
    WorldState w = world;
    w.graph = world.graph.without(uav);
    for (auto it = w.estimators.begin(); it != w.estimators.end();)
        it = it->first.touches(uav) ? w.estimators.erase(it) : std::next(it);
    w.osc_gains = default_gains(w.graph.n());
    return w;
}

// State snapshot with the logged metrics evaluated against ground truth.
inline StepRecord snapshot(const WorldState& w) {
    StepRecord rec;
    rec.k = w.k;
    rec.target_pos = w.target_pos;
    rec.alive = w.alive();
    for (AgentId i : rec.alive) {
        rec.positions.push_back(w.positions[static_cast<std::size_t>(i)]);
        rec.phases.push_back(w.phases[static_cast<std::size_t>(i)]);
    }

    if (rec.alive.size() >= 2)
        rec.phase_spread = phase_spread(rec.phases, rec.alive.size());

    Vec2 mean;
    for (const Vec2& p : rec.positions) mean += p;
    mean = mean / static_cast<double>(rec.positions.size());
    rec.tracking_error = (mean - w.target_pos).norm();

    for (const auto& [edge, est] : w.estimators) {
        const Vec2 truth =
            detail::position_of(w, edge.hi) - detail::position_of(w, edge.lo);
        const double err = (est.p_hat - truth).norm();
        rec.edge_errors[edge] = err;
        rec.max_rel_loc_error = std::max(rec.max_rel_loc_error, err);
    }
    return rec;
}

struct StepResult {
    WorldState world;
    ControlRecord controls;
};

// One synchronous step:
//   1. advance the oscillator and form current/next setpoints,
//   2. compute controls from the previous step's estimates,
//   3. move the target and the agents,
//   4. synthesize measurements across the motion and update every estimator.
// Estimates produced here feed the controls of the next step.
inline StepResult step(const WorldState& world, const ScenarioConfig& raw) {
    ScenarioConfig cfg = raw;
    cfg.resolve();

    const std::size_t k = world.k;
    if (k + 1 >= world.target_path.size())
        throw NumericError("step: stepped beyond the configured horizon at k=" +
                           std::to_string(k));

    WorldState next = world;
    next.k = k + 1;

    const std::vector<AgentId> alive = world.alive();
    const std::size_t m = alive.size();

    // Stage 1: phases and setpoints.
    OscillatorState osc;
    osc.omega = cfg.omega;
    osc.gains = world.osc_gains;
    osc.adjacency.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t a = 0; a < m; ++a) {
        osc.phases.push_back(world.phases[static_cast<std::size_t>(alive[a])]);
        for (std::size_t b = 0; b < m; ++b)
            osc.adjacency[a][b] = world.graph.uav_weight(alive[a], alive[b]);
    }
    const OscillatorState osc_next = phase_step(osc, cfg.T);

    const AffineParams affine_now = cfg.rho_schedule.affine.at(k);
    const AffineParams affine_next = cfg.rho_schedule.affine.at(k + 1);
    std::map<AgentId, DesiredSetpoint> setpoints;
    for (std::size_t a = 0; a < m; ++a) {
        DesiredSetpoint sp;
        sp.r = detail::setpoint_at(cfg, affine_now, osc.phases[a]);
        const Vec2 r_next = detail::setpoint_at(cfg, affine_next, osc_next.phases[a]);
        sp.dr = desired_displacement(r_next, sp.r);
        setpoints[alive[a]] = sp;
    }

    // Stage 2: controls from last step's estimates.
    const Vec2 v0 = world.target_path[k + 1] - world.target_path[k];
    const Vec2 u0 = v0 / cfg.T;
    ControlRecord ctl;
    ctl.k = k;
    ctl.agents = alive;
    for (AgentId i : alive) {
        std::map<AgentId, Vec2> estimates;
        std::map<AgentId, Vec2> desired;
        std::map<AgentId, double> weights;
        for (AgentId j : world.graph.extended_neighbors(i)) {
            estimates[j] = detail::estimate_for(world.estimators, i, j);
            desired[j] = j == kTargetId
                             ? desired_relative_to_target(setpoints[i].r)
                             : desired_relative(setpoints[i].r, setpoints[j].r);
            weights[j] = world.graph.weight(i, j);
        }
        const Vec2 u_bar = consensus_term(estimates, desired, weights, cfg.beta);
        ctl.inputs.push_back(control_input(u_bar, cfg.u_bar, setpoints[i].dr, cfg.T, u0));
    }

    // Stage 3: motion (synchronous, from the frozen snapshot).
    next.target_pos = world.target_path[k + 1];
    for (std::size_t a = 0; a < m; ++a) {
        const Vec2& u = ctl.inputs[a].u;
        if (!u.finite())
            throw NumericError("step: non-finite control for uav" + std::to_string(alive[a]) +
                               " at k=" + std::to_string(k));
        if (u.norm() > cfg.u_max + 1e-9)
            throw NumericError("step: velocity bound exceeded by uav" + std::to_string(alive[a]) +
                               " at k=" + std::to_string(k));
        const std::size_t idx = static_cast<std::size_t>(alive[a]);
        next.positions[idx] = world.positions[idx] + u * cfg.T;
        if (!next.positions[idx].finite())
            throw NumericError("step: non-finite position for uav" + std::to_string(alive[a]) +
                               " at k=" + std::to_string(k));
        next.phases[idx] = osc_next.phases[a];
    }

    // Stage 4: measurements across the motion, then estimator updates, so the
    // new estimates are available to the controls of step k+1.
    const bool noisy = cfg.noise && (cfg.noise->d_std > 0.0 || cfg.noise->v_std > 0.0);
    for (auto& [edge, est] : next.estimators) {
        const Vec2 a_now = detail::position_of(world, edge.hi);
        const Vec2 b_now = detail::position_of(world, edge.lo);
        const Vec2 a_next = detail::position_of(next, edge.hi);
        const Vec2 b_next = detail::position_of(next, edge.lo);
        Measurement meas;
        meas.d_now = (a_now - b_now).norm();
        meas.d_next = (a_next - b_next).norm();
        meas.v_ij = (a_next - a_now) - (b_next - b_now);
        if (noisy) {
            meas.d_now = std::max(0.0, meas.d_now + next.noise_rng.normal(0.0, cfg.noise->d_std));
            meas.d_next = std::max(0.0, meas.d_next + next.noise_rng.normal(0.0, cfg.noise->d_std));
            meas.v_ij.x += next.noise_rng.normal(0.0, cfg.noise->v_std);
            meas.v_ij.y += next.noise_rng.normal(0.0, cfg.noise->v_std);
        }
        est = rlse_update(est, meas);
        if (!est.p_hat.finite() || !est.gamma.finite())
            throw NumericError("step: non-finite estimator state on edge " +
                               std::to_string(edge.lo) + "-" + std::to_string(edge.hi) +
                               " at k=" + std::to_string(k));
    }

    return {std::move(next), std::move(ctl)};
}

// Full scenario run: validation gate, then `steps` pipeline iterations with
// scheduled faults applied at the start of their step. Deterministic for a
// fixed config, seed included.
inline TrajectoryLog run(const ScenarioConfig& raw) {
    ScenarioConfig cfg = raw;
    cfg.resolve();

    const ValidationReport report = validate_scenario(cfg);
    if (!report.ok()) {
        std::string what = "run: scenario validation failed:\n" + report.to_text();
        throw ValidationError(what);
    }

    std::multimap<std::size_t, AgentId> faults;
    for (const FaultEvent& f : cfg.fault_schedule) faults.emplace(f.step, f.uav);

    TrajectoryLog log;
    log.cfg = cfg;

    WorldState world = make_world(cfg);
    log.edge_columns = world.graph.extended_edges();
    log.records.push_back(snapshot(world));

    for (std::size_t k = 0; k < cfg.steps; ++k) {
        for (auto [it, end] = faults.equal_range(k); it != end; ++it)
            world = inject_fault(world, it->second);
        StepResult result = step(world, cfg);
        world = std::move(result.world);
        log.controls.push_back(std::move(result.controls));
        log.records.push_back(snapshot(world));
    }
    return log;
}

// Derived series, including the per-agent formation error p_i - r_i - p_0
// reconstructed from the logged phases and the shape schedule.
inline MetricSeries metrics(const TrajectoryLog& log) {
    if (log.records.empty()) throw std::invalid_argument("metrics: empty log");
    MetricSeries series;
    for (int i = 1; i <= log.cfg.n; ++i) series.pbar[i] = {};
    for (const StepRecord& rec : log.records) {
        series.tracking_error.push_back(rec.tracking_error);
        series.max_rel_loc_error.push_back(rec.max_rel_loc_error);
        series.phase_spread.push_back(rec.phase_spread);

        const AffineParams affine = log.cfg.rho_schedule.affine.at(rec.k);
        double worst = 0.0;
        for (auto& [id, column] : series.pbar)
            column.push_back(std::numeric_limits<double>::quiet_NaN());
        for (std::size_t a = 0; a < rec.alive.size(); ++a) {
            const Vec2 r = detail::setpoint_at(log.cfg, affine, rec.phases[a]);
            const double err = (rec.positions[a] - r - rec.target_pos).norm();
            series.pbar[rec.alive[a]].back() = err;
            worst = std::max(worst, err);
        }
        series.max_pbar.push_back(worst);
    }
    return series;
}

}  // namespace enclose
