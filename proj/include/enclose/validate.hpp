#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "enclose/scenario.hpp"

namespace enclose {

enum class CheckStatus { Pass, Fail, Warn, Unknown };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Warn: return "warn";
        case CheckStatus::Unknown: return "unknown";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Unknown;
    double margin = 0.0;  // distance to the constraint boundary (sign-sensitive)
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
            return c.status == CheckStatus::Fail;
        });
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string to_text() const {
        std::string out;
        char line[256];
        for (const auto& c : checks) {
            std::snprintf(line, sizeof(line), "%-34s %-7s margin=%-12.6g %s\n",
                          c.name.c_str(), to_string(c.status), c.margin, c.detail.c_str());
            out += line;
        }
        return out;
    }
};

// Checks the standing assumptions a scenario must satisfy before a run.
// Failures do not throw; the report carries them. The sampling-time
// excitation condition needs measured displacement windows, so without a
// trajectory it is reported as unknown.
inline ValidationReport validate_scenario(const ScenarioConfig& raw) {
    ScenarioConfig cfg = raw;
    cfg.resolve();

    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, double margin, std::string detail = "") {
        rep.checks.push_back({std::move(name),
                              pass ? CheckStatus::Pass : CheckStatus::Fail, margin,
                              std::move(detail)});
    };
    auto warn_if = [&rep](std::string name, bool bad, double margin, std::string detail) {
        rep.checks.push_back({std::move(name),
                              bad ? CheckStatus::Warn : CheckStatus::Pass, margin,
                              std::move(detail)});
    };

    add("uav_count", cfg.n >= 1, static_cast<double>(cfg.n - 1),
        cfg.n >= 1 ? "" : "need at least one UAV");
    add("step_interval", cfg.T > 0.0, cfg.T, cfg.T > 0.0 ? "" : "T must be > 0");
    add("formation_radius", cfg.rho_schedule.base_rho > 0.0, cfg.rho_schedule.base_rho);

    const double s_lo = std::min(cfg.rho_schedule.affine.s_x.lower_bound(),
                                 cfg.rho_schedule.affine.s_y.lower_bound());
    add("affine_scaling_positive", s_lo > 0.0, s_lo,
        s_lo > 0.0 ? "" : "scaling schedule reaches a non-positive factor");

    add("forgetting_factor_range", cfg.beta_f > 0.0 && cfg.beta_f < 1.0,
        std::min(cfg.beta_f, 1.0 - cfg.beta_f));

    const double beta_margin = (cfg.T > 0.0 ? 1.0 / cfg.T : 0.0) - cfg.beta;
    add("controller_gain_bound", cfg.T > 0.0 && cfg.beta > 0.0 && beta_margin > 0.0,
        beta_margin, "requires 0 < beta < 1/T");

    add("consensus_cap_range", cfg.u_bar > 0.0 && cfg.u_bar < cfg.u_max,
        std::min(cfg.u_bar, cfg.u_max - cfg.u_bar), "requires 0 < u_bar < u_max");

    const double u0 = cfg.target_model.resolved_u0_max(cfg.T > 0.0 ? cfg.T : 1.0);
    add("target_speed_bound", u0 < cfg.u_max, cfg.u_max - u0,
        u0 < cfg.u_max ? "" : "target faster than consensus budget permits (U0 must be < u_max)");

    {
        // A declared u0_max must actually cover the motion model.
        const double realized = cfg.target_model.default_u0_max(cfg.T > 0.0 ? cfg.T : 1.0);
        add("target_speed_declared", u0 >= realized - 1e-12, u0 - realized,
            u0 >= realized - 1e-12 ? "" : "declared u0_max below the model's realized speed");
    }

    add("oscillator_frequency_bound", cfg.omega > 0.0 && cfg.omega < cfg.omega_cap,
        cfg.omega_cap - cfg.omega, "requires 0 < omega < omega_cap");

    add("oscillator_gains_length",
        cfg.osc_gains.size() == static_cast<std::size_t>(std::max(cfg.n, 0)),
        static_cast<double>(cfg.osc_gains.size()));

    {
        bool pattern = !cfg.osc_gains.empty();
        for (std::size_t l = 0; l + 1 < cfg.osc_gains.size(); ++l)
            pattern = pattern && cfg.osc_gains[l] > 0.0;
        if (!cfg.osc_gains.empty()) pattern = pattern && cfg.osc_gains.back() < 0.0;
        warn_if("oscillator_gain_pattern", !pattern, 0.0,
                pattern ? "" : "gains deviate from K_l > 0 (l < n), K_n < 0; balance not guaranteed");
    }

    {
        bool reachable = !cfg.target_sensors.empty();
        for (AgentId s : cfg.target_sensors)
            reachable = reachable && s >= 1 && s <= cfg.n;
        add("target_reachable", reachable, static_cast<double>(cfg.target_sensors.size()),
            reachable ? "" : "target not globally reachable");
    }

    {
        // If every sensing UAV is scheduled for removal the run will abort at
        // the fault step; catch it statically.
        std::set<AgentId> sensors = cfg.target_sensors;
        std::size_t removed = 0;
        bool valid_ids = true;
        bool late_fault = false;
        for (const FaultEvent& f : cfg.fault_schedule) {
            valid_ids = valid_ids && f.uav >= 1 && f.uav <= cfg.n;
            late_fault = late_fault || f.step >= cfg.steps;
            sensors.erase(f.uav);
            ++removed;
        }
        add("fault_ids_valid", valid_ids, 0.0,
            valid_ids ? "" : "fault schedule names an unknown UAV");
        add("fault_sensor_survival", sensors.empty() == cfg.target_sensors.empty(),
            static_cast<double>(sensors.size()),
            !sensors.empty() || cfg.target_sensors.empty()
                ? ""
                : "target not globally reachable after scheduled faults");
        add("fault_fleet_survival", removed < static_cast<std::size_t>(std::max(cfg.n, 1)),
            static_cast<double>(cfg.n) - static_cast<double>(removed));
        warn_if("fault_steps_in_range", late_fault, 0.0,
                late_fault ? "a scheduled fault lies at or beyond the final step" : "");
    }

    if (cfg.initial_positions)
        add("initial_positions_length",
            cfg.initial_positions->size() == static_cast<std::size_t>(cfg.n),
            static_cast<double>(cfg.initial_positions->size()));
    if (cfg.initial_phases)
        add("initial_phases_length",
            cfg.initial_phases->size() == static_cast<std::size_t>(cfg.n),
            static_cast<double>(cfg.initial_phases->size()));
    if (cfg.noise)
        add("noise_std_nonnegative", cfg.noise->d_std >= 0.0 && cfg.noise->v_std >= 0.0,
            std::min(cfg.noise->d_std, cfg.noise->v_std));

    {
        // Advisory: the command magnitude can reach roughly
        // u_bar + rho*omega_cap + U0; a tighter cap aborts runs mid-flight.
        const double budget =
            cfg.u_bar + cfg.rho_schedule.effective_rho_upper() * cfg.omega_cap + u0;
        warn_if("velocity_budget", cfg.u_max < budget, cfg.u_max - budget,
                cfg.u_max < budget ? "u_max below the worst-case command budget; "
                                     "runs may abort on the velocity bound"
                                   : "");
    }

    rep.checks.push_back({"sampling_time_excitation", CheckStatus::Unknown, 0.0,
                          "threshold depends on measured displacement windows; "
                          "run the check-pe command on a trajectory"});
    return rep;
}

}  // namespace enclose
