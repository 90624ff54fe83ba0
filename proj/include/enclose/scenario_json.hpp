#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "enclose/errors.hpp"
#include "enclose/scenario.hpp"

namespace enclose {

namespace detail {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw ValidationError("scenario schema: " + path + ": " + what);
}

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            schema_error(path + "." + item.key(), "unknown key");
}

inline const json& require(const json& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(path + "." + key, "missing required key");
    return *it;
}

inline double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    return v.get<double>();
}

inline std::size_t as_count(const json& v, const std::string& path) {
    if (!v.is_number_unsigned()) schema_error(path, "expected a non-negative integer");
    return v.get<std::size_t>();
}

inline int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected an integer");
    return v.get<int>();
}

inline Vec2 as_vec2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) schema_error(path, "expected [x, y]");
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

inline Waveform parse_waveform(const json& v, const std::string& path) {
    if (!v.is_object()) schema_error(path, "expected a waveform object");
    const std::string type = require(v, path, "type").get<std::string>();
    if (type == "constant") {
        reject_unknown_keys(v, path, {"type", "value"});
        return Waveform::constant(as_number(require(v, path, "value"), path + ".value"));
    }
    if (type == "sinusoid") {
        reject_unknown_keys(v, path, {"type", "amp", "period", "offset"});
        return Waveform::sinusoid(as_number(require(v, path, "amp"), path + ".amp"),
                                  as_number(require(v, path, "period"), path + ".period"),
                                  as_number(require(v, path, "offset"), path + ".offset"));
    }
    if (type == "piecewise") {
        reject_unknown_keys(v, path, {"type", "points"});
        const json& pts = require(v, path, "points");
        if (!pts.is_array() || pts.empty()) schema_error(path + ".points", "expected [[k, value], ...]");
        std::vector<std::pair<std::size_t, double>> points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string p = path + ".points[" + std::to_string(i) + "]";
            if (!pts[i].is_array() || pts[i].size() != 2) schema_error(p, "expected [k, value]");
            points.emplace_back(as_count(pts[i][0], p + "[0]"), as_number(pts[i][1], p + "[1]"));
        }
        return Waveform::piecewise(std::move(points));
    }
    schema_error(path + ".type", "unknown waveform type '" + type + "'");
}

inline json dump_waveform(const Waveform& w) {
    switch (w.kind) {
        case Waveform::Kind::Constant:
            return {{"type", "constant"}, {"value", w.value}};
        case Waveform::Kind::Sinusoid:
            return {{"type", "sinusoid"}, {"amp", w.amp}, {"period", w.period}, {"offset", w.offset}};
        case Waveform::Kind::Piecewise: {
            json pts = json::array();
            for (const auto& [k, v] : w.points) pts.push_back({k, v});
            return {{"type", "piecewise"}, {"points", pts}};
        }
    }
    return {};
}

inline RhoSchedule parse_rho_schedule(const json& v, const std::string& path) {
    if (!v.is_object()) schema_error(path, "expected an object");
    reject_unknown_keys(v, path, {"base_rho", "affine"});
    RhoSchedule rs;
    rs.base_rho = as_number(require(v, path, "base_rho"), path + ".base_rho");
    if (v.contains("affine")) {
        const json& a = v["affine"];
        const std::string ap = path + ".affine";
        if (!a.is_object()) schema_error(ap, "expected an object");
        reject_unknown_keys(a, ap, {"T_x", "T_y", "S_x", "S_y", "H_a", "H_b"});
        if (a.contains("T_x")) rs.affine.t_x = parse_waveform(a["T_x"], ap + ".T_x");
        if (a.contains("T_y")) rs.affine.t_y = parse_waveform(a["T_y"], ap + ".T_y");
        if (a.contains("S_x")) rs.affine.s_x = parse_waveform(a["S_x"], ap + ".S_x");
        if (a.contains("S_y")) rs.affine.s_y = parse_waveform(a["S_y"], ap + ".S_y");
        if (a.contains("H_a")) rs.affine.h_a = parse_waveform(a["H_a"], ap + ".H_a");
        if (a.contains("H_b")) rs.affine.h_b = parse_waveform(a["H_b"], ap + ".H_b");
    }
    return rs;
}

inline TargetModel parse_target_model(const json& v, const std::string& path) {
    if (!v.is_object()) schema_error(path, "expected an object");
    const std::string type = require(v, path, "type").get<std::string>();
    TargetModel tm;
    if (type == "line") {
        reject_unknown_keys(v, path, {"type", "start", "v", "u0_max"});
        tm.kind = TargetModel::Kind::Line;
        if (v.contains("start")) tm.start = as_vec2(v["start"], path + ".start");
        tm.v = as_vec2(require(v, path, "v"), path + ".v");
    } else if (type == "sinusoid") {
        reject_unknown_keys(v, path, {"type", "start", "vx", "amp", "period", "u0_max"});
        tm.kind = TargetModel::Kind::Sinusoid;
        if (v.contains("start")) tm.start = as_vec2(v["start"], path + ".start");
        tm.vx = as_number(require(v, path, "vx"), path + ".vx");
        tm.amp = as_number(require(v, path, "amp"), path + ".amp");
        tm.period = as_number(require(v, path, "period"), path + ".period");
        if (tm.period <= 0.0) schema_error(path + ".period", "must be > 0");
    } else if (type == "circle") {
        reject_unknown_keys(v, path, {"type", "center", "radius", "angular_period", "u0_max"});
        tm.kind = TargetModel::Kind::Circle;
        if (v.contains("center")) tm.center = as_vec2(v["center"], path + ".center");
        tm.radius = as_number(require(v, path, "radius"), path + ".radius");
        tm.angular_period = as_number(require(v, path, "angular_period"), path + ".angular_period");
        if (tm.angular_period <= 0.0) schema_error(path + ".angular_period", "must be > 0");
    } else if (type == "waypoints") {
        reject_unknown_keys(v, path, {"type", "points", "speed", "u0_max"});
        tm.kind = TargetModel::Kind::Waypoints;
        const json& pts = require(v, path, "points");
        if (!pts.is_array() || pts.empty()) schema_error(path + ".points", "expected [[x, y], ...]");
        for (std::size_t i = 0; i < pts.size(); ++i)
            tm.points.push_back(as_vec2(pts[i], path + ".points[" + std::to_string(i) + "]"));
        tm.speed = as_number(require(v, path, "speed"), path + ".speed");
        if (tm.speed < 0.0) schema_error(path + ".speed", "must be >= 0");
    } else {
        schema_error(path + ".type", "unknown target model '" + type + "'");
    }
    if (v.contains("u0_max")) tm.u0_max = as_number(v["u0_max"], path + ".u0_max");
    return tm;
}

inline json dump_target_model(const TargetModel& tm, double T) {
    json v;
    switch (tm.kind) {
        case TargetModel::Kind::Line:
            v = {{"type", "line"}, {"start", {tm.start.x, tm.start.y}}, {"v", {tm.v.x, tm.v.y}}};
            break;
        case TargetModel::Kind::Sinusoid:
            v = {{"type", "sinusoid"}, {"start", {tm.start.x, tm.start.y}},
                 {"vx", tm.vx}, {"amp", tm.amp}, {"period", tm.period}};
            break;
        case TargetModel::Kind::Circle:
            v = {{"type", "circle"}, {"center", {tm.center.x, tm.center.y}},
                 {"radius", tm.radius}, {"angular_period", tm.angular_period}};
            break;
        case TargetModel::Kind::Waypoints: {
            json pts = json::array();
            for (const Vec2& p : tm.points) pts.push_back({p.x, p.y});
            v = {{"type", "waypoints"}, {"points", pts}, {"speed", tm.speed}};
            break;
        }
    }
    v["u0_max"] = tm.resolved_u0_max(T);
    return v;
}

}  // namespace detail

// Strict scenario parse: unknown keys are rejected with their path, optional
// fields are resolved to their defaults.
inline ScenarioConfig parse_scenario_json(const std::string& text, const std::string& origin) {
    using detail::json;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario parse: " + origin + ": " + e.what());
    }
    if (!root.is_object()) detail::schema_error("$", "expected a JSON object");

    const std::string p = "$";
    detail::reject_unknown_keys(
        root, p,
        {"n", "T", "steps", "omega", "osc_gains", "rho_schedule", "beta", "beta_f", "u_bar",
         "u_max", "omega_cap", "target_model", "target_sensors", "initial_positions",
         "initial_phases", "fault_schedule", "noise", "seed"});

    ScenarioConfig cfg;
    cfg.n = detail::as_int(detail::require(root, p, "n"), p + ".n");
    cfg.T = detail::as_number(detail::require(root, p, "T"), p + ".T");
    cfg.steps = detail::as_count(detail::require(root, p, "steps"), p + ".steps");
    cfg.omega = detail::as_number(detail::require(root, p, "omega"), p + ".omega");
    cfg.beta = detail::as_number(detail::require(root, p, "beta"), p + ".beta");
    cfg.beta_f = detail::as_number(detail::require(root, p, "beta_f"), p + ".beta_f");
    cfg.u_bar = detail::as_number(detail::require(root, p, "u_bar"), p + ".u_bar");
    cfg.u_max = detail::as_number(detail::require(root, p, "u_max"), p + ".u_max");
    cfg.rho_schedule =
        detail::parse_rho_schedule(detail::require(root, p, "rho_schedule"), p + ".rho_schedule");
    cfg.target_model =
        detail::parse_target_model(detail::require(root, p, "target_model"), p + ".target_model");

    const detail::json& sensors = detail::require(root, p, "target_sensors");
    if (!sensors.is_array() || sensors.empty())
        detail::schema_error(p + ".target_sensors", "expected a nonempty array of UAV ids");
    for (std::size_t i = 0; i < sensors.size(); ++i)
        cfg.target_sensors.insert(
            detail::as_int(sensors[i], p + ".target_sensors[" + std::to_string(i) + "]"));

    if (root.contains("osc_gains")) {
        const detail::json& g = root["osc_gains"];
        if (!g.is_array()) detail::schema_error(p + ".osc_gains", "expected an array");
        for (std::size_t i = 0; i < g.size(); ++i)
            cfg.osc_gains.push_back(
                detail::as_number(g[i], p + ".osc_gains[" + std::to_string(i) + "]"));
    }
    if (root.contains("omega_cap"))
        cfg.omega_cap = detail::as_number(root["omega_cap"], p + ".omega_cap");

    if (root.contains("initial_positions") && !root["initial_positions"].is_null()) {
        const detail::json& ip = root["initial_positions"];
        if (!ip.is_array()) detail::schema_error(p + ".initial_positions", "expected an array");
        std::vector<Vec2> pos;
        for (std::size_t i = 0; i < ip.size(); ++i)
            pos.push_back(detail::as_vec2(ip[i], p + ".initial_positions[" + std::to_string(i) + "]"));
        cfg.initial_positions = std::move(pos);
    }
    if (root.contains("initial_phases") && !root["initial_phases"].is_null()) {
        const detail::json& ip = root["initial_phases"];
        if (!ip.is_array()) detail::schema_error(p + ".initial_phases", "expected an array");
        std::vector<double> ph;
        for (std::size_t i = 0; i < ip.size(); ++i)
            ph.push_back(detail::as_number(ip[i], p + ".initial_phases[" + std::to_string(i) + "]"));
        cfg.initial_phases = std::move(ph);
    }
    if (root.contains("fault_schedule")) {
        const detail::json& fs = root["fault_schedule"];
        if (!fs.is_array()) detail::schema_error(p + ".fault_schedule", "expected an array");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const std::string fp = p + ".fault_schedule[" + std::to_string(i) + "]";
            if (!fs[i].is_array() || fs[i].size() != 2)
                detail::schema_error(fp, "expected [step, uav_id]");
            cfg.fault_schedule.push_back(
                {detail::as_count(fs[i][0], fp + "[0]"), detail::as_int(fs[i][1], fp + "[1]")});
        }
    }
    if (root.contains("noise") && !root["noise"].is_null()) {
        const detail::json& nz = root["noise"];
        if (!nz.is_object()) detail::schema_error(p + ".noise", "expected an object or null");
        detail::reject_unknown_keys(nz, p + ".noise", {"d_std", "v_std"});
        NoiseSpec spec;
        if (nz.contains("d_std")) spec.d_std = detail::as_number(nz["d_std"], p + ".noise.d_std");
        if (nz.contains("v_std")) spec.v_std = detail::as_number(nz["v_std"], p + ".noise.v_std");
        cfg.noise = spec;
    }
    if (root.contains("seed")) {
        const detail::json& s = root["seed"];
        if (!s.is_number_unsigned()) detail::schema_error(p + ".seed", "expected a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }

    cfg.resolve();
    return cfg;
}

inline ScenarioConfig parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario_json(text, path.string());
}

// Resolved-config dump; parse_scenario_json(dump_scenario(cfg)) reproduces
// the config exactly.
inline std::string dump_scenario(const ScenarioConfig& raw) {
    using detail::json;
    ScenarioConfig cfg = raw;
    cfg.resolve();

    json root;
    root["n"] = cfg.n;
    root["T"] = cfg.T;
    root["steps"] = cfg.steps;
    root["omega"] = cfg.omega;
    root["osc_gains"] = cfg.osc_gains;
    root["rho_schedule"] = {
        {"base_rho", cfg.rho_schedule.base_rho},
        {"affine",
         {{"T_x", detail::dump_waveform(cfg.rho_schedule.affine.t_x)},
          {"T_y", detail::dump_waveform(cfg.rho_schedule.affine.t_y)},
          {"S_x", detail::dump_waveform(cfg.rho_schedule.affine.s_x)},
          {"S_y", detail::dump_waveform(cfg.rho_schedule.affine.s_y)},
          {"H_a", detail::dump_waveform(cfg.rho_schedule.affine.h_a)},
          {"H_b", detail::dump_waveform(cfg.rho_schedule.affine.h_b)}}}};
    root["beta"] = cfg.beta;
    root["beta_f"] = cfg.beta_f;
    root["u_bar"] = cfg.u_bar;
    root["u_max"] = cfg.u_max;
    root["omega_cap"] = cfg.omega_cap;
    root["target_model"] = detail::dump_target_model(cfg.target_model, cfg.T);
    root["target_sensors"] = cfg.target_sensors;
    if (cfg.initial_positions) {
        json pos = json::array();
        for (const Vec2& v : *cfg.initial_positions) pos.push_back({v.x, v.y});
        root["initial_positions"] = pos;
    } else {
        root["initial_positions"] = nullptr;
    }
    if (cfg.initial_phases)
        root["initial_phases"] = *cfg.initial_phases;
    else
        root["initial_phases"] = nullptr;
    {
        json fs = json::array();
        for (const FaultEvent& f : cfg.fault_schedule) fs.push_back({f.step, f.uav});
        root["fault_schedule"] = fs;
    }
    if (cfg.noise)
        root["noise"] = {{"d_std", cfg.noise->d_std}, {"v_std", cfg.noise->v_std}};
    else
        root["noise"] = nullptr;
    root["seed"] = cfg.seed;
    return root.dump(2) + "\n";
}

}  // namespace enclose
