#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "enclose/engine.hpp"
#include "enclose/errors.hpp"

namespace enclose {

// One schema version string is embedded as a comment line at the top of every
// CSV this library writes; readers refuse anything else.
constexpr const char* kLogSchema = "enclose-log/1";

inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string edge_column_name(const EdgeKey& e) {
    // Target edges read UAV-first: err_3_0 is UAV 3's target edge.
    if (e.is_target_edge()) return "err_" + std::to_string(e.hi) + "_0";
    return "err_" + std::to_string(e.lo) + "_" + std::to_string(e.hi);
}

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

inline std::string header_line(const char* kind, const ScenarioConfig& cfg) {
    return std::string("# ") + kLogSchema + " " + kind + " n=" + std::to_string(cfg.n) +
           " T=" + fmt_double(cfg.T) + " omega=" + fmt_double(cfg.omega) + "\n";
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace detail

inline void write_trajectory_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
    std::ofstream out = detail::open_out(path);
    out << detail::header_line("trajectory", log.cfg);
    out << "k,entity,x,y\n";
    for (const StepRecord& rec : log.records) {
        out << rec.k << ",target," << fmt_double(rec.target_pos.x) << ","
            << fmt_double(rec.target_pos.y) << "\n";
        for (std::size_t a = 0; a < rec.alive.size(); ++a)
            out << rec.k << ",uav" << rec.alive[a] << "," << fmt_double(rec.positions[a].x)
                << "," << fmt_double(rec.positions[a].y) << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

inline void write_metrics_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
    std::ofstream out = detail::open_out(path);
    out << detail::header_line("metrics", log.cfg);
    out << "k,tracking_error,max_rel_loc_error,phase_spread";
    for (int i = 1; i <= log.cfg.n; ++i) out << ",theta_" << i;
    for (const EdgeKey& e : log.edge_columns) out << "," << edge_column_name(e);
    out << "\n";

    for (const StepRecord& rec : log.records) {
        out << rec.k << "," << fmt_double(rec.tracking_error) << ","
            << fmt_double(rec.max_rel_loc_error) << "," << fmt_double(rec.phase_spread);
        for (int i = 1; i <= log.cfg.n; ++i) {
            out << ",";
            for (std::size_t a = 0; a < rec.alive.size(); ++a)
                if (rec.alive[a] == i) out << fmt_double(rec.phases[a]);
        }
        for (const EdgeKey& e : log.edge_columns) {
            out << ",";
            const auto it = rec.edge_errors.find(e);
            if (it != rec.edge_errors.end()) out << fmt_double(it->second);
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

inline void write_controls_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
    std::ofstream out = detail::open_out(path);
    out << detail::header_line("controls", log.cfg);
    out << "k,agent,u_x,u_y,consensus_x,consensus_y,feedforward_x,feedforward_y,"
           "target_x,target_y\n";
    for (const ControlRecord& rec : log.controls) {
        for (std::size_t a = 0; a < rec.agents.size(); ++a) {
            const ControlInput& c = rec.inputs[a];
            out << rec.k << ",uav" << rec.agents[a] << "," << fmt_double(c.u.x) << ","
                << fmt_double(c.u.y) << "," << fmt_double(c.consensus_part.x) << ","
                << fmt_double(c.consensus_part.y) << "," << fmt_double(c.feedforward_part.x)
                << "," << fmt_double(c.feedforward_part.y) << ","
                << fmt_double(c.target_part.x) << "," << fmt_double(c.target_part.y) << "\n";
        }
    }
    if (!out) throw IoError("write failed: " + path.string());
}

struct LogHeader {
    std::string kind;
    int n = 0;
    double T = 0.0;
    double omega = 0.0;
};

// Positions per entity; every series is contiguous from k=0 (entities only
// ever drop out, on faults).
struct TrajectoryData {
    LogHeader header;
    std::map<std::string, std::vector<Vec2>> series;
};

struct MetricsData {
    LogHeader header;
    std::vector<std::string> column_names;
    std::map<std::string, std::vector<double>> columns;  // NaN for empty cells
    std::size_t rows = 0;
};

namespace detail {

inline LogHeader parse_header(const std::string& line, const std::filesystem::path& path) {
    std::stringstream ss(line);
    std::string hash, schema, kind;
    ss >> hash >> schema >> kind;
    if (hash != "#" || schema != kLogSchema)
        throw ValidationError("log schema mismatch in " + path.string() + ": expected " +
                              kLogSchema);
    LogHeader h;
    h.kind = kind;
    std::string kv;
    while (ss >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        if (key == "n") h.n = std::stoi(val);
        else if (key == "T") h.T = std::stod(val);
        else if (key == "omega") h.omega = std::stod(val);
    }
    return h;
}

}  // namespace detail

inline TrajectoryData read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty log: " + path.string());
    TrajectoryData data;
    data.header = detail::parse_header(line, path);
    if (data.header.kind != "trajectory")
        throw ValidationError("not a trajectory log: " + path.string());
    if (!std::getline(in, line) || line != "k,entity,x,y")
        throw ValidationError("unexpected trajectory columns in " + path.string());
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != 4)
            throw ValidationError("malformed trajectory row in " + path.string() + ": " + line);
        const std::size_t k = static_cast<std::size_t>(std::stoull(cells[0]));
        auto& series = data.series[cells[1]];
        if (series.size() != k)
            throw ValidationError("non-contiguous series for " + cells[1] + " in " +
                                  path.string());
        series.push_back({std::stod(cells[2]), std::stod(cells[3])});
    }
    if (data.series.empty()) throw ValidationError("no records in " + path.string());
    return data;
}

inline MetricsData read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty log: " + path.string());
    MetricsData data;
    data.header = detail::parse_header(line, path);
    if (data.header.kind != "metrics")
        throw ValidationError("not a metrics log: " + path.string());
    if (!std::getline(in, line))
        throw ValidationError("missing metrics columns in " + path.string());
    data.column_names = detail::split_csv(line);
    for (const std::string& c : data.column_names) data.columns[c] = {};
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != data.column_names.size())
            throw ValidationError("malformed metrics row in " + path.string() + ": " + line);
        for (std::size_t c = 0; c < cells.size(); ++c)
            data.columns[data.column_names[c]].push_back(
                cells[c].empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : std::stod(cells[c]));
        ++data.rows;
    }
    if (data.rows == 0) throw ValidationError("no records in " + path.string());
    return data;
}

}  // namespace enclose
