#pragma once

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "enclose/logio.hpp"
#include "enclose/svg.hpp"

namespace enclose {

enum class PlotKind { Trajectory, Phases, LocError, TrackingError };

inline PlotKind plot_kind_from_name(const std::string& name) {
    if (name == "trajectory") return PlotKind::Trajectory;
    if (name == "phases") return PlotKind::Phases;
    if (name == "loc_error") return PlotKind::LocError;
    if (name == "tracking_error") return PlotKind::TrackingError;
    throw std::invalid_argument("unknown plot kind '" + name +
                                "'; expected trajectory|phases|loc_error|tracking_error");
}

// Log location: either a run directory holding trajectory.csv/metrics.csv or
// one of those files directly.
struct RunLogPaths {
    std::filesystem::path trajectory;
    std::filesystem::path metrics;
};

inline RunLogPaths locate_run_logs(const std::filesystem::path& log_path) {
    namespace fs = std::filesystem;
    RunLogPaths paths;
    if (fs::is_directory(log_path)) {
        paths.trajectory = log_path / "trajectory.csv";
        paths.metrics = log_path / "metrics.csv";
        return paths;
    }
    if (!fs::exists(log_path)) throw IoError("log not found: " + log_path.string());
    std::ifstream in(log_path);
    std::string first;
    std::getline(in, first);
    if (first.find(" trajectory ") != std::string::npos)
        paths.trajectory = log_path;
    else if (first.find(" metrics ") != std::string::npos)
        paths.metrics = log_path;
    else
        throw ValidationError("log schema mismatch in " + log_path.string());
    return paths;
}

namespace detail {

inline std::vector<PlotSeries> trajectory_series(const TrajectoryData& traj) {
    std::vector<PlotSeries> series;
    const auto target = traj.series.find("target");
    if (target != traj.series.end())
        series.push_back({"target", target->second, true});
    for (const auto& [name, pts] : traj.series) {
        if (name == "target") continue;
        series.push_back({name, pts, true});
    }
    return series;
}

inline const std::vector<double>& column(const MetricsData& m, const std::string& name) {
    const auto it = m.columns.find(name);
    if (it == m.columns.end())
        throw ValidationError("metrics log is missing column '" + name + "'");
    return it->second;
}

inline PlotSeries metric_series(const MetricsData& m, const std::string& col,
                                const std::string& label) {
    const std::vector<double>& k = column(m, "k");
    const std::vector<double>& y = column(m, col);
    PlotSeries s;
    s.label = label;
    for (std::size_t i = 0; i < m.rows; ++i) s.points.push_back({k[i], y[i]});
    return s;
}

}  // namespace detail

// Renders the requested figures from a run's logs into out_dir and returns
// the written files.
inline std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& log_path,
                                                     const std::filesystem::path& out_dir,
                                                     const std::vector<PlotKind>& which) {
    namespace fs = std::filesystem;
    if (which.empty()) throw std::invalid_argument("emit_plots: nothing to plot");
    const RunLogPaths paths = locate_run_logs(log_path);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw IoError("cannot create output directory: " + out_dir.string());

    std::optional<TrajectoryData> traj;
    std::optional<MetricsData> metrics;
    auto need_traj = [&]() -> const TrajectoryData& {
        if (!traj) {
            if (paths.trajectory.empty())
                throw IoError("this plot needs a trajectory log (trajectory.csv)");
            traj = read_trajectory_csv(paths.trajectory);
        }
        return *traj;
    };
    auto need_metrics = [&]() -> const MetricsData& {
        if (!metrics) {
            if (paths.metrics.empty())
                throw IoError("this plot needs a metrics log (metrics.csv)");
            metrics = read_metrics_csv(paths.metrics);
        }
        return *metrics;
    };

    std::vector<fs::path> written;
    for (PlotKind kind : which) {
        switch (kind) {
            case PlotKind::Trajectory: {
                const fs::path file = out_dir / "trajectory.svg";
                write_svg_plot(file, "Paths in the XY plane (start markers circled)", "x [m]",
                               "y [m]", detail::trajectory_series(need_traj()));
                written.push_back(file);
                break;
            }
            case PlotKind::Phases: {
                const MetricsData& m = need_metrics();
                const std::vector<double>& k = detail::column(m, "k");
                std::vector<PlotSeries> series;
                for (int i = 1; i <= m.header.n; ++i) {
                    const std::string col = "theta_" + std::to_string(i);
                    const std::vector<double>& th = detail::column(m, col);
                    PlotSeries s;
                    s.label = col;
                    for (std::size_t r = 0; r < m.rows; ++r)
                        s.points.push_back(
                            {k[r], th[r] - k[r] * m.header.T * m.header.omega});
                    series.push_back(std::move(s));
                }
                const fs::path file = out_dir / "phases.svg";
                write_svg_plot(file, "Relative phase theta_i - k T omega", "step k",
                               "phase [rad]", series);
                written.push_back(file);
                break;
            }
            case PlotKind::LocError: {
                const fs::path file = out_dir / "loc_error.svg";
                write_svg_plot(file, "Worst relative localization error", "step k",
                               "max |p~_ij| [m]",
                               {detail::metric_series(need_metrics(), "max_rel_loc_error",
                                                      "max_rel_loc_error")});
                written.push_back(file);
                break;
            }
            case PlotKind::TrackingError: {
                const fs::path file = out_dir / "tracking_error.svg";
                write_svg_plot(file, "Formation tracking error", "step k", "|p_bar| [m]",
                               {detail::metric_series(need_metrics(), "tracking_error",
                                                      "tracking_error")});
                written.push_back(file);
                break;
            }
        }
    }
    return written;
}

}  // namespace enclose
