// Command-line front end for the target-enclosing simulator.
//
// Exit codes: 0 success, 1 validation failure, 2 runtime/numeric failure,
// 3 I/O failure.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enclose/engine.hpp"
#include "enclose/logio.hpp"
#include "enclose/pe_scan.hpp"
#include "enclose/plots.hpp"
#include "enclose/scenario_json.hpp"
#include "enclose/validate.hpp"

namespace {

namespace fs = std::filesystem;
using namespace enclose;

int verbosity() {
    const char* env = std::getenv("ENCLOSE_LOG");
    if (!env) return 1;
    const std::string v = env;
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (verbosity() >= 1) std::cout << msg << "\n";
}

void debug(const std::string& msg) {
    if (verbosity() >= 2) std::cout << msg << "\n";
}

void write_run_outputs(const TrajectoryLog& log, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw IoError("cannot create output directory: " + dir.string());
    write_trajectory_csv(log, dir / "trajectory.csv");
    write_metrics_csv(log, dir / "metrics.csv");
    write_controls_csv(log, dir / "controls.csv");
    std::ofstream cfg_out(dir / "resolved_scenario.json");
    if (!cfg_out) throw IoError("cannot write resolved scenario in " + dir.string());
    cfg_out << dump_scenario(log.cfg);
}

void run_summary(const TrajectoryLog& log, const fs::path& dir) {
    const MetricSeries series = metrics(log);
    char line[256];
    std::snprintf(line, sizeof(line),
                  "wrote %s: %zu steps, final tracking error %.6g m, "
                  "final max localization error %.6g m",
                  dir.string().c_str(), log.cfg.steps, series.tracking_error.back(),
                  series.max_rel_loc_error.back());
    info(line);
}

// Seed range "a..b" (inclusive).
bool parse_seed_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return false;
    try {
        lo = std::stoull(text.substr(0, dots));
        hi = std::stoull(text.substr(dots + 2));
    } catch (const std::exception&) {
        return false;
    }
    return lo <= hi;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            const std::string& seeds) {
    const ScenarioConfig cfg = parse_scenario(scenario_path);
    const ValidationReport report = validate_scenario(cfg);
    if (!report.ok()) {
        std::cerr << "scenario fails validation:\n" << report.to_text();
        return 1;
    }

    if (seeds.empty()) {
        const TrajectoryLog log = run(cfg);
        write_run_outputs(log, out_dir);
        run_summary(log, out_dir);
        return 0;
    }

    std::uint64_t lo = 0, hi = 0;
    if (!parse_seed_range(seeds, lo, hi)) {
        std::cerr << "--seeds expects a range like 1..8\n";
        return 1;
    }
    // Independent scenarios; run them in parallel.
    std::vector<std::future<void>> jobs;
    for (std::uint64_t s = lo; s <= hi; ++s) {
        jobs.push_back(std::async(std::launch::async, [cfg, s, &out_dir]() {
            ScenarioConfig seeded = cfg;
            seeded.seed = s;
            const TrajectoryLog log = run(seeded);
            write_run_outputs(log, fs::path(out_dir) / ("seed_" + std::to_string(s)));
        }));
        debug("started seed " + std::to_string(s));
    }
    for (auto& job : jobs) job.get();
    info("wrote " + std::to_string(hi - lo + 1) + " seed runs under " + out_dir);
    return 0;
}

int cmd_validate(const std::string& scenario_path) {
    const ScenarioConfig cfg = parse_scenario(scenario_path);
    const ValidationReport report = validate_scenario(cfg);
    std::cout << report.to_text();
    return report.ok() ? 0 : 1;
}

int cmd_check_pe(const std::string& log_path, const PeScanOptions& opt,
                 const std::string& out_csv) {
    const RunLogPaths paths = locate_run_logs(log_path);
    if (paths.trajectory.empty())
        throw IoError("check-pe needs a trajectory log (trajectory.csv)");
    const TrajectoryData traj = read_trajectory_csv(paths.trajectory);
    const PeScanSummary s = scan_pe(traj, opt, out_csv);

    char line[320];
    std::snprintf(line, sizeof(line),
                  "N=%zu windows=%zu pe_failures=%zu lambda_min=%.6g lambda_max=%.6g",
                  s.N, s.windows, s.pe_failures, s.lambda_min_overall, s.lambda_max_overall);
    std::cout << line << "\n";
    std::snprintf(line, sizeof(line),
                  "excitation gap: best g=%.6g (T threshold %.6g, arg-max reading), "
                  "worst g=%.6g (T threshold %.6g, uniform guarantee)",
                  s.g_best, s.threshold_best(opt.u_bar), s.g_worst,
                  s.threshold_worst(opt.u_bar));
    std::cout << line << "\n";
    const bool t_ok_uniform = opt.T < s.threshold_worst(opt.u_bar);
    const bool t_ok_best = opt.T < s.threshold_best(opt.u_bar);
    std::snprintf(line, sizeof(line),
                  "T=%.6g: %s the uniform threshold, %s the arg-max threshold; "
                  "report written to %s",
                  opt.T, t_ok_uniform ? "below" : "ABOVE", t_ok_best ? "below" : "ABOVE",
                  out_csv.c_str());
    std::cout << line << "\n";
    return s.pe_failures == 0 ? 0 : 2;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Deterministic multi-UAV target-enclosing simulator"};
    app.require_subcommand(1);

    // run
    std::string run_scenario, run_out = "out", run_seeds;
    CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario and write CSV logs");
    run_cmd->add_option("scenario", run_scenario, "Scenario JSON file")->required();
    run_cmd->add_option("--out", run_out, "Output directory");
    run_cmd->add_option("--seeds", run_seeds, "Seed range a..b for a parallel sweep");

    // validate
    std::string val_scenario;
    CLI::App* val_cmd = app.add_subcommand("validate", "Check a scenario against the assumptions");
    val_cmd->add_option("scenario", val_scenario, "Scenario JSON file")->required();

    // check-pe
    std::string pe_log, pe_out = "pe_report.csv";
    PeScanOptions pe_opt;
    CLI::App* pe_cmd =
        app.add_subcommand("check-pe", "Windowed excitation analysis of a trajectory log");
    pe_cmd->add_option("log", pe_log, "Run directory or trajectory.csv")->required();
    pe_cmd->add_option("--T", pe_opt.T, "Step interval [s]")->required();
    pe_cmd->add_option("--omega", pe_opt.omega, "Oscillator frequency [rad/s]")->required();
    pe_cmd->add_option("--out", pe_out, "Report CSV path");
    pe_cmd->add_option("--rho", pe_opt.rho, "Formation radius for the upper bound");
    pe_cmd->add_option("--u-bar", pe_opt.u_bar, "Consensus saturation bound");
    pe_cmd->add_option("--omega-cap", pe_opt.omega_cap,
                       "Excitation frequency bound (default 2*omega)");
    pe_cmd->add_option("--pe-floor", pe_opt.pe_floor, "Eigenvalue floor counted as excited");
    pe_cmd->add_option("--stride", pe_opt.stride, "Window start stride");
    pe_cmd->add_option("--from", pe_opt.window_from, "First window start step");

    // plot
    std::string plot_log, plot_out = "plots";
    std::vector<std::string> plot_which;
    CLI::App* plot_cmd = app.add_subcommand("plot", "Render SVG figures from run logs");
    plot_cmd->add_option("log", plot_log, "Run directory or a single CSV log")->required();
    plot_cmd->add_option("--out", plot_out, "Output directory");
    plot_cmd
        ->add_option("--which", plot_which,
                     "Figures to render (default: all)")
        ->check(CLI::IsMember({"trajectory", "phases", "loc_error", "tracking_error"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run_cmd->parsed()) return cmd_run(run_scenario, run_out, run_seeds);
    if (val_cmd->parsed()) return cmd_validate(val_scenario);
    if (pe_cmd->parsed()) return cmd_check_pe(pe_log, pe_opt, pe_out);
    if (plot_cmd->parsed()) {
        std::vector<PlotKind> kinds;
        if (plot_which.empty())
            kinds = {PlotKind::Trajectory, PlotKind::Phases, PlotKind::LocError,
                     PlotKind::TrackingError};
        else
            for (const std::string& name : plot_which) kinds.push_back(plot_kind_from_name(name));
        const auto files = emit_plots(plot_log, plot_out, kinds);
        for (const auto& f : files) info("wrote " + f.string());
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
