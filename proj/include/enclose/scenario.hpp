#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "enclose/graph.hpp"
#include "enclose/oscillator.hpp"
#include "enclose/vec2.hpp"
#include "enclose/waveform.hpp"

namespace enclose {

// Target motion, evaluated in closed form where possible so runs are
// reproducible independently of accumulation order.
struct TargetModel {
    enum class Kind { Line, Sinusoid, Circle, Waypoints };

    Kind kind = Kind::Line;
    Vec2 start;                    // line, sinusoid
    Vec2 v;                        // line: per-step displacement [m]
    double vx = 0.0;               // sinusoid: x drift per step [m]
    double amp = 0.0;              // sinusoid: y amplitude [m]
    double period = 1.0;           // sinusoid: steps per cycle
    Vec2 center;                   // circle
    double radius = 0.0;           // circle [m]
    double angular_period = 1.0;   // circle: steps per revolution
    std::vector<Vec2> points;      // waypoints
    double speed = 0.0;            // waypoints: cruise speed [m/s]
    std::optional<double> u0_max;  // declared average-velocity bound [m/s]

    bool operator==(const TargetModel& o) const = default;

    // Positions for steps 0..count-1. Waypoint paths are integrated once
    // here; the other kinds are closed form.
    std::vector<Vec2> make_path(std::size_t count, double T) const {
        std::vector<Vec2> path;
        path.reserve(count);
        switch (kind) {
            case Kind::Line:
                for (std::size_t k = 0; k < count; ++k)
                    path.push_back(start + v * static_cast<double>(k));
                break;
            case Kind::Sinusoid:
                for (std::size_t k = 0; k < count; ++k) {
                    const double kf = static_cast<double>(k);
                    path.push_back({start.x + vx * kf,
                                    start.y + amp * std::sin(2.0 * M_PI * kf / period)});
                }
                break;
            case Kind::Circle:
                for (std::size_t k = 0; k < count; ++k) {
                    const double ang = 2.0 * M_PI * static_cast<double>(k) / angular_period;
                    path.push_back({center.x + radius * std::cos(ang),
                                    center.y + radius * std::sin(ang)});
                }
                break;
            case Kind::Waypoints: {
                if (points.empty())
                    throw std::invalid_argument("TargetModel: waypoint list is empty");
                Vec2 pos = points.front();
                std::size_t next = 1;
                const double step_len = speed * T;
                for (std::size_t k = 0; k < count; ++k) {
                    path.push_back(pos);
                    double budget = step_len;
                    while (budget > 0.0 && next < points.size()) {
                        const Vec2 to_wp = points[next] - pos;
                        const double dist = to_wp.norm();
                        if (dist <= budget) {
                            pos = points[next];
                            budget -= dist;
                            ++next;
                        } else {
                            pos += to_wp * (budget / dist);
                            budget = 0.0;
                        }
                    }
                }
                break;
            }
        }
        return path;
    }

    // Tight per-model bound on the average velocity, used when u0_max is not
    // declared explicitly.
    double default_u0_max(double T) const {
        switch (kind) {
            case Kind::Line:
                return v.norm() / T;
            case Kind::Sinusoid: {
                const double dy = 2.0 * std::abs(amp) * std::sin(M_PI / period);
                return std::hypot(vx, dy) / T;
            }
            case Kind::Circle:
                return 2.0 * radius * std::sin(M_PI / angular_period) / T;
            case Kind::Waypoints:
                return speed;
        }
        return 0.0;
    }

    double resolved_u0_max(double T) const {
        return u0_max.value_or(default_u0_max(T));
    }
};

// Optional zero-mean Gaussian noise on the synthesized measurements.
struct NoiseSpec {
    double d_std = 0.0;  // per distance reading [m]
    double v_std = 0.0;  // per displacement component [m]

    bool operator==(const NoiseSpec& o) const = default;
};

struct FaultEvent {
    std::size_t step = 0;
    AgentId uav = 0;

    bool operator==(const FaultEvent& o) const = default;
};

// Every free parameter of a run. Optional fields left empty are resolved to
// seed-driven or rule-based defaults (see resolve()).
struct ScenarioConfig {
    int n = 0;
    double T = 0.0;              // step interval [s]
    std::size_t steps = 0;
    double omega = 0.0;          // common oscillator frequency [rad/s]
    std::vector<double> osc_gains;
    RhoSchedule rho_schedule;
    double beta = 0.0;           // controller gain, must be < 1/T
    double beta_f = 0.7;         // forgetting factor
    double u_bar = 0.0;          // consensus saturation bound [m/s]
    double u_max = 0.0;          // total velocity bound [m/s]
    double omega_cap = 0.0;      // excitation frequency bound [rad/s]
    TargetModel target_model;
    std::set<AgentId> target_sensors;
    std::optional<std::vector<Vec2>> initial_positions;
    std::optional<std::vector<double>> initial_phases;
    std::vector<FaultEvent> fault_schedule;
    std::optional<NoiseSpec> noise;
    std::uint64_t seed = 0;

    bool operator==(const ScenarioConfig& o) const = default;

    // Fills rule-based defaults in place: the standard gain pattern, the
    // excitation bound at twice the oscillator frequency, and the target's
    // declared speed bound. Seed-driven defaults (positions, phases) are
    // drawn at world construction instead.
    void resolve() {
        if (osc_gains.empty() && n > 0) osc_gains = default_gains(static_cast<std::size_t>(n));
        if (omega_cap == 0.0) omega_cap = 2.0 * omega;
        if (!target_model.u0_max && T > 0.0)
            target_model.u0_max = target_model.default_u0_max(T);
    }
};

}  // namespace enclose
