#pragma once

#include <map>
#include <stdexcept>

#include "enclose/graph.hpp"
#include "enclose/vec2.hpp"

namespace enclose {

// Velocity command split into its three parts for logging.
struct ControlInput {
    Vec2 u;                // total command [m/s]
    Vec2 consensus_part;   // saturated cooperative term
    Vec2 feedforward_part; // desired-displacement term dr/T
    Vec2 target_part;      // broadcast target velocity u_0
};

// Radial projection onto the ball of radius cap; direction preserved,
// identity below the cap.
inline Vec2 saturate(const Vec2& u, double cap) {
    if (cap <= 0.0) throw std::invalid_argument("saturate: cap must be > 0");
    return u * (cap / std::max(cap, u.norm()));
}

// Cooperative term u_bar_i = -beta * sum_j a_ij (p_hat_ij - r_ij) over the
// agent's extended neighbors. The three maps must share one key set.
inline Vec2 consensus_term(const std::map<AgentId, Vec2>& estimates,
                           const std::map<AgentId, Vec2>& desired,
                           const std::map<AgentId, double>& weights, double beta) {
    if (estimates.size() != desired.size() || estimates.size() != weights.size())
        throw std::invalid_argument("consensus_term: neighbor key sets differ");
    Vec2 acc;
    for (const auto& [j, p_hat] : estimates) {
        const auto r_it = desired.find(j);
        const auto w_it = weights.find(j);
        if (r_it == desired.end() || w_it == weights.end())
            throw std::invalid_argument("consensus_term: neighbor key sets differ");
        acc += (p_hat - r_it->second) * w_it->second;
    }
    return acc * (-beta);
}

// Full tracking command: saturated consensus + feedforward + target velocity.
inline ControlInput control_input(const Vec2& u_bar, double cap, const Vec2& dr,
                                  double T, const Vec2& u0) {
    if (T <= 0.0) throw std::invalid_argument("control_input: T must be > 0");
    ControlInput out;
    out.consensus_part = saturate(u_bar, cap);
    out.feedforward_part = dr / T;
    out.target_part = u0;
    out.u = out.consensus_part + out.feedforward_part + out.target_part;
    return out;
}

}  // namespace enclose
