#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "enclose/errors.hpp"

namespace enclose {

// Vertex ids: 0 is the target, 1..n are UAVs.
using AgentId = int;
constexpr AgentId kTargetId = 0;

// Unordered extended edge {a, b}, stored with lo < hi. The estimator attached
// to an edge tracks p_hi - p_lo; readers flip the sign for the other
// direction.
struct EdgeKey {
    AgentId lo = 0;
    AgentId hi = 0;

    EdgeKey() = default;
    EdgeKey(AgentId a, AgentId b) : lo(std::min(a, b)), hi(std::max(a, b)) {}

    bool operator<(const EdgeKey& o) const {
        return lo != o.lo ? lo < o.lo : hi < o.hi;
    }
    bool operator==(const EdgeKey& o) const = default;

    bool touches(AgentId v) const { return lo == v || hi == v; }
    AgentId other(AgentId v) const { return lo == v ? hi : lo; }
    bool is_target_edge() const { return lo == kTargetId; }
};

// UAV communication graph plus the target vertex. The UAV part is complete;
// the target is attached to the sensing subset. Extended weights are uniform
// over each UAV's extended neighbor set, which makes every row sum one (the
// property the tracking analysis actually uses; pairwise weight symmetry is
// not enforced because degrees differ once target sensing is uneven).
struct ExtendedGraph {
    std::set<AgentId> uavs;
    std::set<AgentId> target_sensors;

    std::size_t n() const { return uavs.size(); }
    bool contains(AgentId i) const { return uavs.count(i) > 0; }
    bool senses_target(AgentId i) const { return target_sensors.count(i) > 0; }

    // Extended neighbors of UAV i: the target when i senses it, then every
    // other UAV.
    std::vector<AgentId> extended_neighbors(AgentId i) const {
        std::vector<AgentId> out;
        if (senses_target(i)) out.push_back(kTargetId);
        for (AgentId j : uavs)
            if (j != i) out.push_back(j);
        return out;
    }

    std::size_t extended_degree(AgentId i) const {
        return n() - 1 + (senses_target(i) ? 1 : 0);
    }

    // Extended weight for (i, j), zero off the neighbor set.
    double weight(AgentId i, AgentId j) const {
        if (j == i || !contains(i)) return 0.0;
        if (j == kTargetId) {
            if (!senses_target(i)) return 0.0;
        } else if (!contains(j)) {
            return 0.0;
        }
        const std::size_t deg = extended_degree(i);
        return deg == 0 ? 0.0 : 1.0 / static_cast<double>(deg);
    }

    // UAV-graph adjacency a_ij = 1/|N_i| used by the oscillator coupling.
    double uav_weight(AgentId i, AgentId j) const {
        if (i == j || n() < 2 || !contains(i) || !contains(j)) return 0.0;
        return 1.0 / static_cast<double>(n() - 1);
    }

    std::vector<EdgeKey> extended_edges() const {
        std::vector<EdgeKey> out;
        for (AgentId i : target_sensors) out.emplace_back(kTargetId, i);
        for (auto it = uavs.begin(); it != uavs.end(); ++it)
            for (auto jt = std::next(it); jt != uavs.end(); ++jt)
                out.emplace_back(*it, *jt);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Topology after a UAV drops out: complete graph over the survivors,
    // weights re-normalized by construction.
    ExtendedGraph without(AgentId i) const {
        if (!contains(i))
            throw ValidationError("graph: cannot remove unknown UAV " + std::to_string(i));
        if (n() == 1)
            throw ValidationError("graph: cannot remove the last UAV");
        ExtendedGraph g = *this;
        g.uavs.erase(i);
        g.target_sensors.erase(i);
        if (g.target_sensors.empty())
            throw ValidationError("graph: target not globally reachable after removing UAV " +
                                  std::to_string(i));
        return g;
    }
};

// Builds the complete-UAV extended graph with uniform per-row weights.
inline ExtendedGraph build_topology(int n, const std::set<AgentId>& target_sensors) {
    if (n < 1) throw ValidationError("build_topology: need at least one UAV");
    if (target_sensors.empty())
        throw ValidationError("build_topology: target not globally reachable (no UAV senses it)");
    for (AgentId s : target_sensors)
        if (s < 1 || s > n)
            throw ValidationError("build_topology: target sensor id " + std::to_string(s) +
                                  " outside 1.." + std::to_string(n));
    ExtendedGraph g;
    for (AgentId i = 1; i <= n; ++i) g.uavs.insert(i);
    g.target_sensors = target_sensors;
    return g;
}

}  // namespace enclose
