#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace enclose {

// Coupled-oscillator network driving the agents toward an evenly spaced
// (regular n-gon) phase pattern. Phases are kept unwrapped so logged series
// stay continuous; wrapping happens only inside the trigonometry.
struct OscillatorState {
    std::vector<double> phases;             // theta_i, unwrapped [rad]
    std::vector<double> gains;              // K_1..K_n
    double omega = 0.0;                     // common natural frequency [rad/s]
    std::vector<std::vector<double>> adjacency;  // a_ij over the UAV graph

    std::size_t size() const { return phases.size(); }
};

// Gain vector used throughout: K_l = 1 for l < n, K_n = -1. Stabilizes the
// balanced pattern (all harmonics below n suppressed, n-th rewarded).
inline std::vector<double> default_gains(std::size_t n) {
    std::vector<double> k(n, 1.0);
    if (!k.empty()) k.back() = -1.0;
    return k;
}

// Uniform all-to-all adjacency a_ij = 1/(n-1), zero diagonal.
inline std::vector<std::vector<double>> uniform_adjacency(std::size_t n) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    if (n < 2) return a;
    const double w = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) a[i][j] = w;
    return a;
}

// Coupling term of agent i at the given phases:
//   sum_j sum_l (K_l a_ij / l) sin(l (theta_i - theta_j))
inline double coupling_term(const OscillatorState& s, std::size_t i) {
    const std::size_t n = s.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double a_ij = s.adjacency[i][j];
        if (a_ij == 0.0) continue;
        const double dtheta = s.phases[i] - s.phases[j];
        for (std::size_t l = 1; l <= n; ++l) {
            const double lf = static_cast<double>(l);
            acc += s.gains[l - 1] * a_ij / lf * std::sin(lf * dtheta);
        }
    }
    return acc;
}

// One synchronous update of all phases over the interval T.
inline OscillatorState phase_step(const OscillatorState& s, double T) {
    if (T <= 0.0) throw std::invalid_argument("phase_step: T must be > 0");
    const std::size_t n = s.size();
    if (s.gains.size() != n || s.adjacency.size() != n)
        throw std::invalid_argument("phase_step: gains/adjacency size must match phase count");
    for (const auto& row : s.adjacency)
        if (row.size() != n)
            throw std::invalid_argument("phase_step: adjacency must be square");

    OscillatorState next = s;
    for (std::size_t i = 0; i < n; ++i)
        next.phases[i] = s.phases[i] + T * s.omega + T * coupling_term(s, i);
    return next;
}

namespace detail {
// Distance on the circle between angle d (any real) and angle x in [0, 2pi).
inline double circular_distance(double d, double x) {
    double diff = std::fmod(d - x, 2.0 * M_PI);
    if (diff < 0.0) diff += 2.0 * M_PI;
    return std::min(diff, 2.0 * M_PI - diff);
}
}  // namespace detail

// Distance of the phase configuration from an exact regular n-gon: the
// largest, over pairs, of the circular distance from theta_i - theta_j to the
// nearest *nonzero* multiple of 2pi/n. Zero iff the phases occupy all n slots
// of a splay pattern; a synchronized pair scores the full 2pi/n gap.
inline double phase_spread(std::span<const double> phases, std::size_t n) {
    if (n < 2) throw std::invalid_argument("phase_spread: need n >= 2");
    if (phases.size() != n)
        throw std::invalid_argument("phase_spread: phase count must equal n");
    const double slot = 2.0 * M_PI / static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = phases[i] - phases[j];
            double best = 2.0 * M_PI;
            for (std::size_t m = 1; m < n; ++m)
                best = std::min(best, detail::circular_distance(d, slot * static_cast<double>(m)));
            worst = std::max(worst, best);
        }
    }
    return worst;
}

// First step k at which the spread stays <= tol for `hold` consecutive
// samples. Returns nullopt if no such window exists.
inline std::optional<std::size_t> detect_equilibrium(std::span<const double> spread_history,
                                                     double tol = 1e-3,
                                                     std::size_t hold = 50) {
    if (tol <= 0.0) throw std::invalid_argument("detect_equilibrium: tol must be > 0");
    if (hold < 1) throw std::invalid_argument("detect_equilibrium: hold must be >= 1");
    std::size_t run = 0;
    for (std::size_t k = 0; k < spread_history.size(); ++k) {
        run = spread_history[k] <= tol ? run + 1 : 0;
        if (run >= hold) return k + 1 - hold;
    }
    return std::nullopt;
}

}  // namespace enclose
