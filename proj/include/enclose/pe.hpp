#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "enclose/graph.hpp"
#include "enclose/vec2.hpp"

namespace enclose {

// Below this floor the window Gramian counts as rank deficient; exact zero is
// ill-conditioned to test in floating point.
constexpr double kPeFloor = 1e-8;

// Excitation analysis of one window of one edge's displacement history.
struct PEReport {
    EdgeKey edge;
    std::size_t window_start = 0;  // l
    std::size_t window_len = 0;    // N
    Mat2 phi;                      // sum of v v^T over the window
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double alpha2_bound = 0.0;     // N T^2 (rho Omega + 2 Ubar)^2, 0 if not supplied

    bool persistently_excited(double floor = kPeFloor) const {
        return lambda_min > floor;
    }
};

// Steps per revolution of the equilibrium circular motion.
inline std::size_t window_period(double T, double omega) {
    if (T <= 0.0 || omega <= 0.0)
        throw std::invalid_argument("window_period: T and omega must be > 0");
    return static_cast<std::size_t>(std::floor(2.0 * M_PI / (T * omega)));
}

// Theoretical upper eigenvalue bound for a compliant window.
inline double alpha2_bound(std::size_t N, double T, double rho, double omega_cap,
                           double u_bar) {
    const double reach = rho * omega_cap + 2.0 * u_bar;
    return static_cast<double>(N) * T * T * reach * reach;
}

// Window Gramian over v_history[l .. l+N-1] with closed-form eigenvalues.
inline PEReport gramian(std::span<const Vec2> v_history, std::size_t l, std::size_t N,
                        EdgeKey edge = {}, double alpha2 = 0.0) {
    if (N < 1) throw std::invalid_argument("gramian: window length must be >= 1");
    if (l + N > v_history.size())
        throw std::invalid_argument("gramian: history does not cover the window");
    PEReport rep;
    rep.edge = edge;
    rep.window_start = l;
    rep.window_len = N;
    rep.alpha2_bound = alpha2;
    for (std::size_t k = l; k < l + N; ++k)
        rep.phi = rep.phi + Mat2::outer(v_history[k], v_history[k]);
    const EigPair eig = symmetric_eigenvalues(rep.phi);
    rep.lambda_min = eig.min;
    rep.lambda_max = eig.max;
    return rep;
}

// g(W) = sigma_max - sqrt(sigma_max^2 - sigma_min^2) over the singular values
// of a two-column displacement matrix; zero when W is rank deficient.
inline double excitation_gap(const Mat2& w) {
    const EigPair sv = singular_values(w);
    const double rad = std::max(sv.max * sv.max - sv.min * sv.min, 0.0);
    return sv.max - std::sqrt(rad);
}

// Sampling-time threshold T < g(W*) / (2 sqrt(2) Ubar). Rank-deficient W*
// yields threshold 0, i.e. no admissible T: the collinearity assumption fails.
inline double small_T_threshold(const Mat2& w_star, double u_bar) {
    if (u_bar <= 0.0) throw std::invalid_argument("small_T_threshold: u_bar must be > 0");
    return excitation_gap(w_star) / (2.0 * std::sqrt(2.0) * u_bar);
}

// Checks every displacement in the history against both chord bounds:
// 2 rho |sin(T omega / 2)| and T rho Omega.
inline bool chord_bound_check(std::span<const Vec2> dr_history, double rho,
                              double omega, double omega_cap, double T,
                              double tol = 1e-9) {
    if (rho <= 0.0) throw std::invalid_argument("chord_bound_check: rho must be > 0");
    const double chord = 2.0 * rho * std::abs(std::sin(T * omega / 2.0));
    const double cap = T * rho * omega_cap;
    for (const Vec2& dr : dr_history) {
        const double norm = dr.norm();
        if (norm > chord + tol || norm > cap + tol) return false;
    }
    return true;
}

}  // namespace enclose
