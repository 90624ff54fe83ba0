#pragma once

#include <cmath>
#include <stdexcept>

#include "enclose/vec2.hpp"

namespace enclose {

// Translation / scaling / shearing parameters applied to the desired circle
// in homogeneous coordinates. Composition order is fixed: shear, then scale,
// then translate (q' = T S H q^h).
struct AffineParams {
    double t_x = 0.0, t_y = 0.0;   // translation [m]
    double s_x = 1.0, s_y = 1.0;   // scaling, must stay > 0
    double h_a = 0.0, h_b = 0.0;   // shearing

    bool is_identity() const {
        return t_x == 0.0 && t_y == 0.0 && s_x == 1.0 && s_y == 1.0 &&
               h_a == 0.0 && h_b == 0.0;
    }

    void check() const {
        if (s_x <= 0.0 || s_y <= 0.0)
            throw std::invalid_argument("AffineParams: scaling factors must be > 0");
    }
};

// Desired relative position and one-step desired self-displacement of one
// agent.
struct DesiredSetpoint {
    Vec2 r;    // desired position relative to the target [m]
    Vec2 dr;   // planned displacement to the next setpoint [m]
};

// Point on the desired circle at angle theta, radius rho.
inline Vec2 desired_position(double theta, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("desired_position: rho must be > 0");
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

// Applies shear, scale, translate to q (lifted through homogeneous
// coordinates; the third component stays 1 throughout).
inline Vec2 affine_apply(const AffineParams& p, const Vec2& q) {
    p.check();
    const Vec2 sheared{q.x + p.h_a * q.y, p.h_b * q.x + q.y};
    const Vec2 scaled{p.s_x * sheared.x, p.s_y * sheared.y};
    return {scaled.x + p.t_x, scaled.y + p.t_y};
}

inline Vec2 desired_displacement(const Vec2& r_next, const Vec2& r_now) {
    return r_next - r_now;
}

// r_ij = r_i - r_j. The target's desired position is identically zero, so
// r_i0 = r_i; use the single-argument form for target edges.
inline Vec2 desired_relative(const Vec2& r_i, const Vec2& r_j) {
    return r_i - r_j;
}

inline Vec2 desired_relative_to_target(const Vec2& r_i) {
    return r_i;
}

}  // namespace enclose
