#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "enclose/vec2.hpp"

namespace enclose {

// One step's ranging data for an edge: distances before and after the step
// and the relative displacement over it.
struct Measurement {
    double d_now = 0.0;   // d_ij(k)  [m]
    double d_next = 0.0;  // d_ij(k+) [m]
    Vec2 v_ij;            // relative displacement over the step [m]

    // Noiseless measurements always satisfy the triangle consistency bound.
    bool consistent(double tol = 1e-9) const {
        return d_now >= 0.0 && d_next >= 0.0 &&
               std::abs(d_next - d_now) <= v_ij.norm() + tol;
    }
};

// Cosine-law combination: in the noiseless case this equals v_ij . p_ij(k)
// identically, turning two range readings and one displacement into a linear
// measurement of the relative position.
inline double zeta(const Measurement& m) {
    return 0.5 * (m.d_next * m.d_next - m.d_now * m.d_now - m.v_ij.norm2());
}

// Recursive least-squares state for one extended edge.
struct EdgeEstimator {
    Vec2 p_hat;                    // estimated relative position [m]
    Mat2 gamma = Mat2::identity(); // gain matrix, symmetric positive definite
    double beta_f = 0.7;           // forgetting factor in (0,1)
};

// One recursive update. The gain recursion is the Sherman-Morrison form of
//   gamma(k+1)^{-1} = beta_f gamma(k)^{-1} + v v^T,
// and the estimate both propagates by the measured displacement and corrects
// along gamma(k+1) v by the innovation.
inline EdgeEstimator rlse_update(const EdgeEstimator& est, const Measurement& m) {
    if (est.beta_f <= 0.0 || est.beta_f >= 1.0)
        throw std::invalid_argument("rlse_update: forgetting factor must lie in (0,1)");
    if (!est.gamma.positive_definite())
        throw std::invalid_argument("rlse_update: gamma must be positive definite");

    const Vec2& v = m.v_ij;
    const double eps = zeta(m) - v.dot(est.p_hat);

    const Vec2 gv = est.gamma * v;
    const double denom = est.beta_f + v.dot(gv);
    const Mat2 gamma_next =
        ((est.gamma - Mat2::outer(gv, gv) * (1.0 / denom)) * (1.0 / est.beta_f)).symmetrized();

    EdgeEstimator next = est;
    next.gamma = gamma_next;
    next.p_hat = est.p_hat + v + (gamma_next * v) * eps;
    return next;
}

// Exact minimizer of the forgetting-weighted least-squares cost over a full
// measurement history, solved through the 2x2 normal equations. The forgetting
// weight on measurement l of K is beta_f^{K-1-l} (newest unweighted) and
// beta_f^K on the prior term, which is the weighting the recursion above
// realizes. Test oracle for rlse_update; shares no code with it beyond Vec2.
inline Vec2 batch_oracle(std::span<const Measurement> history, const Vec2& p_hat0,
                         const Mat2& gamma0, double beta_f) {
    if (!gamma0.positive_definite())
        throw std::invalid_argument("batch_oracle: gamma0 must be positive definite");
    if (beta_f <= 0.0 || beta_f >= 1.0)
        throw std::invalid_argument("batch_oracle: forgetting factor must lie in (0,1)");

    // The parameter solved for is the relative position anchored at step 0;
    // measurement l constrains it through the cumulative displacement up to l.
    Mat2 normal = gamma0.inverse();
    Vec2 rhs = normal * p_hat0;
    Vec2 cum;  // sum of v over steps [0, l)
    for (const Measurement& m : history) {
        const double z = zeta(m) - m.v_ij.dot(cum);
        normal = normal * beta_f + Mat2::outer(m.v_ij, m.v_ij);
        rhs = rhs * beta_f + m.v_ij * z;
        cum += m.v_ij;
    }
    if (normal.det() == 0.0)
        throw std::domain_error("batch_oracle: singular normal matrix");
    const Vec2 anchored = normal.inverse() * rhs;
    return anchored + cum;
}

}  // namespace enclose
