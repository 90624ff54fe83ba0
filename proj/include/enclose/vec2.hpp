#pragma once

#include <cmath>
#include <stdexcept>

namespace enclose {

// Planar vector (meters, or meters per step depending on context).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2& o) const = default;

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    // z-component of the 3D cross product; used for direction checks.
    constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    constexpr double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

// 2x2 matrix, row-major. Everything here is closed-form: the library never
// needs anything larger than 2x2.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0;
    double m10 = 0.0, m11 = 0.0;

    constexpr Mat2() = default;
    constexpr Mat2(double a, double b, double c, double d)
        : m00(a), m01(b), m10(c), m11(d) {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 outer(const Vec2& u, const Vec2& v) {
        return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
    }

    constexpr Mat2 operator+(const Mat2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    constexpr Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    constexpr Mat2 operator*(double s) const {
        return {m00 * s, m01 * s, m10 * s, m11 * s};
    }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    constexpr Vec2 operator*(const Vec2& v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }

    constexpr Mat2 transposed() const { return {m00, m10, m01, m11}; }
    constexpr double trace() const { return m00 + m11; }
    constexpr double det() const { return m00 * m11 - m01 * m10; }

    Mat2 inverse() const {
        const double d = det();
        if (d == 0.0) throw std::domain_error("Mat2::inverse: singular matrix");
        return {m11 / d, -m01 / d, -m10 / d, m00 / d};
    }

    // Symmetrize as (M + M^T)/2; the estimator recursion is symmetric in
    // exact arithmetic, this suppresses floating-point drift.
    constexpr Mat2 symmetrized() const {
        const double off = 0.5 * (m01 + m10);
        return {m00, off, off, m11};
    }

    bool finite() const {
        return std::isfinite(m00) && std::isfinite(m01) &&
               std::isfinite(m10) && std::isfinite(m11);
    }

    // Checks symmetric positive definiteness via leading minors.
    bool positive_definite() const {
        return m00 > 0.0 && det() > 0.0;
    }

    constexpr bool operator==(const Mat2& o) const = default;
};

constexpr Mat2 operator*(double s, const Mat2& m) { return m * s; }

struct EigPair {
    double min = 0.0;
    double max = 0.0;
};

// Eigenvalues of a symmetric 2x2 matrix, closed form. Uses the mean of the
// off-diagonal entries so nearly-symmetric inputs are handled gracefully.
inline EigPair symmetric_eigenvalues(const Mat2& m) {
    const double b = 0.5 * (m.m01 + m.m10);
    const double mean = 0.5 * (m.m00 + m.m11);
    const double disc = std::hypot(0.5 * (m.m00 - m.m11), b);
    return {mean - disc, mean + disc};
}

// Singular values of a general 2x2 matrix, closed form.
inline EigPair singular_values(const Mat2& m) {
    const double e = 0.5 * (m.m00 + m.m11);
    const double f = 0.5 * (m.m00 - m.m11);
    const double g = 0.5 * (m.m10 + m.m01);
    const double h = 0.5 * (m.m10 - m.m01);
    const double q = std::hypot(e, h);
    const double r = std::hypot(f, g);
    return {std::abs(q - r), q + r};
}

}  // namespace enclose
