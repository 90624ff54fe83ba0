#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "enclose/formation.hpp"

namespace enclose {

// Scalar schedule evaluated at integer steps. Three shapes cover every
// schedule the scenarios need: a constant, offset + amp*sin(2*pi*k/period),
// and a right-continuous step function.
struct Waveform {
    enum class Kind { Constant, Sinusoid, Piecewise };

    Kind kind = Kind::Constant;
    double value = 0.0;                               // constant
    double amp = 0.0, period = 1.0, offset = 0.0;     // sinusoid
    std::vector<std::pair<std::size_t, double>> points;  // piecewise, sorted by step

    static Waveform constant(double v) {
        Waveform w;
        w.kind = Kind::Constant;
        w.value = v;
        return w;
    }
    static Waveform sinusoid(double amp_, double period_, double offset_) {
        if (period_ <= 0.0) throw std::invalid_argument("Waveform: period must be > 0");
        Waveform w;
        w.kind = Kind::Sinusoid;
        w.amp = amp_;
        w.period = period_;
        w.offset = offset_;
        return w;
    }
    static Waveform piecewise(std::vector<std::pair<std::size_t, double>> pts) {
        if (pts.empty()) throw std::invalid_argument("Waveform: piecewise needs points");
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i].first <= pts[i - 1].first)
                throw std::invalid_argument("Waveform: piecewise steps must increase");
        Waveform w;
        w.kind = Kind::Piecewise;
        w.points = std::move(pts);
        return w;
    }

    double at(std::size_t k) const {
        switch (kind) {
            case Kind::Constant:
                return value;
            case Kind::Sinusoid:
                return offset + amp * std::sin(2.0 * M_PI * static_cast<double>(k) / period);
            case Kind::Piecewise: {
                double v = points.front().second;
                for (const auto& [step, val] : points) {
                    if (step > k) break;
                    v = val;
                }
                return v;
            }
        }
        return value;
    }

    double lower_bound() const {
        switch (kind) {
            case Kind::Constant:
                return value;
            case Kind::Sinusoid:
                return offset - std::abs(amp);
            case Kind::Piecewise: {
                double lo = points.front().second;
                for (const auto& [step, val] : points) lo = std::min(lo, val);
                return lo;
            }
        }
        return value;
    }

    double upper_bound() const {
        switch (kind) {
            case Kind::Constant:
                return value;
            case Kind::Sinusoid:
                return offset + std::abs(amp);
            case Kind::Piecewise: {
                double hi = points.front().second;
                for (const auto& [step, val] : points) hi = std::max(hi, val);
                return hi;
            }
        }
        return value;
    }

    bool operator==(const Waveform& o) const = default;
};

// Per-step affine parameters for the desired formation shape.
struct AffineSchedule {
    Waveform t_x = Waveform::constant(0.0);
    Waveform t_y = Waveform::constant(0.0);
    Waveform s_x = Waveform::constant(1.0);
    Waveform s_y = Waveform::constant(1.0);
    Waveform h_a = Waveform::constant(0.0);
    Waveform h_b = Waveform::constant(0.0);

    AffineParams at(std::size_t k) const {
        AffineParams p;
        p.t_x = t_x.at(k);
        p.t_y = t_y.at(k);
        p.s_x = s_x.at(k);
        p.s_y = s_y.at(k);
        p.h_a = h_a.at(k);
        p.h_b = h_b.at(k);
        return p;
    }

    bool operator==(const AffineSchedule& o) const = default;
};

// Base circle radius plus the affine shape schedule applied on top of it.
struct RhoSchedule {
    double base_rho = 4.0;
    AffineSchedule affine;

    // Effective radius when scaling is isotropic; used for budget estimates.
    double effective_rho_upper() const {
        const double s = std::max(affine.s_x.upper_bound(), affine.s_y.upper_bound());
        const double shear = std::max(std::abs(affine.h_a.lower_bound()),
                                      std::max(std::abs(affine.h_a.upper_bound()),
                                               std::max(std::abs(affine.h_b.lower_bound()),
                                                        std::abs(affine.h_b.upper_bound()))));
        const double t = std::hypot(std::max(std::abs(affine.t_x.lower_bound()),
                                             std::abs(affine.t_x.upper_bound())),
                                    std::max(std::abs(affine.t_y.lower_bound()),
                                             std::abs(affine.t_y.upper_bound())));
        return base_rho * s * (1.0 + shear) + t;
    }

    bool operator==(const RhoSchedule& o) const = default;
};

}  // namespace enclose
