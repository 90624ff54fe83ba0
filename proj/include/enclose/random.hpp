#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "enclose/vec2.hpp"

namespace enclose {

// Seeded generator with hand-rolled uniform/normal transforms. The standard
// distributions are implementation-defined, so byte-identical logs would not
// survive a stdlib change; the raw mt19937_64 stream does.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Box-Muller; one fresh pair of uniforms per call.
    double normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * mag * std::cos(2.0 * M_PI * u2);
    }

    Vec2 uniform_vec(double lo, double hi) {
        const double x = uniform(lo, hi);
        const double y = uniform(lo, hi);
        return {x, y};
    }

    // Uniform over a disk of the given radius (polar transform, two draws).
    Vec2 in_disk(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double phi = uniform(0.0, 2.0 * M_PI);
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace enclose
