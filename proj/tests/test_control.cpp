#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>

#include "enclose/control.hpp"

using namespace enclose;

namespace {

double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("saturation clips radially") {
    const Vec2 clipped = saturate({3.0, 4.0}, 1.0);
    CHECK(clipped.x == Catch::Approx(0.6).margin(1e-15));
    CHECK(clipped.y == Catch::Approx(0.8).margin(1e-15));
    CHECK(saturate({0.3, 0.4}, 1.0) == Vec2{0.3, 0.4});
    CHECK(saturate({0.0, 0.0}, 2.0) == Vec2{0.0, 0.0});
    CHECK_THROWS_AS(saturate({1.0, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(saturate({1.0, 0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("saturation preserves norms and directions") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 10000; ++trial) {
        const Vec2 u{uniform(gen, -10.0, 10.0), uniform(gen, -10.0, 10.0)};
        const double cap = uniform(gen, 0.1, 5.0);
        const Vec2 s = saturate(u, cap);
        const double expect = std::min(u.norm(), cap);
        REQUIRE(std::abs(s.norm() - expect) <= 1e-12 * std::max(1.0, expect));
        REQUIRE(std::abs(u.cross(s)) <= 1e-12 * std::max(1.0, u.norm() * s.norm()));
        REQUIRE(u.dot(s) >= 0.0);
    }
}

TEST_CASE("consensus term") {
    SECTION("zero residual means no correction") {
        const std::map<AgentId, Vec2> est{{0, {4.0, 0.0}}, {2, {1.0, 1.0}}};
        const std::map<AgentId, Vec2> des = est;
        const std::map<AgentId, double> w{{0, 0.5}, {2, 0.5}};
        CHECK(consensus_term(est, des, w, 7.0) == Vec2{0.0, 0.0});
    }
    SECTION("single neighbor hand value") {
        const std::map<AgentId, Vec2> est{{2, {1.1, 0.0}}};
        const std::map<AgentId, Vec2> des{{2, {1.0, 0.0}}};
        const std::map<AgentId, double> w{{2, 1.0}};
        const Vec2 u = consensus_term(est, des, w, 7.0);
        CHECK(u.x == Catch::Approx(-0.7).margin(1e-12));
        CHECK(u.y == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("doubling weights while halving beta changes nothing") {
        std::mt19937_64 gen(42);
        std::map<AgentId, Vec2> est, des;
        std::map<AgentId, double> w, w2;
        for (AgentId j : {0, 2, 3, 4}) {
            est[j] = {uniform(gen, -3.0, 3.0), uniform(gen, -3.0, 3.0)};
            des[j] = {uniform(gen, -3.0, 3.0), uniform(gen, -3.0, 3.0)};
            w[j] = uniform(gen, 0.1, 1.0);
            w2[j] = 2.0 * w[j];
        }
        const Vec2 a = consensus_term(est, des, w, 6.0);
        const Vec2 b = consensus_term(est, des, w2, 3.0);
        CHECK((a - b).norm() < 1e-12);
    }
    SECTION("key mismatch is rejected") {
        const std::map<AgentId, Vec2> est{{2, {1.0, 0.0}}};
        const std::map<AgentId, Vec2> des{{3, {1.0, 0.0}}};
        const std::map<AgentId, double> w{{2, 1.0}};
        CHECK_THROWS_AS(consensus_term(est, des, w, 1.0), std::invalid_argument);
    }
}

TEST_CASE("control assembly") {
    SECTION("pure target feedthrough") {
        const ControlInput c = control_input({0.0, 0.0}, 0.4, {0.0, 0.0}, 0.125, {0.1, 0.0});
        CHECK(c.u == Vec2{0.1, 0.0});
        CHECK(c.consensus_part == Vec2{0.0, 0.0});
    }
    SECTION("saturation binds") {
        const ControlInput c = control_input({1e6, 0.0}, 0.4, {0.0, 0.0}, 0.125, {0.0, 0.0});
        CHECK(c.u.x == Catch::Approx(0.4).margin(1e-12));
        CHECK(c.u.y == 0.0);
    }
    SECTION("assembled sum against an independent evaluation") {
        // Published-parameter flavor: cap 0.4, T = 0.125, chord of a rho = 4
        // circle, target feedthrough 0.8 m/s.
        const Vec2 u_bar{0.9, -0.3};
        const Vec2 dr{-0.5537, 0.5537};
        const Vec2 u0{0.8, 0.0};
        const double cap = 0.4, T = 0.125;

        const double nb = std::hypot(0.9, -0.3);
        const double sx = 0.9 * (cap / std::max(cap, nb));
        const double sy = -0.3 * (cap / std::max(cap, nb));
        const double ex = sx + dr.x / T + u0.x;
        const double ey = sy + dr.y / T + u0.y;

        const ControlInput c = control_input(u_bar, cap, dr, T, u0);
        CHECK(c.u.x == Catch::Approx(ex).margin(1e-15));
        CHECK(c.u.y == Catch::Approx(ey).margin(1e-15));
        CHECK(c.consensus_part.norm() <= cap + 1e-12);
        CHECK(c.feedforward_part == Vec2{dr.x / T, dr.y / T});
        CHECK(c.target_part == u0);
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(control_input({0.0, 0.0}, 0.4, {0.0, 0.0}, 0.0, {0.0, 0.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(control_input({0.0, 0.0}, 0.0, {0.0, 0.0}, 0.125, {0.0, 0.0}),
                        std::invalid_argument);
    }
}
