#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "enclose/localization.hpp"
#include "test_util.hpp"

using namespace enclose;

namespace {

double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Noiseless measurement for a pair whose relative position moves p -> p + v.
Measurement make_measurement(const Vec2& p, const Vec2& v) {
    Measurement m;
    m.d_now = p.norm();
    m.d_next = (p + v).norm();
    m.v_ij = v;
    return m;
}

// Random relative-position trajectory with its measurement stream.
std::vector<Measurement> random_history(std::mt19937_64& gen, std::size_t len) {
    Vec2 p{uniform(gen, -5.0, 5.0), uniform(gen, -5.0, 5.0)};
    std::vector<Measurement> hist;
    for (std::size_t k = 0; k < len; ++k) {
        const Vec2 v{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
        hist.push_back(make_measurement(p, v));
        p += v;
    }
    return hist;
}

Mat2 random_spd(std::mt19937_64& gen) {
    const Mat2 a{uniform(gen, -2.0, 2.0), uniform(gen, -2.0, 2.0),
                 uniform(gen, -2.0, 2.0), uniform(gen, -2.0, 2.0)};
    return (a.transposed() * a + Mat2::identity() * 0.05).symmetrized();
}

}  // namespace

TEST_CASE("range combination equals the displacement-position product") {
    // p = (1,0), v = (1,1): distances 1 and sqrt(5), zeta = (5 - 1 - 2)/2 = 1.
    const Measurement hand = make_measurement({1.0, 0.0}, {1.0, 1.0});
    CHECK(zeta(hand) == Catch::Approx(1.0).margin(1e-15));
    CHECK(zeta(hand) == Catch::Approx(hand.v_ij.dot({1.0, 0.0})).margin(1e-15));

    Measurement still;
    still.d_now = still.d_next = 3.7;
    CHECK(zeta(still) == 0.0);

    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec2 p{uniform(gen, -5.0, 5.0), uniform(gen, -5.0, 5.0)};
        const Vec2 v{uniform(gen, -2.0, 2.0), uniform(gen, -2.0, 2.0)};
        const Measurement m = make_measurement(p, v);
        CHECK(m.consistent());
        const double scale = std::max(1.0, v.norm() * p.norm());
        CHECK(std::abs(zeta(m) - v.dot(p)) <= 1e-12 * scale);
    }
}

TEST_CASE("estimator update: perfect prior propagates the truth") {
    std::mt19937_64 gen(22);
    const Vec2 p{2.0, -1.0};
    const Vec2 v{0.3, 0.4};
    EdgeEstimator est;
    est.p_hat = p;
    est.beta_f = 0.7;
    const EdgeEstimator next = rlse_update(est, make_measurement(p, v));
    CHECK((next.p_hat - (p + v)).norm() < 1e-12);
}

TEST_CASE("estimator update: gain recursion closed form") {
    EdgeEstimator est;
    est.beta_f = 0.7;
    Measurement m = make_measurement({1.0, 0.0}, {1.0, 0.0});
    const EdgeEstimator next = rlse_update(est, m);
    CHECK(next.gamma.m00 == Catch::Approx(1.0 / 1.7).margin(1e-15));
    CHECK(next.gamma.m11 == Catch::Approx(1.0 / 0.7).margin(1e-15));
    CHECK(next.gamma.m01 == Catch::Approx(0.0).margin(1e-15));
    CHECK(next.gamma.m10 == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("estimator update: zero displacement only inflates the gain") {
    EdgeEstimator est;
    est.p_hat = {1.0, 2.0};
    est.gamma = {2.0, 0.5, 0.5, 1.0};
    est.beta_f = 0.7;
    Measurement m;
    m.d_now = m.d_next = 2.0;
    const EdgeEstimator next = rlse_update(est, m);
    CHECK(next.p_hat == est.p_hat);
    CHECK((next.gamma - est.gamma * (1.0 / 0.7)).finite());
    CHECK(std::abs(next.gamma.m00 - 2.0 / 0.7) < 1e-15);
    CHECK(std::abs(next.gamma.m01 - 0.5 / 0.7) < 1e-15);
    CHECK(std::abs(next.gamma.m11 - 1.0 / 0.7) < 1e-15);
}

TEST_CASE("estimator update rejects bad state") {
    EdgeEstimator est;
    est.gamma = {-1.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(rlse_update(est, Measurement{}), std::invalid_argument);
    est.gamma = Mat2::identity();
    est.beta_f = 1.0;
    CHECK_THROWS_AS(rlse_update(est, Measurement{}), std::invalid_argument);
}

TEST_CASE("batch solve: empty history returns the prior") {
    const Vec2 prior{1.5, -2.5};
    CHECK(batch_oracle({}, prior, Mat2::identity(), 0.7) == prior);
}

TEST_CASE("batch solve matches one recursive update") {
    const Vec2 p0{3.0, 1.0};
    const Vec2 v{0.5, -0.2};
    const std::vector<Measurement> hist{make_measurement(p0, v)};

    EdgeEstimator est;
    est.beta_f = 0.7;
    const EdgeEstimator rec = rlse_update(est, hist[0]);
    const Vec2 batch = batch_oracle(hist, {0.0, 0.0}, Mat2::identity(), 0.7);
    CHECK((rec.p_hat - batch).norm() < 1e-10);
}

TEST_CASE("recursion tracks the batch minimizer along whole histories") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 6; ++trial) {
        const double beta_f = (trial % 2 == 0) ? 0.7 : 0.95;
        const auto hist = random_history(gen, 500);
        EdgeEstimator est;
        est.beta_f = beta_f;
        std::vector<Measurement> prefix;
        for (const Measurement& m : hist) {
            est = rlse_update(est, m);
            prefix.push_back(m);
            const Vec2 batch = batch_oracle(prefix, {0.0, 0.0}, Mat2::identity(), beta_f);
            const double scale = std::max(1.0, batch.norm());
            REQUIRE((est.p_hat - batch).norm() <= 1e-6 * scale);
        }
    }
}

TEST_CASE("batch solve recovers the truth on a circling pair") {
    std::vector<Measurement> hist;
    Vec2 p{3.0, 0.0};
    for (int k = 0; k < 200; ++k) {
        const double a0 = 2.0 * M_PI * k / 40.0;
        const double a1 = 2.0 * M_PI * (k + 1) / 40.0;
        const Vec2 next{3.0 * std::cos(a1), 3.0 * std::sin(a1)};
        hist.push_back(make_measurement(p, next - p));
        p = next;
    }
    const Vec2 batch = batch_oracle(hist, {0.0, 0.0}, Mat2::identity(), 0.7);
    CHECK((batch - p).norm() < 1e-6);

    EdgeEstimator est;
    est.beta_f = 0.7;
    for (const Measurement& m : hist) est = rlse_update(est, m);
    CHECK((est.p_hat - batch).norm() < 1e-6);
}

TEST_CASE("gain matrix stays positive definite under random updates") {
    std::mt19937_64 gen(24);
    EdgeEstimator est;
    est.beta_f = 0.7;
    Vec2 p{1.0, 1.0};
    for (int k = 0; k < 10000; ++k) {
        const Vec2 v{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
        est = rlse_update(est, make_measurement(p, v));
        p += v;
        const EigPair eig = symmetric_eigenvalues(est.gamma);
        REQUIRE(eig.min > 0.0);
        REQUIRE(std::isfinite(eig.max));
    }
}

TEST_CASE("gain recursion agrees with the information-form update") {
    std::mt19937_64 gen(25);
    for (int trial = 0; trial < 200; ++trial) {
        EdgeEstimator est;
        est.gamma = random_spd(gen);
        est.beta_f = uniform(gen, 0.3, 0.95);
        const Vec2 p{uniform(gen, -3.0, 3.0), uniform(gen, -3.0, 3.0)};
        const Vec2 v{uniform(gen, -1.0, 1.0), uniform(gen, -1.0, 1.0)};
        const EdgeEstimator next = rlse_update(est, make_measurement(p, v));

        const Mat2 info = est.gamma.inverse() * est.beta_f + Mat2::outer(v, v);
        const Mat2 direct = info.inverse();
        CHECK(std::abs(next.gamma.m00 - direct.m00) < 1e-9);
        CHECK(std::abs(next.gamma.m01 - direct.m01) < 1e-9);
        CHECK(std::abs(next.gamma.m11 - direct.m11) < 1e-9);
    }
}

TEST_CASE("estimation error decays exponentially on an exciting trajectory") {
    // Rotating displacement directions: the canonical persistently exciting
    // stream. Start the estimate at zero and watch the error fall.
    EdgeEstimator est;
    est.beta_f = 0.7;
    Vec2 p{4.0, 1.0};
    std::vector<double> log_err;
    for (int k = 0; k < 200; ++k) {
        const double ang = 2.0 * M_PI * k / 32.0;
        const Vec2 v{0.5 * std::cos(ang), 0.5 * std::sin(ang)};
        est = rlse_update(est, make_measurement(p, v));
        p += v;
        log_err.push_back(testutil::log10_floor((est.p_hat - p).norm()));
    }
    CHECK(testutil::fitted_slope(log_err) < 0.0);
    CHECK(std::pow(10.0, log_err.back()) < 1e-3);
}

TEST_CASE("measurement consistency check") {
    CHECK(make_measurement({1.0, 0.0}, {0.5, 0.5}).consistent());
    Measurement bad;
    bad.d_now = 1.0;
    bad.d_next = 5.0;
    bad.v_ij = {0.1, 0.0};
    CHECK_FALSE(bad.consistent());
}
