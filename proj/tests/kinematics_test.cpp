#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rss/errors.hpp"
#include "rss/kinematics.hpp"

using namespace rss::kinematics;

namespace {

constexpr double kG = kGravity;

ScenarioParams figure_params(double a_min_g, double a_max_g) {
    ScenarioParams p;
    p.v_r = 25.0;
    p.v_f = 25.0;
    p.rho = 0.5;
    p.a_max_accel = 0.3 * kG;
    p.a_min_brake = a_min_g * kG;
    p.a_max_brake = std::isinf(a_max_g) ? kUnboundedBrake : a_max_g * kG;
    return p;
}

}  // namespace

TEST_CASE("d_prime_min reproduces the published worst-capability cell") {
    // 621.0 m at a_max_brake = 0.3g, a_min_brake = 0.05g.
    const auto p = figure_params(0.05, 0.3);
    CHECK(std::round(d_prime_min(p) * 10.0) / 10.0 == doctest::Approx(621.0));
    CHECK(!is_special_case(p));
}

TEST_CASE("d_prime_min clamps a stationary rear vehicle to zero") {
    ScenarioParams p;
    p.v_r = 0.0;
    p.v_f = 10.0;
    p.rho = 0.7;
    p.a_max_accel = 0.0;
    p.a_min_brake = 3.0;
    p.a_max_brake = 4.0;
    CHECK(d_prime_min(p) == 0.0);
    CHECK(d_prime_min_unclamped(p) < 0.0);
}

TEST_CASE("unbounded front brake removes the subtracted term") {
    auto p = figure_params(1.0, std::numeric_limits<double>::infinity());
    CHECK(p.front_brake_unbounded());
    CHECK(d_prime_min(p) == doctest::Approx(48.583487245158).epsilon(1e-12));
    CHECK_THROWS_AS(d_double_prime_min(p), rss::NotApplicableError);
    CHECK(!is_special_case(p));
}

TEST_CASE("d_double_prime_min hand-computed value") {
    const auto p = figure_params(0.4, 0.3);
    CHECK(d_double_prime_min(p) == doctest::Approx(0.73575).epsilon(1e-12));

    SUBCASE("zero response time gives zero closure") {
        auto q = p;
        q.rho = 0.0;
        CHECK(d_double_prime_min(q) == 0.0);
    }
    SUBCASE("no relative motion gives zero closure") {
        ScenarioParams q;
        q.v_r = q.v_f = 12.0;
        q.rho = 1.0;
        q.a_max_accel = 0.0;
        q.a_min_brake = 1.0;
        q.a_max_brake = 1e-12;
        // a_max_accel = a_max_brake = 0 in the limit; use a negligible brake.
        CHECK(d_double_prime_min(q) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("equal_speed_time and d_triple_prime at the published special-case cell") {
    const auto p = figure_params(0.4, 0.3);
    REQUIRE(is_special_case(p));
    const double t = equal_speed_time(p);
    CHECK(t == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(d_triple_prime_at(p, t) == doctest::Approx(4.4145).epsilon(1e-9));
    CHECK(d_triple_prime_at(p, 0.0) == 0.0);
    CHECK_THROWS_AS(d_triple_prime_at(p, -0.1), rss::InvalidParameterError);

    SUBCASE("the interior maximum sits at the equal-speed time") {
        double best = -1.0, best_t = 0.0;
        const double t_stop_r = stopping_times(p).t_stop_r;
        for (double tt = 0.0; tt <= t_stop_r; tt += 1e-4) {
            const double v = d_triple_prime_at(p, tt);
            if (v > best) {
                best = v;
                best_t = tt;
            }
        }
        CHECK(best_t == doctest::Approx(t).epsilon(1e-3));
    }
}

TEST_CASE("special-case predicate") {
    CHECK(is_special_case(figure_params(0.4, 0.3)));
    CHECK(!is_special_case(figure_params(0.3, 0.3)));  // equal braking

    ScenarioParams p;
    p.v_r = 0.0;
    p.v_f = 30.0;
    p.rho = 0.0;
    p.a_max_accel = 1.0;
    p.a_min_brake = 5.0;
    p.a_max_brake = 2.0;
    CHECK(!is_special_case(p));  // rear not faster at end of response time

    // Front vehicle that stops within the response time: rest-position bound applies.
    ScenarioParams q;
    q.v_r = 10.0;
    q.v_f = 1.0;
    q.rho = 1.0;
    q.a_max_accel = 0.0;
    q.a_min_brake = 6.0;
    q.a_max_brake = 2.0;
    CHECK(!is_special_case(q));
}

TEST_CASE("stopping_times") {
    ScenarioParams p;
    p.v_r = 0.0;
    p.v_f = 25.0;
    p.rho = 0.5;
    p.a_max_accel = 0.0;
    p.a_min_brake = 1.0;
    p.a_max_brake = 0.6 * kG;
    const auto st = stopping_times(p);
    CHECK(st.t_stop_f == doctest::Approx(3.7473666326877333).epsilon(1e-12));
    CHECK(st.t_stop_r == 0.0);

    SUBCASE("front stops within the response time") {
        p.v_f = 0.1;
        CHECK(stopping_times(p).t_stop_f == 0.0);
    }
    SUBCASE("unbounded front brake stops instantly") {
        p.a_max_brake = kUnboundedBrake;
        CHECK(stopping_times(p).t_stop_f == 0.0);
    }
}

TEST_CASE("d_min composition") {
    SUBCASE("special case prevails with a clamped rest-position term") {
        const auto r = d_min(figure_params(0.4, 0.3));
        CHECK(r.special_case_applied);
        CHECK(r.d_prime == 0.0);
        CHECK(std::round(r.d_min * 10.0) / 10.0 == doctest::Approx(5.2));
        CHECK(r.d_min == doctest::Approx(*r.d_double_prime + *r.d_triple_prime));
        CHECK(r.d_min >= r.d_prime);
    }
    SUBCASE("both at rest") {
        ScenarioParams p;
        p.v_r = p.v_f = 0.0;
        p.rho = 1.0;
        p.a_max_accel = 0.0;
        p.a_min_brake = 1.0;
        p.a_max_brake = 1.0;
        CHECK(d_min(p).d_min == 0.0);
    }
    SUBCASE("non-special falls back to the rest-position bound") {
        const auto r = d_min(figure_params(0.05, 0.3));
        CHECK(!r.special_case_applied);
        CHECK(r.d_min == d_prime_min(figure_params(0.05, 0.3)));
        CHECK(!r.d_double_prime.has_value());
    }
}

TEST_CASE("parameter validation") {
    ScenarioParams p;
    p.v_r = -1.0;
    p.a_min_brake = 1.0;
    p.a_max_brake = 1.0;
    CHECK_THROWS_AS(p.validate(), rss::InvalidParameterError);
    p.v_r = 1.0;
    p.a_min_brake = 0.0;
    CHECK_THROWS_AS(p.validate(), rss::InvalidParameterError);
    p.a_min_brake = 1.0;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("equal_speed_time is nonnegative across random special-case draws") {
    std::mt19937_64 rng(7);
    auto u = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    int checked = 0;
    while (checked < 2000) {
        ScenarioParams p;
        p.rho = u(0.0, 2.0);
        p.a_max_accel = u(0.0, 12.0);
        p.a_max_brake = u(0.5, 11.0);
        p.a_min_brake = p.a_max_brake * u(1.0001, 3.0);
        p.v_f = p.a_max_brake * p.rho + u(0.1, 25.0);
        p.v_r = std::max(0.0, p.v_f - (p.a_max_accel + p.a_max_brake) * p.rho) + u(0.001, 20.0);
        if (!is_special_case(p)) continue;
        ++checked;
        const double t = equal_speed_time(p);
        CHECK(t >= 0.0);
        CHECK(t <= stopping_times(p).t_stop_r + 1e-12);
    }
}
