#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rss/errors.hpp"
#include "rss/kinematics.hpp"
#include "rss/sim.hpp"

using namespace rss;
using kinematics::ScenarioParams;

namespace {

ScenarioParams figure_params(double a_min_g, double a_max_g) {
    ScenarioParams p;
    p.v_r = 25.0;
    p.v_f = 25.0;
    p.rho = 0.5;
    p.a_max_accel = 0.3 * kinematics::kGravity;
    p.a_min_brake = a_min_g * kinematics::kGravity;
    p.a_max_brake = std::isinf(a_max_g) ? kinematics::kUnboundedBrake
                                        : a_max_g * kinematics::kGravity;
    return p;
}

}  // namespace

TEST_CASE("trace structure and physical invariants") {
    const auto p = figure_params(0.4, 0.3);
    const auto trace = sim::simulate(p, 10.0, 1e-3);
    REQUIRE(!trace.samples.empty());
    CHECK(trace.samples.front().t == 0.0);
    CHECK(trace.samples.front().gap == 10.0);
    CHECK(trace.samples.front().v_r == p.v_r);
    CHECK(trace.samples.front().v_f == p.v_f);

    double prev_t = -1.0;
    for (const auto& s : trace.samples) {
        CHECK(s.t > prev_t);
        prev_t = s.t;
        CHECK(s.v_f >= 0.0);
        CHECK(s.v_r >= 0.0);
        CHECK(s.gap == doctest::Approx(10.0 + s.x_f - s.x_r).epsilon(1e-12));
    }
    CHECK(trace.samples.back().v_f == 0.0);
    CHECK(trace.samples.back().v_r == 0.0);
    CHECK(trace.min_gap <= 10.0);
}

TEST_CASE("identical braking with no response time keeps the gap constant") {
    ScenarioParams p;
    p.v_r = p.v_f = 20.0;
    p.rho = 0.0;
    p.a_max_accel = 0.0;
    p.a_min_brake = 4.0;
    p.a_max_brake = 4.0;
    const auto trace = sim::simulate(p, 5.0, 1e-3);
    CHECK(trace.min_gap == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(!trace.collided);
    CHECK(sim::min_safe_gap(p, 1e-6) == 0.0);
}

TEST_CASE("tangency at the exact minimum safe gap is not a collision") {
    const auto p = figure_params(0.4, 0.3);
    const double d = kinematics::d_min(p).d_min;
    const auto trace = sim::simulate(p, d, 1e-3);
    CHECK(!trace.collided);
    CHECK(trace.min_gap >= -1e-9);
    CHECK(trace.min_gap <= 1e-6);
}

TEST_CASE("the closed form brackets collision and safety") {
    for (const auto& p : {figure_params(0.4, 0.3), figure_params(0.6, 0.5),
                          figure_params(1.0, std::numeric_limits<double>::infinity())}) {
        const double d = kinematics::d_min(p).d_min;
        CAPTURE(p.a_min_brake);
        CHECK(!sim::simulate(p, d + 1e-3, 1e-3).collided);
        CHECK(sim::simulate(p, d - 1e-2, 1e-3).collided);
    }
}

TEST_CASE("min_safe_gap agrees with the closed form") {
    for (const auto& p : {figure_params(0.4, 0.3), figure_params(0.05, 0.3),
                          figure_params(0.55, 0.65),
                          figure_params(1.0, std::numeric_limits<double>::infinity())}) {
        const double oracle = sim::min_safe_gap(p, 1e-6);
        const double closed = kinematics::d_min(p).d_min;
        CAPTURE(p.a_min_brake);
        CHECK(std::fabs(oracle - closed) <= 1e-5);
    }
}

TEST_CASE("min_gap is step-size independent thanks to event-exact sampling") {
    const auto p = figure_params(0.4, 0.3);
    const double g1 = sim::simulate(p, 5.0, 1e-2).min_gap;
    const double g3 = sim::simulate(p, 5.0, 0.1).min_gap;
    const double g4 = sim::simulate(p, 5.0, 1e-4).min_gap;
    CHECK(g1 == doctest::Approx(g3).epsilon(1e-12));
    CHECK(g1 == doctest::Approx(g4).epsilon(1e-12));
}

TEST_CASE("velocity crossing happens at the predicted equal-speed time") {
    const auto p = figure_params(0.4, 0.3);
    const double t_eq = kinematics::equal_speed_time(p);
    const auto trace = sim::simulate(p, 100.0, 1e-4);
    // Find the sample where the rear first stops being faster than the front.
    double crossing = -1.0;
    for (size_t i = 1; i < trace.samples.size(); ++i) {
        const auto& a = trace.samples[i - 1];
        const auto& b = trace.samples[i];
        if (a.v_r - a.v_f > 0.0 && b.v_r - b.v_f <= 0.0) {
            crossing = b.t;
            break;
        }
    }
    REQUIRE(crossing >= 0.0);
    // The trace clock starts when the front brakes; t_eq counts from the end
    // of the response time.
    CHECK(crossing == doctest::Approx(p.rho + t_eq).epsilon(1e-3));
    CHECK(trace.min_gap_time == doctest::Approx(p.rho + t_eq).epsilon(1e-6));
}

TEST_CASE("input validation") {
    const auto p = figure_params(0.4, 0.3);
    CHECK_THROWS_AS(sim::simulate(p, -1.0, 1e-3), InvalidParameterError);
    CHECK_THROWS_AS(sim::simulate(p, 1.0, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(sim::simulate(p, 1.0, 1e-12), InvalidParameterError);
    CHECK_THROWS_AS(sim::min_safe_gap(p, 0.0), InvalidParameterError);
}
