#include "rss/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "rss/errors.hpp"

namespace rss::kinematics {

namespace {

// Rear speed at the end of the response time.
double rear_peak_speed(const ScenarioParams& p) {
    return p.v_r + p.a_max_accel * p.rho;
}

// Front speed at the end of the response time (may be negative when the
// front vehicle stops within the response time).
double front_residual_speed(const ScenarioParams& p) {
    return p.v_f - p.a_max_brake * p.rho;
}

}  // namespace

bool ScenarioParams::front_brake_unbounded() const {
    return std::isinf(a_max_brake);
}

void ScenarioParams::validate() const {
    auto bad = [](const char* msg) { throw InvalidParameterError(msg); };
    if (!(v_r >= 0.0) || !std::isfinite(v_r)) bad("v_r must be finite and >= 0");
    if (!(v_f >= 0.0) || !std::isfinite(v_f)) bad("v_f must be finite and >= 0");
    if (!(rho >= 0.0) || !std::isfinite(rho)) bad("rho must be finite and >= 0");
    if (!(a_max_accel >= 0.0) || !std::isfinite(a_max_accel))
        bad("a_max_accel must be finite and >= 0");
    if (!(a_min_brake > 0.0) || !std::isfinite(a_min_brake))
        bad("a_min_brake must be finite and > 0");
    if (!(a_max_brake > 0.0)) bad("a_max_brake must be > 0 (or unbounded)");
}

double d_prime_min_unclamped(const ScenarioParams& p) {
    p.validate();
    const double v_peak = rear_peak_speed(p);
    const double front_term =
        p.front_brake_unbounded() ? 0.0 : p.v_f * p.v_f / (2.0 * p.a_max_brake);
    return p.v_r * p.rho + 0.5 * p.a_max_accel * p.rho * p.rho +
           v_peak * v_peak / (2.0 * p.a_min_brake) - front_term;
}

double d_prime_min(const ScenarioParams& p) {
    return std::max(0.0, d_prime_min_unclamped(p));
}

double d_double_prime_min(const ScenarioParams& p) {
    p.validate();
    if (p.front_brake_unbounded()) {
        throw NotApplicableError(
            "d_double_prime is undefined against an instant-stop front vehicle");
    }
    return (p.v_r - p.v_f) * p.rho +
           (p.a_max_accel + p.a_max_brake) * p.rho * p.rho / 2.0;
}

bool is_special_case(const ScenarioParams& p) {
    p.validate();
    if (p.front_brake_unbounded()) return false;
    // The mid-braking analysis assumes both vehicles are moving for the whole
    // response time; a front vehicle that stops within rho is already covered
    // by the rest-position bound.
    if (front_residual_speed(p) <= 0.0) return false;
    return rear_peak_speed(p) > front_residual_speed(p) &&
           p.a_min_brake > p.a_max_brake;
}

StoppingTimes stopping_times(const ScenarioParams& p) {
    p.validate();
    StoppingTimes st;
    if (!p.front_brake_unbounded()) {
        const double residual = front_residual_speed(p);
        st.t_stop_f = residual > 0.0 ? residual / p.a_max_brake : 0.0;
    }
    st.t_stop_r = rear_peak_speed(p) / p.a_min_brake;
    return st;
}

double d_triple_prime_at(const ScenarioParams& p, double t) {
    p.validate();
    if (t < 0.0) throw InvalidParameterError("d_triple_prime time must be >= 0");
    const double rear_travel = rear_peak_speed(p) * t - p.a_min_brake * t * t / 2.0;
    double front_travel = 0.0;
    if (!p.front_brake_unbounded()) {
        const double residual = front_residual_speed(p);
        if (residual > 0.0) {
            // Front position is frozen once it stops.
            const double tf = std::min(t, residual / p.a_max_brake);
            front_travel = residual * tf - p.a_max_brake * tf * tf / 2.0;
        }
    }
    return rear_travel - front_travel;
}

double equal_speed_time(const ScenarioParams& p) {
    if (!is_special_case(p)) {
        throw NotApplicableError("equal_speed_time requires the special case");
    }
    const double t = ((p.v_r - p.v_f) + (p.a_max_accel + p.a_max_brake) * p.rho) /
                     (p.a_min_brake - p.a_max_brake);
    // Speeds cannot equalize while both are moving once the rear has stopped;
    // past t_stop_r the encroachment maximum sits at the rear rest position.
    const double t_stop_r = stopping_times(p).t_stop_r;
    return std::clamp(t, 0.0, t_stop_r);
}

DminResult d_min(const ScenarioParams& p) {
    DminResult r;
    r.d_prime = d_prime_min(p);
    r.special_case_applied = is_special_case(p);
    if (!r.special_case_applied) {
        r.d_min = r.d_prime;
        return r;
    }
    r.d_double_prime = d_double_prime_min(p);
    r.t_equal = equal_speed_time(p);
    r.d_triple_prime = d_triple_prime_at(p, *r.t_equal);
    r.d_min = std::max(r.d_prime, *r.d_double_prime + *r.d_triple_prime);
    return r;
}

}  // namespace rss::kinematics
