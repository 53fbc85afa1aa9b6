#pragma once

#include <limits>
#include <optional>

namespace rss::kinematics {

// Gravitational constant implied by the published worst-case tables
// (9.80665 does not reproduce them at one-decimal rounding).
inline constexpr double kGravity = 9.81;

// Distinguished value for an instant-stop front vehicle ("1g+" style bins).
inline constexpr double kUnboundedBrake = std::numeric_limits<double>::infinity();

// The six kinematic inputs of the longitudinal leader/follower scenario.
// All values SI; braking decelerations are positive magnitudes.
struct ScenarioParams {
    double v_r = 0.0;          // rear (ego) initial speed, m/s
    double v_f = 0.0;          // front (lead) initial speed, m/s
    double rho = 0.0;          // rear response-time delay, s
    double a_max_accel = 0.0;  // rear max acceleration during response time, m/s^2
    double a_min_brake = 0.0;  // rear guaranteed min braking deceleration, m/s^2
    double a_max_brake = 0.0;  // front max braking deceleration, m/s^2 (may be unbounded)

    bool front_brake_unbounded() const;

    // Throws InvalidParameterError when any invariant fails.
    void validate() const;
};

struct StoppingTimes {
    double t_stop_f = 0.0;  // front stop time measured from end of response time, s
    double t_stop_r = 0.0;  // rear stop time measured from end of response time, s
};

struct DminResult {
    double d_min = 0.0;
    double d_prime = 0.0;
    bool special_case_applied = false;
    // Present only when the mid-braking special case applies.
    std::optional<double> d_double_prime;
    std::optional<double> d_triple_prime;
    std::optional<double> t_equal;
};

// Original RSS rest-position term, clamped at zero.
double d_prime_min(const ScenarioParams& p);

// Rest-position term before the zero clamp; used by the boundary-continuity
// and rest-position identity checks and by the simulation upper bound.
double d_prime_min_unclamped(const ScenarioParams& p);

// Closure consumed during the response time. May be negative; the d_min
// composition only consults it when the special case holds. Throws
// NotApplicableError for an unbounded front brake.
double d_double_prime_min(const ScenarioParams& p);

// Post-response encroachment of the rear vehicle at time t after the
// response time. The front vehicle's traveled distance is held constant
// once it has stopped.
double d_triple_prime_at(const ScenarioParams& p, double t);

// Time after the response time at which both speeds are equal, clamped to
// [0, t_stop_r]. Throws NotApplicableError unless the special case holds.
double equal_speed_time(const ScenarioParams& p);

// True iff a mid-braking overlap is possible: rear faster than front at the
// end of the response time, rear brakes harder than front, and the front
// vehicle is still moving at the end of the response time.
bool is_special_case(const ScenarioParams& p);

StoppingTimes stopping_times(const ScenarioParams& p);

// Minimum safe following distance with full term breakdown.
DminResult d_min(const ScenarioParams& p);

}  // namespace rss::kinematics
