#pragma once

#include <limits>

namespace rss::physics {

inline constexpr double kStraight = std::numeric_limits<double>::infinity();

// Road and environment conditions for one vehicle's tire path.
struct RoadEnvironment {
    double mu = 0.0;             // coefficient of friction (may exceed 1.0)
    double slope = 0.0;          // longitudinal grade angle, rad; positive = uphill
    double curve_radius = kStraight;  // horizontal curve radius, m
    double speed_for_curve = 0.0;     // speed for lateral-acceleration demand, m/s

    bool straight() const;
    void validate() const;  // throws InvalidParameterError
};

struct BrakingCapability {
    double decel = 0.0;       // net achievable longitudinal deceleration, m/s^2
    bool cannot_hold = false; // vehicle slides on the downgrade
};

struct BrakeBounds {
    double a_min_brake = 0.0;
    double a_max_brake = 0.0;
};

// Maximum tire-road deceleration from friction alone: mu * g * cos(slope).
// Mass-independent (the normal force's mass factor cancels).
double friction_limit(double mu, double slope);

// Net braking deceleration after the friction circle spends part of the
// budget on lateral (centripetal) demand and gravity acts along the grade.
// Throws CurveInfeasibleError when the lateral demand alone exceeds the
// friction limit.
BrakingCapability effective_braking_decel(const RoadEnvironment& env);

// Map per-vehicle environments to the braking bounds consumed by the
// kinematic model. front_brake_cap caps the front vehicle's deceleration
// (pass kStraight-like infinity for "unbounded": tire-limited only).
// Throws NoSafeDistanceError when the rear vehicle cannot brake at all.
BrakeBounds environment_to_scenario(const RoadEnvironment& env_rear,
                                    const RoadEnvironment& env_front,
                                    double front_brake_cap);

}  // namespace rss::physics
