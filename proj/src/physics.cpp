#include "rss/physics.hpp"

#include <algorithm>
#include <cmath>

#include "rss/errors.hpp"
#include "rss/kinematics.hpp"

namespace rss::physics {

using kinematics::kGravity;

bool RoadEnvironment::straight() const {
    return std::isinf(curve_radius);
}

void RoadEnvironment::validate() const {
    auto bad = [](const char* msg) { throw InvalidParameterError(msg); };
    if (!(mu >= 0.0) || !std::isfinite(mu)) bad("mu must be finite and >= 0");
    if (!(std::fabs(slope) < M_PI / 2.0)) bad("|slope| must be < pi/2");
    if (!(curve_radius > 0.0)) bad("curve_radius must be > 0 or straight");
    if (!(speed_for_curve >= 0.0) || !std::isfinite(speed_for_curve))
        bad("speed_for_curve must be finite and >= 0");
}

double friction_limit(double mu, double slope) {
    RoadEnvironment env;
    env.mu = mu;
    env.slope = slope;
    env.validate();
    return mu * kGravity * std::cos(slope);
}

BrakingCapability effective_braking_decel(const RoadEnvironment& env) {
    env.validate();
    const double limit = friction_limit(env.mu, env.slope);

    double a_lat = 0.0;
    if (!env.straight()) {
        a_lat = env.speed_for_curve * env.speed_for_curve / env.curve_radius;
    }
    if (a_lat > limit) {
        throw CurveInfeasibleError("lateral demand exceeds friction limit");
    }
    const double a_long = std::sqrt(std::max(0.0, limit * limit - a_lat * a_lat));

    BrakingCapability cap;
    if (env.slope < 0.0 && std::tan(-env.slope) > env.mu) {
        // Gravity along the downgrade exceeds the full friction budget; the
        // vehicle slides regardless of braking input.
        cap.decel = 0.0;
        cap.cannot_hold = true;
        return cap;
    }
    // Uphill gravity assists braking, downhill opposes it.
    cap.decel = std::max(0.0, a_long + kGravity * std::sin(env.slope));
    return cap;
}

BrakeBounds environment_to_scenario(const RoadEnvironment& env_rear,
                                    const RoadEnvironment& env_front,
                                    double front_brake_cap) {
    const BrakingCapability rear = effective_braking_decel(env_rear);
    if (rear.cannot_hold || rear.decel <= 0.0) {
        throw NoSafeDistanceError(
            "rear vehicle cannot brake; no safe following distance exists");
    }
    const BrakingCapability front = effective_braking_decel(env_front);

    BrakeBounds bounds;
    bounds.a_min_brake = rear.decel;
    bounds.a_max_brake = std::min(front_brake_cap, front.decel);
    return bounds;
}

}  // namespace rss::physics
