#include "rss/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rss/errors.hpp"

namespace rss::sim {

using kinematics::ScenarioParams;

namespace {

// Closed-form piecewise-constant-acceleration motion of both vehicles.
// Absolute time: the front vehicle starts braking at t=0.
struct Motion {
    ScenarioParams p;
    double f_stop;   // front stop time (0 for an unbounded front brake)
    double r_peak;   // rear speed at end of response time
    double r_stop;   // rear stop time
    double end;      // both vehicles at rest

    explicit Motion(const ScenarioParams& params) : p(params) {
        f_stop = p.front_brake_unbounded() ? 0.0 : p.v_f / p.a_max_brake;
        r_peak = p.v_r + p.a_max_accel * p.rho;
        r_stop = p.rho + r_peak / p.a_min_brake;
        end = std::max(f_stop, r_stop);
    }

    double front_pos(double t) const {
        if (p.front_brake_unbounded()) return 0.0;
        const double tau = std::min(t, f_stop);
        return p.v_f * tau - p.a_max_brake * tau * tau / 2.0;
    }

    double front_vel(double t) const {
        if (p.front_brake_unbounded()) return 0.0;
        return std::max(0.0, p.v_f - p.a_max_brake * t);
    }

    double rear_pos(double t) const {
        if (t <= p.rho) return p.v_r * t + p.a_max_accel * t * t / 2.0;
        const double base = p.v_r * p.rho + p.a_max_accel * p.rho * p.rho / 2.0;
        const double tau = std::min(t - p.rho, r_peak / p.a_min_brake);
        return base + r_peak * tau - p.a_min_brake * tau * tau / 2.0;
    }

    double rear_vel(double t) const {
        if (t < p.rho) return p.v_r + p.a_max_accel * t;
        return std::max(0.0, r_peak - p.a_min_brake * (t - p.rho));
    }

    // Event boundaries of the piecewise-quadratic relative motion.
    std::vector<double> events() const {
        std::vector<double> ev{0.0, std::min(p.rho, end), f_stop, r_stop, end};
        std::sort(ev.begin(), ev.end());
        ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
        return ev;
    }

    // Closest-approach time inside (a, b), if any. The relative velocity is
    // linear within an event segment, so the root is exact.
    std::vector<double> vertex_times() const {
        std::vector<double> out;
        const auto ev = events();
        for (size_t i = 0; i + 1 < ev.size(); ++i) {
            const double a = ev[i], b = ev[i + 1];
            if (!(b > a)) continue;
            const double va = rear_vel(a) - front_vel(a);
            const double vb = rear_vel(b) - front_vel(b);
            if (va > 0.0 && vb < 0.0) {
                out.push_back(a + (b - a) * va / (va - vb));
            }
        }
        return out;
    }

    // Minimum over continuous time of front_pos - rear_pos (always <= 0).
    // Candidates: event boundaries plus per-segment closest-approach vertices.
    double min_relative_advance() const {
        double best = 0.0;
        auto consider = [&](double t) {
            best = std::min(best, front_pos(t) - rear_pos(t));
        };
        for (double t : events()) consider(t);
        for (double t : vertex_times()) consider(t);
        return best;
    }
};

}  // namespace

SimTrace simulate(const ScenarioParams& p, double initial_gap, double dt) {
    p.validate();
    if (!(dt > 0.0)) throw InvalidParameterError("dt must be > 0");
    if (!(initial_gap >= 0.0)) throw InvalidParameterError("initial_gap must be >= 0");

    const Motion m(p);
    if (m.end / dt > 5e7) {
        throw InvalidParameterError("dt too small for scenario duration");
    }

    std::vector<double> times;
    times.reserve(static_cast<size_t>(m.end / dt) + 8);
    for (size_t k = 0; k * dt < m.end; ++k) times.push_back(k * dt);
    for (double t : m.events()) times.push_back(t);
    for (double t : m.vertex_times()) times.push_back(t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    SimTrace trace;
    trace.dt = dt;
    trace.samples.reserve(times.size());
    trace.min_gap = initial_gap;
    trace.min_gap_time = 0.0;
    for (double t : times) {
        Sample s;
        s.t = t;
        s.x_f = m.front_pos(t);
        s.v_f = m.front_vel(t);
        s.x_r = m.rear_pos(t);
        s.v_r = m.rear_vel(t);
        s.gap = initial_gap + s.x_f - s.x_r;
        if (s.gap < trace.min_gap) {
            trace.min_gap = s.gap;
            trace.min_gap_time = t;
        }
        trace.samples.push_back(s);
    }
    // Nanometer slop so that a start at the exact tangency gap (min_gap == 0
    // up to double roundoff) does not register as a collision.
    trace.collided = trace.min_gap < -1e-9;
    return trace;
}

double min_safe_gap(const ScenarioParams& p, double tol) {
    p.validate();
    if (!(tol > 0.0)) throw InvalidParameterError("tol must be > 0");

    const Motion m(p);
    const double critical = -m.min_relative_advance();
    if (critical <= 0.0) return 0.0;

    // Provably safe upper bound: rest-position term plus response-time
    // closure plus the rear vehicle's entire travel.
    double hi = std::max(0.0, kinematics::d_prime_min_unclamped(p));
    if (!p.front_brake_unbounded()) {
        hi += std::fabs(kinematics::d_double_prime_min(p));
    }
    hi += p.v_r * p.rho + 0.5 * p.a_max_accel * p.rho * p.rho +
          m.r_peak * m.r_peak / (2.0 * p.a_min_brake);

    auto collides = [&](double gap) { return gap + m.min_relative_advance() < 0.0; };
    while (collides(hi)) hi *= 2.0;

    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2.0;
        if (collides(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace rss::sim
