#pragma once

#include <vector>

#include "rss/kinematics.hpp"

namespace rss::sim {

struct Sample {
    double t = 0.0;
    double x_f = 0.0;
    double v_f = 0.0;
    double x_r = 0.0;
    double v_r = 0.0;
    double gap = 0.0;
};

struct SimTrace {
    double dt = 0.0;
    std::vector<Sample> samples;
    double min_gap = 0.0;
    double min_gap_time = 0.0;
    bool collided = false;  // some gap went negative (beyond numerical slop)
};

// Discrete-time simulation of the braking scenario. The front vehicle brakes
// from t=0 until stopped; the rear vehicle accelerates over [0, rho) and then
// brakes until stopped. Positions use exact piecewise-constant-acceleration
// closed forms; steps are split exactly at the response-time boundary, at
// each vehicle's stop, and at the closest-approach vertex of each segment,
// so min_gap is the true continuous minimum and collided is step-size exact.
SimTrace simulate(const kinematics::ScenarioParams& p, double initial_gap, double dt);

// Smallest initial gap (within tol, by bisection over the simulated
// trajectory) for which no collision occurs.
double min_safe_gap(const kinematics::ScenarioParams& p, double tol);

}  // namespace rss::sim
