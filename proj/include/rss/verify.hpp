#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rss/kinematics.hpp"
#include "rss/odd.hpp"

namespace rss::verify {

struct Options {
    std::uint64_t seed = 20190501;
    int draws = 10000;          // oracle-agreement / bracketing draws
    int special_draws = 1000;   // rest-position identity draws
    double oracle_tol = 1e-4;   // bisection tolerance, m
    double agree_tol = 1e-3;    // closed-form vs oracle tolerance, m
    // Test hook: multiplies the closed-form result inside the oracle
    // comparison so the harness can prove it detects an injected error.
    double dmin_error_factor = 1.0;
};

struct PropertyReport {
    std::string name;
    bool passed = false;
    long checked = 0;
    double worst = 0.0;  // worst observed deviation (property-specific meaning)
    std::string detail;
};

// Seeded random scenario draw spanning special and non-special regimes,
// including draws within 1e-3 g of the special-case boundary.
kinematics::ScenarioParams random_scenario(std::uint64_t seed, int index);

PropertyReport check_oracle_agreement(const Options& opt);
PropertyReport check_safety_bracketing(const Options& opt);
PropertyReport check_rest_position_identity(const Options& opt);
PropertyReport check_d_prime_monotonicity(const Options& opt);
PropertyReport check_boundary_continuity(const Options& opt);
PropertyReport check_equal_speed_time_sign(const Options& opt);
PropertyReport check_cell_soundness(const Options& opt, const odd::PartitionTable& table);
PropertyReport check_cell_tightness(const Options& opt, const odd::PartitionTable& table);

// The published example partition layout: a_max_brake rows x a_min_brake
// columns at v_r = v_f = 25 m/s, rho = 0.5 s, a_max_accel = 0.3 g.
odd::PartitionTable reference_partition_table(int grid_points = 9);

// Everything above, in order; used by the verify command.
std::vector<PropertyReport> run_all(const Options& opt);

}  // namespace rss::verify
