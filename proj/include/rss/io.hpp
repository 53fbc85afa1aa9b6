#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rss/kinematics.hpp"
#include "rss/odd.hpp"
#include "rss/physics.hpp"

namespace rss::io {

// Scenario definition: either direct brake bounds or per-vehicle road
// environments that map to them through the physics module.
struct Scenario {
    kinematics::ScenarioParams params;
    bool from_environment = false;
};

// Throws ConfigError on malformed input, NoSafeDistanceError when the rear
// environment admits no braking at all.
Scenario load_scenario(const std::string& path);

odd::OddConfig load_odd_config(const std::string& path, int grid_points = 9);

struct EvidenceEvent {
    double t = 0.0;
    std::string key;
    odd::EvidenceValue value;
};

// Line-oriented evidence log; one JSON record {"t": "... s", "key": ..,
// "value": ..} per line, returned in timestamp order (stable).
std::vector<EvidenceEvent> load_evidence_log(const std::string& path);

// Standalone partition-table description (row/col bins plus fixed bounds).
struct TableSpec {
    std::string row_param;
    std::string col_param;
    std::vector<odd::Bin> row_bins;
    std::vector<odd::Bin> col_bins;
    odd::Bounds fixed;
};

TableSpec load_table_spec(const std::string& path);

}  // namespace rss::io
