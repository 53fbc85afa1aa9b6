#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rss/kinematics.hpp"

namespace rss::odd {

// Closed parameter interval; hi may be +infinity for unbounded bins.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool unbounded() const;
    bool contains(double x) const;
    void validate() const;
};

// Parameter-name -> interval map. Recognized names: the six scenario
// parameters (v_r, v_f, rho, a_max_accel, a_min_brake, a_max_brake) plus the
// optional environment dimensions (mu, slope, curve_radius).
using Bounds = std::map<std::string, Interval>;

struct WorstCase {
    std::optional<double> d_min;  // empty => no safe distance exists in the region
    bool special_case = false;    // the mid-braking branch produced the binding value

    bool no_safe_distance() const { return !d_min.has_value(); }
};

// Worst-case minimum following distance over a bounded parameter region:
// max of d_min over all interval-corner combinations plus a dense grid
// refinement. Unbounded upper endpoints are evaluated in the limit.
WorstCase worst_case_dmin(const Bounds& bounds, int grid_points = 9);

struct Bin {
    double lo = 0.0;
    double hi = 0.0;  // may be +infinity
};

struct TableCell {
    Bin row;
    Bin col;
    std::optional<double> d_min;
    bool special_case = false;
};

struct PartitionTable {
    std::string row_param;
    std::string col_param;
    std::vector<Bin> row_bins;
    std::vector<Bin> col_bins;
    std::vector<TableCell> cells;  // row-major
};

// Grid of worst_case_dmin values over row_bins x col_bins; all remaining
// parameters come from `fixed`. Bins must be disjoint and ordered.
PartitionTable build_partition_table(const std::string& row_param,
                                     const std::vector<Bin>& row_bins,
                                     const std::string& col_param,
                                     const std::vector<Bin>& col_bins,
                                     const Bounds& fixed, int grid_points = 9);

// Prior/posterior weights over condition hypotheses.
struct BeliefState {
    std::map<std::string, double> weights;

    void normalize();  // throws InconsistentEvidenceError if total mass is zero
    // MAP hypothesis set: every hypothesis within relative 1e-12 of the max.
    std::vector<std::string> map_hypotheses() const;
};

struct TransitionRule {
    std::string evidence_key;
    // evidence value -> hypothesis -> likelihood
    std::map<std::string, std::map<std::string, double>> likelihoods;
    // MAP hypothesis -> target micro-ODD id
    std::map<std::string, std::string> target_map;
};

enum class Posture { Normal, Defensive };

struct MuOdd {
    std::string id;
    Bounds bounds;
    Posture posture = Posture::Normal;
    std::optional<std::string> behavior;  // defensive safing behavior, e.g. "stop"
    WorstCase worst;                      // precomputed for normal postures
};

struct LookaheadCondition {
    enum class Kind { Equals, AtMost, AtLeast };
    std::string key;
    Kind kind = Kind::Equals;
    std::string value;        // Equals
    double threshold = 0.0;   // AtMost / AtLeast
};

struct LookaheadRule {
    std::vector<LookaheadCondition> conditions;  // all must hold
    std::string target;
};

// Evidence value: the raw textual form plus a numeric reading when one exists
// (used for parameter-containment checks).
struct EvidenceValue {
    std::string text;
    std::optional<double> number;
};

using EvidenceRecord = std::vector<std::pair<std::string, EvidenceValue>>;

struct OddConfig {
    std::vector<MuOdd> mu_odds;
    std::vector<std::string> hypotheses;
    BeliefState prior;
    std::vector<TransitionRule> rules;
    std::string defensive_id;
    std::vector<LookaheadRule> lookahead_rules;

    const MuOdd* find(const std::string& id) const;
    bool is_declared_key(const std::string& key) const;
    // Throws ConfigError on any structural problem (missing defensive state,
    // dangling target ids, incomplete likelihood tables, ...).
    void validate() const;
};

// Posterior(h) proportional to prior(h) * likelihood(h, observed), renormalized.
// Throws InconsistentEvidenceError when every hypothesis gets zero mass and
// InvalidParameterError when the observed value is undeclared.
BeliefState belief_update(const BeliefState& prior, const TransitionRule& rule,
                          const std::string& observed_value);

struct StepResult {
    std::string state;
    BeliefState belief;
    std::optional<std::string> map_hypothesis;  // after the last applied rule
};

// One state-machine step: applies belief updates for all present evidence in
// rule-declaration order, then selects the target of the last applied rule's
// MAP hypothesis. Undeclared evidence, inconsistent evidence, and measured
// conditions outside every normal region all route to the defensive state.
StepResult step_state_machine(const std::string& current, const BeliefState& belief,
                              const EvidenceRecord& evidence, const OddConfig& config);

// Pure rule-matching over a route-lookahead context; returns the target of
// the first lookahead rule whose conditions all hold.
std::optional<std::string> preemptive_transition_check(const EvidenceRecord& context,
                                                       const OddConfig& config);

}  // namespace rss::odd
