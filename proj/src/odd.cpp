#include "rss/odd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

#include "rss/errors.hpp"
#include "rss/physics.hpp"

namespace rss::odd {

namespace {

constexpr std::array<const char*, 6> kScenarioDims = {
    "v_r", "v_f", "rho", "a_max_accel", "a_min_brake", "a_max_brake"};

constexpr std::array<const char*, 9> kParamNames = {
    "v_r", "v_f", "rho", "a_max_accel", "a_min_brake",
    "a_max_brake", "mu", "slope", "curve_radius"};

bool is_param_name(const std::string& key) {
    return std::find(kParamNames.begin(), kParamNames.end(), key) != kParamNames.end();
}

// Evaluation grid for one interval. Unbounded upper endpoints contribute a
// finite sweep above lo plus the limiting value itself.
std::vector<double> grid_for(const Interval& iv, int n, double floor_lo) {
    const double lo = std::max(iv.lo, floor_lo);
    if (iv.unbounded()) {
        std::vector<double> pts;
        const double span = 3.0 * std::max(lo, 10.0);
        for (int i = 0; i < n - 1; ++i) {
            pts.push_back(lo + span * i / std::max(1, n - 2));
        }
        pts.push_back(std::numeric_limits<double>::infinity());
        return pts;
    }
    if (iv.hi <= lo) return {lo};
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts.push_back(lo + (iv.hi - lo) * i / (n - 1));
    }
    return pts;
}

// Derive brake-capability extremes from environment intervals by corner
// evaluation. Returns nullopt when some corner cannot hold the road.
std::optional<Interval> brake_interval_from_env(const Bounds& bounds) {
    const Interval mu = bounds.at("mu");
    Interval slope{0.0, 0.0};
    Interval radius{physics::kStraight, physics::kStraight};
    Interval speed{0.0, 0.0};
    if (auto it = bounds.find("slope"); it != bounds.end()) slope = it->second;
    if (auto it = bounds.find("curve_radius"); it != bounds.end()) radius = it->second;
    if (auto it = bounds.find("v_r"); it != bounds.end()) speed = it->second;

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double m : {mu.lo, mu.hi})
        for (double s : {slope.lo, slope.hi})
            for (double r : {radius.lo, radius.hi})
                for (double v : {speed.lo, speed.hi}) {
                    physics::RoadEnvironment env;
                    env.mu = m;
                    env.slope = s;
                    env.curve_radius = r;
                    env.speed_for_curve = std::isfinite(v) ? v : 0.0;
                    physics::BrakingCapability cap;
                    try {
                        cap = physics::effective_braking_decel(env);
                    } catch (const CurveInfeasibleError&) {
                        return std::nullopt;
                    }
                    if (cap.cannot_hold || cap.decel <= 0.0) return std::nullopt;
                    lo = std::min(lo, cap.decel);
                    hi = std::max(hi, cap.decel);
                }
    return Interval{lo, hi};
}

Interval intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.lo > r.hi) throw ConfigError("empty intersection of declared and derived brake bounds");
    return r;
}

double conservativeness(const MuOdd& m) {
    if (m.posture == Posture::Defensive || m.worst.no_safe_distance()) {
        return std::numeric_limits<double>::infinity();
    }
    return *m.worst.d_min;
}

}  // namespace

bool Interval::unbounded() const { return std::isinf(hi); }

bool Interval::contains(double x) const { return x >= lo && x <= hi; }

void Interval::validate() const {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
        throw InvalidParameterError("interval must satisfy lo <= hi");
    }
}

WorstCase worst_case_dmin(const Bounds& bounds, int grid_points) {
    if (grid_points < 2) throw InvalidParameterError("grid_points must be >= 2");
    for (const auto& [name, iv] : bounds) {
        if (!is_param_name(name)) throw ConfigError("unknown bound parameter: " + name);
        iv.validate();
    }

    Bounds effective = bounds;
    if (bounds.count("mu") != 0) {
        const auto derived = brake_interval_from_env(bounds);
        if (!derived) return WorstCase{};  // rear cannot hold somewhere in the region
        for (const char* dim : {"a_min_brake", "a_max_brake"}) {
            if (auto it = effective.find(dim); it != effective.end()) {
                effective[dim] = intersect(it->second, *derived);
            } else {
                effective[dim] = *derived;
            }
        }
    }
    for (const char* dim : kScenarioDims) {
        if (effective.count(dim) == 0) {
            throw ConfigError(std::string("bounds missing scenario dimension: ") + dim);
        }
    }

    std::array<std::vector<double>, 6> grids;
    for (size_t i = 0; i < kScenarioDims.size(); ++i) {
        const Interval& iv = effective.at(kScenarioDims[i]);
        const bool brake_dim = i >= 4;  // a_min_brake, a_max_brake must stay positive
        grids[i] = grid_for(iv, grid_points, brake_dim ? 1e-9 : 0.0);
    }

    WorstCase result;
    double best = -1.0;
    kinematics::ScenarioParams p;
    for (double v_r : grids[0])
        for (double v_f : grids[1])
            for (double rho : grids[2])
                for (double a_acc : grids[3])
                    for (double a_min : grids[4])
                        for (double a_max : grids[5]) {
                            p.v_r = v_r;
                            p.v_f = v_f;
                            p.rho = rho;
                            p.a_max_accel = a_acc;
                            p.a_min_brake = std::isfinite(a_min) ? a_min : 1e12;
                            p.a_max_brake = a_max;
                            const auto r = kinematics::d_min(p);
                            if (!std::isfinite(r.d_min)) return WorstCase{};
                            if (r.d_min > best) {
                                best = r.d_min;
                                result.special_case = r.special_case_applied;
                            }
                        }
    result.d_min = best;
    return result;
}

PartitionTable build_partition_table(const std::string& row_param,
                                     const std::vector<Bin>& row_bins,
                                     const std::string& col_param,
                                     const std::vector<Bin>& col_bins,
                                     const Bounds& fixed, int grid_points) {
    auto check_bins = [](const std::vector<Bin>& bins, const char* which) {
        if (bins.empty()) throw ConfigError(std::string(which) + " bins must be nonempty");
        for (size_t i = 0; i < bins.size(); ++i) {
            if (std::isnan(bins[i].lo) || bins[i].lo > bins[i].hi) {
                throw ConfigError(std::string(which) + " bin has lo > hi");
            }
            if (i > 0 && bins[i].lo < bins[i - 1].hi) {
                throw ConfigError(std::string(which) + " bins overlap or are unordered");
            }
        }
    };
    check_bins(row_bins, "row");
    check_bins(col_bins, "col");

    PartitionTable table;
    table.row_param = row_param;
    table.col_param = col_param;
    table.row_bins = row_bins;
    table.col_bins = col_bins;
    table.cells.reserve(row_bins.size() * col_bins.size());
    for (const Bin& rb : row_bins) {
        for (const Bin& cb : col_bins) {
            Bounds bounds = fixed;
            bounds[row_param] = Interval{rb.lo, rb.hi};
            bounds[col_param] = Interval{cb.lo, cb.hi};
            const WorstCase wc = worst_case_dmin(bounds, grid_points);
            table.cells.push_back(TableCell{rb, cb, wc.d_min, wc.special_case});
        }
    }
    return table;
}

void BeliefState::normalize() {
    double total = 0.0;
    for (const auto& [h, w] : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidParameterError("belief weight must be finite and >= 0: " + h);
        }
        total += w;
    }
    if (total <= 0.0) {
        throw InconsistentEvidenceError("all hypothesis weights are zero");
    }
    for (auto& [h, w] : weights) w /= total;
}

std::vector<std::string> BeliefState::map_hypotheses() const {
    double best = 0.0;
    for (const auto& [h, w] : weights) best = std::max(best, w);
    std::vector<std::string> out;
    for (const auto& [h, w] : weights) {
        if (w >= best * (1.0 - 1e-12)) out.push_back(h);
    }
    return out;
}

BeliefState belief_update(const BeliefState& prior, const TransitionRule& rule,
                          const std::string& observed_value) {
    const auto lik = rule.likelihoods.find(observed_value);
    if (lik == rule.likelihoods.end()) {
        throw InvalidParameterError("observed value not declared for evidence '" +
                                    rule.evidence_key + "': " + observed_value);
    }
    BeliefState posterior = prior;
    for (auto& [h, w] : posterior.weights) {
        const auto it = lik->second.find(h);
        if (it == lik->second.end()) {
            throw ConfigError("likelihood table for '" + rule.evidence_key +
                              "' = '" + observed_value + "' is missing hypothesis " + h);
        }
        w *= it->second;
    }
    posterior.normalize();
    return posterior;
}

const MuOdd* OddConfig::find(const std::string& id) const {
    for (const auto& m : mu_odds) {
        if (m.id == id) return &m;
    }
    return nullptr;
}

bool OddConfig::is_declared_key(const std::string& key) const {
    for (const auto& r : rules) {
        if (r.evidence_key == key) return true;
    }
    for (const auto& lr : lookahead_rules) {
        for (const auto& c : lr.conditions) {
            if (c.key == key) return true;
        }
    }
    return is_param_name(key);
}

void OddConfig::validate() const {
    if (mu_odds.empty()) throw ConfigError("config declares no micro-ODDs");
    std::set<std::string> ids;
    for (const auto& m : mu_odds) {
        if (!ids.insert(m.id).second) throw ConfigError("duplicate micro-ODD id: " + m.id);
    }
    const MuOdd* defensive = find(defensive_id);
    if (defensive == nullptr || defensive->posture != Posture::Defensive) {
        throw ConfigError("config must name an existing defensive micro-ODD");
    }
    if (hypotheses.empty()) throw ConfigError("config declares no hypotheses");
    for (const auto& h : hypotheses) {
        if (prior.weights.count(h) == 0) throw ConfigError("prior missing hypothesis: " + h);
    }
    for (const auto& rule : rules) {
        if (rule.likelihoods.empty()) {
            throw ConfigError("rule '" + rule.evidence_key + "' declares no evidence values");
        }
        for (const auto& [value, table] : rule.likelihoods) {
            for (const auto& h : hypotheses) {
                if (table.count(h) == 0) {
                    throw ConfigError("rule '" + rule.evidence_key + "' value '" + value +
                                      "' missing hypothesis " + h);
                }
            }
        }
        for (const auto& [h, target] : rule.target_map) {
            if (find(target) == nullptr) {
                throw ConfigError("rule '" + rule.evidence_key +
                                  "' targets unknown micro-ODD: " + target);
            }
        }
    }
    for (const auto& lr : lookahead_rules) {
        if (find(lr.target) == nullptr) {
            throw ConfigError("lookahead rule targets unknown micro-ODD: " + lr.target);
        }
    }
}

StepResult step_state_machine(const std::string& current, const BeliefState& belief,
                              const EvidenceRecord& evidence, const OddConfig& config) {
    if (config.find(current) == nullptr) {
        throw InvalidParameterError("unknown current micro-ODD: " + current);
    }
    StepResult res{current, belief, std::nullopt};
    if (evidence.empty()) return res;

    for (const auto& [key, value] : evidence) {
        if (!config.is_declared_key(key)) {
            res.state = config.defensive_id;
            return res;
        }
        // A measured parameter outside every normal region has no micro-ODD
        // to run in; fall back to the defensive posture.
        if (is_param_name(key) && value.number.has_value()) {
            bool covered = false;
            for (const auto& m : config.mu_odds) {
                if (m.posture != Posture::Normal) continue;
                const auto it = m.bounds.find(key);
                if (it != m.bounds.end() && it->second.contains(*value.number)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                res.state = config.defensive_id;
                return res;
            }
        }
    }

    const TransitionRule* last_rule = nullptr;
    for (const auto& rule : config.rules) {
        const auto it = std::find_if(evidence.begin(), evidence.end(),
                                     [&](const auto& e) { return e.first == rule.evidence_key; });
        if (it == evidence.end()) continue;
        if (rule.likelihoods.count(it->second.text) == 0) {
            res.state = config.defensive_id;
            return res;
        }
        try {
            res.belief = belief_update(res.belief, rule, it->second.text);
        } catch (const InconsistentEvidenceError&) {
            res.state = config.defensive_id;
            return res;
        }
        last_rule = &rule;
    }
    if (last_rule == nullptr) return res;

    const auto maps = res.belief.map_hypotheses();
    res.map_hypothesis = maps.front();
    const MuOdd* best = nullptr;
    for (const auto& h : maps) {
        const auto it = last_rule->target_map.find(h);
        if (it == last_rule->target_map.end()) continue;
        const MuOdd* target = config.find(it->second);
        // Ties resolve toward the most conservative target.
        if (best == nullptr || conservativeness(*target) > conservativeness(*best)) {
            best = target;
            res.map_hypothesis = h;
        }
    }
    if (best != nullptr) res.state = best->id;
    return res;
}

std::optional<std::string> preemptive_transition_check(const EvidenceRecord& context,
                                                       const OddConfig& config) {
    auto lookup = [&](const std::string& key) -> const EvidenceValue* {
        const EvidenceValue* found = nullptr;
        for (const auto& [k, v] : context) {
            if (k == key) found = &v;  // latest value wins
        }
        return found;
    };
    for (const auto& rule : config.lookahead_rules) {
        bool all = true;
        for (const auto& cond : rule.conditions) {
            const EvidenceValue* v = lookup(cond.key);
            if (v == nullptr) {
                all = false;
                break;
            }
            switch (cond.kind) {
                case LookaheadCondition::Kind::Equals:
                    all = v->text == cond.value;
                    break;
                case LookaheadCondition::Kind::AtMost:
                    all = v->number.has_value() && *v->number <= cond.threshold;
                    break;
                case LookaheadCondition::Kind::AtLeast:
                    all = v->number.has_value() && *v->number >= cond.threshold;
                    break;
            }
            if (!all) break;
        }
        if (all) return rule.target;
    }
    return std::nullopt;
}

}  // namespace rss::odd
