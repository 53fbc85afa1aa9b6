#include "rss/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rss/errors.hpp"
#include "rss/units.hpp"

namespace rss::io {

using nlohmann::json;
using units::Kind;

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Kind kind_for_param(const std::string& name) {
    if (name == "v_r" || name == "v_f") return Kind::Speed;
    if (name == "rho") return Kind::Time;
    if (name == "a_max_accel" || name == "a_min_brake" || name == "a_max_brake")
        return Kind::Accel;
    if (name == "mu") return Kind::Dimensionless;
    if (name == "slope") return Kind::Angle;
    if (name == "curve_radius") return Kind::Distance;
    throw ConfigError("unknown parameter name: " + name);
}

double require_quantity(const json& obj, const std::string& field, Kind kind) {
    if (!obj.contains(field)) throw ConfigError("missing required field: " + field);
    return units::parse_quantity(obj.at(field), kind, field);
}

// Parse any quantity-like text using the full suffix table; used for evidence
// values whose dimension is not known up front.
std::optional<double> try_parse_any(const std::string& text) {
    for (Kind k : {Kind::Dimensionless, Kind::Speed, Kind::Accel, Kind::Time, Kind::Angle,
                   Kind::Distance, Kind::Temperature}) {
        try {
            return units::parse_quantity_text(text, k, "value");
        } catch (const ConfigError&) {
        }
    }
    return std::nullopt;
}

odd::EvidenceValue evidence_value_from_json(const json& v) {
    odd::EvidenceValue ev;
    if (v.is_boolean()) {
        ev.text = v.get<bool>() ? "true" : "false";
    } else if (v.is_number()) {
        ev.text = v.dump();
        ev.number = v.get<double>();
    } else if (v.is_string()) {
        ev.text = v.get<std::string>();
        ev.number = try_parse_any(ev.text);
    } else {
        throw ConfigError("evidence value must be a string, number, or boolean");
    }
    return ev;
}

physics::RoadEnvironment parse_environment(const json& obj, double default_speed,
                                           const std::string& who) {
    physics::RoadEnvironment env;
    env.mu = require_quantity(obj, "mu", Kind::Dimensionless);
    if (obj.contains("slope")) {
        env.slope = units::parse_quantity(obj.at("slope"), Kind::Angle, who + ".slope");
    }
    if (obj.contains("curve_radius")) {
        env.curve_radius =
            units::parse_quantity(obj.at("curve_radius"), Kind::Distance, who + ".curve_radius");
    }
    if (obj.contains("speed_for_curve")) {
        env.speed_for_curve =
            units::parse_quantity(obj.at("speed_for_curve"), Kind::Speed, who + ".speed_for_curve");
    } else {
        env.speed_for_curve = default_speed;
    }
    env.validate();
    return env;
}

odd::Interval parse_interval(const json& v, const std::string& param) {
    const Kind kind = kind_for_param(param);
    odd::Interval iv;
    if (v.is_array()) {
        if (v.size() != 2) throw ConfigError(param + ": interval must be [lo, hi]");
        iv.lo = units::parse_quantity(v.at(0), kind, param + ".lo");
        iv.hi = units::parse_quantity(v.at(1), kind, param + ".hi");
    } else {
        iv.lo = iv.hi = units::parse_quantity(v, kind, param);
    }
    iv.validate();
    return iv;
}

odd::Bounds parse_bounds(const json& obj) {
    odd::Bounds bounds;
    for (const auto& [param, v] : obj.items()) {
        bounds[param] = parse_interval(v, param);
    }
    return bounds;
}

std::vector<odd::Bin> parse_bins(const json& arr, const std::string& param) {
    std::vector<odd::Bin> bins;
    for (const auto& v : arr) {
        const odd::Interval iv = parse_interval(v, param);
        bins.push_back(odd::Bin{iv.lo, iv.hi});
    }
    return bins;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    const json j = load_json_file(path);
    Scenario sc;
    sc.params.v_r = require_quantity(j, "v_r", Kind::Speed);
    sc.params.v_f = require_quantity(j, "v_f", Kind::Speed);
    sc.params.rho = require_quantity(j, "rho", Kind::Time);
    sc.params.a_max_accel = require_quantity(j, "a_max_accel", Kind::Accel);

    if (j.contains("environment")) {
        if (j.contains("a_min_brake") || j.contains("a_max_brake")) {
            throw ConfigError("give either brake bounds or an environment, not both");
        }
        const json& env = j.at("environment");
        const auto rear = parse_environment(env.at("rear"), sc.params.v_r, "rear");
        const auto front = parse_environment(env.at("front"), sc.params.v_f, "front");
        double cap = kinematics::kUnboundedBrake;
        if (env.contains("front_brake_cap")) {
            cap = units::parse_quantity(env.at("front_brake_cap"), Kind::Accel, "front_brake_cap");
        }
        const auto bounds = physics::environment_to_scenario(rear, front, cap);
        sc.params.a_min_brake = bounds.a_min_brake;
        sc.params.a_max_brake = bounds.a_max_brake;
        sc.from_environment = true;
    } else {
        sc.params.a_min_brake = require_quantity(j, "a_min_brake", Kind::Accel);
        sc.params.a_max_brake = require_quantity(j, "a_max_brake", Kind::Accel);
    }
    sc.params.validate();
    return sc;
}

odd::OddConfig load_odd_config(const std::string& path, int grid_points) {
    const json j = load_json_file(path);
    odd::OddConfig config;

    for (const auto& m : j.at("mu_odds")) {
        odd::MuOdd mu;
        mu.id = m.at("id").get<std::string>();
        const std::string posture = m.at("posture").get<std::string>();
        if (posture == "normal") {
            mu.posture = odd::Posture::Normal;
        } else if (posture == "defensive") {
            mu.posture = odd::Posture::Defensive;
        } else {
            throw ConfigError(mu.id + ": posture must be 'normal' or 'defensive'");
        }
        if (m.contains("bounds")) mu.bounds = parse_bounds(m.at("bounds"));
        if (m.contains("behavior")) mu.behavior = m.at("behavior").get<std::string>();
        if (mu.posture == odd::Posture::Normal) {
            mu.worst = odd::worst_case_dmin(mu.bounds, grid_points);
        }
        config.mu_odds.push_back(std::move(mu));
    }

    config.hypotheses = j.at("hypotheses").get<std::vector<std::string>>();
    for (const auto& [h, w] : j.at("prior").items()) {
        config.prior.weights[h] = units::parse_quantity(w, Kind::Dimensionless, "prior." + h);
    }
    config.prior.normalize();

    if (j.contains("rules")) {
        for (const auto& r : j.at("rules")) {
            odd::TransitionRule rule;
            rule.evidence_key = r.at("evidence_key").get<std::string>();
            for (const auto& [value, table] : r.at("likelihoods").items()) {
                for (const auto& [h, lk] : table.items()) {
                    rule.likelihoods[value][h] =
                        units::parse_quantity(lk, Kind::Dimensionless,
                                              rule.evidence_key + "." + value + "." + h);
                }
            }
            if (r.contains("target_map")) {
                for (const auto& [h, target] : r.at("target_map").items()) {
                    rule.target_map[h] = target.get<std::string>();
                }
            }
            config.rules.push_back(std::move(rule));
        }
    }

    config.defensive_id = j.at("defensive_id").get<std::string>();

    if (j.contains("lookahead_rules")) {
        for (const auto& r : j.at("lookahead_rules")) {
            odd::LookaheadRule rule;
            for (const auto& [key, spec] : r.at("when").items()) {
                odd::LookaheadCondition cond;
                cond.key = key;
                if (spec.contains("equals")) {
                    cond.kind = odd::LookaheadCondition::Kind::Equals;
                    cond.value = spec.at("equals").get<std::string>();
                } else if (spec.contains("at_most") || spec.contains("at_least")) {
                    const bool at_most = spec.contains("at_most");
                    cond.kind = at_most ? odd::LookaheadCondition::Kind::AtMost
                                        : odd::LookaheadCondition::Kind::AtLeast;
                    const auto& raw = at_most ? spec.at("at_most") : spec.at("at_least");
                    const auto ev = evidence_value_from_json(raw);
                    if (!ev.number) {
                        throw ConfigError("lookahead threshold for '" + key + "' is not numeric");
                    }
                    cond.threshold = *ev.number;
                } else {
                    throw ConfigError("lookahead condition for '" + key +
                                      "' needs equals/at_most/at_least");
                }
                rule.conditions.push_back(std::move(cond));
            }
            rule.target = r.at("target").get<std::string>();
            config.lookahead_rules.push_back(std::move(rule));
        }
    }

    config.validate();
    return config;
}

std::vector<EvidenceEvent> load_evidence_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::vector<EvidenceEvent> events;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        EvidenceEvent ev;
        ev.t = units::parse_quantity(j.at("t"), Kind::Time, "t");
        ev.key = j.at("key").get<std::string>();
        ev.value = evidence_value_from_json(j.at("value"));
        events.push_back(std::move(ev));
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const EvidenceEvent& a, const EvidenceEvent& b) { return a.t < b.t; });
    return events;
}

TableSpec load_table_spec(const std::string& path) {
    const json j = load_json_file(path);
    TableSpec spec;
    spec.row_param = j.at("row_param").get<std::string>();
    spec.col_param = j.at("col_param").get<std::string>();
    spec.row_bins = parse_bins(j.at("row_bins"), spec.row_param);
    spec.col_bins = parse_bins(j.at("col_bins"), spec.col_param);
    if (j.contains("fixed")) spec.fixed = parse_bounds(j.at("fixed"));
    return spec;
}

}  // namespace rss::io
