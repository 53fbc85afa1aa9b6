#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

namespace rss::units {

enum class Kind {
    Speed,         // m/s, km/h
    Accel,         // m/s^2, g; "unbounded" allowed
    Time,          // s, ms
    Angle,         // rad, deg
    Distance,      // m, km; "straight" allowed (infinite radius)
    Temperature,   // degC
    Dimensionless  // bare number
};

// Parse a JSON value holding a quantity with an explicit unit suffix, e.g.
// "25 m/s", "0.3 g", "-10 deg". Bare numbers are rejected for dimensioned
// kinds and required for dimensionless ones. Throws ConfigError.
double parse_quantity(const nlohmann::json& value, Kind kind, const std::string& field);

// Same, from the raw string form.
double parse_quantity_text(const std::string& text, Kind kind, const std::string& field);

}  // namespace rss::units
