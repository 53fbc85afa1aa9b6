#include "rss/units.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <nlohmann/json.hpp>

#include "rss/errors.hpp"
#include "rss/kinematics.hpp"

namespace rss::units {

namespace {

struct Suffix {
    const char* text;
    double factor;
};

// Conversion factors to SI.
const Suffix* suffixes_for(Kind kind, size_t& count) {
    static const Suffix speed[] = {{"m/s", 1.0}, {"km/h", 1.0 / 3.6}};
    static const Suffix accel[] = {{"m/s^2", 1.0}, {"m/s2", 1.0}, {"g", kinematics::kGravity}};
    static const Suffix time[] = {{"s", 1.0}, {"ms", 1e-3}};
    static const Suffix angle[] = {{"rad", 1.0}, {"deg", M_PI / 180.0}};
    static const Suffix distance[] = {{"m", 1.0}, {"km", 1000.0}};
    static const Suffix temperature[] = {{"degC", 1.0}, {"C", 1.0}};
    switch (kind) {
        case Kind::Speed: count = 2; return speed;
        case Kind::Accel: count = 3; return accel;
        case Kind::Time: count = 2; return time;
        case Kind::Angle: count = 2; return angle;
        case Kind::Distance: count = 2; return distance;
        case Kind::Temperature: count = 2; return temperature;
        case Kind::Dimensionless: count = 0; return nullptr;
    }
    count = 0;
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

double parse_quantity_text(const std::string& raw, Kind kind, const std::string& field) {
    const std::string text = trim(raw);
    if (kind == Kind::Accel && text == "unbounded") {
        return std::numeric_limits<double>::infinity();
    }
    if (kind == Kind::Distance && text == "straight") {
        return std::numeric_limits<double>::infinity();
    }

    const char* begin = text.c_str();
    char* end = nullptr;
    const double magnitude = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(magnitude)) {
        throw ConfigError(field + ": cannot parse quantity '" + text + "'");
    }
    const std::string suffix = trim(text.substr(static_cast<size_t>(end - begin)));

    if (kind == Kind::Dimensionless) {
        if (!suffix.empty()) {
            throw ConfigError(field + ": dimensionless value must not carry a unit: '" + text + "'");
        }
        return magnitude;
    }
    size_t count = 0;
    const Suffix* table = suffixes_for(kind, count);
    for (size_t i = 0; i < count; ++i) {
        if (suffix == table[i].text) return magnitude * table[i].factor;
    }
    if (suffix.empty()) {
        throw ConfigError(field + ": bare number without unit suffix: '" + text + "'");
    }
    throw ConfigError(field + ": unrecognized unit '" + suffix + "'");
}

double parse_quantity(const nlohmann::json& value, Kind kind, const std::string& field) {
    if (value.is_string()) {
        return parse_quantity_text(value.get<std::string>(), kind, field);
    }
    if (value.is_number()) {
        if (kind != Kind::Dimensionless) {
            throw ConfigError(field + ": bare number rejected; write an explicit unit suffix");
        }
        return value.get<double>();
    }
    throw ConfigError(field + ": expected a quantity string");
}

}  // namespace rss::units
