#pragma once

#include <stdexcept>
#include <string>

namespace rss {

// Precondition violation on a kinematic or physical parameter.
class InvalidParameterError : public std::invalid_argument {
public:
    explicit InvalidParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested quantity does not exist for these parameters (e.g. the
// mid-braking special case against an instant-stop front vehicle).
class NotApplicableError : public std::logic_error {
public:
    explicit NotApplicableError(const std::string& what) : std::logic_error(what) {}
};

// Lateral demand exceeds the friction limit; no braking budget exists.
class CurveInfeasibleError : public std::runtime_error {
public:
    explicit CurveInfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// The rear vehicle cannot hold the road; no finite following distance is safe.
class NoSafeDistanceError : public std::runtime_error {
public:
    explicit NoSafeDistanceError(const std::string& what) : std::runtime_error(what) {}
};

// Evidence assigns zero posterior mass to every hypothesis.
class InconsistentEvidenceError : public std::runtime_error {
public:
    explicit InconsistentEvidenceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rss
