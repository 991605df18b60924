#pragma once

#include <stdexcept>
#include <string>

namespace sdn5g {

// Bad numeric input (negative cost, non-finite distance, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or out-of-range configuration (scenario files, workloads).
class ConfigError : public std::runtime_error {
public:
    enum class Kind { MissingFile, Schema, Range };

    ConfigError(Kind kind, std::string field, const std::string& what)
        : std::runtime_error(what), kind_(kind), field_(std::move(field)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& field() const noexcept { return field_; }

private:
    Kind kind_;
    std::string field_;
};

// Operation invoked on an object in the wrong state (e.g. UE not attached).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Aggregate requested over an empty set.
class EmptyResultError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sdn5g
