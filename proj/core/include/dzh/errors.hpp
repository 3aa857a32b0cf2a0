#pragma once

#include <stdexcept>
#include <string>

namespace dzh {

// Bad configuration or inadmissible field parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside an operation's domain (zero where a unit is required, tag
// mismatch, membership violation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The retained digits of a truncated series cannot decide the question asked.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dzh
