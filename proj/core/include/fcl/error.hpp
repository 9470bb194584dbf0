#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcl {

// Bad argument to a pure function (z = 0, r <= 0, negative test function, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inconsistent setup: grid mismatch, r < h/2, bad config values.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CflViolation : public ConfigError {
public:
    CflViolation(double requested, double admissible);
    double requested_dt() const { return requested_; }
    double admissible_dt() const { return admissible_; }

private:
    double requested_;
    double admissible_;
};

// NaN / Inf produced during time stepping.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

// A runtime-checked property failed (max principle, conservation, ...).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fcl
