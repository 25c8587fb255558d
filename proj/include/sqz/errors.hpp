#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace sqz {

// An argument outside the domain of a model operation (negative power,
// non-positive ratio, gain below unity, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The sub-threshold model is undefined at or above the OPO threshold.
// Carries the offending pump power and the threshold it was compared with.
class ThresholdError : public DomainError {
public:
    ThresholdError(const std::string& what, double pump_power, double threshold)
        : DomainError(what), pump_power_(pump_power), threshold_(threshold) {}

    double pump_power() const noexcept { return pump_power_; }
    double threshold() const noexcept { return threshold_; }

private:
    double pump_power_;
    double threshold_;
};

// A solver could not produce an answer: no sign change on the bracket, or
// the iteration cap was reached.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what,
                              std::optional<double> bracket_lo = std::nullopt,
                              std::optional<double> bracket_hi = std::nullopt)
        : std::runtime_error(what), lo_(bracket_lo), hi_(bracket_hi) {}

    std::optional<double> bracket_lo() const noexcept { return lo_; }
    std::optional<double> bracket_hi() const noexcept { return hi_; }

private:
    std::optional<double> lo_;
    std::optional<double> hi_;
};

// Data handed to an estimator cannot determine the requested parameters.
class FitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace sqz
