#pragma once

#include <stdexcept>
#include <string>

namespace hsf {

class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Numerical procedure ran out of budget; carries the best estimate reached.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// The functional is a.s. infinite for the requested parameters.
class InfiniteLawError : public DomainError {
public:
    explicit InfiniteLawError(const std::string& what) : DomainError(what) {}
};

class CensoringError : public std::runtime_error {
public:
    explicit CensoringError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hsf
