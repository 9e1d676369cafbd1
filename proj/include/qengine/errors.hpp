#pragma once

#include <stdexcept>
#include <string>

namespace qengine {

/// Argument outside the mathematical domain of an operation (n = 0, L <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A value object was asked to hold a state that breaks its invariants.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Cycle geometry violates a builder precondition. The message names the constraint.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Consecutive legs of a cycle do not meet.
class ClosureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A cycle without any heat-absorbing leg.
class DegenerateCycleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature hit its depth limit before meeting tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

}  // namespace qengine
