#pragma once

#include <stdexcept>
#include <string>

namespace ftq {

/// An input outside its documented range (incomes, valuations and costs
/// all live in [0,1]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The agent's income cannot cover the fast-track price (p > y).
class AffordabilityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Capacity rho outside the open interval (0,1).
class CapacityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A requested or solved system has paid_cost >= free_cost, which collapses
/// the two queues into one.
class DegenerateSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The clearing equation has no root over the feasible interval of the free
/// variable; carries the range of served mass that is achievable.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& msg, double achievable_lo, double achievable_hi)
        : std::runtime_error(msg), lo_(achievable_lo), hi_(achievable_hi) {}

    double achievable_lo() const { return lo_; }
    double achievable_hi() const { return hi_; }

private:
    double lo_;
    double hi_;
};

/// A quadrature or iteration failed to reach the requested tolerance;
/// carries the tolerance that was actually achieved.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_(achieved) {}

    double achieved_tolerance() const { return achieved_; }

private:
    double achieved_;
};

class UnsupportedDistributionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ftq
