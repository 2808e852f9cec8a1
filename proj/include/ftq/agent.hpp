#pragma once

#include "ftq/errors.hpp"

namespace ftq {

/// A member of the population: a point (income, valuation) in the unit square.
class Agent {
public:
    Agent(double income, double valuation) : income_(income), valuation_(valuation) {
        if (!(income >= 0.0 && income <= 1.0))
            throw DomainError("agent income must lie in [0,1]");
        if (!(valuation >= 0.0 && valuation <= 1.0))
            throw DomainError("agent valuation must lie in [0,1]");
    }

    double income() const { return income_; }
    double valuation() const { return valuation_; }

private:
    double income_;
    double valuation_;
};

/// Additive terms common to every utility expression. The model fixes the
/// time endowment at 1; it is kept as a field because it must cancel out of
/// every pairwise utility comparison, which tests verify by perturbing it.
struct UtilityParams {
    double time_endowment = 1.0;
};

} // namespace ftq
