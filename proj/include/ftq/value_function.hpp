#pragma once

#include <string>

namespace ftq {

enum class ValueFunctionKind { SquareRoot, ShiftedLog, Crra };

/// Income utility v on [0,1]: strictly increasing, strictly concave and
/// finite at 0. Three parametric families are provided; shape invariants
/// are checked numerically on a fixed grid (see the free functions below)
/// rather than symbolically.
class ValueFunction {
public:
    static ValueFunction square_root();
    /// ln(1+y). The pure log is excluded: it diverges at zero income.
    static ValueFunction shifted_log();
    /// y^(1-gamma) / (1-gamma) with gamma in (0,1).
    static ValueFunction crra(double gamma);

    /// v(y); throws DomainError outside [0,1].
    double operator()(double y) const;

    ValueFunctionKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    std::string name() const;

private:
    ValueFunction(ValueFunctionKind kind, double gamma) : kind_(kind), gamma_(gamma) {}

    ValueFunctionKind kind_;
    double gamma_ = 0.0;
};

/// Compensating valuation theta*(y,p) = v(y) - v(y-p): the utility an agent
/// at income y gives up by paying p. Decreasing in y, increasing in p.
/// Throws AffordabilityError when p > y, DomainError outside [0,1].
double theta_star(const ValueFunction& v, double income, double price);

/// Grid checks of the shape invariants (strict increase, strict midpoint
/// concavity) on an n-point uniform partition of [0,1].
bool strictly_increasing_on_grid(const ValueFunction& v, int n = 1001);
bool strictly_concave_on_grid(const ValueFunction& v, int n = 1001, double tol = 1e-12);

} // namespace ftq
