#include "ftq/boundary.hpp"

#include <cmath>

#include "ftq/bisect.hpp"
#include "ftq/errors.hpp"

namespace ftq {

namespace {
constexpr double kThresholdXTol = 1e-13;
constexpr double kThresholdFTol = 1e-12;
} // namespace

BoundaryCurve priority_boundary(const ValueFunction& v, const PrioritySystem& system) {
    BoundaryCurve curve;
    curve.y_min = system.price();
    curve.theta_at = [v, c2 = system.paid_cost(), p = system.price()](double y) {
        return theta_star(v, y, p) + c2;
    };
    return curve;
}

BoundaryCurve power_fixture_boundary(double k) {
    if (!(k > 0.0 && k <= 1.0)) throw DomainError("fixture constant must lie in (0,1]");
    BoundaryCurve curve;
    curve.y_min = k; // theta(k) = 1
    curve.theta_at = [k](double y) {
        if (!(y > 0.0 && y <= 1.0)) throw DomainError("income must lie in (0,1]");
        return std::sqrt(k / y);
    };
    return curve;
}

IncomeThreshold solve_income_threshold(const BoundaryCurve& boundary, double theta_level) {
    if (!(theta_level >= 0.0 && theta_level <= 1.0))
        throw DomainError("threshold level must lie in [0,1]");
    const double lo = boundary.y_min;
    const double hi = 1.0;
    IncomeThreshold result;
    const double f_lo = boundary.theta_at(lo) - theta_level; // boundary max (nonincreasing)
    const double f_hi = boundary.theta_at(hi) - theta_level; // boundary min

    if (std::abs(f_lo) <= kThresholdFTol && std::abs(f_hi) <= kThresholdFTol) {
        result.status = ThresholdStatus::Flat;
        result.income = lo;
        result.residual = std::abs(f_lo);
        return result;
    }
    if (f_lo < -kThresholdFTol) {
        // even the poorest buyer's boundary sits below the level
        result.status = ThresholdStatus::AllPreferPaid;
        result.income = lo;
        result.residual = std::abs(f_lo);
        return result;
    }
    if (f_hi > kThresholdFTol) {
        result.status = ThresholdStatus::AllPreferFree;
        result.income = hi;
        result.residual = std::abs(f_hi);
        return result;
    }

    auto f = [&](double y) { return boundary.theta_at(y) - theta_level; };
    BisectResult root = bisect(f, lo, hi, {kThresholdXTol, kThresholdFTol, 200});
    result.status = ThresholdStatus::Interior;
    result.income = root.x;
    result.residual = std::abs(root.fx);
    return result;
}

IncomeThreshold y_lower_threshold(const ValueFunction& v, const PrioritySystem& system) {
    if (!(system.paid_cost() < system.free_cost()) && !system.collapsed())
        throw DegenerateSystemError("lower threshold needs c2 < c1");
    // theta*(y,p) = c1 - c2  <=>  g(y) = c1 with g = theta* + c2
    return solve_income_threshold(priority_boundary(v, system), system.free_cost());
}

IncomeThreshold y_upper_threshold(const ValueFunction& v, const PrioritySystem& system,
                                  double single_queue_cost) {
    if (!(single_queue_cost >= 0.0 && single_queue_cost <= 1.0))
        throw DomainError("single-queue cost must lie in [0,1]");
    // theta*(y,p) = c - c2  <=>  g(y) = c
    return solve_income_threshold(priority_boundary(v, system), single_queue_cost);
}

Thresholds compute_thresholds(const ValueFunction& v, const PrioritySystem& system,
                              double single_queue_cost) {
    return Thresholds{y_lower_threshold(v, system),
                      y_upper_threshold(v, system, single_queue_cost)};
}

} // namespace ftq
