#pragma once

#include <functional>

#include "ftq/priority_system.hpp"
#include "ftq/value_function.hpp"

namespace ftq {

/// A nonincreasing participation boundary theta = g(y) on [y_min, 1].
/// theta_at returns the exact (unclipped) value, which may exceed 1 near
/// y_min; clipped() clamps it for region and mass work.
struct BoundaryCurve {
    std::function<double(double)> theta_at;
    double y_min = 0.0;

    double clipped(double y) const {
        double t = theta_at(y);
        if (t < 0.0) return 0.0;
        if (t > 1.0) return 1.0;
        return t;
    }
};

/// The paid/outside indifference curve of a system: g(y) = theta*(y,p) + c2
/// on [p, 1]. Evaluating below p raises AffordabilityError.
BoundaryCurve priority_boundary(const ValueFunction& v, const PrioritySystem& system);

/// Fixture curve y = k / theta^2, i.e. theta(y) = sqrt(k/y), defined on
/// [k, 1] where it stays within the valuation range.
BoundaryCurve power_fixture_boundary(double k);

enum class ThresholdStatus {
    Interior,       // the crossing lies inside [y_min, 1]
    AllPreferPaid,  // boundary below the level everywhere; effective income y_min
    AllPreferFree,  // boundary above the level everywhere; effective income 1
    Flat,           // boundary sits at the level over the whole domain
};

/// Income at which the boundary crosses a theta level, or a flag when the
/// crossing falls outside the domain. `income` always carries a usable
/// effective value (the root, y_min, or 1).
struct IncomeThreshold {
    double income = 0.0;
    ThresholdStatus status = ThresholdStatus::Interior;
    double residual = 0.0;

    bool interior() const { return status == ThresholdStatus::Interior; }
};

IncomeThreshold solve_income_threshold(const BoundaryCurve& boundary, double theta_level);

/// The two income cutoffs of the distributional analysis.
struct Thresholds {
    IncomeThreshold lower;  // boundary crosses theta = c1: paid/free tie among participants
    IncomeThreshold upper;  // boundary crosses theta = c: priority regime ties the single queue
};

/// y_lower: income where theta*(y,p) = c1 - c2.
IncomeThreshold y_lower_threshold(const ValueFunction& v, const PrioritySystem& system);

/// y_upper: income where theta*(y,p) = c - c2, c the single-queue cost.
IncomeThreshold y_upper_threshold(const ValueFunction& v, const PrioritySystem& system,
                                  double single_queue_cost);

Thresholds compute_thresholds(const ValueFunction& v, const PrioritySystem& system,
                              double single_queue_cost);

} // namespace ftq
