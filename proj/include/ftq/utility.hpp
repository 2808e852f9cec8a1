#pragma once

#include "ftq/agent.hpp"
#include "ftq/value_function.hpp"

namespace ftq {

/// U0 = v(y) + t: staying out of both queues.
double utility_outside(const ValueFunction& v, double income, const UtilityParams& params = {});

/// UQ = v(y) + theta + t - c: wait c in the free line and use the service.
/// Weakly preferred to staying out exactly when theta >= c.
double utility_free_queue(const ValueFunction& v, const Agent& agent, const UtilityParams& params,
                          double waiting_cost);

/// UQ2 = v(y-p) + theta + t - c2: pay p for the shorter fast-track wait c2.
/// Weakly preferred to staying out exactly when theta >= theta*(y,p) + c2.
double utility_paid_queue(const ValueFunction& v, const Agent& agent, const UtilityParams& params,
                          double waiting_cost, double price);

} // namespace ftq
