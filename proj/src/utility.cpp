#include "ftq/utility.hpp"

#include "ftq/errors.hpp"

namespace ftq {

namespace {
void check_cost(double c, const char* what) {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1]");
}
} // namespace

double utility_outside(const ValueFunction& v, double income, const UtilityParams& params) {
    return v(income) + params.time_endowment;
}

double utility_free_queue(const ValueFunction& v, const Agent& agent, const UtilityParams& params,
                          double waiting_cost) {
    check_cost(waiting_cost, "waiting cost");
    return v(agent.income()) + agent.valuation() + params.time_endowment - waiting_cost;
}

double utility_paid_queue(const ValueFunction& v, const Agent& agent, const UtilityParams& params,
                          double waiting_cost, double price) {
    check_cost(waiting_cost, "waiting cost");
    check_cost(price, "price");
    if (price > agent.income())
        throw AffordabilityError("price exceeds income: the fast track is unaffordable");
    return v(agent.income() - price) + agent.valuation() + params.time_endowment - waiting_cost;
}

} // namespace ftq
