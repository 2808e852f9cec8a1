#pragma once

#include "ftq/errors.hpp"

namespace ftq {

/// Transfer vector (c1, c2, p) of the priority regime: waiting cost of the
/// free line, shorter waiting cost of the fast track, and the fast-track
/// price. Requires paid_cost < free_cost strictly; the single-queue collapse
/// (c1 = c2 = c, p = 0) is representable only through the dedicated
/// constructor and carries a flag.
class PrioritySystem {
public:
    PrioritySystem(double free_cost, double paid_cost, double price)
        : free_cost_(free_cost), paid_cost_(paid_cost), price_(price) {
        check_range(free_cost, "free-queue waiting cost");
        check_range(paid_cost, "fast-track waiting cost");
        check_range(price, "fast-track price");
        if (!(paid_cost < free_cost))
            throw DegenerateSystemError(
                "fast-track waiting cost must be strictly below the free-queue cost; "
                "use single_queue_collapse for the degenerate system");
    }

    static PrioritySystem single_queue_collapse(double cost) {
        check_range(cost, "waiting cost");
        PrioritySystem s;
        s.free_cost_ = cost;
        s.paid_cost_ = cost;
        s.price_ = 0.0;
        s.collapsed_ = true;
        return s;
    }

    double free_cost() const { return free_cost_; }  // c1
    double paid_cost() const { return paid_cost_; }  // c2
    double price() const { return price_; }          // p
    bool collapsed() const { return collapsed_; }

private:
    PrioritySystem() = default;

    static void check_range(double x, const char* what) {
        if (!(x >= 0.0 && x <= 1.0))
            throw DomainError(std::string(what) + " must lie in [0,1]");
    }

    double free_cost_ = 0.0;
    double paid_cost_ = 0.0;
    double price_ = 0.0;
    bool collapsed_ = false;
};

} // namespace ftq
