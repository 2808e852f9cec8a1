#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ftq/boundary.hpp"
#include "ftq/distribution.hpp"

namespace ftq {

struct SolverOptions {
    double x_tol = 1e-9;        // on the solved variable
    double residual_tol = 1e-8; // on the clearing mass
    int max_iter = 200;
    double quad_tol = 1e-10;
};

/// Market-clearing outcome of the single free queue.
struct SingleQueueEquilibrium {
    double waiting_cost = 0.0;
    double capacity = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// M(c) = P(theta >= c); nonincreasing in c. Throws DomainError outside [0,1].
double tail_mass(const JointDistribution& dist, double c);

/// Waiting cost c with |M(c) - rho| within tolerance, by bisection on [0,1].
SingleQueueEquilibrium solve_single_queue(const JointDistribution& dist, double rho,
                                          const SolverOptions& opts = {.x_tol = 1e-12,
                                                                       .residual_tol = 1e-9});

/// Served mass of a priority system and its split across the two lines.
struct ClearingMasses {
    double total = 0.0;
    double paid = 0.0;
    double free_line = 0.0;
    IncomeThreshold split;  // y_lower used for the split
};

ClearingMasses priority_clearing_masses(const JointDistribution& dist, const ValueFunction& v,
                                        const PrioritySystem& system, double quad_tol = 1e-10);

/// Convenience: .total of the above.
double priority_clearing_mass(const JointDistribution& dist, const ValueFunction& v,
                              const PrioritySystem& system, double quad_tol = 1e-10);

/// Exactly two coordinates fixed; the remaining one is solved for.
struct SystemSpec {
    std::optional<double> free_cost;  // c1
    std::optional<double> paid_cost;  // c2
    std::optional<double> price;      // p
};

struct PrioritySolve {
    PrioritySystem system;
    ClearingMasses masses;
    double residual = 0.0;
    int iterations = 0;
};

/// Bisection on the free coordinate (clearing mass is monotone in each).
/// Throws InfeasibleError with the achievable mass range when rho cannot be
/// bracketed, DegenerateSystemError when the solution collapses the queues.
PrioritySolve solve_priority(const JointDistribution& dist, const ValueFunction& v, double rho,
                             const SystemSpec& spec, const SolverOptions& opts = {});

/// One grid point of a manifold sweep over (c2, p), solving c1 at each.
struct SweepPoint {
    double paid_cost = 0.0;
    double price = 0.0;
    std::optional<PrioritySolve> solution;
    std::string message;  // diagnostic when unsolved
};

/// Solves every grid point; infeasible points are reported in place, never
/// dropped. Points are independent and may be evaluated concurrently.
std::vector<SweepPoint> manifold_sweep(const JointDistribution& dist, const ValueFunction& v,
                                       double rho,
                                       const std::vector<std::pair<double, double>>& c2_p_grid,
                                       const SolverOptions& opts = {});

} // namespace ftq
