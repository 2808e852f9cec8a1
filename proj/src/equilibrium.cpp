#include "ftq/equilibrium.hpp"

#include <cmath>
#include <sstream>

#include "ftq/bisect.hpp"
#include "ftq/errors.hpp"

namespace ftq {

double tail_mass(const JointDistribution& dist, double c) {
    return dist.theta_tail_mass(c);
}

SingleQueueEquilibrium solve_single_queue(const JointDistribution& dist, double rho,
                                          const SolverOptions& opts) {
    if (!(rho > 0.0 && rho < 1.0))
        throw CapacityError("capacity rho must lie strictly inside (0,1)");
    auto f = [&](double c) { return tail_mass(dist, c) - rho; };
    BisectResult r = bisect(f, 0.0, 1.0, {opts.x_tol, opts.residual_tol, opts.max_iter});
    if (!r.converged) {
        if (!r.bracketed)
            throw CapacityError("tail mass cannot reach the requested capacity");
        throw UnsupportedDistributionError(
            "tail mass is flat at the clearing level; market-clearing cost is not unique "
            "(distribution appears to carry an atom)");
    }
    return SingleQueueEquilibrium{r.x, rho, std::abs(r.fx), r.iterations};
}

namespace {

struct RawMasses {
    double total;
    double paid;
    double free_line;
    IncomeThreshold split;
};

/// Clearing mass of a (c1, c2, p) triple, without requiring c2 < c1. The
/// served set is {y < y_split, theta >= c1} plus {y >= y_split, theta >= g(y)}
/// where g = theta* + c2 and y_split is the paid/free indifference income.
RawMasses clearing_masses_raw(const JointDistribution& dist, const ValueFunction& v, double c1,
                              double c2, double p, double quad_tol) {
    BoundaryCurve g;
    g.y_min = p;
    g.theta_at = [&v, c2, p](double y) { return theta_star(v, y, p) + c2; };

    IncomeThreshold split = solve_income_threshold(g, c1);
    double y_split = split.income;
    if (split.status == ThresholdStatus::Flat) y_split = 1.0; // indifferent: count once, free side

    RawMasses m{0.0, 0.0, 0.0, split};
    if (y_split > 0.0)
        m.free_line = dist.mass_above_boundary(0.0, y_split, [c1](double) { return c1; }, quad_tol);
    if (y_split < 1.0)
        m.paid = dist.mass_above_boundary(y_split, 1.0, g.theta_at, quad_tol);
    m.total = m.free_line + m.paid;
    return m;
}

} // namespace

ClearingMasses priority_clearing_masses(const JointDistribution& dist, const ValueFunction& v,
                                        const PrioritySystem& system, double quad_tol) {
    if (system.collapsed()) {
        ClearingMasses m;
        m.total = m.free_line = tail_mass(dist, system.free_cost());
        m.paid = 0.0;
        m.split = IncomeThreshold{1.0, ThresholdStatus::Flat, 0.0};
        return m;
    }
    RawMasses raw = clearing_masses_raw(dist, v, system.free_cost(), system.paid_cost(),
                                        system.price(), quad_tol);
    return ClearingMasses{raw.total, raw.paid, raw.free_line, raw.split};
}

double priority_clearing_mass(const JointDistribution& dist, const ValueFunction& v,
                              const PrioritySystem& system, double quad_tol) {
    return priority_clearing_masses(dist, v, system, quad_tol).total;
}

PrioritySolve solve_priority(const JointDistribution& dist, const ValueFunction& v, double rho,
                             const SystemSpec& spec, const SolverOptions& opts) {
    if (!(rho > 0.0 && rho < 1.0))
        throw CapacityError("capacity rho must lie strictly inside (0,1)");
    const int fixed = int(spec.free_cost.has_value()) + int(spec.paid_cost.has_value()) +
                      int(spec.price.has_value());
    if (fixed != 2)
        throw DomainError("exactly two of {free cost, paid cost, price} must be fixed");

    auto in_range = [](double x) { return x >= 0.0 && x <= 1.0; };
    for (const auto& coord : {spec.free_cost, spec.paid_cost, spec.price})
        if (coord && !in_range(*coord)) throw DomainError("fixed coordinates must lie in [0,1]");

    double lo = 0.0, hi = 1.0;
    const char* free_name = "";
    std::function<RawMasses(double)> masses_at;
    if (!spec.free_cost) {
        const double c2 = *spec.paid_cost, p = *spec.price;
        lo = c2; // c1 below c2 never clears less mass than c1 = c2
        free_name = "free-queue cost c1";
        masses_at = [&, c2, p](double c1) {
            return clearing_masses_raw(dist, v, c1, c2, p, opts.quad_tol);
        };
    } else if (!spec.paid_cost) {
        const double c1 = *spec.free_cost, p = *spec.price;
        hi = c1;
        free_name = "fast-track cost c2";
        masses_at = [&, c1, p](double c2) {
            return clearing_masses_raw(dist, v, c1, c2, p, opts.quad_tol);
        };
    } else {
        const double c1 = *spec.free_cost, c2 = *spec.paid_cost;
        if (!(c2 < c1))
            throw DegenerateSystemError("fixed costs already collapse the system (c2 >= c1)");
        free_name = "fast-track price p";
        masses_at = [&, c1, c2](double p) {
            return clearing_masses_raw(dist, v, c1, c2, p, opts.quad_tol);
        };
    }

    // the clearing mass is nonincreasing in every coordinate
    const double mass_lo = masses_at(lo).total;
    const double mass_hi = masses_at(hi).total;
    if (rho > mass_lo + opts.residual_tol || rho < mass_hi - opts.residual_tol) {
        std::ostringstream msg;
        msg << "no feasible " << free_name << ": achievable served mass lies in [" << mass_hi
            << ", " << mass_lo << "], requested " << rho;
        throw InfeasibleError(msg.str(), mass_hi, mass_lo);
    }

    auto f = [&](double x) { return masses_at(x).total - rho; };
    BisectResult r = bisect(f, lo, hi, {opts.x_tol, opts.residual_tol, opts.max_iter});
    if (!r.converged)
        throw NumericalError("clearing bisection stalled above the residual tolerance",
                             std::abs(r.fx));

    const double c1 = spec.free_cost.value_or(r.x);
    const double c2 = spec.paid_cost.value_or(r.x);
    const double p = spec.price.value_or(r.x);
    PrioritySystem system(c1, c2, p); // throws DegenerateSystemError when c2 >= c1
    RawMasses raw = clearing_masses_raw(dist, v, c1, c2, p, opts.quad_tol);
    return PrioritySolve{system,
                         ClearingMasses{raw.total, raw.paid, raw.free_line, raw.split},
                         std::abs(raw.total - rho), r.iterations};
}

std::vector<SweepPoint> manifold_sweep(const JointDistribution& dist, const ValueFunction& v,
                                       double rho,
                                       const std::vector<std::pair<double, double>>& c2_p_grid,
                                       const SolverOptions& opts) {
    if (c2_p_grid.empty()) throw DomainError("sweep grid must not be empty");
    std::vector<SweepPoint> out;
    out.reserve(c2_p_grid.size());
    for (const auto& [c2, p] : c2_p_grid) {
        SweepPoint point;
        point.paid_cost = c2;
        point.price = p;
        try {
            point.solution = solve_priority(dist, v, rho,
                                            SystemSpec{std::nullopt, c2, p}, opts);
            point.message = "ok";
        } catch (const InfeasibleError& e) {
            std::ostringstream msg;
            msg << "infeasible: achievable mass in [" << e.achievable_lo() << ", "
                << e.achievable_hi() << "]";
            point.message = msg.str();
        } catch (const std::exception& e) {
            point.message = std::string("error: ") + e.what();
        }
        out.push_back(std::move(point));
    }
    return out;
}

} // namespace ftq
