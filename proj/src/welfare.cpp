#include "ftq/welfare.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ftq/errors.hpp"

namespace ftq {

const char* to_string(ComparisonLabel label) {
    switch (label) {
        case ComparisonLabel::StrictGain: return "strict_gain";
        case ComparisonLabel::Indifferent: return "indifferent";
        case ComparisonLabel::StrictLoss: return "strict_loss";
    }
    return "unknown";
}

const char* to_string(Choice choice) {
    switch (choice) {
        case Choice::Abstain: return "abstain";
        case Choice::FreeQueue: return "free_queue";
        case Choice::PaidQueue: return "paid_queue";
    }
    return "unknown";
}

Choice choose_single(const Agent& agent, double waiting_cost) {
    if (!(waiting_cost >= 0.0 && waiting_cost <= 1.0))
        throw DomainError("waiting cost must lie in [0,1]");
    return agent.valuation() >= waiting_cost ? Choice::FreeQueue : Choice::Abstain;
}

Choice choose_priority(const Agent& agent, const ValueFunction& v, const PrioritySystem& system,
                       const UtilityParams& params) {
    if (system.collapsed()) return choose_single(agent, system.free_cost());
    const double u_out = utility_outside(v, agent.income(), params);
    const double u_free = utility_free_queue(v, agent, params, system.free_cost());
    const bool affordable = agent.income() >= system.price();
    double u_paid = -std::numeric_limits<double>::infinity();
    if (affordable)
        u_paid = utility_paid_queue(v, agent, params, system.paid_cost(), system.price());
    const double best = std::max(u_out, std::max(u_free, u_paid));
    if (affordable && u_paid >= best - kComparisonTol) return Choice::PaidQueue;
    if (u_free >= best - kComparisonTol) return Choice::FreeQueue;
    return Choice::Abstain;
}

RegimeUtilities regime_utilities(const Agent& agent, const ValueFunction& v,
                                 const UtilityParams& params, double single_cost,
                                 const PrioritySystem& system) {
    const double u_out = utility_outside(v, agent.income(), params);
    RegimeUtilities u;
    u.single_queue = std::max(u_out, utility_free_queue(v, agent, params, single_cost));
    double best = std::max(u_out, utility_free_queue(v, agent, params, system.free_cost()));
    if (agent.income() >= system.price())
        best = std::max(best,
                        utility_paid_queue(v, agent, params, system.paid_cost(), system.price()));
    u.priority = best;
    return u;
}

RegimeComparison compare_regimes(const Agent& agent, const ValueFunction& v,
                                 const UtilityParams& params, double single_cost,
                                 const PrioritySystem& system) {
    const RegimeUtilities u = regime_utilities(agent, v, params, single_cost, system);
    RegimeComparison cmp;
    cmp.single_utility = u.single_queue;
    cmp.priority_utility = u.priority;
    const double d = u.priority - u.single_queue;
    if (d > kComparisonTol)
        cmp.label = ComparisonLabel::StrictGain;
    else if (d < -kComparisonTol)
        cmp.label = ComparisonLabel::StrictLoss;
    else
        cmp.label = ComparisonLabel::Indifferent;
    return cmp;
}

BandPartition effective_partition(const Thresholds& thresholds, const PrioritySystem& system) {
    BandPartition part;
    if (system.collapsed()) {
        part.valid = false;
        part.notice = "collapsed system: the regimes coincide, no band partition";
        return part;
    }
    part.y_lower = thresholds.lower.income;
    part.y_upper = thresholds.upper.income;
    if (part.y_lower > part.y_upper) {
        part.valid = false;
        std::ostringstream msg;
        msg << "degenerate partition: y_lower " << part.y_lower << " above y_upper "
            << part.y_upper;
        part.notice = msg.str();
    }
    return part;
}

std::optional<IncomeBand> classify_band(double income, const BandPartition& partition,
                                        double eps_band) {
    if (!partition.valid) return std::nullopt;
    if (std::abs(income - partition.y_lower) <= eps_band) return std::nullopt;
    if (std::abs(income - partition.y_upper) <= eps_band) return std::nullopt;
    if (income < partition.y_lower) return IncomeBand::Low;
    if (income < partition.y_upper) return IncomeBand::Middle;
    return IncomeBand::High;
}

void BandTally::add(ComparisonLabel label, Choice choice) {
    switch (label) {
        case ComparisonLabel::StrictGain: ++gain; break;
        case ComparisonLabel::StrictLoss: ++loss; break;
        case ComparisonLabel::Indifferent: ++indifferent; break;
    }
    if (label == ComparisonLabel::StrictLoss && choice == Choice::PaidQueue) ++paid_while_losing;
}

std::optional<Violation> check_band_predicates(const Agent& agent, IncomeBand band,
                                               const RegimeComparison& comparison,
                                               Choice priority_choice) {
    const char* what = nullptr;
    switch (band) {
        case IncomeBand::High:
            if (comparison.label == ComparisonLabel::StrictLoss)
                what = "high income must weakly gain from the priority system";
            else if (priority_choice == Choice::FreeQueue)
                what = "high income must use the fast track when accessing the service";
            break;
        case IncomeBand::Middle:
            if (comparison.label == ComparisonLabel::StrictGain)
                what = "middle income must be weakly worse off under the priority system";
            else if (priority_choice == Choice::FreeQueue)
                what = "middle income must use the fast track when accessing the service";
            break;
        case IncomeBand::Low:
            if (comparison.label == ComparisonLabel::StrictGain)
                what = "low income must be weakly worse off under the priority system";
            else if (priority_choice == Choice::PaidQueue)
                what = "low income must never use the fast track";
            break;
    }
    if (!what) return std::nullopt;
    return Violation{agent, band, comparison.label, priority_choice, what};
}

WelfareReport verify_proposition1(int grid_n, const ValueFunction& v, const UtilityParams& params,
                                  double single_cost, const PrioritySystem& system,
                                  const Thresholds& thresholds, double eps_band) {
    if (grid_n < 2) throw DomainError("grid resolution must be at least 2");
    WelfareReport report;
    report.grid_n = grid_n;
    report.eps_band = eps_band;
    report.thresholds = thresholds;
    report.partition = effective_partition(thresholds, system);

    for (int i = 0; i < grid_n; ++i) {
        const double y = static_cast<double>(i) / (grid_n - 1);
        const auto band = classify_band(y, report.partition, eps_band);
        for (int j = 0; j < grid_n; ++j) {
            const double theta = static_cast<double>(j) / (grid_n - 1);
            const Agent agent(y, theta);
            const RegimeComparison cmp = compare_regimes(agent, v, params, single_cost, system);
            const Choice choice = choose_priority(agent, v, system, params);
            report.overall.add(cmp.label, choice);
            if (!band) continue;
            report.bands[static_cast<std::size_t>(*band)].add(cmp.label, choice);
            if (auto violation = check_band_predicates(agent, *band, cmp, choice))
                report.violations.push_back(std::move(*violation));
        }
    }
    return report;
}

WelfareReport verify_proposition1(int grid_n, const ValueFunction& v, const UtilityParams& params,
                                  double single_cost, const PrioritySystem& system,
                                  double eps_band) {
    return verify_proposition1(grid_n, v, params, single_cost, system,
                               compute_thresholds(v, system, single_cost), eps_band);
}

} // namespace ftq
