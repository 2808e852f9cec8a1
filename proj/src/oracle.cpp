#include "ftq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "ftq/errors.hpp"

namespace ftq {

Population sample_population(const JointDistribution& dist, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("population size must be at least 1");
    Population pop;
    pop.seed = seed;
    pop.descriptor = dist.describe();
    pop.agents.reserve(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) pop.agents.push_back(dist.sample(rng));
    return pop;
}

double empirical_single_cost(const Population& pop, double rho) {
    if (pop.agents.empty()) throw DomainError("population is empty");
    if (!(rho > 0.0 && rho < 1.0))
        throw CapacityError("capacity rho must lie strictly inside (0,1)");
    std::vector<double> thetas(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) thetas[i] = pop.agents[i].valuation();
    std::sort(thetas.begin(), thetas.end());
    const std::size_t n = thetas.size();
    std::size_t served = static_cast<std::size_t>(std::floor(rho * static_cast<double>(n)));
    if (served >= n) served = n - 1;
    if (served == 0) return 1.0; // capacity rounds to nobody at this sample size
    return thetas[n - served];
}

namespace {

SimulationResult tally(const Population& pop, const std::function<Choice(const Agent&)>& choose) {
    SimulationResult result;
    result.population_size = pop.size();
    const std::size_t n = pop.size();

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return pop.agents[a].income() < pop.agents[b].income();
    });
    std::vector<std::uint8_t> decile_of(n);
    for (std::size_t rank = 0; rank < n; ++rank)
        decile_of[order[rank]] = static_cast<std::uint8_t>((rank * 10) / n);

    std::size_t served = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Choice c = choose(pop.agents[i]);
        ++result.choice_counts[static_cast<std::size_t>(c)];
        ++result.decile_choice_counts[decile_of[i]][static_cast<std::size_t>(c)];
        if (c != Choice::Abstain) ++served;
    }
    const double f = static_cast<double>(served) / static_cast<double>(n);
    result.served_fraction = f;
    result.served_standard_error = std::sqrt(f * (1.0 - f) / static_cast<double>(n));
    return result;
}

} // namespace

SimulationResult simulate_regime(const Population& pop, const ValueFunction&,
                                 const UtilityParams&, double single_cost) {
    return tally(pop, [&](const Agent& a) { return choose_single(a, single_cost); });
}

SimulationResult simulate_regime(const Population& pop, const ValueFunction& v,
                                 const UtilityParams& params, const PrioritySystem& system) {
    return tally(pop, [&](const Agent& a) { return choose_priority(a, v, system, params); });
}

std::vector<Violation> empirical_proposition1(const Population& pop, const ValueFunction& v,
                                              const UtilityParams& params, double single_cost,
                                              const PrioritySystem& system,
                                              const Thresholds& thresholds, double eps_band) {
    std::vector<Violation> violations;
    const BandPartition partition = effective_partition(thresholds, system);
    if (!partition.valid) return violations;
    for (const Agent& agent : pop.agents) {
        const auto band = classify_band(agent.income(), partition, eps_band);
        if (!band) continue;
        const RegimeComparison cmp = compare_regimes(agent, v, params, single_cost, system);
        const Choice choice = choose_priority(agent, v, system, params);
        if (auto violation = check_band_predicates(agent, *band, cmp, choice))
            violations.push_back(std::move(*violation));
    }
    return violations;
}

} // namespace ftq
