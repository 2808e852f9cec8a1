#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ftq/distribution.hpp"
#include "ftq/welfare.hpp"

namespace ftq {

/// Finite sample standing in for the continuum population. Reproducible
/// byte-for-byte from (descriptor, seed, size).
struct Population {
    std::vector<Agent> agents;
    std::uint64_t seed = 0;
    std::string descriptor;

    std::size_t size() const { return agents.size(); }
};

Population sample_population(const JointDistribution& dist, std::size_t n, std::uint64_t seed);

/// Sort-based clearing cost: the smallest valuation that serves exactly
/// floor(rho * n) agents under the weak rule theta >= c, i.e. the
/// (n - floor(rho n))-th order statistic (1-indexed) of the valuations.
/// Independent of the quadrature path.
double empirical_single_cost(const Population& pop, double rho);

struct SimulationResult {
    std::array<std::size_t, 3> choice_counts{};  // indexed by Choice
    std::size_t population_size = 0;
    double served_fraction = 0.0;
    double served_standard_error = 0.0;
    /// Rank-based income deciles (equal-count groups), each tallied by Choice.
    std::array<std::array<std::size_t, 3>, 10> decile_choice_counts{};
};

SimulationResult simulate_regime(const Population& pop, const ValueFunction& v,
                                 const UtilityParams& params, double single_cost);
SimulationResult simulate_regime(const Population& pop, const ValueFunction& v,
                                 const UtilityParams& params, const PrioritySystem& system);

/// The grid verifier's band predicates applied to sampled agents.
std::vector<Violation> empirical_proposition1(const Population& pop, const ValueFunction& v,
                                              const UtilityParams& params, double single_cost,
                                              const PrioritySystem& system,
                                              const Thresholds& thresholds,
                                              double eps_band = 1e-6);

} // namespace ftq
