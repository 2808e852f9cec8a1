#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ftq/agent.hpp"
#include "ftq/boundary.hpp"
#include "ftq/priority_system.hpp"
#include "ftq/utility.hpp"

namespace ftq {

enum class Choice { Abstain = 0, FreeQueue = 1, PaidQueue = 2 };

/// Utility comparisons within kComparisonTol count as ties; this keeps
/// strict/weak classification stable on the measure-zero boundary curves.
inline constexpr double kComparisonTol = 1e-12;

/// Single queue: FreeQueue iff theta >= c (weak preference), else Abstain.
Choice choose_single(const Agent& agent, double waiting_cost);

/// Priority regime: argmax of {outside, free line, fast track}, the last only
/// when affordable. Ties break PaidQueue > FreeQueue > Abstain. A collapsed
/// system is a single queue and classifies as one.
Choice choose_priority(const Agent& agent, const ValueFunction& v, const PrioritySystem& system,
                       const UtilityParams& params = {});

enum class ComparisonLabel { StrictGain, Indifferent, StrictLoss };

const char* to_string(ComparisonLabel label);
const char* to_string(Choice choice);

/// Best utility available to the agent under each regime (both at least the
/// outside utility).
struct RegimeUtilities {
    double single_queue = 0.0;
    double priority = 0.0;
};

RegimeUtilities regime_utilities(const Agent& agent, const ValueFunction& v,
                                 const UtilityParams& params, double single_cost,
                                 const PrioritySystem& system);

/// Sign of (priority - single) under kComparisonTol, plus the two values.
struct RegimeComparison {
    ComparisonLabel label = ComparisonLabel::Indifferent;
    double single_utility = 0.0;
    double priority_utility = 0.0;
};

RegimeComparison compare_regimes(const Agent& agent, const ValueFunction& v,
                                 const UtilityParams& params, double single_cost,
                                 const PrioritySystem& system);

enum class IncomeBand { Low = 0, Middle = 1, High = 2 };

/// The income partition the three-band predictions are checked against.
/// Boundary-flagged thresholds map to their effective incomes; the partition
/// is invalid (checks are skipped with a notice) for collapsed systems and
/// inverted cutoffs.
struct BandPartition {
    double y_lower = 0.0;
    double y_upper = 1.0;
    bool valid = true;
    std::string notice;
};

BandPartition effective_partition(const Thresholds& thresholds, const PrioritySystem& system);

/// Band of an income, or nullopt inside the eps_band exclusion strips.
std::optional<IncomeBand> classify_band(double income, const BandPartition& partition,
                                        double eps_band);

struct BandTally {
    long gain = 0;
    long loss = 0;
    long indifferent = 0;
    long paid_while_losing = 0;  // PaidQueue choice together with a StrictLoss comparison

    long total() const { return gain + loss + indifferent; }
    void add(ComparisonLabel label, Choice choice);
};

struct Violation {
    Agent agent;
    IncomeBand band;
    ComparisonLabel label;
    Choice priority_choice;
    std::string what;
};

/// Band predicates: high income may not strictly lose nor queue free; middle
/// income may not strictly gain nor queue free; low income may not strictly
/// gain nor buy the fast track.
std::optional<Violation> check_band_predicates(const Agent& agent, IncomeBand band,
                                               const RegimeComparison& comparison,
                                               Choice priority_choice);

struct WelfareReport {
    Thresholds thresholds;
    BandPartition partition;
    std::array<BandTally, 3> bands;  // indexed by IncomeBand
    BandTally overall;
    std::vector<Violation> violations;
    int grid_n = 0;
    double eps_band = 0.0;
};

/// Classifies every agent of an n-by-n unit-square grid and checks the
/// three-band predictions outside eps_band strips around the cutoffs.
/// Agents within a strip are skipped entirely. Rows are independent; the
/// grid may be partitioned across workers and merged in row order.
WelfareReport verify_proposition1(int grid_n, const ValueFunction& v, const UtilityParams& params,
                                  double single_cost, const PrioritySystem& system,
                                  double eps_band = 1e-6);

/// Same, with precomputed thresholds (lets callers inject doctored cutoffs).
WelfareReport verify_proposition1(int grid_n, const ValueFunction& v, const UtilityParams& params,
                                  double single_cost, const PrioritySystem& system,
                                  const Thresholds& thresholds, double eps_band = 1e-6);

} // namespace ftq
