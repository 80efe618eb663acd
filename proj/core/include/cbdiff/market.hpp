#pragma once

#include "cbdiff/model.hpp"

#include <optional>
#include <vector>

namespace cbd {

enum class Product { kIncumbent, kNew };

/// kSum is the plain similarity-weighted sum; kAverage divides it by the total
/// similarity mass of the case set.
enum class EvaluationMode { kSum, kAverage };

/// Cumulative case statistics of one group over periods 0..t-1.
struct GroupCases {
    Integer incumbent_periods;  ///< consumer-periods on the incumbent
    Integer new_periods;        ///< consumer-periods on the new product
    Rational new_payoff_mass;   ///< sum of v_Hj over those new-product consumer-periods
};

/// Market after `period` elapsed periods. Choices for period `period` have
/// not been made yet; statistics cover periods 0..period-1.
struct MarketState {
    Period period = 0;
    std::vector<std::optional<Period>> adoption_period;  ///< per individual
    std::vector<GroupCases> cases;                       ///< per group
    std::vector<std::size_t> adopters;                   ///< current adopters per group
    std::vector<Rational> adopter_payoff;                ///< sum of v_Hj over current adopters per group

    [[nodiscard]] bool has_adopted(IndividualId i) const { return adoption_period[i].has_value(); }
    [[nodiscard]] std::size_t adopter_count() const;
};

MarketState initial_state(const Instance& instance);

/// Similarity mass of the case set as seen by individual i, split by product.
struct CaseMass {
    Rational incumbent;     ///< sum of s_ij over incumbent cases
    Rational fresh;         ///< sum of s_ij over new-product cases
    Rational fresh_payoff;  ///< sum of s_ij * v over new-product cases
};

CaseMass case_mass(IndividualId i, const MarketState& state, const Instance& instance);

/// U_i^t(p) computed from the aggregated group statistics plus the self-weight
/// correction. Average mode returns 0 on the empty case set.
Rational evaluate(IndividualId i, Product p, const MarketState& state, const Instance& instance,
                  EvaluationMode mode = EvaluationMode::kSum);

/// Left minus right side of the adoption inequality:
///   sum_t Delta_{t,n}(H_i) - (1 - s_p) * sum_t Delta_{t,c}(H_i).
Rational adoption_margin(IndividualId i, const MarketState& state, const Instance& instance);

/// True iff i strictly prefers the new product; ties go to the incumbent.
bool adoption_condition(IndividualId i, const MarketState& state, const Instance& instance);

/// Per-period change of adoption_margin for a not-yet-adopted member of group
/// k while the adopter set stays as it is in `state`.
Rational stalled_margin_gain(GroupIndex k, const MarketState& state, const Instance& instance);

struct StepOptions {
    EvaluationMode mode = EvaluationMode::kSum;
    /// Re-evaluate adopters instead of relying on absorption; any adopter who
    /// would go back to the incumbent is reported as a switchback.
    bool reevaluate_adopters = false;
};

struct StepResult {
    MarketState state;
    std::vector<IndividualId> new_adopters;
    std::vector<IndividualId> switchbacks;
};

/// Choices for period state.period, then the period's cases are recorded.
/// Period 0 is forced incumbent consumption.
StepResult step(const MarketState& state, const Instance& instance, const StepOptions& options = {});

/// Appends `periods` further periods during which the adopter set is frozen.
MarketState advance_frozen(const MarketState& state, const Instance& instance, Period periods);

}  // namespace cbd
