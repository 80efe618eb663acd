#include "cbdiff/market.hpp"

#include <numeric>

namespace cbd {

std::size_t MarketState::adopter_count() const {
    return std::accumulate(adopters.begin(), adopters.end(), std::size_t{0});
}

MarketState initial_state(const Instance& instance) {
    MarketState state;
    state.adoption_period.assign(instance.individual_count(), std::nullopt);
    state.cases.assign(instance.group_count(), GroupCases{Integer{0}, Integer{0}, Rational{0}});
    state.adopters.assign(instance.group_count(), 0);
    state.adopter_payoff.assign(instance.group_count(), Rational{0});
    return state;
}

CaseMass case_mass(IndividualId i, const MarketState& state, const Instance& instance) {
    const GroupIndex own = instance.group_of(i);
    CaseMass mass{Rational{0}, Rational{0}, Rational{0}};
    for (GroupIndex k = 0; k < instance.group_count(); ++k) {
        const Rational& w = instance.cross_weight(own, k);
        const GroupCases& c = state.cases[k];
        mass.incumbent += w * Rational{c.incumbent_periods};
        mass.fresh += w * Rational{c.new_periods};
        mass.fresh_payoff += w * c.new_payoff_mass;
    }

    // Own cases carry weight 1, not the cross-individual weight.
    const Integer t = to_integer(state.period);
    Integer own_new = 0;
    if (const auto& adopted = state.adoption_period[i]; adopted && *adopted < state.period) {
        own_new = t - to_integer(*adopted);
    }
    const Integer own_incumbent = t - own_new;
    const Rational correction = Rational{1} - instance.cross_weight(own, own);
    mass.incumbent += correction * Rational{own_incumbent};
    mass.fresh += correction * Rational{own_new};
    mass.fresh_payoff += correction * Rational{own_new} * instance.new_payoff(i);
    return mass;
}

Rational evaluate(IndividualId i, Product p, const MarketState& state, const Instance& instance,
                  EvaluationMode mode) {
    const CaseMass mass = case_mass(i, state, instance);
    const Rational& h = instance.aspiration_of(i);
    const Rational incumbent_part = mass.incumbent * (instance.incumbent_payoff() - h);

    Rational value;
    if (p == Product::kIncumbent) {
        value = incumbent_part;
    } else {
        value = instance.product_similarity() * incumbent_part + (mass.fresh_payoff - h * mass.fresh);
    }
    if (mode == EvaluationMode::kAverage) {
        const Rational total = mass.incumbent + mass.fresh;
        if (total == 0) return Rational{0};
        value /= total;
    }
    return value;
}

Rational adoption_margin(IndividualId i, const MarketState& state, const Instance& instance) {
    const CaseMass mass = case_mass(i, state, instance);
    const Rational& h = instance.aspiration_of(i);
    const Rational gain_new = mass.fresh_payoff - h * mass.fresh;
    const Rational gain_incumbent = mass.incumbent * (instance.incumbent_payoff() - h);
    return gain_new - (Rational{1} - instance.product_similarity()) * gain_incumbent;
}

bool adoption_condition(IndividualId i, const MarketState& state, const Instance& instance) {
    return adoption_margin(i, state, instance) > 0;
}

Rational stalled_margin_gain(GroupIndex k, const MarketState& state, const Instance& instance) {
    Rational fresh{0};
    Rational fresh_payoff{0};
    Rational incumbent = Rational{1} - instance.cross_weight(k, k);  // own incumbent case
    for (GroupIndex m = 0; m < instance.group_count(); ++m) {
        const Rational& w = instance.cross_weight(k, m);
        const auto adopters = static_cast<unsigned long>(state.adopters[m]);
        fresh += w * adopters;
        fresh_payoff += w * state.adopter_payoff[m];
        incumbent += w * static_cast<unsigned long>(instance.group_size(m) - state.adopters[m]);
    }
    const Rational& h = instance.aspiration(k);
    return (fresh_payoff - h * fresh) -
           (Rational{1} - instance.product_similarity()) * incumbent * (instance.incumbent_payoff() - h);
}

namespace {

bool prefers_new(IndividualId i, const MarketState& state, const Instance& instance, EvaluationMode mode) {
    if (mode == EvaluationMode::kSum) return adoption_condition(i, state, instance);
    return evaluate(i, Product::kNew, state, instance, mode) >
           evaluate(i, Product::kIncumbent, state, instance, mode);
}

void record_period(MarketState& next, const Instance& instance, Period periods) {
    const Integer span = to_integer(periods);
    for (GroupIndex k = 0; k < instance.group_count(); ++k) {
        GroupCases& c = next.cases[k];
        const auto adopters = static_cast<unsigned long>(next.adopters[k]);
        c.new_periods += span * adopters;
        c.incumbent_periods += span * static_cast<unsigned long>(instance.group_size(k) - next.adopters[k]);
        c.new_payoff_mass += Rational{span} * next.adopter_payoff[k];
    }
}

}  // namespace

StepResult step(const MarketState& state, const Instance& instance, const StepOptions& options) {
    StepResult result{state, {}, {}};
    MarketState& next = result.state;

    if (state.period > 0) {
        // A not-yet-adopted individual's view depends only on its group, so
        // the decision is made once per group.
        std::vector<std::optional<bool>> group_decision(instance.group_count());
        for (IndividualId i = 0; i < instance.individual_count(); ++i) {
            const GroupIndex k = instance.group_of(i);
            if (state.has_adopted(i)) {
                if (options.reevaluate_adopters && !prefers_new(i, state, instance, options.mode)) {
                    result.switchbacks.push_back(i);
                }
                continue;
            }
            auto& decision = group_decision[k];
            if (!decision) decision = prefers_new(i, state, instance, options.mode);
            if (*decision) result.new_adopters.push_back(i);
        }
        for (IndividualId i : result.new_adopters) {
            const GroupIndex k = instance.group_of(i);
            next.adoption_period[i] = state.period;
            next.adopters[k] += 1;
            next.adopter_payoff[k] += instance.new_payoff(i);
        }
    }

    record_period(next, instance, 1);
    next.period = state.period + 1;
    return result;
}

MarketState advance_frozen(const MarketState& state, const Instance& instance, Period periods) {
    MarketState next = state;
    record_period(next, instance, periods);
    next.period = state.period + periods;
    return next;
}

}  // namespace cbd
