#include "cbdiff/dynamics.hpp"

#include "cbdiff/errors.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace cbd {

namespace {

std::optional<IndividualId> first_waiting_member(const MarketState& state, const Instance& instance,
                                                 GroupIndex k) {
    if (state.adopters[k] == instance.group_size(k)) return std::nullopt;
    const IndividualId begin = instance.group_begin(k);
    for (IndividualId i = begin; i < begin + instance.group_size(k); ++i) {
        if (!state.has_adopted(i)) return i;
    }
    return std::nullopt;
}

bool anyone_pending(const MarketState& state, const Instance& instance) {
    for (GroupIndex k = 0; k < instance.group_count(); ++k) {
        if (const auto i = first_waiting_member(state, instance, k); i && adoption_condition(*i, state, instance)) {
            return true;
        }
    }
    return false;
}

bool everyone_adopted(const MarketState& state, const Instance& instance) {
    return state.adopter_count() == instance.individual_count();
}

Period to_period(const Integer& value) {
    if (value < 0 || value > Integer{std::numeric_limits<Period>::max()}) {
        throw std::overflow_error("adoption period exceeds the representable range");
    }
    return static_cast<Period>(value.get_ui());
}

}  // namespace

Integer periods_until_positive(const Rational& deficit, const Rational& gain) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), Integer{deficit.get_num() * gain.get_den()}.get_mpz_t(),
               Integer{deficit.get_den() * gain.get_num()}.get_mpz_t());
    return q + 1;
}

std::optional<AdoptionEvent> fast_forward_stall(const MarketState& state, const Instance& instance) {
    std::optional<AdoptionEvent> earliest;
    for (GroupIndex k = 0; k < instance.group_count(); ++k) {
        const auto member = first_waiting_member(state, instance, k);
        if (!member) continue;
        const Rational margin = adoption_margin(*member, state, instance);
        if (margin > 0) throw std::logic_error("fast_forward_stall called on a state that is not stalled");
        const Rational gain = stalled_margin_gain(k, state, instance);
        if (gain <= 0) continue;
        const Integer wait = periods_until_positive(Rational{-margin}, gain);
        const Period when = to_period(to_integer(state.period) + wait);
        if (!earliest || when < earliest->period) {
            earliest = AdoptionEvent{when, {k}};
        } else if (when == earliest->period) {
            earliest->groups.push_back(k);
        }
    }
    return earliest;
}

DiffusionTrace simulate(const Instance& instance, const SimulationOptions& options) {
    if (options.horizon == 0) throw std::invalid_argument("horizon must be at least 1");

    const StepOptions step_options{options.mode, options.reevaluate_adopters};
    DiffusionTrace trace;
    trace.horizon = options.horizon;

    MarketState state = step(initial_state(instance), instance, step_options).state;
    bool certified = false;

    if (!options.fast_forward) {
        while (state.period <= options.horizon) {
            StepResult r = step(state, instance, step_options);
            trace.switchbacks += r.switchbacks.size();
            state = std::move(r.state);
        }
        certified = everyone_adopted(state, instance) ||
                    (!anyone_pending(state, instance) && !fast_forward_stall(state, instance));
    } else {
        while (true) {
            if (everyone_adopted(state, instance)) {
                certified = true;
                break;
            }
            if (!anyone_pending(state, instance)) {
                const auto event = fast_forward_stall(state, instance);
                if (!event) {
                    certified = true;
                    break;
                }
                state = advance_frozen(state, instance, event->period - state.period);
            }
            StepResult r = step(state, instance, step_options);
            trace.switchbacks += r.switchbacks.size();
            state = std::move(r.state);
        }
    }

    trace.adoption_period = state.adoption_period;
    finalize_trace(trace, instance, certified);
    return trace;
}

Threshold ThresholdTail::at(Period t) const {
    if (t < start) throw std::out_of_range("threshold tail queried before its start");
    const Integer tau = to_integer(t - start);
    const Rational den = den0 + den1 * Rational{tau};
    if (den <= 0) return Threshold::negative_infinity();
    return Threshold::at(Rational{(num0 + num1 * Rational{tau}) / den});
}

Threshold ThresholdSequence::at(Period t) const {
    if (t == 0) throw std::out_of_range("thresholds start at period 1");
    if (t <= values.size()) return values[t - 1];
    if (tail) return tail->at(t);
    throw std::out_of_range("period " + std::to_string(t) + " beyond the recorded thresholds");
}

namespace {

/// Per-period incumbent-side similarity mass seen by a not-yet-adopted
/// individual, given that `adopters` individuals consume the new product.
Rational incumbent_mass_per_period(const Instance& instance, std::size_t adopters) {
    const auto n = static_cast<long>(instance.individual_count());
    const auto a = static_cast<long>(adopters);
    if (const auto* uni = std::get_if<UniformNetwork>(&instance.network())) {
        return uni->s * (n - a - 1) + 1;
    }
    const auto& hom = std::get<HomophilyNetwork>(instance.network());
    const auto group = static_cast<long>(instance.group_size(0));
    return hom.s * (n - a - group) + hom.gamma * hom.s * (group - 1) + 1;
}

const Rational& cross_tie(const Instance& instance) {
    if (const auto* uni = std::get_if<UniformNetwork>(&instance.network())) return uni->s;
    return std::get<HomophilyNetwork>(instance.network()).s;
}

ThresholdSequence empirical_thresholds(const DiffusionTrace& trace, const Instance& instance) {
    if (!is_aspiration_monotone(trace, instance)) {
        throw ThresholdsUndefinedError(
            "thresholds undefined: group-tie diffusion is not aspiration-monotone on this trace");
    }
    ThresholdSequence seq;
    seq.empirical = true;
    const auto cutoff_at = [&](Period t) {
        for (GroupIndex k = 0; k < instance.group_count(); ++k) {
            if (!trace.adopted_by(instance.group_begin(k), t)) return Threshold::at(instance.aspiration(k));
        }
        return Threshold::negative_infinity();
    };
    const Period last = trace.last_adoption().value_or(0);
    const Period length = std::max<Period>(trace.horizon, last);
    for (Period t = 1; t <= length; ++t) seq.values.push_back(cutoff_at(t));
    if (trace.terminal.certified) {
        const Threshold final = cutoff_at(length);
        ThresholdTail tail;
        tail.start = length + 1;
        tail.num0 = final.is_finite() ? final.value() : Rational{0};
        tail.num1 = 0;
        tail.den0 = final.is_finite() ? 1 : 0;
        tail.den1 = 0;
        seq.tail = tail;
    }
    return seq;
}

}  // namespace

ThresholdSequence threshold_sequence(const DiffusionTrace& trace, const Instance& instance) {
    if (std::holds_alternative<GroupTiesNetwork>(instance.network())) {
        return empirical_thresholds(trace, instance);
    }

    const Rational& v_low = instance.incumbent_payoff();
    const Rational& s = cross_tie(instance);
    const Rational keep = Rational{1} - instance.product_similarity();

    const Period last = trace.last_adoption().value_or(0);
    const Period length = std::max<Period>(trace.horizon, last);

    // New adopters and their payoff per period, up to `length`.
    std::vector<std::size_t> joined(length + 1, 0);
    std::vector<Rational> joined_payoff(length + 1, Rational{0});
    for (IndividualId i = 0; i < trace.individual_count(); ++i) {
        const auto& p = trace.adoption_period[i];
        if (p && *p <= length) {
            joined[*p] += 1;
            joined_payoff[*p] += instance.new_payoff(i);
        }
    }

    ThresholdSequence seq;
    seq.values.reserve(length);
    Rational adopter_mass{0};     // sum over t'<t of D_n^{t'}
    Rational adopter_payoff{0};   // sum over t'<t of payoffs of D_n^{t'}
    Rational incumbent_mass{0};   // sum over t'<t of per-period incumbent mass
    std::size_t current = 0;      // D_n^{t-1}
    Rational current_payoff{0};

    const auto solve = [&](const Rational& a, const Rational& v, const Rational& b) {
        const Rational den = keep * b - s * a;
        if (den <= 0) return Threshold::negative_infinity();
        return Threshold::at(Rational{(keep * b * v_low - s * v) / den});
    };

    for (Period t = 1; t <= length; ++t) {
        // Fold period t-1 into the sums.
        adopter_mass += static_cast<unsigned long>(current);
        adopter_payoff += current_payoff;
        incumbent_mass += incumbent_mass_per_period(instance, current);

        const Threshold h = current == instance.individual_count()
                                ? Threshold::negative_infinity()
                                : solve(adopter_mass, adopter_payoff, incumbent_mass);
        seq.values.push_back(h);

        current += joined[t];
        current_payoff += joined_payoff[t];

        for (GroupIndex k = 0; k < instance.group_count(); ++k) {
            const bool adopted = trace.adopted_by(instance.group_begin(k), t);
            if (adopted != h.admits(instance.aspiration(k))) {
                throw ModelInconsistencyError("threshold " + h.to_string() + " at period " + std::to_string(t) +
                                              " disagrees with the adoption of group " + std::to_string(k + 1));
            }
        }
    }

    if (trace.terminal.certified) {
        // From start = length + 1 the adopter set is final; every sum grows linearly.
        const Rational a0 = adopter_mass + static_cast<unsigned long>(current);
        const Rational v0 = adopter_payoff + current_payoff;
        const Rational b0 = incumbent_mass + incumbent_mass_per_period(instance, current);
        const Rational a1 = static_cast<unsigned long>(current);
        const Rational v1 = current_payoff;
        const Rational b1 = incumbent_mass_per_period(instance, current);
        ThresholdTail tail;
        tail.start = length + 1;
        if (current == instance.individual_count()) {
            seq.tail = tail;  // zero denominator: -inf throughout
            return seq;
        }
        tail.num0 = keep * b0 * v_low - s * v0;
        tail.num1 = keep * b1 * v_low - s * v1;
        tail.den0 = keep * b0 - s * a0;
        tail.den1 = keep * b1 - s * a1;
        seq.tail = tail;
    }
    return seq;
}

}  // namespace cbd
