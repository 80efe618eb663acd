#pragma once

#include "cbdiff/market.hpp"
#include "cbdiff/trace.hpp"

#include <optional>
#include <vector>

namespace cbd {

struct SimulationOptions {
    Period horizon = 1000;
    /// Skip stalled stretches analytically. Adoption events past the horizon
    /// are still scheduled so the run ends certified.
    bool fast_forward = true;
    EvaluationMode mode = EvaluationMode::kSum;
    bool reevaluate_adopters = false;
};

/// Throws std::invalid_argument when horizon is 0.
DiffusionTrace simulate(const Instance& instance, const SimulationOptions& options = {});

struct AdoptionEvent {
    Period period = 0;
    std::vector<GroupIndex> groups;
};

/// Next adoption event of a stalled market (nobody would adopt at
/// state.period), or nullopt if no group can ever gain under the current
/// adopter set. Throws std::logic_error when the state is not stalled.
std::optional<AdoptionEvent> fast_forward_stall(const MarketState& state, const Instance& instance);

/// Periods until a margin of -deficit turns strictly positive at `gain` per
/// period: floor(deficit / gain) + 1. Requires deficit >= 0 and gain > 0.
Integer periods_until_positive(const Rational& deficit, const Rational& gain);

/// H_t = (num0 + num1*(t-start)) / (den0 + den1*(t-start)) for t >= start;
/// -inf wherever the denominator is <= 0.
struct ThresholdTail {
    Period start = 1;
    Rational num0, num1, den0, den1;

    [[nodiscard]] Threshold at(Period t) const;
};

struct ThresholdSequence {
    /// values[t-1] = H_t for t = 1..values.size().
    std::vector<Threshold> values;
    /// Read off an aspiration-monotone trace instead of solved analytically.
    bool empirical = false;
    /// Exact continuation on certified traces, valid from tail->start on.
    std::optional<ThresholdTail> tail;

    /// H_t from the explicit values, else the tail. Throws std::out_of_range
    /// past the explicit range of an uncertified trace.
    [[nodiscard]] Threshold at(Period t) const;
    [[nodiscard]] Period explicit_length() const { return values.size(); }
};

/// Per-period thresholds. Uniform and homophily networks solve the binding
/// adoption condition (affine in H) exactly; group-tie networks get empirical
/// thresholds when the trace is aspiration-monotone and ThresholdsUndefinedError
/// otherwise. Throws ModelInconsistencyError if an analytic threshold
/// disagrees with the trace.
ThresholdSequence threshold_sequence(const DiffusionTrace& trace, const Instance& instance);

}  // namespace cbd
