#pragma once

#include "cbdiff/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cbd {

// ---------------------------------------------------------------------------
// Threshold path comparison
// ---------------------------------------------------------------------------

/// Which of two threshold paths is lower (covers more of the market) at a period.
enum class Lead {
    kFirst,         ///< H_a < H_b
    kEqual,         ///< both finite and equal
    kSecond,        ///< H_a > H_b
    kBothInfinite,  ///< both -inf; outside the scope of every ordering claim
};

struct LeadSegment {
    Period begin = 0;
    std::optional<Period> end;  ///< inclusive; empty = forever
    Lead lead = Lead::kEqual;
};

struct PathComparison {
    std::vector<LeadSegment> segments;
    /// Segments reach infinity (both sequences carry exact tails).
    bool complete = false;
};

/// Period-by-period ordering of two threshold sequences from `from` on. When
/// both carry tails the comparison is exact over the infinite horizon (the
/// tail difference is a ratio of quadratics in t).
PathComparison compare_threshold_paths(const ThresholdSequence& a, const ThresholdSequence& b, Period from = 2);

// ---------------------------------------------------------------------------
// Product specification comparison
// ---------------------------------------------------------------------------

enum class Verdict {
    kEqual,
    kFirstDominates,
    kSecondDominates,
    kSingleCross,
    kMultipleCrossings,
    kInconclusive,
};

/// Which branch of the speed-versus-acceleration result a pair falls in.
enum class SpeedCase { kNotApplicable, kCase1, kCase2a, kCase2b, kViolated };

enum class SpecRanking { kIdentical, kFirstAbove, kSecondAbove, kUnranked };

std::string_view verdict_name(Verdict v);
std::string_view speed_case_name(SpeedCase c);

struct ComparisonRow {
    Period period = 0;
    std::size_t adopters_a = 0;
    std::size_t adopters_b = 0;
    Threshold threshold_a = Threshold::negative_infinity();
    Threshold threshold_b = Threshold::negative_infinity();
};

struct ComparisonDiagnostics {
    SpecRanking ranking = SpecRanking::kUnranked;
    Threshold second_threshold_a = Threshold::negative_infinity();
    Threshold second_threshold_b = Threshold::negative_infinity();
    SpeedCase speed_case = SpeedCase::kNotApplicable;
    /// The case was computed but the payoffs are not group-constant.
    bool speed_case_advisory = false;
    /// Spec that is faster in period 2 (0 = a, 1 = b), when they differ.
    std::optional<int> faster_at_two;
    /// Sufficient condition for the period-2 ordering, evaluated for the faster spec.
    std::optional<bool> second_period_condition;
    /// Aspiration where the two (v_H - H)/((1-s_p)(v_L - H)) curves cross below v_L.
    std::optional<Rational> curve_crossing;
    bool both_certified = false;
    std::vector<std::string> warnings;
};

struct ComparisonReport {
    Verdict verdict = Verdict::kInconclusive;
    /// Last period at which the early leader still weakly leads (single cross).
    std::optional<Period> crossing_period;
    /// For kSingleCross: 0 if spec a leads early, 1 if spec b does.
    std::optional<int> early_leader;
    std::vector<ComparisonRow> per_period;
    std::vector<LeadSegment> lead_segments;
    ComparisonDiagnostics diagnostics;
    DiffusionTrace trace_a;
    DiffusionTrace trace_b;
};

struct CompareOptions {
    Period horizon = 1000;
};

/// Simulates both specifications to certification on a shared population and
/// uniform network. Componentwise-ranked pairs are checked for containment of
/// adopter sets (ModelInconsistencyError on violation); others are classified
/// by their threshold paths.
ComparisonReport compare_specs(const ProductSpec& a, const ProductSpec& b, const Population& population,
                               const NetworkSpec& network, const CompareOptions& options = {});

/// (v_H - H) / ((1 - s_p)(v_L - H)) for a group-constant payoff.
Rational adoption_ratio_curve(const Rational& new_payoff, const Rational& product_similarity,
                              const Rational& incumbent_payoff, const Rational& h);

// ---------------------------------------------------------------------------
// Homophily
// ---------------------------------------------------------------------------

struct HomophilySweep {
    std::vector<Rational> gammas;
    std::vector<DiffusionTrace> traces;
    std::vector<ThresholdSequence> thresholds;
};

/// One certified run per gamma (strictly ascending, each in (0, 1/s)).
/// Throws ModelInconsistencyError if some H_t decreases as gamma grows.
HomophilySweep homophily_sweep(const Population& population, const ProductSpec& product, const Rational& s,
                               const std::vector<Rational>& gammas, Period horizon = 1000);

// ---------------------------------------------------------------------------
// Group-tie networks
// ---------------------------------------------------------------------------

enum class TieHypothesis { kScaling, kMassShift };

struct NetworkRow {
    Period period = 0;
    std::size_t adopters_a = 0;
    std::size_t adopters_b = 0;
    bool contained = true;
};

struct NetworkComparisonReport {
    TieHypothesis hypothesis = TieHypothesis::kScaling;
    std::optional<Rational> scale;  ///< z for kScaling
    GroupIndex shift_from = 0;      ///< lower-aspiration group losing weight (kMassShift)
    GroupIndex shift_to = 0;        ///< higher-aspiration group gaining weight (kMassShift)
    bool both_monotone = false;
    bool payoffs_constant = false;
    /// Containment is guaranteed for this pair and was enforced.
    bool asserted = false;
    bool contained = true;
    std::optional<Period> first_violation;
    std::vector<NetworkRow> per_period;
    std::vector<std::string> warnings;
    DiffusionTrace trace_a;
    DiffusionTrace trace_b;
};

/// Compares ties_a against ties_b (which must be a scaled-up copy, or a
/// weight shift toward a higher-aspiration group). Throws std::invalid_argument
/// when neither hypothesis holds, ModelInconsistencyError when an asserted
/// containment fails.
NetworkComparisonReport network_compare(const Population& population, const ProductSpec& product,
                                        const GroupTiesNetwork& ties_a, const GroupTiesNetwork& ties_b,
                                        Period horizon = 1000);

/// Adopter sets of `a` are contained in those of `b` at every period covered
/// by both traces; returns the first violating period.
std::optional<Period> first_containment_violation(const DiffusionTrace& a, const DiffusionTrace& b);

}  // namespace cbd
