#include "cbdiff/comparative.hpp"

#include "cbdiff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cbd {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kEqual: return "equal";
        case Verdict::kFirstDominates: return "A dominates B";
        case Verdict::kSecondDominates: return "B dominates A";
        case Verdict::kSingleCross: return "single-cross";
        case Verdict::kMultipleCrossings: return "multiple crossings";
        case Verdict::kInconclusive: return "inconclusive at horizon";
    }
    return "unknown";
}

std::string_view speed_case_name(SpeedCase c) {
    switch (c) {
        case SpeedCase::kNotApplicable: return "n/a";
        case SpeedCase::kCase1: return "1";
        case SpeedCase::kCase2a: return "2a";
        case SpeedCase::kCase2b: return "2b";
        case SpeedCase::kViolated: return "violated";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Threshold paths
// ---------------------------------------------------------------------------

namespace {

Lead lead_of(const Threshold& a, const Threshold& b) {
    if (!a.is_finite() && !b.is_finite()) return Lead::kBothInfinite;
    const auto order = a <=> b;
    if (order < 0) return Lead::kFirst;
    if (order > 0) return Lead::kSecond;
    return Lead::kEqual;
}

void push_lead(std::vector<LeadSegment>& segments, Period t, Lead lead) {
    if (!segments.empty() && segments.back().lead == lead && segments.back().end &&
        *segments.back().end + 1 == t) {
        segments.back().end = t;
        return;
    }
    segments.push_back(LeadSegment{t, t, lead});
}

/// Tail coefficients re-based so that u = t - origin.
struct Affine {
    Rational c0, c1;
    [[nodiscard]] Rational at(const Rational& u) const { return c0 + c1 * u; }
};

struct RebasedTail {
    Affine num, den;
};

RebasedTail rebase(const ThresholdTail& tail, Period origin) {
    const Rational shift{to_integer(origin - tail.start)};
    return RebasedTail{Affine{tail.num0 + tail.num1 * shift, tail.num1},
                       Affine{tail.den0 + tail.den1 * shift, tail.den1}};
}

Lead tail_lead(const RebasedTail& a, const RebasedTail& b, const Rational& u) {
    const Rational da = a.den.at(u);
    const Rational db = b.den.at(u);
    const bool fa = da > 0;
    const bool fb = db > 0;
    if (!fa && !fb) return Lead::kBothInfinite;
    if (!fa) return Lead::kFirst;
    if (!fb) return Lead::kSecond;
    const int sign = sgn(Rational{a.num.at(u) * db - b.num.at(u) * da});
    return sign < 0 ? Lead::kFirst : (sign > 0 ? Lead::kSecond : Lead::kEqual);
}

void add_root_neighbourhood(std::set<Integer>& points, long double root) {
    if (!std::isfinite(root) || root < -2.0L) return;
    constexpr long double kCap = 9.0e18L;
    root = std::min(root, kCap);
    const auto lo = static_cast<long long>(std::floor(root)) - 1;
    const auto hi = static_cast<long long>(std::ceil(root)) + 2;
    for (long long u = std::max(0LL, lo); u <= hi; ++u) points.insert(Integer{static_cast<long>(u)});
}

long double to_ld(const Rational& r) { return static_cast<long double>(r.get_d()); }

void add_linear_root(std::set<Integer>& points, const Affine& f) {
    if (f.c1 == 0) return;
    add_root_neighbourhood(points, -to_ld(f.c0) / to_ld(f.c1));
}

/// Appends exact lead segments for t = origin + u, u >= 0, to infinity.
void append_tail_segments(std::vector<LeadSegment>& segments, const RebasedTail& a, const RebasedTail& b,
                          Period origin) {
    std::set<Integer> points{Integer{0}};
    add_linear_root(points, a.den);
    add_linear_root(points, b.den);
    // Q(u) = num_a * den_b - num_b * den_a.
    const Rational q2 = a.num.c1 * b.den.c1 - b.num.c1 * a.den.c1;
    const Rational q1 = a.num.c0 * b.den.c1 + a.num.c1 * b.den.c0 - b.num.c0 * a.den.c1 - b.num.c1 * a.den.c0;
    const Rational q0 = a.num.c0 * b.den.c0 - b.num.c0 * a.den.c0;
    if (q2 != 0) {
        const long double disc = to_ld(q1) * to_ld(q1) - 4.0L * to_ld(q2) * to_ld(q0);
        if (disc >= 0) {
            const long double root = std::sqrt(disc);
            add_root_neighbourhood(points, (-to_ld(q1) - root) / (2.0L * to_ld(q2)));
            add_root_neighbourhood(points, (-to_ld(q1) + root) / (2.0L * to_ld(q2)));
        }
    } else if (q1 != 0) {
        add_root_neighbourhood(points, -to_ld(q0) / to_ld(q1));
    }

    const auto period_of = [origin](const Integer& u) { return origin + static_cast<Period>(u.get_ui()); };
    const auto lead_at = [&](const Integer& u) { return tail_lead(a, b, Rational{u}); };

    // Adds [lo, hi] where the lead is constant, bisecting if the ends disagree.
    const auto fill = [&](auto&& self, const Integer& lo, const Integer& hi) -> void {
        if (lo > hi) return;
        const Lead first = lead_at(lo);
        const Lead last = lead_at(hi);
        if (first == last || hi - lo <= 1) {
            if (first == last) {
                for (const auto& seg : {LeadSegment{period_of(lo), period_of(hi), first}}) {
                    if (!segments.empty() && segments.back().lead == seg.lead && segments.back().end &&
                        *segments.back().end + 1 == seg.begin) {
                        segments.back().end = seg.end;
                    } else {
                        segments.push_back(seg);
                    }
                }
            } else {
                push_lead(segments, period_of(lo), first);
                push_lead(segments, period_of(hi), last);
            }
            return;
        }
        const Integer mid = (lo + hi) / 2;
        self(self, lo, mid);
        self(self, mid + 1, hi);
    };

    const std::vector<Integer> sorted(points.begin(), points.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        push_lead(segments, period_of(sorted[i]), lead_at(sorted[i]));
        if (i + 1 < sorted.size() && sorted[i + 1] > sorted[i] + 1) {
            fill(fill, sorted[i] + 1, sorted[i + 1] - 1);
        }
    }
    const Integer beyond = sorted.back() + 1;
    const Lead forever = lead_at(beyond);
    const Period start = period_of(beyond);
    if (!segments.empty() && segments.back().lead == forever && segments.back().end &&
        *segments.back().end + 1 == start) {
        segments.back().end.reset();
    } else {
        segments.push_back(LeadSegment{start, std::nullopt, forever});
    }
}

}  // namespace

PathComparison compare_threshold_paths(const ThresholdSequence& a, const ThresholdSequence& b, Period from) {
    PathComparison result;
    const Period explicit_end = std::max(a.explicit_length(), b.explicit_length());
    const bool both_tails = a.tail.has_value() && b.tail.has_value();
    const Period covered = both_tails ? explicit_end
                                      : std::min(a.tail ? explicit_end : a.explicit_length(),
                                                 b.tail ? explicit_end : b.explicit_length());
    for (Period t = from; t <= covered; ++t) push_lead(result.segments, t, lead_of(a.at(t), b.at(t)));
    if (both_tails) {
        const Period origin = std::max(explicit_end + 1, from);
        append_tail_segments(result.segments, rebase(*a.tail, origin), rebase(*b.tail, origin), origin);
        result.complete = true;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Specification comparison
// ---------------------------------------------------------------------------

Rational adoption_ratio_curve(const Rational& new_payoff, const Rational& product_similarity,
                              const Rational& incumbent_payoff, const Rational& h) {
    return (new_payoff - h) / ((Rational{1} - product_similarity) * (incumbent_payoff - h));
}

std::optional<Period> first_containment_violation(const DiffusionTrace& a, const DiffusionTrace& b) {
    const bool unbounded = a.terminal.certified && b.terminal.certified;
    const Period limit = std::min(a.terminal.certified ? std::max(a.horizon, a.last_adoption().value_or(0)) : a.horizon,
                                  b.terminal.certified ? std::max(b.horizon, b.last_adoption().value_or(0)) : b.horizon);
    std::optional<Period> first;
    for (IndividualId i = 0; i < a.individual_count(); ++i) {
        const auto& pa = a.adoption_period[i];
        if (!pa || (!unbounded && *pa > limit)) continue;
        const auto& pb = b.adoption_period[i];
        if (!pb || *pb > *pa) {
            if (!first || *pa < *first) first = pa;
        }
    }
    return first;
}

namespace {

SpecRanking rank_specs(const ProductSpec& a, const ProductSpec& b) {
    bool a_ge = a.product_similarity >= b.product_similarity;
    bool b_ge = b.product_similarity >= a.product_similarity;
    for (std::size_t i = 0; i < a.new_payoffs.size(); ++i) {
        a_ge = a_ge && a.new_payoffs[i] >= b.new_payoffs[i];
        b_ge = b_ge && b.new_payoffs[i] >= a.new_payoffs[i];
    }
    if (a_ge && b_ge) return SpecRanking::kIdentical;
    if (a_ge) return SpecRanking::kFirstAbove;
    if (b_ge) return SpecRanking::kSecondAbove;
    return SpecRanking::kUnranked;
}

bool payoffs_constant(const ProductSpec& spec) {
    return std::all_of(spec.new_payoffs.begin(), spec.new_payoffs.end(),
                       [&](const Rational& v) { return v == spec.new_payoffs.front(); });
}

std::vector<LeadSegment> in_scope(const std::vector<LeadSegment>& segments, Period from) {
    std::vector<LeadSegment> out;
    for (const auto& seg : segments) {
        if (seg.lead == Lead::kBothInfinite) continue;
        if (seg.end && *seg.end < from) continue;
        LeadSegment s = seg;
        s.begin = std::max(s.begin, from);
        out.push_back(s);
    }
    return out;
}

bool any_lead(const std::vector<LeadSegment>& segs, Lead lead) {
    return std::any_of(segs.begin(), segs.end(), [lead](const LeadSegment& s) { return s.lead == lead; });
}

/// If `early` (with ties) leads up to some period and `late` strictly leads
/// ever after, returns that last period.
std::optional<Period> single_crossing(const std::vector<LeadSegment>& segs, Lead early, Lead late) {
    const auto first_late = std::find_if(segs.begin(), segs.end(), [late](const LeadSegment& s) { return s.lead == late; });
    if (first_late == segs.end()) return std::nullopt;
    if (!std::all_of(first_late, segs.end(), [late](const LeadSegment& s) { return s.lead == late; })) {
        return std::nullopt;
    }
    if (!std::any_of(segs.begin(), first_late, [early](const LeadSegment& s) { return s.lead == early; })) {
        return std::nullopt;
    }
    return first_late->begin - 1;
}

Lead flip(Lead lead) {
    if (lead == Lead::kFirst) return Lead::kSecond;
    if (lead == Lead::kSecond) return Lead::kFirst;
    return lead;
}

SpeedCase classify_speed_case(const std::vector<LeadSegment>& segments, bool faster_is_a, bool faster_has_higher_sp,
                              bool tied_at_two) {
    // Leads from the point of view of the product that is faster in period 2.
    std::vector<LeadSegment> from_three;
    for (auto seg : in_scope(segments, 3)) {
        if (!faster_is_a) seg.lead = flip(seg.lead);
        from_three.push_back(seg);
    }
    if (faster_has_higher_sp) {
        const bool ok = tied_at_two ? !any_lead(from_three, Lead::kSecond)
                                    : std::all_of(from_three.begin(), from_three.end(),
                                                  [](const LeadSegment& s) { return s.lead == Lead::kFirst; });
        return ok ? SpeedCase::kCase1 : SpeedCase::kViolated;
    }
    if (!any_lead(from_three, Lead::kSecond)) return SpeedCase::kCase2a;
    const auto first_late = std::find_if(from_three.begin(), from_three.end(),
                                         [](const LeadSegment& s) { return s.lead == Lead::kSecond; });
    const bool stays = std::all_of(first_late, from_three.end(),
                                   [](const LeadSegment& s) { return s.lead == Lead::kSecond; });
    return stays ? SpeedCase::kCase2b : SpeedCase::kViolated;
}

}  // namespace

ComparisonReport compare_specs(const ProductSpec& a, const ProductSpec& b, const Population& population,
                               const NetworkSpec& network, const CompareOptions& options) {
    if (!std::holds_alternative<UniformNetwork>(network)) {
        throw std::invalid_argument("compare_specs requires a uniform network");
    }
    if (a.new_payoffs.size() != b.new_payoffs.size()) {
        throw std::invalid_argument("specifications describe populations of different sizes");
    }
    const Instance inst_a = validate_instance(population, a, network);
    const Instance inst_b = validate_instance(population, b, network);

    ComparisonReport report;
    SimulationOptions sim;
    sim.horizon = options.horizon;
    report.trace_a = simulate(inst_a, sim);
    report.trace_b = simulate(inst_b, sim);
    const ThresholdSequence th_a = threshold_sequence(report.trace_a, inst_a);
    const ThresholdSequence th_b = threshold_sequence(report.trace_b, inst_b);

    ComparisonDiagnostics& diag = report.diagnostics;
    diag.ranking = rank_specs(a, b);
    diag.both_certified = report.trace_a.terminal.certified && report.trace_b.terminal.certified;
    diag.second_threshold_a = th_a.at(2);
    diag.second_threshold_b = th_b.at(2);

    const Period table_end = std::max<Period>({th_a.explicit_length(), th_b.explicit_length(), 2});
    for (Period t = 1; t <= table_end; ++t) {
        report.per_period.push_back(ComparisonRow{t, report.trace_a.adopters_at(t), report.trace_b.adopters_at(t),
                                                  th_a.at(t), th_b.at(t)});
    }

    const PathComparison paths = compare_threshold_paths(th_a, th_b, 2);
    report.lead_segments = paths.segments;
    const auto scope = in_scope(paths.segments, 2);

    switch (diag.ranking) {
        case SpecRanking::kIdentical:
            report.verdict = Verdict::kEqual;
            break;
        case SpecRanking::kFirstAbove:
        case SpecRanking::kSecondAbove: {
            const bool a_above = diag.ranking == SpecRanking::kFirstAbove;
            const auto violation = a_above ? first_containment_violation(report.trace_b, report.trace_a)
                                           : first_containment_violation(report.trace_a, report.trace_b);
            if (violation) {
                throw ModelInconsistencyError("dominance violated at period " + std::to_string(*violation) +
                                              ": the higher specification covers less of the market");
            }
            report.verdict = a_above ? Verdict::kFirstDominates : Verdict::kSecondDominates;
            break;
        }
        case SpecRanking::kUnranked: {
            if (!any_lead(scope, Lead::kFirst) && !any_lead(scope, Lead::kSecond)) {
                report.verdict = Verdict::kEqual;
            } else if (!any_lead(scope, Lead::kSecond)) {
                report.verdict = Verdict::kFirstDominates;
            } else if (!any_lead(scope, Lead::kFirst)) {
                report.verdict = Verdict::kSecondDominates;
            } else if (const auto t = single_crossing(scope, Lead::kFirst, Lead::kSecond)) {
                report.verdict = Verdict::kSingleCross;
                report.crossing_period = t;
                report.early_leader = 0;
            } else if (const auto t2 = single_crossing(scope, Lead::kSecond, Lead::kFirst)) {
                report.verdict = Verdict::kSingleCross;
                report.crossing_period = t2;
                report.early_leader = 1;
            } else {
                report.verdict = Verdict::kMultipleCrossings;
            }
            if (!paths.complete && report.verdict != Verdict::kMultipleCrossings) {
                report.verdict = Verdict::kInconclusive;
                diag.warnings.emplace_back("threshold paths not certified; ordering beyond the horizon unknown");
            }
            break;
        }
    }

    // Speed-versus-acceleration diagnostics.
    const bool constant_a = payoffs_constant(a);
    const bool constant_b = payoffs_constant(b);
    const Rational& va = a.new_payoffs.front();
    const Rational& vb = b.new_payoffs.front();
    const Rational& sa = a.product_similarity;
    const Rational& sb = b.product_similarity;
    if (sa != sb && constant_a && constant_b) {
        const Rational cross = (vb * (Rational{1} - sa) - va * (Rational{1} - sb)) / (sb - sa);
        if (cross < inst_a.incumbent_payoff()) diag.curve_crossing = cross;
    }
    const bool trade_off = (vb - va) * (sb - sa) < 0 ||
                           (!constant_a || !constant_b ? diag.ranking == SpecRanking::kUnranked : false);
    if (trade_off && paths.complete) {
        if (!constant_a || !constant_b) {
            diag.speed_case_advisory = true;
            diag.warnings.emplace_back("payoffs are not group-constant; speed/acceleration case is advisory only");
        }
        const auto order = diag.second_threshold_a <=> diag.second_threshold_b;
        const bool tied = order == 0;
        const bool faster_is_a = tied ? sa > sb : order < 0;
        diag.faster_at_two = tied ? std::nullopt : std::optional<int>(faster_is_a ? 0 : 1);
        const Rational& faster_sp = faster_is_a ? sa : sb;
        const Rational& slower_sp = faster_is_a ? sb : sa;
        diag.speed_case = classify_speed_case(paths.segments, faster_is_a, faster_sp > slower_sp, tied);

        // Sufficient condition for the period-2 ordering.
        const Threshold& slower_h2 = faster_is_a ? diag.second_threshold_b : diag.second_threshold_a;
        const auto* uniform = std::get_if<UniformNetwork>(&network);
        if (!tied && slower_h2.is_finite() && slower_h2.value() < inst_a.incumbent_payoff() && uniform->s > 0) {
            const Rational& vf = faster_is_a ? va : vb;
            const auto n = static_cast<long>(population.total());
            const auto n1 = static_cast<long>(population.groups.front().size);
            const Rational rhs = (uniform->s * (2 * n - n1 - 2) + 2) / (uniform->s * n1);
            diag.second_period_condition =
                adoption_ratio_curve(vf, faster_sp, inst_a.incumbent_payoff(), slower_h2.value()) > rhs;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Homophily
// ---------------------------------------------------------------------------

HomophilySweep homophily_sweep(const Population& population, const ProductSpec& product, const Rational& s,
                               const std::vector<Rational>& gammas, Period horizon) {
    if (gammas.empty()) throw std::invalid_argument("gamma list is empty");
    for (std::size_t i = 1; i < gammas.size(); ++i) {
        if (!(gammas[i - 1] < gammas[i])) throw std::invalid_argument("gamma values must be strictly ascending");
    }

    HomophilySweep sweep;
    SimulationOptions sim;
    sim.horizon = horizon;
    std::vector<Instance> instances;
    for (const Rational& gamma : gammas) {
        instances.push_back(validate_instance(population, product, HomophilyNetwork{s, gamma}));
        sweep.gammas.push_back(gamma);
        sweep.traces.push_back(simulate(instances.back(), sim));
        sweep.thresholds.push_back(threshold_sequence(sweep.traces.back(), instances.back()));
    }

    for (std::size_t i = 1; i < gammas.size(); ++i) {
        const PathComparison cmp = compare_threshold_paths(sweep.thresholds[i - 1], sweep.thresholds[i], 2);
        for (const auto& seg : cmp.segments) {
            if (seg.lead == Lead::kSecond) {
                throw ModelInconsistencyError("threshold at period " + std::to_string(seg.begin) +
                                              " decreased when gamma rose to " + format_rational(gammas[i]));
            }
        }
        if (const auto v = first_containment_violation(sweep.traces[i], sweep.traces[i - 1])) {
            throw ModelInconsistencyError("adoption earlier under gamma " + format_rational(gammas[i]) +
                                          " than under " + format_rational(gammas[i - 1]) + " at period " +
                                          std::to_string(*v));
        }
    }
    return sweep;
}

// ---------------------------------------------------------------------------
// Group ties
// ---------------------------------------------------------------------------

NetworkComparisonReport network_compare(const Population& population, const ProductSpec& product,
                                        const GroupTiesNetwork& ties_a, const GroupTiesNetwork& ties_b,
                                        Period horizon) {
    const std::size_t g = population.group_count();
    if (ties_a.ties.size() != g || ties_b.ties.size() != g) {
        throw std::invalid_argument("tie vectors must have one entry per group");
    }
    NetworkComparisonReport report;

    // Hypothesis 1: ties_b = z * ties_a with 1 <= z <= 1 / max tie.
    std::optional<Rational> z;
    bool scaled = true;
    for (std::size_t k = 0; k < g && scaled; ++k) {
        if (ties_a.ties[k] == 0) {
            scaled = ties_b.ties[k] == 0;
        } else {
            const Rational ratio = ties_b.ties[k] / ties_a.ties[k];
            if (!z) z = ratio;
            scaled = *z == ratio;
        }
    }
    if (scaled && !z) z = Rational{1};
    const Rational max_tie = *std::max_element(ties_a.ties.begin(), ties_a.ties.end());

    // Hypothesis 2: weight moves from a lower-aspiration group to a higher one.
    std::vector<std::size_t> changed;
    for (std::size_t k = 0; k < g; ++k) {
        if (ties_a.ties[k] != ties_b.ties[k]) changed.push_back(k);
    }

    if (scaled && *z >= 1 && (max_tie == 0 || *z * max_tie <= 1)) {
        report.hypothesis = TieHypothesis::kScaling;
        report.scale = z;
    } else if (changed.size() == 2) {
        const GroupIndex higher = changed[0];
        const GroupIndex lower = changed[1];
        const Rational gained = Rational{static_cast<unsigned long>(population.groups[higher].size)} *
                                (ties_b.ties[higher] - ties_a.ties[higher]);
        const Rational lost = Rational{static_cast<unsigned long>(population.groups[lower].size)} *
                              (ties_a.ties[lower] - ties_b.ties[lower]);
        if (!(gained > 0 && gained == lost)) {
            throw std::invalid_argument(
                "hypothesis violated: weight must move from a lower-aspiration group to a higher one with "
                "N_k (s_k - s'_k) = N_k' (s'_k' - s_k') > 0");
        }
        report.hypothesis = TieHypothesis::kMassShift;
        report.shift_from = lower;
        report.shift_to = higher;
    } else if (scaled) {
        throw std::invalid_argument("hypothesis violated: scale factor " + format_rational(*z) +
                                    " outside [1, 1/max tie]");
    } else {
        throw std::invalid_argument("hypothesis violated: networks are neither a scaling nor a two-group mass shift");
    }

    const Instance inst_a = validate_instance(population, product, ties_a);
    const Instance inst_b = validate_instance(population, product, ties_b);
    SimulationOptions sim;
    sim.horizon = horizon;
    report.trace_a = simulate(inst_a, sim);
    report.trace_b = simulate(inst_b, sim);
    report.both_monotone = is_aspiration_monotone(report.trace_a, inst_a) &&
                           is_aspiration_monotone(report.trace_b, inst_b);
    report.payoffs_constant = payoffs_constant(product);

    report.first_violation = first_containment_violation(report.trace_a, report.trace_b);
    report.contained = !report.first_violation;

    const Period table_end = std::max<Period>(
        {report.trace_a.last_adoption().value_or(1), report.trace_b.last_adoption().value_or(1), 1});
    for (Period t = 1; t <= table_end; ++t) {
        NetworkRow row{t, report.trace_a.adopters_at(t), report.trace_b.adopters_at(t), true};
        for (IndividualId i = 0; i < inst_a.individual_count() && row.contained; ++i) {
            row.contained = !report.trace_a.adopted_by(i, t) || report.trace_b.adopted_by(i, t);
        }
        report.per_period.push_back(row);
    }

    if (report.hypothesis == TieHypothesis::kScaling) {
        report.asserted = true;
    } else {
        if (!report.payoffs_constant) report.warnings.emplace_back("v_H varies across individuals; containment not guaranteed");
        if (!report.both_monotone) {
            report.warnings.emplace_back("traces are not aspiration-monotone; report is descriptive only");
        }
        report.asserted = report.payoffs_constant && report.both_monotone;
    }
    if (report.asserted && !report.contained) {
        throw ModelInconsistencyError("containment violated at period " + std::to_string(*report.first_violation));
    }
    return report;
}

}  // namespace cbd
