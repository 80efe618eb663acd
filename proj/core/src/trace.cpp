#include "cbdiff/trace.hpp"

#include <algorithm>

namespace cbd {

std::strong_ordering operator<=>(const Threshold& a, const Threshold& b) {
    if (!a.finite_ || !b.finite_) {
        return a.finite_ <=> b.finite_;  // -inf sorts first
    }
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Threshold::to_string() const { return finite_ ? format_rational(value_) : "-inf"; }

std::size_t DiffusionTrace::adopters_at(Period t) const {
    return static_cast<std::size_t>(std::count_if(adoption_period.begin(), adoption_period.end(),
                                                  [t](const auto& p) { return p && *p <= t; }));
}

std::optional<Period> DiffusionTrace::last_adoption() const {
    std::optional<Period> last;
    for (const auto& p : adoption_period) {
        if (p && (!last || *p > *last)) last = p;
    }
    return last;
}

void finalize_trace(DiffusionTrace& trace, const Instance& instance, bool certified) {
    trace.periods.assign(trace.horizon, PeriodRecord{});
    for (Period t = 1; t <= trace.horizon; ++t) trace.periods[t - 1].period = t;
    for (IndividualId i = 0; i < trace.adoption_period.size(); ++i) {
        const auto& p = trace.adoption_period[i];
        if (!p || *p > trace.horizon || *p == 0) continue;
        PeriodRecord& rec = trace.periods[*p - 1];
        rec.new_adopters += 1;
        const GroupIndex k = instance.group_of(i);
        if (rec.new_groups.empty() || rec.new_groups.back() != k) rec.new_groups.push_back(k);
    }
    std::size_t cumulative = 0;
    for (auto& rec : trace.periods) {
        cumulative += rec.new_adopters;
        rec.cumulative_adopters = cumulative;
    }

    TerminalSummary& term = trace.terminal;
    term = TerminalSummary{};
    term.certified = certified;
    if (!certified) {
        term.asymptotic_adopters = trace.adopters_at(trace.horizon);
        return;
    }
    term.asymptotic_adopters = static_cast<std::size_t>(
        std::count_if(trace.adoption_period.begin(), trace.adoption_period.end(),
                      [](const auto& p) { return p.has_value(); }));
    const auto last = trace.last_adoption();
    const bool everyone = term.asymptotic_adopters == trace.individual_count();
    if (everyone) {
        term.stall_period = last;
    } else {
        term.stall_period = last ? *last + 1 : Period{1};
        for (GroupIndex k = 0; k < instance.group_count(); ++k) {
            if (!trace.adoption_period[instance.group_begin(k)]) {
                term.cutoff_group = k;
                break;
            }
        }
    }
}

std::optional<Period> group_adoption_period(const DiffusionTrace& trace, const Instance& instance,
                                            GroupIndex k) {
    std::optional<Period> first;
    const IndividualId begin = instance.group_begin(k);
    for (IndividualId i = begin; i < begin + instance.group_size(k); ++i) {
        const auto& p = trace.adoption_period[i];
        if (!p) return std::nullopt;
        if (!first || *p < *first) first = p;
    }
    return first;
}

bool is_aspiration_monotone(const DiffusionTrace& trace, const Instance& instance) {
    std::optional<Period> previous = Period{0};
    for (IndividualId i = 0; i < trace.individual_count(); ++i) {
        const auto& p = trace.adoption_period[i];
        if (!previous) {
            if (p) return false;
            continue;
        }
        if (p && *p < *previous) return false;
        // Within a group members adopt together; a strict drop is a violation either way.
        if (i > 0 && instance.group_of(i) == instance.group_of(i - 1) && p != trace.adoption_period[i - 1]) {
            return false;
        }
        previous = p;
    }
    return true;
}

bool same_adoptions(const DiffusionTrace& a, const DiffusionTrace& b, Period through) {
    if (a.individual_count() != b.individual_count()) return false;
    for (IndividualId i = 0; i < a.individual_count(); ++i) {
        const bool in_a = a.adopted_by(i, through);
        const bool in_b = b.adopted_by(i, through);
        if (in_a != in_b) return false;
        if (in_a && *a.adoption_period[i] != *b.adoption_period[i]) return false;
    }
    return true;
}

}  // namespace cbd
