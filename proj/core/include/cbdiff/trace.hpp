#pragma once

#include "cbdiff/model.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace cbd {

/// Aspiration cutoff H_t: finite, or -infinity when everyone consumes the new product.
class Threshold {
public:
    static Threshold negative_infinity() { return Threshold{}; }
    static Threshold at(Rational value) { return Threshold{std::move(value)}; }

    [[nodiscard]] bool is_finite() const { return finite_; }
    [[nodiscard]] const Rational& value() const { return value_; }

    /// True iff an individual with aspiration h lies strictly above the cutoff.
    [[nodiscard]] bool admits(const Rational& h) const { return !finite_ || h > value_; }

    friend bool operator==(const Threshold& a, const Threshold& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const Threshold& a, const Threshold& b);

    /// "-inf" or the exact rational in decimal/fraction form.
    [[nodiscard]] std::string to_string() const;

private:
    Threshold() = default;
    explicit Threshold(Rational v) : finite_(true), value_(std::move(v)) {}

    bool finite_ = false;
    Rational value_;
};

struct PeriodRecord {
    Period period = 0;
    std::size_t new_adopters = 0;
    std::size_t cumulative_adopters = 0;
    std::vector<GroupIndex> new_groups;
};

struct TerminalSummary {
    /// Asymptotic outcome is known exactly (everyone adopted, or stalled with
    /// no remaining group able to gain).
    bool certified = false;
    /// First period from which the adopter set never changes again.
    std::optional<Period> stall_period;
    /// Adopters at certification, or at the horizon when uncertified.
    std::size_t asymptotic_adopters = 0;
    /// First group (0-based) that never adopts; empty when everyone adopts or uncertified.
    std::optional<GroupIndex> cutoff_group;
};

struct DiffusionTrace {
    Period horizon = 0;
    /// First period each individual consumed the new product. Certified runs
    /// may carry periods beyond the horizon that were scheduled analytically.
    std::vector<std::optional<Period>> adoption_period;
    /// Periods 1..horizon.
    std::vector<PeriodRecord> periods;
    TerminalSummary terminal;
    /// Adopters who would have reverted (only counted when re-evaluation is on).
    std::size_t switchbacks = 0;

    [[nodiscard]] std::size_t individual_count() const { return adoption_period.size(); }
    [[nodiscard]] bool adopted_by(IndividualId i, Period t) const {
        return adoption_period[i] && *adoption_period[i] <= t;
    }
    /// D_n^t for any t, including beyond the horizon on certified traces.
    [[nodiscard]] std::size_t adopters_at(Period t) const;
    /// Latest adoption period, if anyone adopts.
    [[nodiscard]] std::optional<Period> last_adoption() const;
};

/// Fills periods (1..horizon) and the terminal summary fields derived from
/// adoption periods. `certified` must already be decided by the caller.
void finalize_trace(DiffusionTrace& trace, const Instance& instance, bool certified);

/// Adoption period of a whole group (members adopt together); nullopt if never
/// (or not within the recorded trace).
std::optional<Period> group_adoption_period(const DiffusionTrace& trace, const Instance& instance, GroupIndex k);

/// Adoption periods weakly increase with group index, never-adopters last.
bool is_aspiration_monotone(const DiffusionTrace& trace, const Instance& instance);

/// Same adoption period for every individual, up to period `through`.
bool same_adoptions(const DiffusionTrace& a, const DiffusionTrace& b, Period through);

}  // namespace cbd
