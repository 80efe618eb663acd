#pragma once

#include "cbdiff/model.hpp"

#include <optional>
#include <vector>

namespace cbd {

/// Numerator of the left-hand ratio. kAspirationGap uses (v_{>H} - H), the
/// form the adoption condition reduces to; kIncumbentGap uses (v_{>H} - v_L),
/// kept only for side-by-side comparison.
enum class CoverageNumerator { kAspirationGap, kIncumbentGap };

/// How v_{>H} is averaged. kAboveAspiration averages v_Hi over individuals with
/// H_i > H. kLiteralPayoffSum sums v_Hi over individuals with v_Hi > H and
/// divides by F(H).
enum class PayoffAverage { kAboveAspiration, kLiteralPayoffSum };

struct CoverageOptions {
    CoverageNumerator numerator = CoverageNumerator::kAspirationGap;
    PayoffAverage average = PayoffAverage::kAboveAspiration;
};

struct CoverageRow {
    GroupIndex group = 0;       ///< 0-based; rows exist for groups 1..G-1
    Rational aspiration;
    std::size_t mass_above = 0; ///< F(H_k)
    Rational payoff_above;      ///< v_{>H_k}
    Rational lhs;               ///< (v_{>H} - H) / (v_L - H)
    /// (1-s_p)[s(N-F-1)+1] / (s F); empty when s = 0 (the right side is unbounded).
    std::optional<Rational> rhs;
    /// lhs <= rhs: under an adopter set of exactly the groups above, this group
    /// gains nothing per period and never adopts.
    bool blocked = false;
};

struct CoverageReport {
    std::vector<CoverageRow> rows;
    /// First group (0-based) that never adopts; empty when everyone adopts eventually.
    std::optional<GroupIndex> cutoff_group;
    [[nodiscard]] bool full_adoption() const { return !cutoff_group.has_value(); }

    /// F(H) evaluated at each group's aspiration, group order.
    std::vector<std::size_t> mass_above;
};

/// F(H): number of individuals with aspiration strictly above h.
std::size_t mass_above(const Population& population, const Rational& h);

/// Asymptotic coverage on a uniform network. Throws std::invalid_argument for
/// other networks.
CoverageReport coverage_check(const Instance& instance, const CoverageOptions& options = {});

}  // namespace cbd
