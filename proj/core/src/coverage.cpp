#include "cbdiff/coverage.hpp"

#include <stdexcept>

namespace cbd {

std::size_t mass_above(const Population& population, const Rational& h) {
    std::size_t total = 0;
    for (const auto& g : population.groups) {
        if (g.aspiration > h) total += g.size;
    }
    return total;
}

CoverageReport coverage_check(const Instance& instance, const CoverageOptions& options) {
    const auto* uniform = std::get_if<UniformNetwork>(&instance.network());
    if (uniform == nullptr) throw std::invalid_argument("coverage_check requires a uniform network");

    const Rational& s = uniform->s;
    const Rational& v_low = instance.incumbent_payoff();
    const Rational keep = Rational{1} - instance.product_similarity();
    const auto n = static_cast<unsigned long>(instance.individual_count());

    CoverageReport report;
    for (GroupIndex k = 0; k < instance.group_count(); ++k) {
        report.mass_above.push_back(mass_above(instance.population(), instance.aspiration(k)));
    }

    // Nobody clears the incumbent in period 1, so nothing ever moves.
    if (instance.aspiration(0) <= v_low) report.cutoff_group = 0;

    for (GroupIndex k = 1; k < instance.group_count(); ++k) {
        const Rational& h = instance.aspiration(k);
        const std::size_t above = report.mass_above[k];
        Rational payoff_sum{0};
        if (options.average == PayoffAverage::kAboveAspiration) {
            for (IndividualId i = 0; i < above; ++i) payoff_sum += instance.new_payoff(i);
        } else {
            for (IndividualId i = 0; i < instance.individual_count(); ++i) {
                if (instance.new_payoff(i) > h) payoff_sum += instance.new_payoff(i);
            }
        }

        CoverageRow row;
        row.group = k;
        row.aspiration = h;
        row.mass_above = above;
        row.payoff_above = payoff_sum / static_cast<unsigned long>(above);
        const Rational reference = options.numerator == CoverageNumerator::kAspirationGap ? h : v_low;
        row.lhs = (row.payoff_above - reference) / (v_low - h);

        const auto f = static_cast<unsigned long>(above);
        const Rational incumbent_side = keep * (s * (n - f - 1) + 1);
        if (s > 0) row.rhs = incumbent_side / (s * f);
        // lhs <= incumbent_side / (s F), cross-multiplied since s F >= 0.
        row.blocked = row.lhs * s * f <= incumbent_side;

        if (row.blocked && !report.cutoff_group) report.cutoff_group = k;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace cbd
