#pragma once

#include "cbdiff/comparative.hpp"
#include "cbdiff/coverage.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cbd {

/// period,new_adopters,cumulative_adopters,threshold for periods 1..horizon.
/// The threshold cell is "-inf", an exact rational, or empty when undefined.
void write_trace_csv(std::ostream& out, const DiffusionTrace& trace, const ThresholdSequence* thresholds = nullptr);

/// {asymptotic_adopters, g_bar, stall_period, certified}; g_bar is 1-based
/// and null when everyone adopts or the run is not certified.
std::string summary_json(const DiffusionTrace& trace);

/// "2/10 adopt; G_bar=2; certified at t=2"
std::string summary_line(const DiffusionTrace& trace);

std::string comparison_json(const ComparisonReport& report);
std::string verdict_line(const ComparisonReport& report);

std::string network_comparison_json(const NetworkComparisonReport& report);

std::string coverage_json(const CoverageReport& report);

struct SweepRow {
    std::string value;
    Period period = 0;
    std::size_t cumulative_adopters = 0;
};

/// value,period,cumulative_adopters in the given order.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace cbd
