#pragma once

#include "cbdiff/trace.hpp"

#include <string_view>
#include <vector>

namespace cbd {

enum class AdopterCategory {
    kInnovators,
    kEarlyAdopters,
    kEarlyMajority,
    kLateMajority,
    kLaggards,
    kNeverAdopters,
};

std::string_view category_name(AdopterCategory category);

struct GroupLabel {
    GroupIndex group = 0;
    std::optional<Period> adoption_period;
    AdopterCategory category = AdopterCategory::kNeverAdopters;
};

/// Labels groups by the position of their adoption wave among all waves:
/// wave w of W lands in quintile floor(5w / (W-1)), capped at laggards; a
/// single wave is all innovators. Descriptive only.
std::vector<GroupLabel> classify_adopters(const DiffusionTrace& trace, const Instance& instance);

}  // namespace cbd
