#include "cbdiff/classify.hpp"

#include <algorithm>

namespace cbd {

std::string_view category_name(AdopterCategory category) {
    switch (category) {
        case AdopterCategory::kInnovators: return "innovators";
        case AdopterCategory::kEarlyAdopters: return "early_adopters";
        case AdopterCategory::kEarlyMajority: return "early_majority";
        case AdopterCategory::kLateMajority: return "late_majority";
        case AdopterCategory::kLaggards: return "laggards";
        case AdopterCategory::kNeverAdopters: return "never_adopters";
    }
    return "unknown";
}

std::vector<GroupLabel> classify_adopters(const DiffusionTrace& trace, const Instance& instance) {
    std::vector<GroupLabel> labels;
    std::vector<Period> waves;
    for (GroupIndex k = 0; k < instance.group_count(); ++k) {
        GroupLabel label;
        label.group = k;
        label.adoption_period = group_adoption_period(trace, instance, k);
        if (label.adoption_period) waves.push_back(*label.adoption_period);
        labels.push_back(label);
    }
    std::sort(waves.begin(), waves.end());
    waves.erase(std::unique(waves.begin(), waves.end()), waves.end());

    for (auto& label : labels) {
        if (!label.adoption_period) continue;
        const auto wave = static_cast<std::size_t>(
            std::lower_bound(waves.begin(), waves.end(), *label.adoption_period) - waves.begin());
        std::size_t quintile = 0;
        if (waves.size() > 1) quintile = std::min<std::size_t>(4, 5 * wave / (waves.size() - 1));
        label.category = static_cast<AdopterCategory>(quintile);
    }
    return labels;
}

}  // namespace cbd
