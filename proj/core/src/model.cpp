#include "cbdiff/model.hpp"

#include <algorithm>
#include <numeric>

namespace cbd {

std::size_t Population::total() const {
    return std::accumulate(groups.begin(), groups.end(), std::size_t{0},
                           [](std::size_t acc, const AspirationGroup& g) { return acc + g.size; });
}

ProductSpec ProductSpec::group_constant(Rational incumbent, Rational new_payoff, Rational similarity,
                                        std::size_t individuals) {
    return ProductSpec{std::move(incumbent), std::vector<Rational>(individuals, new_payoff),
                       std::move(similarity)};
}

ProductSpec ProductSpec::per_group(const Population& population, Rational incumbent,
                                   const std::vector<Rational>& group_payoffs, Rational similarity) {
    if (group_payoffs.size() != population.group_count()) {
        throw ValidationError(ValidationIssue::kPayoffCountMismatch,
                              "expected one v_H per group (" + std::to_string(population.group_count()) +
                                  "), got " + std::to_string(group_payoffs.size()));
    }
    ProductSpec spec{std::move(incumbent), {}, std::move(similarity)};
    spec.new_payoffs.reserve(population.total());
    for (std::size_t k = 0; k < group_payoffs.size(); ++k) {
        spec.new_payoffs.insert(spec.new_payoffs.end(), population.groups[k].size, group_payoffs[k]);
    }
    return spec;
}

const char* network_name(const NetworkSpec& network) {
    switch (network.index()) {
        case 0: return "uniform";
        case 1: return "homophily";
        default: return "group_ties";
    }
}

namespace {

GroupIndex locate_group(IndividualId i, const Population& population) {
    std::size_t begin = 0;
    for (GroupIndex k = 0; k < population.groups.size(); ++k) {
        begin += population.groups[k].size;
        if (i < begin) return k;
    }
    throw std::out_of_range("individual id " + std::to_string(i) + " outside population of " +
                            std::to_string(begin));
}

Rational tie_between_groups(GroupIndex observer, GroupIndex source, const NetworkSpec& network) {
    return std::visit(
        [&](const auto& net) -> Rational {
            using T = std::decay_t<decltype(net)>;
            if constexpr (std::is_same_v<T, UniformNetwork>) {
                return net.s;
            } else if constexpr (std::is_same_v<T, HomophilyNetwork>) {
                return observer == source ? Rational{net.gamma * net.s} : net.s;
            } else {
                return net.ties.at(source);
            }
        },
        network);
}

bool in_unit_interval(const Rational& x) { return x >= 0 && x <= 1; }

void fail(ValidationIssue issue, const std::string& message) { throw ValidationError(issue, message); }

}  // namespace

Rational similarity_weight(IndividualId i, IndividualId j, const NetworkSpec& network,
                           const Population& population) {
    const GroupIndex gi = locate_group(i, population);
    const GroupIndex gj = locate_group(j, population);
    if (i == j) return Rational{1};
    return tie_between_groups(gi, gj, network);
}

Instance validate_instance(Population population, ProductSpec product, NetworkSpec network) {
    const auto& groups = population.groups;
    if (groups.empty()) fail(ValidationIssue::kEmptyPopulation, "population has no groups");
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (groups[k].size == 0) {
            fail(ValidationIssue::kEmptyGroup, "group " + std::to_string(k + 1) + " is empty");
        }
        if (k > 0 && !(groups[k].aspiration < groups[k - 1].aspiration)) {
            fail(ValidationIssue::kAspirationsNotDecreasing, "aspirations not strictly decreasing (group " +
                                                                 std::to_string(k + 1) + ")");
        }
    }

    const std::size_t n = population.total();
    const Rational& v_low = product.incumbent_payoff;
    const Rational& top = groups.front().aspiration;

    if (!(product.product_similarity > 0 && product.product_similarity < 1)) {
        fail(ValidationIssue::kProductSimilarityOutOfRange, "s_p out of (0,1)");
    }
    if (product.new_payoffs.size() != n) {
        fail(ValidationIssue::kPayoffCountMismatch, "expected " + std::to_string(n) + " v_H values, got " +
                                                        std::to_string(product.new_payoffs.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (product.new_payoffs[i] < v_low) {
            fail(ValidationIssue::kNewPayoffBelowIncumbent,
                 "v_H of individual " + std::to_string(i) + " is below v_L");
        }
        if (product.new_payoffs[i] < top) {
            fail(ValidationIssue::kNewPayoffBelowTopAspiration,
                 "v_H of individual " + std::to_string(i) + " is below H_1");
        }
    }
    if (v_low > top || (groups.size() >= 2 && !(v_low > groups[1].aspiration))) {
        fail(ValidationIssue::kIncumbentPayoffOutOfRange,
             groups.size() >= 2 ? "v_L outside (H_2, H_1]" : "v_L above H_1");
    }

    std::visit(
        [&](const auto& net) {
            using T = std::decay_t<decltype(net)>;
            if constexpr (std::is_same_v<T, UniformNetwork>) {
                if (!in_unit_interval(net.s)) fail(ValidationIssue::kSimilarityOutOfRange, "s out of [0,1]");
            } else if constexpr (std::is_same_v<T, HomophilyNetwork>) {
                if (!(net.s > 0 && net.s <= 1)) {
                    fail(ValidationIssue::kSimilarityOutOfRange, "homophily s out of (0,1]");
                }
                if (!(net.gamma > 0 && net.gamma * net.s < 1)) {
                    fail(ValidationIssue::kHomophilyGammaOutOfRange, "gamma out of (0, 1/s)");
                }
                for (const auto& g : groups) {
                    if (g.size != groups.front().size) {
                        fail(ValidationIssue::kHomophilyUnequalGroups, "homophily requires equal group sizes");
                    }
                }
            } else {
                if (net.ties.size() != groups.size()) {
                    fail(ValidationIssue::kTieCountMismatch, "expected one tie per group (" +
                                                                 std::to_string(groups.size()) + "), got " +
                                                                 std::to_string(net.ties.size()));
                }
                for (std::size_t k = 0; k < net.ties.size(); ++k) {
                    if (!in_unit_interval(net.ties[k])) {
                        fail(ValidationIssue::kSimilarityOutOfRange,
                             "tie of group " + std::to_string(k + 1) + " out of [0,1]");
                    }
                }
            }
        },
        network);

    Instance inst;
    inst.group_of_.reserve(n);
    inst.group_begin_.reserve(groups.size());
    inst.group_payoff_sum_.assign(groups.size(), Rational{0});
    for (GroupIndex k = 0; k < groups.size(); ++k) {
        inst.group_begin_.push_back(inst.group_of_.size());
        for (std::size_t m = 0; m < groups[k].size; ++m) {
            inst.group_payoff_sum_[k] += product.new_payoffs[inst.group_of_.size()];
            inst.group_of_.push_back(k);
        }
    }
    const std::size_t g = groups.size();
    inst.cross_weight_.reserve(g * g);
    for (GroupIndex a = 0; a < g; ++a) {
        for (GroupIndex b = 0; b < g; ++b) inst.cross_weight_.push_back(tie_between_groups(a, b, network));
    }
    inst.population_ = std::move(population);
    inst.product_ = std::move(product);
    inst.network_ = std::move(network);
    return inst;
}

}  // namespace cbd
