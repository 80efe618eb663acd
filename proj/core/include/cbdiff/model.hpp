#pragma once

#include "cbdiff/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cbd {

using IndividualId = std::size_t;
/// Zero-based group index; group 0 has the highest aspiration. Reports print k = index + 1.
using GroupIndex = std::size_t;
using Period = std::uint64_t;

struct AspirationGroup {
    std::size_t size = 0;
    Rational aspiration;
};

struct Population {
    std::vector<AspirationGroup> groups;

    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] std::size_t group_count() const { return groups.size(); }
};

/// Incumbent payoff v_L, per-individual new-product payoffs v_Hi and the
/// new-to-incumbent product similarity s_p. The reverse similarity is 0 and
/// self-similarity 1; neither is stored.
struct ProductSpec {
    Rational incumbent_payoff;
    std::vector<Rational> new_payoffs;
    Rational product_similarity;

    static ProductSpec group_constant(Rational incumbent, Rational new_payoff, Rational similarity,
                                      std::size_t individuals);
    static ProductSpec per_group(const Population& population, Rational incumbent,
                                 const std::vector<Rational>& group_payoffs, Rational similarity);
};

struct UniformNetwork {
    Rational s;
};

/// Within-group ties are gamma * s, cross-group ties s.
struct HomophilyNetwork {
    Rational s;
    Rational gamma;
};

/// Tie strength depends only on the group of the observed individual.
struct GroupTiesNetwork {
    std::vector<Rational> ties;
};

using NetworkSpec = std::variant<UniformNetwork, HomophilyNetwork, GroupTiesNetwork>;

[[nodiscard]] const char* network_name(const NetworkSpec& network);

enum class ValidationIssue {
    kEmptyPopulation,
    kEmptyGroup,
    kAspirationsNotDecreasing,
    kProductSimilarityOutOfRange,
    kPayoffCountMismatch,
    kNewPayoffBelowIncumbent,
    kNewPayoffBelowTopAspiration,
    kIncumbentPayoffOutOfRange,
    kSimilarityOutOfRange,
    kHomophilyUnequalGroups,
    kHomophilyGammaOutOfRange,
    kTieCountMismatch,
};

class ValidationError : public std::invalid_argument {
public:
    ValidationError(ValidationIssue issue, const std::string& message)
        : std::invalid_argument(message), issue_(issue) {}

    [[nodiscard]] ValidationIssue issue() const noexcept { return issue_; }

private:
    ValidationIssue issue_;
};

/// Cross-individual similarity from network and population alone: 1 on the
/// diagonal, otherwise the tie the variant assigns to (group of i, group of j).
Rational similarity_weight(IndividualId i, IndividualId j, const NetworkSpec& network,
                           const Population& population);

/// A validated, immutable model instance. Individual ids run contiguously
/// group by group in aspiration order.
class Instance {
public:
    [[nodiscard]] const Population& population() const { return population_; }
    [[nodiscard]] const ProductSpec& product() const { return product_; }
    [[nodiscard]] const NetworkSpec& network() const { return network_; }

    [[nodiscard]] std::size_t individual_count() const { return group_of_.size(); }
    [[nodiscard]] std::size_t group_count() const { return population_.groups.size(); }
    [[nodiscard]] GroupIndex group_of(IndividualId i) const { return group_of_.at(i); }
    [[nodiscard]] IndividualId group_begin(GroupIndex k) const { return group_begin_.at(k); }
    [[nodiscard]] std::size_t group_size(GroupIndex k) const { return population_.groups.at(k).size; }
    [[nodiscard]] const Rational& aspiration(GroupIndex k) const { return population_.groups.at(k).aspiration; }
    [[nodiscard]] const Rational& aspiration_of(IndividualId i) const { return aspiration(group_of(i)); }
    [[nodiscard]] const Rational& incumbent_payoff() const { return product_.incumbent_payoff; }
    [[nodiscard]] const Rational& new_payoff(IndividualId i) const { return product_.new_payoffs.at(i); }
    [[nodiscard]] const Rational& product_similarity() const { return product_.product_similarity; }

    /// Weight an individual of `observer` puts on a case of a *different*
    /// individual from `source`.
    [[nodiscard]] const Rational& cross_weight(GroupIndex observer, GroupIndex source) const {
        return cross_weight_[observer * group_count() + source];
    }

    /// Sum of v_Hi over the members of group k.
    [[nodiscard]] const Rational& group_payoff_sum(GroupIndex k) const { return group_payoff_sum_.at(k); }

    [[nodiscard]] bool is_uniform() const { return std::holds_alternative<UniformNetwork>(network_); }

    friend Instance validate_instance(Population population, ProductSpec product, NetworkSpec network);

private:
    Instance() = default;

    Population population_;
    ProductSpec product_;
    NetworkSpec network_;
    std::vector<GroupIndex> group_of_;
    std::vector<IndividualId> group_begin_;
    std::vector<Rational> cross_weight_;
    std::vector<Rational> group_payoff_sum_;
};

/// Checks every model invariant and returns the frozen instance; throws
/// ValidationError naming the first violated one.
Instance validate_instance(Population population, ProductSpec product, NetworkSpec network);

}  // namespace cbd
