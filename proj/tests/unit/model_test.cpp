#include "cbdiff/model.hpp"

#include "corpus.hpp"

#include <gtest/gtest.h>

namespace cbd {
namespace {

using testing::two_group_population;

ValidationIssue issue_of(const Population& pop, const ProductSpec& product, const NetworkSpec& network) {
    try {
        validate_instance(pop, product, network);
    } catch (const ValidationError& e) {
        return e.issue();
    }
    ADD_FAILURE() << "instance unexpectedly valid";
    return ValidationIssue::kEmptyPopulation;
}

ProductSpec product_a(const Population& pop) {
    return ProductSpec::group_constant(Rational{90}, Rational{100}, make_rational(1, 2), pop.total());
}

TEST(Validate, AcceptsInstanceA) {
    const Instance a = testing::instance_a();
    EXPECT_EQ(a.individual_count(), 10u);
    EXPECT_EQ(a.group_count(), 2u);
    EXPECT_EQ(a.group_of(0), 0u);
    EXPECT_EQ(a.group_of(2), 1u);
    EXPECT_EQ(a.group_begin(1), 2u);
    EXPECT_EQ(a.group_payoff_sum(1), Rational{800});
}

TEST(Validate, RejectsProductSimilarityOne) {
    const Population pop = two_group_population();
    ProductSpec p = product_a(pop);
    p.product_similarity = 1;
    try {
        validate_instance(pop, p, UniformNetwork{make_rational(1, 2)});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.issue(), ValidationIssue::kProductSimilarityOutOfRange);
        EXPECT_STREQ(e.what(), "s_p out of (0,1)");
    }
    p.product_similarity = 0;
    EXPECT_EQ(issue_of(pop, p, UniformNetwork{make_rational(1, 2)}), ValidationIssue::kProductSimilarityOutOfRange);
}

TEST(Validate, RejectsReorderedGroups) {
    const Population pop{{AspirationGroup{8, Rational{50}}, AspirationGroup{2, Rational{95}}}};
    try {
        validate_instance(pop, product_a(pop), UniformNetwork{make_rational(1, 2)});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.issue(), ValidationIssue::kAspirationsNotDecreasing);
        EXPECT_NE(std::string(e.what()).find("aspirations not strictly decreasing"), std::string::npos);
    }
}

TEST(Validate, DistinctDiagnostics) {
    const Population pop = two_group_population();
    const NetworkSpec uni = UniformNetwork{make_rational(1, 2)};

    ProductSpec p = product_a(pop);
    p.new_payoffs[3] = 80;
    EXPECT_EQ(issue_of(pop, p, uni), ValidationIssue::kNewPayoffBelowIncumbent);

    // v_H >= v_L but below H_1.
    p = ProductSpec::group_constant(Rational{90}, Rational{92}, make_rational(1, 2), 10);
    EXPECT_EQ(issue_of(pop, p, uni), ValidationIssue::kNewPayoffBelowTopAspiration);

    p = ProductSpec::group_constant(Rational{96}, Rational{100}, make_rational(1, 2), 10);
    EXPECT_EQ(issue_of(pop, p, uni), ValidationIssue::kIncumbentPayoffOutOfRange);
    p = ProductSpec::group_constant(Rational{50}, Rational{100}, make_rational(1, 2), 10);
    EXPECT_EQ(issue_of(pop, p, uni), ValidationIssue::kIncumbentPayoffOutOfRange);

    p = product_a(pop);
    p.new_payoffs.pop_back();
    EXPECT_EQ(issue_of(pop, p, uni), ValidationIssue::kPayoffCountMismatch);

    p = product_a(pop);
    EXPECT_EQ(issue_of(pop, p, UniformNetwork{make_rational(3, 2)}), ValidationIssue::kSimilarityOutOfRange);
    EXPECT_EQ(issue_of(pop, p, HomophilyNetwork{make_rational(1, 2), Rational{1}}),
              ValidationIssue::kHomophilyUnequalGroups);
    EXPECT_EQ(issue_of(pop, p, GroupTiesNetwork{{make_rational(1, 2)}}), ValidationIssue::kTieCountMismatch);
    EXPECT_EQ(issue_of(pop, p, GroupTiesNetwork{{Rational{0}, Rational{2}}}), ValidationIssue::kSimilarityOutOfRange);

    const Population equal{{AspirationGroup{5, Rational{95}}, AspirationGroup{5, Rational{50}}}};
    EXPECT_EQ(issue_of(equal, product_a(equal), HomophilyNetwork{make_rational(1, 2), Rational{2}}),
              ValidationIssue::kHomophilyGammaOutOfRange);
    EXPECT_EQ(issue_of(equal, product_a(equal), HomophilyNetwork{make_rational(1, 2), Rational{0}}),
              ValidationIssue::kHomophilyGammaOutOfRange);
    EXPECT_EQ(issue_of(Population{}, ProductSpec{}, uni), ValidationIssue::kEmptyPopulation);
    EXPECT_EQ(issue_of(Population{{AspirationGroup{0, Rational{1}}}}, ProductSpec{}, uni), ValidationIssue::kEmptyGroup);
}

TEST(Validate, SingleGroupAllowsLowIncumbent) {
    const Population pop{{AspirationGroup{3, Rational{90}}}};
    EXPECT_NO_THROW(validate_instance(
        pop, ProductSpec::group_constant(Rational{10}, Rational{100}, make_rational(1, 2), 3), UniformNetwork{0}));
}

TEST(Similarity, Variants) {
    const Population pop = two_group_population();
    EXPECT_EQ(similarity_weight(4, 4, UniformNetwork{make_rational(1, 2)}, pop), Rational{1});
    EXPECT_EQ(similarity_weight(0, 5, UniformNetwork{make_rational(1, 2)}, pop), make_rational(1, 2));

    const Population equal{{AspirationGroup{5, Rational{95}}, AspirationGroup{5, Rational{50}}}};
    const HomophilyNetwork neutral{make_rational(1, 2), Rational{1}};
    for (IndividualId i = 0; i < 10; ++i) {
        for (IndividualId j = 0; j < 10; ++j) {
            EXPECT_EQ(similarity_weight(i, j, neutral, equal), i == j ? Rational{1} : make_rational(1, 2));
        }
    }
    const HomophilyNetwork strong{make_rational(1, 2), make_rational(3, 2)};
    EXPECT_EQ(similarity_weight(0, 1, strong, equal), make_rational(3, 4));
    EXPECT_EQ(similarity_weight(0, 7, strong, equal), make_rational(1, 2));

    const GroupTiesNetwork ties{{make_rational(4, 5), make_rational(1, 5)}};
    EXPECT_EQ(similarity_weight(0, 5, ties, pop), make_rational(1, 5));
    EXPECT_EQ(similarity_weight(5, 1, ties, pop), make_rational(4, 5));
    EXPECT_EQ(similarity_weight(5, 5, ties, pop), Rational{1});
    EXPECT_THROW(similarity_weight(0, 10, ties, pop), std::out_of_range);
}

TEST(Similarity, CrossWeightMatrixMatchesPairs) {
    for (std::uint64_t n = 0; n < 30; ++n) {
        const Instance inst = testing::corpus_instance(n);
        for (IndividualId i = 0; i < inst.individual_count(); ++i) {
            for (IndividualId j = 0; j < inst.individual_count(); ++j) {
                if (i == j) continue;
                EXPECT_EQ(inst.cross_weight(inst.group_of(i), inst.group_of(j)),
                          similarity_weight(i, j, inst.network(), inst.population()));
            }
        }
    }
}

}  // namespace
}  // namespace cbd
