#include "cbdiff/dynamics.hpp"

#include "cbdiff/errors.hpp"
#include "corpus.hpp"

#include <gtest/gtest.h>

namespace cbd {
namespace {

MarketState state_at(const Instance& inst, Period t) {
    MarketState s = initial_state(inst);
    for (Period p = 0; p < t; ++p) s = step(s, inst).state;
    return s;
}

TEST(Simulate, InstanceA) {
    const Instance a = testing::instance_a();
    SimulationOptions opts;
    opts.horizon = 100;
    const DiffusionTrace t = simulate(a, opts);
    ASSERT_EQ(t.periods.size(), 100u);
    for (Period p = 1; p <= 100; ++p) EXPECT_EQ(t.adopters_at(p), 2u);
    EXPECT_TRUE(t.terminal.certified);
    EXPECT_EQ(t.terminal.cutoff_group, GroupIndex{1});
    EXPECT_EQ(t.terminal.stall_period, Period{2});
    EXPECT_EQ(t.terminal.asymptotic_adopters, 2u);
}

TEST(Simulate, InstanceB) {
    const Instance b = testing::instance_b();
    SimulationOptions opts;
    opts.horizon = 100;
    const DiffusionTrace t = simulate(b, opts);
    EXPECT_EQ(t.adopters_at(1), 2u);
    EXPECT_EQ(t.adopters_at(2), 2u);
    EXPECT_EQ(t.adopters_at(3), 10u);
    EXPECT_TRUE(t.terminal.certified);
    EXPECT_FALSE(t.terminal.cutoff_group);
    EXPECT_EQ(t.periods[2].new_groups, (std::vector<GroupIndex>{1}));
}

TEST(Simulate, InstanceC) {
    SimulationOptions opts;
    opts.horizon = 10;
    const DiffusionTrace t = simulate(testing::instance_c(), opts);
    for (Period p = 1; p <= 10; ++p) EXPECT_EQ(t.adopters_at(p), 0u);
    EXPECT_TRUE(t.terminal.certified);
    EXPECT_EQ(t.terminal.cutoff_group, GroupIndex{0});
    EXPECT_EQ(t.terminal.stall_period, Period{1});
}

TEST(Simulate, ZeroHorizonRejected) {
    SimulationOptions opts;
    opts.horizon = 0;
    EXPECT_THROW(simulate(testing::instance_a(), opts), std::invalid_argument);
}

TEST(Simulate, EventsBeyondHorizonAreScheduled) {
    const Instance heavy = testing::stall_heavy_instance();
    SimulationOptions opts;
    opts.horizon = 50;
    const DiffusionTrace t = simulate(heavy, opts);
    EXPECT_TRUE(t.terminal.certified);
    EXPECT_EQ(t.periods.size(), 50u);
    EXPECT_EQ(t.terminal.asymptotic_adopters, 10000u);
    EXPECT_EQ(t.last_adoption(), Period{901});
    EXPECT_EQ(t.adopters_at(500), 5000u);
}

TEST(Simulate, WithoutFastForwardUncertifiedWhenStillMoving) {
    const Instance heavy = testing::stall_heavy_instance();
    SimulationOptions opts;
    opts.horizon = 50;
    opts.fast_forward = false;
    const DiffusionTrace t = simulate(heavy, opts);
    EXPECT_FALSE(t.terminal.certified);
    EXPECT_EQ(t.terminal.asymptotic_adopters, 1000u);
}

TEST(FastForward, InstanceBEvent) {
    const Instance b = testing::instance_b();
    const MarketState s2 = state_at(b, 2);
    EXPECT_EQ(adoption_margin(2, s2, b), Rational{-50});
    EXPECT_EQ(stalled_margin_gain(1, s2, b), Rational{60});
    const auto event = fast_forward_stall(s2, b);
    ASSERT_TRUE(event);
    EXPECT_EQ(event->period, 3u);
    EXPECT_EQ(event->groups, (std::vector<GroupIndex>{1}));
}

TEST(FastForward, InstanceANoFurtherAdoption) {
    const Instance a = testing::instance_a();
    const MarketState s2 = state_at(a, 2);
    EXPECT_EQ(stalled_margin_gain(1, s2, a), Rational{50 - 90});
    EXPECT_FALSE(fast_forward_stall(s2, a));
}

TEST(FastForward, ExactDivisibilityWaitsOneMore) {
    EXPECT_EQ(periods_until_positive(Rational{60}, Rational{60}), 2);
    EXPECT_EQ(periods_until_positive(Rational{50}, Rational{60}), 1);
    EXPECT_EQ(periods_until_positive(Rational{0}, Rational{60}), 1);
    EXPECT_EQ(periods_until_positive(Rational{121}, Rational{60}), 3);
    EXPECT_EQ(periods_until_positive(make_rational(7, 2), make_rational(7, 4)), 3);
}

TEST(FastForward, RejectsMovingState) {
    const Instance a = testing::instance_a();
    EXPECT_THROW(fast_forward_stall(state_at(a, 1), a), std::logic_error);
}

TEST(FastForward, EventMatchesStepping) {
    for (std::uint64_t n = 0; n < 300; ++n) {
        const Instance inst = testing::corpus_instance(n);
        MarketState s = state_at(inst, 2);
        bool pending = false;
        for (GroupIndex k = 0; k < inst.group_count(); ++k) {
            const IndividualId i = inst.group_begin(k);
            pending = pending || (!s.has_adopted(i) && adoption_condition(i, s, inst));
        }
        if (pending) continue;
        const auto event = fast_forward_stall(s, inst);
        // Step until something happens (bounded).
        std::optional<Period> observed;
        for (int guard = 0; guard < 3000 && !observed; ++guard) {
            const StepResult r = step(s, inst);
            if (!r.new_adopters.empty()) observed = s.period;
            s = r.state;
        }
        if (event) {
            EXPECT_EQ(observed, event->period) << "instance " << n;
        } else {
            EXPECT_FALSE(observed) << "instance " << n;
        }
    }
}

TEST(Thresholds, InstanceA) {
    const Instance a = testing::instance_a();
    const ThresholdSequence seq = threshold_sequence(simulate(a), a);
    EXPECT_EQ(seq.at(1), Threshold::at(Rational{90}));
    EXPECT_EQ(seq.at(2), Threshold::at(make_rational(175, 2)));
    EXPECT_FALSE(seq.empirical);
    ASSERT_TRUE(seq.tail);
    // Probe: a group at H = 88 lies above H_2 = 87.5.
    EXPECT_TRUE(seq.at(2).admits(Rational{88}));
    EXPECT_FALSE(seq.at(2).admits(Rational{87}));
    // The tail agrees with the explicit values and keeps decreasing toward a limit above 50.
    EXPECT_GT(seq.at(1000000), Threshold::at(Rational{50}));
    EXPECT_LE(seq.at(1000000), seq.at(1000));
}

TEST(Thresholds, InstanceCStaysAtIncumbent) {
    const Instance c = testing::instance_c();
    SimulationOptions opts;
    opts.horizon = 10;
    const ThresholdSequence seq = threshold_sequence(simulate(c, opts), c);
    EXPECT_EQ(seq.at(1), Threshold::at(Rational{90}));
    EXPECT_FALSE(seq.at(1).admits(Rational{90}));
}

TEST(Thresholds, FullAdoptionGivesNegativeInfinity) {
    const Instance b = testing::instance_b();
    const ThresholdSequence seq = threshold_sequence(simulate(b), b);
    EXPECT_TRUE(seq.at(3).is_finite());
    EXPECT_FALSE(seq.at(4).is_finite());
    EXPECT_FALSE(seq.at(5000).is_finite());
}

TEST(Thresholds, TailMatchesExplicitExtension) {
    for (std::uint64_t n = 0; n < 150; ++n) {
        const Instance inst = testing::corpus_instance(n, NetworkKind::kUniform);
        SimulationOptions short_run;
        short_run.horizon = 10;
        SimulationOptions long_run;
        long_run.horizon = 80;
        const DiffusionTrace a = simulate(inst, short_run);
        const DiffusionTrace b = simulate(inst, long_run);
        if (!a.terminal.certified) continue;
        const ThresholdSequence sa = threshold_sequence(a, inst);
        const ThresholdSequence sb = threshold_sequence(b, inst);
        for (Period t = 1; t <= 80; ++t) EXPECT_EQ(sa.at(t), sb.at(t)) << "instance " << n << " t " << t;
    }
}

TEST(Thresholds, GroupTiesEmpiricalOrUndefined) {
    int empirical = 0;
    for (std::uint64_t n = 0; n < 300; ++n) {
        const Instance inst = testing::corpus_instance(n, NetworkKind::kGroupTies);
        const DiffusionTrace t = simulate(inst);
        if (is_aspiration_monotone(t, inst)) {
            const ThresholdSequence seq = threshold_sequence(t, inst);
            EXPECT_TRUE(seq.empirical);
            ++empirical;
            for (Period p = 1; p <= seq.explicit_length(); ++p) {
                for (IndividualId i = 0; i < inst.individual_count(); ++i) {
                    EXPECT_EQ(t.adopted_by(i, p), seq.at(p).admits(inst.aspiration_of(i)));
                }
            }
        } else {
            EXPECT_THROW(threshold_sequence(t, inst), ThresholdsUndefinedError);
        }
    }
    EXPECT_GT(empirical, 0);
}

TEST(Thresholds, GroupTiesOutOfOrderAdoption) {
    // Group 2 puts no weight on its own group, so its own incumbent history
    // weighs relatively more than it does for group 3.
    const Population pop{{AspirationGroup{1, Rational{95}}, AspirationGroup{1, Rational{80}},
                          AspirationGroup{1, Rational{79}}}};
    const Instance inst = validate_instance(
        pop, ProductSpec::group_constant(Rational{90}, Rational{100}, make_rational(1, 2), 3),
        GroupTiesNetwork{{Rational{1}, Rational{0}, Rational{1}}});
    const DiffusionTrace t = simulate(inst);
    EXPECT_EQ(t.adoption_period[2], Period{2});
    EXPECT_GT(t.adoption_period[1].value_or(1000), Period{2});
    EXPECT_FALSE(is_aspiration_monotone(t, inst));
    EXPECT_THROW(threshold_sequence(t, inst), ThresholdsUndefinedError);
}

TEST(Thresholds, HomophilyIsMonotone) {
    for (std::uint64_t n = 0; n < 300; ++n) {
        const Instance inst = testing::corpus_instance(n, NetworkKind::kHomophily);
        const ThresholdSequence seq = threshold_sequence(simulate(inst), inst);
        for (Period t = 2; t <= seq.explicit_length(); ++t) EXPECT_LE(seq.at(t), seq.at(t - 1));
    }
}

TEST(Trace, PeriodOneLaw) {
    for (std::uint64_t n = 0; n < 300; ++n) {
        const Instance inst = testing::corpus_instance(n);
        const DiffusionTrace t = simulate(inst);
        for (IndividualId i = 0; i < inst.individual_count(); ++i) {
            EXPECT_EQ(t.adopted_by(i, 1), inst.aspiration_of(i) > inst.incumbent_payoff());
        }
    }
}

TEST(Trace, AverageModeSameDecisions) {
    for (std::uint64_t n = 0; n < 200; ++n) {
        const Instance inst = testing::corpus_instance(n);
        SimulationOptions sum_opts;
        sum_opts.horizon = 60;
        sum_opts.fast_forward = false;
        SimulationOptions avg_opts = sum_opts;
        avg_opts.mode = EvaluationMode::kAverage;
        avg_opts.reevaluate_adopters = true;
        const DiffusionTrace a = simulate(inst, sum_opts);
        const DiffusionTrace b = simulate(inst, avg_opts);
        EXPECT_TRUE(same_adoptions(a, b, 60)) << "instance " << n;
        EXPECT_EQ(b.switchbacks, 0u);
    }
}

TEST(Trace, AspirationMonotoneDetection) {
    const Instance b = testing::instance_b();
    DiffusionTrace t = simulate(b);
    EXPECT_TRUE(is_aspiration_monotone(t, b));
    t.adoption_period[0] = 5;  // splits group 1 and puts it after group 2
    EXPECT_FALSE(is_aspiration_monotone(t, b));
}

}  // namespace
}  // namespace cbd
