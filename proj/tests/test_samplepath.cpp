#include "cmdp/chain.hpp"
#include "cmdp/instances.hpp"
#include "cmdp/samplepath.hpp"
#include "cmdp/simulate.hpp"
#include "cmdp/solver.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cmdp;

TEST(SamplePath, HavivNoPolicyIsFeasible) {
    const Mdp mdp = instances::haviv();
    for (const auto& pi : enumerate_policies(mdp)) {
        const auto v = samplepath_feasible(mdp, pi, mdp.state_index("x"));
        EXPECT_FALSE(v.feasible);
        EXPECT_EQ(v.witness, 0u);
        EXPECT_EQ(v.witness_gain, (RationalVector{Rational(-3, 40)}));
    }
    EXPECT_TRUE(samplepath_feasible(mdp, Policy::parse(mdp, "y=b"), mdp.state_index("y")).feasible);
}

TEST(SamplePath, UnconstrainedIsVacuouslyFeasible) {
    std::mt19937_64 rng(401);
    for (int i = 0; i < 20; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {.max_dim = 0});
        EXPECT_TRUE(samplepath_feasible(mdp, gen::random_policy(rng, mdp), 0).feasible);
    }
}

TEST(SamplePath, AlmostSureImpliesInExpectation) {
    std::mt19937_64 rng(403);
    for (int i = 0; i < 200; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {.max_states = 10});
        const auto v = samplepath_feasible(mdp, gen::random_policy(rng, mdp), 0);
        if (v.feasible)
            EXPECT_TRUE(nonnegative(v.evaluation.constraint));
    }
}

TEST(SamplePath, YachtUniqueFeasibleOptimum) {
    const Mdp mdp = instances::yacht();
    const auto x = mdp.state_index("x");
    std::optional<Policy> best;
    Rational best_value;
    std::size_t ties = 0;
    for (const auto& pi : enumerate_policies(mdp)) {
        const auto v = samplepath_feasible(mdp, pi, x);
        if (!v.feasible)
            continue;
        if (!best || v.evaluation.value > best_value) {
            best = pi;
            best_value = v.evaluation.value;
            ties = 1;
        } else if (v.evaluation.value == best_value) {
            ++ties;
        }
    }
    ASSERT_TRUE(best.has_value());
    EXPECT_EQ(ties, 1u);
    EXPECT_EQ(best->str(mdp), "y=yacht,z=no_yacht");
}

TEST(Decomposable, HavivClassesAndControllability) {
    const Mdp mdp = instances::haviv();
    const auto classes = trans_policy_classes(mdp);
    EXPECT_EQ(classes.classes.size(), 3u);
    const auto c = controllable_classes(mdp, mdp.state_index("x"));
    ASSERT_EQ(c.classes.size(), 3u);
    EXPECT_EQ(c.classes[0].min_absorption, Rational(1, 2));
    EXPECT_EQ(c.classes[0].max_absorption, Rational(1, 2));
    EXPECT_FALSE(c.classes[0].controllable);
    for (auto k : {1u, 2u}) {
        EXPECT_EQ(c.classes[k].min_absorption, Rational(0));
        EXPECT_EQ(c.classes[k].max_absorption, Rational(1, 2));
        EXPECT_TRUE(c.classes[k].controllable);
    }
}

TEST(Decomposable, RejectsPolicyDependentClasses) {
    // Under "leave" state 0 is transient; under "stay" it is its own class.
    const Mdp mdp({{"s0", {{"stay", 0, {}, {{0, 1}}}, {"leave", 0, {}, {{1, 1}}}}},
                   {"s1", {{"stay", 0, {}, {{1, 1}}}}}},
                  0, "s0");
    try {
        trans_policy_classes(mdp);
        FAIL();
    } catch (const NotDecomposable& e) {
        EXPECT_EQ(e.offending(), StateSet{0});
    }
}

TEST(Convert, HavivExpectedProblemIsInfeasible) {
    const Mdp mdp = instances::haviv();
    const auto x = mdp.state_index("x");
    const Mdp conv = convert_to_expected(mdp, x);
    EXPECT_EQ(conv.constraint_dim(), 3u);
    EXPECT_FALSE(solve(conv, x).optimal());
    const auto bad = mdp.state_index("c1_0");
    EXPECT_EQ(conv.action(bad, 0).constraint, (RationalVector{Rational(-7, 8), 0, 0}));
    EXPECT_EQ(conv.action(x, 0).constraint, (RationalVector{0, 0, 0}));
}

TEST(Convert, SelectiveHavivChoosesB) {
    const Mdp mdp = instances::haviv();
    const auto x = mdp.state_index("x");
    EXPECT_EQ(converted_classes(mdp, x, true), (std::vector<std::size_t>{1, 2}));
    const Mdp sel = selective_convert(mdp, x);
    EXPECT_EQ(sel.constraint_dim(), 2u);
    const auto r = solve(sel, x);
    ASSERT_TRUE(r.optimal());
    EXPECT_EQ(r.policy->str(sel), "y=b");
    EXPECT_EQ(r.value, Rational(10));
}

TEST(Convert, SingleClassAndSingleAction) {
    const Mdp cyc({{"u", {{"go", 1, {Rational(1, 2)}, {{1, 1}}}}}, {"v", {{"go", 0, {-1}, {{0, 1}}}}}}, 1, "u");
    const Mdp conv = convert_to_expected(cyc, 0);
    EXPECT_EQ(conv.states(), cyc.states());
    EXPECT_EQ(selective_convert(cyc, 0).constraint_dim(), 0u);
    for (const auto& cls : controllable_classes(cyc, 0).classes)
        EXPECT_FALSE(cls.controllable);
}

TEST(Convert, YachtAllClassesControllable) {
    const Mdp mdp = instances::yacht();
    const auto x = mdp.state_index("x");
    const auto c = controllable_classes(mdp, x);
    EXPECT_EQ(c.classes.size(), 4u);
    for (const auto& cls : c.classes)
        EXPECT_TRUE(cls.controllable);
    const Mdp conv = convert_to_expected(mdp, x);
    EXPECT_EQ(conv.constraint_dim(), 4u);
    EXPECT_EQ(selective_convert(mdp, x), conv);
    for (const auto& pi : enumerate_policies(mdp))
        EXPECT_EQ(samplepath_feasible(mdp, pi, x).feasible, nonnegative(evaluate(conv, pi, x).constraint));
}

TEST(Convert, PreservesValuesAndKernel) {
    std::mt19937_64 rng(409);
    for (int i = 0; i < 50; ++i) {
        const Mdp mdp = gen::random_decomposable(rng, 3, 1 + i % 2);
        const Mdp conv = convert_to_expected(mdp, 0);
        for (const auto& pi : enumerate_policies(mdp)) {
            EXPECT_EQ(induced_chain(conv, pi), induced_chain(mdp, pi));
            EXPECT_EQ(evaluate(conv, pi, 0).value, evaluate(mdp, pi, 0).value);
        }
    }
}

TEST(Convert, ClasswiseEquivalenceOnReachableClasses) {
    std::mt19937_64 rng(419);
    for (int i = 0; i < 100; ++i) {
        const Mdp mdp = gen::random_decomposable(rng, 3, 1 + i % 2);
        const Mdp conv = convert_to_expected(mdp, 0);
        for (const auto& pi : enumerate_policies(mdp)) {
            const auto sp = samplepath_feasible(mdp, pi, 0);
            const auto w = evaluate(conv, pi, 0).constraint;
            if (sp.feasible)
                EXPECT_TRUE(nonnegative(w));
            bool all_reached = true;
            for (const auto& p : sp.evaluation.absorption)
                all_reached = all_reached && !p.is_zero();
            if (all_reached)
                EXPECT_EQ(sp.feasible, nonnegative(w));
        }
    }
}

TEST(Simulate, SameSeedSameTrajectory) {
    const Mdp mdp = instances::haviv();
    const auto pi = Policy::parse(mdp, "y=a");
    const auto a = simulate(mdp, pi, 0, 5000, 42);
    const auto b = simulate(mdp, pi, 0, 5000, 42);
    EXPECT_EQ(a.trajectory, b.trajectory);
    EXPECT_EQ(trajectory_digest(a.trajectory), trajectory_digest(b.trajectory));
    bool differs = false;
    for (std::uint64_t s = 0; s < 20 && !differs; ++s)
        differs = simulate(mdp, pi, 0, 5000, run_seed(1, s)).trajectory != a.trajectory;
    EXPECT_TRUE(differs);
}

TEST(Simulate, DeterministicCycleFrequencyIsExact) {
    const Mdp mdp = instances::haviv();
    const auto pi = Policy::parse(mdp, "y=a");
    const auto start = mdp.state_index("c2_0");
    const auto r = simulate(mdp, pi, start, 20 * 50, 9);
    EXPECT_EQ(r.visits[start], 50u);
    EXPECT_EQ(r.constraint, (RationalVector{Rational(3, 40)}));
    EXPECT_EQ(r.value, Rational(10));
}

TEST(Simulate, PathIsFeasibleUnderThePolicy) {
    std::mt19937_64 rng(421);
    for (int i = 0; i < 30; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {});
        const auto pi = gen::random_policy(rng, mdp);
        const auto r = simulate(mdp, pi, 0, 200, rng());
        const auto chain = induced_chain(mdp, pi);
        for (std::size_t t = 1; t < r.trajectory.horizon(); ++t)
            EXPECT_GT(chain(r.trajectory.states[t - 1], r.trajectory.states[t]), Rational(0));
        const auto [v, w] = finite_horizon_averages(mdp, pi, r.trajectory);
        EXPECT_EQ(v, r.value);
        EXPECT_EQ(w, r.constraint);
    }
}

TEST(Simulate, RunSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i)
        seen.insert(run_seed(2024, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_THROW(simulate(instances::twochain(), Policy::first_actions(instances::twochain()), 0, 0, 1),
                 std::invalid_argument);
}
