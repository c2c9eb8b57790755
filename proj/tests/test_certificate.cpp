#include "cmdp/certificate.hpp"
#include "cmdp/chain.hpp"
#include "cmdp/evaluation.hpp"
#include "cmdp/instances.hpp"
#include "cmdp/solver.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace cmdp;

namespace {

Mdp self_loop(const Rational& reward) {
    return Mdp({{"s", {{"stay", reward, {}, {{0, 1}}}}}}, 0, "s");
}

Certificate twochain_certificate(const Mdp& mdp, const Rational& mu) {
    Certificate c;
    c.mu = {mu};
    c.gain = Rational(1, 2);
    c.potential.assign(mdp.size(), std::nullopt);
    c.potential[mdp.state_index("x")] = Rational(-1, 2);
    c.potential[mdp.state_index("a0")] = Rational(0);
    c.potential[mdp.state_index("b0")] = Rational(0);
    return c;
}

} // namespace

TEST(CheckCertificate, TwochainHandSolvedPasses) {
    const Mdp mdp = instances::twochain();
    const auto pi = Policy::first_actions(mdp);
    const auto rep = check_certificate(mdp, mdp.state_index("x"), pi, twochain_certificate(mdp, Rational(1, 2)));
    EXPECT_TRUE(rep.pass());
    EXPECT_FALSE(rep.first_failure.has_value());
    for (const auto& r : rep.residuals)
        EXPECT_TRUE(r.gap.is_zero());
}

TEST(CheckCertificate, TwochainWithoutPriceFailsAtA4) {
    const Mdp mdp = instances::twochain();
    const auto rep = check_certificate(mdp, mdp.state_index("x"), Policy::first_actions(mdp),
                                       twochain_certificate(mdp, Rational(0)));
    EXPECT_TRUE(rep.a1 && rep.a2 && rep.a3);
    EXPECT_FALSE(rep.a4);
    EXPECT_EQ(rep.first_failure, Condition::a4);
    EXPECT_FALSE(rep.pass());
}

TEST(CheckCertificate, NegativePriceFailsAtA2) {
    const Mdp mdp = instances::twochain();
    const auto rep = check_certificate(mdp, mdp.state_index("x"), Policy::first_actions(mdp),
                                       twochain_certificate(mdp, Rational(-1, 2)));
    EXPECT_EQ(rep.first_failure, Condition::a2);
}

TEST(CheckCertificate, SelfLoopUnconstrained) {
    const Mdp mdp = self_loop(7);
    Certificate c{{}, 7, {Rational(0)}};
    EXPECT_TRUE(check_certificate(mdp, 0, Policy::first_actions(mdp), c).pass());
    c.gain = 6;
    EXPECT_FALSE(check_certificate(mdp, 0, Policy::first_actions(mdp), c).pass());
}

TEST(CheckCertificate, MissingPotentialOrWrongDimensionThrows) {
    const Mdp mdp = instances::twochain();
    auto c = twochain_certificate(mdp, Rational(1, 2));
    c.potential[mdp.state_index("a0")].reset();
    EXPECT_THROW(check_certificate(mdp, 0, Policy::first_actions(mdp), c), CertificateError);
    auto d = twochain_certificate(mdp, Rational(1, 2));
    d.mu.push_back(0);
    EXPECT_THROW(check_certificate(mdp, 0, Policy::first_actions(mdp), d), CertificateError);
}

TEST(FindCertificate, TwochainPinsPriceAndGain) {
    const Mdp mdp = instances::twochain();
    const auto x = mdp.state_index("x");
    const auto pi = Policy::first_actions(mdp);
    const auto found = find_certificate(mdp, x, pi);
    ASSERT_TRUE(found.found());
    EXPECT_EQ(found.certificate->mu, (RationalVector{Rational(1, 2)}));
    EXPECT_EQ(found.certificate->gain, Rational(1, 2));
    EXPECT_EQ(found.certificate->potential[x], Rational(0));
    EXPECT_TRUE(check_certificate(mdp, x, pi, *found.certificate).pass());
    EXPECT_EQ(found.certificate->gain, solve(mdp, x).value);
}

TEST(FindCertificate, SelfLoopGain) {
    const Mdp mdp = self_loop(7);
    const auto found = find_certificate(mdp, 0, Policy::first_actions(mdp));
    ASSERT_TRUE(found.found());
    EXPECT_TRUE(found.certificate->mu.empty());
    EXPECT_EQ(found.certificate->gain, Rational(7));
}

TEST(FindCertificate, HavivIsUnsatWithChainConflict) {
    const Mdp mdp = instances::haviv();
    const auto found = find_certificate(mdp, mdp.state_index("x"), Policy::parse(mdp, "y=a"));
    ASSERT_FALSE(found.found());
    EXPECT_EQ(found.reason, UnsatReason::gain_conflict);
    ASSERT_EQ(found.classes.size(), 2u);
    EXPECT_EQ(found.classes[0].class_index, 0u);
    EXPECT_EQ(found.classes[1].class_index, 1u);
    EXPECT_EQ(found.classes[0].constraint_gain, (RationalVector{Rational(-3, 40)}));
    EXPECT_EQ(found.classes[1].reward_gain, Rational(10));
    // Multipliers combine the two gain equations into 0 = 10 + 3/20 mu.
    EXPECT_EQ(found.classes[0].multiplier, -found.classes[1].multiplier);
}

TEST(FindCertificate, InfeasiblePolicyReportsA1) {
    const Mdp mdp = instances::haviv();
    const auto found = find_certificate(mdp, mdp.state_index("x"), Policy::parse(mdp, "y=b"));
    ASSERT_FALSE(found.found());
    EXPECT_EQ(found.reason, UnsatReason::constraint_violated);
    EXPECT_EQ(found.constraint, (RationalVector{Rational(-1, 40)}));
}

TEST(FindCertificate, UniqueRecurrentClassUnconstrained) {
    std::mt19937_64 rng(211);
    for (int i = 0; i < 30; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {.max_states = 6, .max_actions = 1, .max_dim = 0, .full_support = true});
        const auto pi = Policy::first_actions(mdp);
        const auto found = find_certificate(mdp, 0, pi);
        ASSERT_TRUE(found.found());
        EXPECT_EQ(found.certificate->gain, evaluate(mdp, pi, 0).value);
    }
}

TEST(FindCertificate, SoundAndOptimalOnRandomInstances) {
    std::mt19937_64 rng(223);
    int found_count = 0;
    for (int i = 0; i < 200; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {.max_states = 7, .max_dim = 1});
        const StateIndex x = 0;
        const auto best = solve(mdp, x);
        std::vector<Policy> candidates{gen::random_policy(rng, mdp)};
        if (best.optimal())
            candidates.push_back(*best.policy);
        for (const auto& pi : candidates) {
            const auto search = find_certificate(mdp, x, pi);
            if (!search.found())
                continue;
            ++found_count;
            const auto rep = check_certificate(mdp, x, pi, *search.certificate);
            EXPECT_TRUE(rep.pass());
            EXPECT_TRUE(rep.dominates_on_closure);
            const auto v = evaluate(mdp, pi, x).value;
            EXPECT_EQ(search.certificate->gain, v);
            ASSERT_TRUE(best.optimal());
            EXPECT_EQ(v, best.value);
        }
    }
    EXPECT_GT(found_count, 50);
}

TEST(FindCertificate, ResidualsVanishAtEveryReachableState) {
    std::mt19937_64 rng(227);
    for (int i = 0; i < 100; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {.max_states = 10, .max_dim = 1});
        const auto best = solve(mdp, 0);
        if (!best.optimal())
            continue;
        const auto search = find_certificate(mdp, 0, *best.policy);
        if (!search.found())
            continue;
        const auto rep = check_certificate(mdp, 0, *best.policy, *search.certificate);
        EXPECT_EQ(rep.reachable, reachable_states(mdp, *best.policy, 0));
        for (const auto& r : rep.residuals) {
            if (r.action == (*best.policy)[r.state])
                EXPECT_TRUE(r.gap.is_zero());
            else
                EXPECT_GE(r.gap, Rational(0));
        }
    }
}

TEST(FindCertificate, ShiftingThePotentialPreservesTheVerdict) {
    std::mt19937_64 rng(229);
    for (int i = 0; i < 100; ++i) {
        const Mdp mdp = gen::random_mdp(rng, {.max_states = 8, .max_dim = 1});
        const auto best = solve(mdp, 0);
        if (!best.optimal())
            continue;
        const auto search = find_certificate(mdp, 0, *best.policy);
        if (!search.found())
            continue;
        auto shifted = *search.certificate;
        const auto delta = gen::random_rational(rng, -5, 5, 3);
        for (auto s : reachable_states_all(mdp, 0))
            *shifted.potential[s] += delta;
        const auto a = check_certificate(mdp, 0, *best.policy, *search.certificate);
        const auto b = check_certificate(mdp, 0, *best.policy, shifted);
        EXPECT_TRUE(b.pass());
        ASSERT_EQ(a.residuals.size(), b.residuals.size());
        for (std::size_t k = 0; k < a.residuals.size(); ++k)
            EXPECT_EQ(a.residuals[k].gap, b.residuals[k].gap);
    }
}
