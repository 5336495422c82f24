#include "oracles.hpp"
#include "stemcert/jorder.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stemcert;
using namespace stemcert::jorder;

namespace {

// Worpitzky-type double sum, independent of the recurrence.
BigRational bernoulli_by_double_sum(long n) {
    BigRational total;
    for (long k = 0; k <= n; ++k) {
        BigInt inner(0);
        for (long j = 0; j <= k; ++j) {
            BigInt term = binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)) *
                          BigInt::pow(BigInt(j), static_cast<unsigned long>(n));
            inner += (j % 2 ? -term : term);
        }
        total += BigRational(inner, BigInt(k + 1));
    }
    return total;
}

}  // namespace

TEST(MOfT, TwentyFour) {
    EXPECT_EQ(stabilized_gcd(2, 200, 12).value, BigInt(24));
    EXPECT_EQ(m_closed_form(2), BigInt(24));
    EXPECT_EQ(m_via_bernoulli(1), BigInt(24));
    const auto b = j_order_bound(2);
    EXPECT_EQ(b.value, BigInt(24));
    EXPECT_EQ(b.methods.size(), 3u);
    EXPECT_TRUE(b.stable);
}

TEST(MOfT, KnownValuesAgreeThreeWays) {
    const std::vector<std::pair<long, long>> table{{2, 24},      {4, 240},   {6, 504},    {8, 480},
                                                   {10, 264},    {12, 65520}, {14, 24},   {16, 16320},
                                                   {18, 28728},  {20, 13200}, {22, 552},  {24, 131040}};
    for (const auto& [t, m] : table) {
        const auto b = j_order_bound(t);
        EXPECT_EQ(b.value, BigInt(m)) << t;
        EXPECT_EQ(b.methods.size(), 3u);
    }
    for (long t = 1; t <= 23; t += 2) EXPECT_EQ(j_order_bound(t).value, BigInt(2)) << t;
}

TEST(MOfT, ValuationOracle) {
    for (long t = 1; t <= 24; ++t)
        EXPECT_EQ(m_closed_form(t).to_int64(), static_cast<std::int64_t>(oracle::m_by_valuations(t))) << t;
}

TEST(MOfT, StabilizesEarly) {
    for (long t = 1; t <= 24; ++t) EXPECT_LE(stabilized_gcd(t, 200, t + 10).settled_at, 5) << t;
}

TEST(MOfT, Preconditions) {
    EXPECT_THROW(stabilized_gcd(0, 200, 10), std::invalid_argument);
    EXPECT_THROW(stabilized_gcd(2, 2, 10), std::invalid_argument);
    EXPECT_THROW(stabilized_gcd(2, 200, 5), std::invalid_argument);
    EXPECT_THROW(m_closed_form(0), std::invalid_argument);
    EXPECT_THROW(m_via_bernoulli(0), std::invalid_argument);
}

TEST(MOfT, TooSmallRangeIsReportedUnstable) {
    // with K = 3 the running gcd still changes inside the stability window
    EXPECT_THROW(j_order_bound(2, 3, 12), VerificationFailure);
}

TEST(Bernoulli, SmallValues) {
    EXPECT_EQ(bernoulli(0), BigRational(1));
    EXPECT_EQ(bernoulli(2), BigRational(BigInt(1), BigInt(6)));
    EXPECT_EQ(bernoulli(4), BigRational(BigInt(-1), BigInt(30)));
    EXPECT_EQ(bernoulli(12), BigRational(BigInt(-691), BigInt(2730)));
    EXPECT_THROW(bernoulli(3), std::invalid_argument);
    EXPECT_THROW(bernoulli(-2), std::invalid_argument);
    EXPECT_THROW(bernoulli(202), std::invalid_argument);
}

TEST(Bernoulli, MatchesDoubleSum) {
    for (long n = 0; n <= 40; n += 2) EXPECT_EQ(bernoulli(n), bernoulli_by_double_sum(n)) << n;
}

TEST(Property, VonStaudtClausen) {
    for (long n = 2; n <= 60; n += 2) {
        const BigRational b = bernoulli(n);
        ASSERT_EQ(b.den(), von_staudt_clausen_denominator(n)) << n;
        // B_n + sum over (p - 1) | n of 1/p is an integer
        BigRational s = b;
        for (long p = 2; p <= n + 1; ++p)
            if (n % (p - 1) == 0 && oracle::is_small_prime(static_cast<oracle::u64>(p)))
                s += BigRational(BigInt(1), BigInt(p));
        ASSERT_TRUE(s.is_integer()) << n;
    }
}

TEST(Property, RunningGcdIsMonotone) {
    for (long t = 1; t <= 24; ++t) {
        const auto g = stabilized_gcd(t, 60, t + 10);
        for (std::size_t i = 1; i < g.running.size(); ++i) ASSERT_TRUE(g.running[i].divides(g.running[i - 1]));
        ASSERT_EQ(g.running.back(), g.value);
    }
}

TEST(FederGitler, Examples) {
    EXPECT_FALSE(feder_gitler_equivalent(1, 12, 0, BigInt(24)));
    EXPECT_TRUE(feder_gitler_equivalent(1, 24, 0, BigInt(24)));
    EXPECT_EQ(hopf_bundle_j_order(1), BigInt(24));
    EXPECT_THROW(hopf_bundle_j_order(2), std::invalid_argument);
    EXPECT_THROW(feder_gitler_equivalent(0, 1, 1, BigInt(24)), std::invalid_argument);
    EXPECT_THROW(feder_gitler_equivalent(1, -1, 1, BigInt(24)), std::invalid_argument);
    EXPECT_THROW(feder_gitler_equivalent(1, 1, 1, BigInt(0)), std::invalid_argument);
}

TEST(Property, FederGitlerIsAnEquivalenceRelation) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const BigInt bn(1 + static_cast<long>(rng() % 48));
        const long k = static_cast<long>(rng() % 200), l = static_cast<long>(rng() % 200),
                   m = static_cast<long>(rng() % 200);
        ASSERT_TRUE(feder_gitler_equivalent(1, k, k, bn));
        ASSERT_EQ(feder_gitler_equivalent(1, k, l, bn), feder_gitler_equivalent(1, l, k, bn));
        if (feder_gitler_equivalent(1, k, l, bn) && feder_gitler_equivalent(1, l, m, bn)) {
            ASSERT_TRUE(feder_gitler_equivalent(1, k, m, bn));
        }
    }
}

TEST(Thom, StuntedSpaces) {
    const auto s = thom_space(Family::QuaternionicP, 1, 24);
    EXPECT_EQ(s.name(), "HP^25/HP^23");
    EXPECT_EQ(s.pretty(), "HP²⁵/HP²³");
    EXPECT_EQ(s.cell_dimensions(), (std::vector<long>{96, 100}));
    const auto c = thom_space(Family::ComplexP, 2, 3);
    EXPECT_EQ(c.cell_dimensions(), (std::vector<long>{6, 8, 10}));
    EXPECT_THROW(thom_space(Family::ComplexP, 0, 3), std::invalid_argument);
}

TEST(KO, RealificationOfHopfSquare) {
    const auto j = checks::eta_squared();
    EXPECT_EQ(j.at("eta"), "2");
    EXPECT_EQ(j.at("constant"), "-1");
    const auto r = checks::realify_eta_squared();
    EXPECT_TRUE(r.at("equal").get<bool>());
    EXPECT_TRUE(r.at("stably_trivial").get<bool>());
    EXPECT_EQ(ko_s2_realify(0, 1).reduced, 1);
    EXPECT_EQ(ko_s2_realify(-1, 2).reduced, 0);
}

TEST(KO, QuaternionicRelation) {
    const auto c = ko_s4_relation_check();
    EXPECT_TRUE(c.ok());
    EXPECT_EQ(c.rank_lhs, BigInt(96));
    EXPECT_EQ(c.charge_lhs, BigInt(24));
}

TEST(KO, DoubledHopfEInvariantVanishes) {
    for (const auto& row : checks::doubled_hopf_e_invariant()) {
        EXPECT_EQ(row.at("e"), "1/2");
        EXPECT_EQ(row.at("doubled_e"), "0");
    }
}

TEST(Chain, ThreeComputedOneCited) {
    const auto steps = prop_2_3_chain();
    ASSERT_EQ(steps.size(), 4u);
    int computed = 0;
    for (const auto& s : steps) computed += s.status == StepStatus::Computed;
    EXPECT_EQ(computed, 3);
    EXPECT_EQ(steps[2].status, StepStatus::Cited);
}

TEST(Serialization, BoundJson) {
    const auto j = to_json(j_order_bound(2));
    EXPECT_EQ(j.at("m"), "24");
    EXPECT_EQ(j.at("methods").size(), 3u);
}
