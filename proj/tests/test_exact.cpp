#include "stemcert/exact.hpp"

#include <gtest/gtest.h>

#include <random>

using stemcert::BigInt;
using stemcert::BigRational;

namespace {

BigInt random_big(std::mt19937_64& rng, int limbs) {
    BigInt r(0);
    for (int i = 0; i < limbs; ++i) r = r * BigInt::pow(BigInt(2), 64) + BigInt(static_cast<unsigned long>(rng()));
    return (rng() & 1) ? -r : r;
}

}  // namespace

TEST(BigInt, ParseAndPrint) {
    EXPECT_EQ(BigInt::parse("-123456789012345678901234567890").to_string(), "-123456789012345678901234567890");
    EXPECT_THROW(BigInt::parse("12a"), std::invalid_argument);
    EXPECT_THROW(BigInt::parse(""), std::invalid_argument);
}

TEST(BigInt, TruncatingAndFloorMod) {
    EXPECT_EQ(BigInt(-7) / BigInt(2), BigInt(-3));
    EXPECT_EQ(BigInt(-7) % BigInt(2), BigInt(-1));
    EXPECT_EQ(BigInt(-7).mod(BigInt(2)), BigInt(1));
    EXPECT_THROW(BigInt(1) / BigInt(0), std::domain_error);
}

TEST(BigInt, GcdExamples) {
    EXPECT_EQ(stemcert::gcd(BigInt(0), BigInt(0)), BigInt(0));
    EXPECT_EQ(stemcert::gcd(BigInt(-12), BigInt(18)), BigInt(6));
    EXPECT_EQ(stemcert::lcm(BigInt(4), BigInt(6)), BigInt(12));
}

TEST(BigInt, GcdFoldOfTheTwentyFourExample) {
    // gcd over k = 2..10 of k^12 (k^2 - 1)
    BigInt g(0);
    for (long k = 2; k <= 10; ++k)
        g = stemcert::gcd(g, BigInt::pow(BigInt(k), 12) * (BigInt::pow(BigInt(k), 2) - BigInt(1)));
    EXPECT_EQ(g, BigInt(24));
}

TEST(BigInt, Primality) {
    EXPECT_TRUE(stemcert::is_prime(BigInt(2)));
    EXPECT_TRUE(stemcert::is_prime(BigInt(999983)));
    EXPECT_FALSE(stemcert::is_prime(BigInt(1)));
    EXPECT_FALSE(stemcert::is_prime(BigInt(-3)));
    EXPECT_FALSE(stemcert::is_prime(BigInt(91)));
    EXPECT_THROW(stemcert::is_prime(BigInt::parse("1000000000039")), std::out_of_range);
}

TEST(BigInt, Valuations) {
    EXPECT_EQ(stemcert::padic_valuation(BigInt(24), BigInt(2)), 3u);
    EXPECT_EQ(stemcert::padic_valuation(BigInt(-24), BigInt(3)), 1u);
    EXPECT_EQ(stemcert::padic_valuation(BigInt(24), BigInt(5)), 0u);
    EXPECT_THROW(stemcert::padic_valuation(BigInt(0), BigInt(2)), std::domain_error);
    EXPECT_THROW(stemcert::padic_valuation(BigInt(8), BigInt(4)), std::invalid_argument);
}

TEST(BigRational, Normalizes) {
    const BigRational r(BigInt(6), BigInt(-4));
    EXPECT_EQ(r.num(), BigInt(-3));
    EXPECT_EQ(r.den(), BigInt(2));
    EXPECT_EQ(r.to_string(), "-3/2");
    EXPECT_EQ(BigRational::parse("4/2").to_string(), "2");
    EXPECT_THROW(BigRational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(BigRational, ModOne) {
    EXPECT_EQ(BigRational(BigInt(9), BigInt(18)).mod_one(), BigRational(BigInt(1), BigInt(2)));
    EXPECT_EQ(BigRational(BigInt(-1), BigInt(12)).mod_one(), BigRational(BigInt(11), BigInt(12)));
    EXPECT_EQ(BigRational(BigInt(3)).mod_one(), BigRational(0));
}

TEST(Binomial, SmallValues) {
    EXPECT_EQ(stemcert::binomial(5, 2), BigInt(10));
    EXPECT_EQ(stemcert::binomial(2, 5), BigInt(0));
    EXPECT_EQ(stemcert::binomial(60, 30).to_string(), "118264581564861424");
}

TEST(Property, GcdDividesAndIsGreatest) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const BigInt c = random_big(rng, 1);
        const BigInt a = random_big(rng, 1) * c, b = random_big(rng, 1) * c;
        const BigInt g = stemcert::gcd(a, b);
        ASSERT_GE(g.sign(), 0);
        if (a.is_zero() && b.is_zero()) continue;
        ASSERT_TRUE(g.divides(a));
        ASSERT_TRUE(g.divides(b));
        ASSERT_TRUE(c.abs().divides(g));
        ASSERT_EQ(stemcert::gcd(a / g, b / g), BigInt(1));
    }
}

TEST(Property, ValuationIsAdditive) {
    std::mt19937_64 rng(12);
    const BigInt primes[] = {BigInt(2), BigInt(3), BigInt(5), BigInt(7), BigInt(999983)};
    for (int trial = 0; trial < 500; ++trial) {
        BigInt a = random_big(rng, 2), b = random_big(rng, 2);
        if (a.is_zero() || b.is_zero()) continue;
        for (const auto& p : primes)
            ASSERT_EQ(stemcert::padic_valuation(a * b, p),
                      stemcert::padic_valuation(a, p) + stemcert::padic_valuation(b, p));
    }
}

TEST(Property, RationalFieldLaws) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> d(-1000, 1000);
    auto draw = [&] {
        long den = 0;
        while (den == 0) den = d(rng);
        return BigRational(BigInt(d(rng)), BigInt(den));
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const BigRational a = draw(), b = draw(), c = draw();
        ASSERT_EQ(a + b, b + a);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a - a, BigRational(0));
        if (!a.is_zero()) {
            ASSERT_EQ(a * (BigRational(1) / a), BigRational(1));
        }
        ASSERT_EQ(BigRational::parse(a.to_string()), a);
        ASSERT_EQ(stemcert::gcd(a.num(), a.den()), BigInt(1));
        const BigRational f = a.mod_one();
        ASSERT_GE(f, BigRational(0));
        ASSERT_LT(f, BigRational(1));
        ASSERT_TRUE((a - f).is_integer());
    }
}
