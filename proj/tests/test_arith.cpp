#include "twinsieve/arith.hpp"
#include "twinsieve/errors.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace twinsieve;
using u64 = std::uint64_t;

TEST(NearestInt, Examples)
{
    EXPECT_EQ(nearest_int(Rational(5, 6)), 1);
    EXPECT_EQ(nearest_int(Rational(7, 6)), 1);
    EXPECT_EQ(nearest_int(Rational(13, 6)), 2);
    EXPECT_EQ(nearest_int(Rational(-7, 6)), -1);
    EXPECT_EQ(nearest_int(Rational(4)), 4);
}

TEST(NearestInt, HalfIntegersAreRejected)
{
    EXPECT_THROW(nearest_int(Rational(1, 2)), DomainError);
    EXPECT_THROW(nearest_int(Rational(7, 2)), DomainError);
    EXPECT_THROW(nearest_int(Rational(-5, 2)), DomainError);
}

TEST(Nsix, Examples)
{
    EXPECT_EQ(nsix(5), 1u);
    EXPECT_EQ(nsix(7), 1u);
    EXPECT_EQ(nsix(11), 2u);
    EXPECT_EQ(nsix(13), 2u);
    EXPECT_EQ(nsix(61), 10u);
}

TEST(Nsix, RejectsSmallOrComposite)
{
    EXPECT_THROW(nsix(2), DomainError);
    EXPECT_THROW(nsix(3), DomainError);
    EXPECT_THROW(nsix(25), DomainError);
    EXPECT_THROW(nsix(1), DomainError);
}

TEST(Nsix, MatchesNearestIntegerUpTo10k)
{
    for (u64 p : ref::primes_upto(10'000, 4)) {
        const u64 s = nsix(p);
        EXPECT_EQ(BigInt(s), nearest_int(Rational(p, 6))) << p;
        EXPECT_TRUE(6 * s == p - 1 || 6 * s == p + 1) << p;
    }
}

TEST(IsPrime, AgreesWithTrialDivision)
{
    for (u64 n = 0; n <= 100'000; ++n) {
        ASSERT_EQ(is_prime(n), ref::is_prime(n)) << n;
    }
}

TEST(IsPrime, LargeKnownValues)
{
    EXPECT_TRUE(is_prime((u64{1} << 61) - 1));
    EXPECT_TRUE(is_prime(18446744073709551557ULL)); // 2^64 - 59
    EXPECT_FALSE(is_prime(3215031751ULL));          // strong pseudoprime to 2,3,5,7
    EXPECT_FALSE(is_prime(3825123056546413051ULL)); // strong pseudoprime to bases <= 23
    EXPECT_FALSE(is_prime(18446744073709551615ULL));
}

TEST(IsPrime, RandomSemiprimes)
{
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<u64> pick(1'000'000, 4'000'000'000ULL);
    for (int i = 0; i < 200; ++i) {
        u64 a = next_prime(pick(rng));
        u64 b = next_prime(pick(rng));
        EXPECT_TRUE(is_prime(a));
        EXPECT_FALSE(is_prime(a * b)) << a << "*" << b;
    }
}

TEST(NextPrime, Basics)
{
    EXPECT_EQ(next_prime(0), 2u);
    EXPECT_EQ(next_prime(2), 3u);
    EXPECT_EQ(next_prime(13), 17u);
    EXPECT_EQ(next_prime(61), 67u);
    EXPECT_THROW(next_prime(18446744073709551557ULL), CapacityError);
}

TEST(PrimeTable, MembershipAndIndexing)
{
    PrimeTable table(1000);
    EXPECT_EQ(table.limit(), 1000u);
    EXPECT_EQ(table.size(), 168u);
    EXPECT_EQ(table.nth(1), 2u);
    EXPECT_EQ(table.nth(2), 3u);
    EXPECT_EQ(table.nth(3), 5u);
    EXPECT_EQ(table.nth(18), 61u);
    EXPECT_EQ(table.nth(19), 67u);
    for (u64 n = 0; n <= 1000; ++n) {
        EXPECT_EQ(table.contains(n), ref::is_prime(n)) << n;
    }
    auto primes = table.primes();
    for (std::size_t i = 1; i < primes.size(); ++i) {
        EXPECT_LT(primes[i - 1], primes[i]);
    }
    EXPECT_THROW(table.contains(1001), std::out_of_range);
    EXPECT_THROW(table.nth(0), std::out_of_range);
    EXPECT_THROW(table.nth(169), std::out_of_range);
}

TEST(PrimeIndex, RoundTrip)
{
    EXPECT_EQ(prime_at(3), 5u);
    EXPECT_EQ(prime_at(30), 113u);
    EXPECT_EQ(prime_at(50), 229u);
    EXPECT_EQ(prime_index(5), 3u);
    EXPECT_EQ(prime_index(61), 18u);
    for (std::size_t j = 1; j <= 500; ++j) {
        EXPECT_EQ(prime_index(prime_at(j)), j);
    }
    EXPECT_THROW(prime_index(9), DomainError);
}

TEST(PrimesBetween, Examples)
{
    EXPECT_EQ(primes_between(7, 15), (std::vector<u64>{11, 13}));
    EXPECT_TRUE(primes_between(1, 1).empty());
    EXPECT_EQ(primes_between(61, 67), (std::vector<u64>{67}));
    EXPECT_EQ(primes_between(0, 10), (std::vector<u64>{2, 3, 5, 7}));
}

TEST(PrimesBetween, RandomRangesMatchReference)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> lo_pick(0, 3'000'000);
    std::uniform_int_distribution<u64> len_pick(0, 5'000);
    for (int i = 0; i < 40; ++i) {
        u64 lo = lo_pick(rng);
        u64 hi = lo + len_pick(rng);
        EXPECT_EQ(primes_between(lo, hi), ref::primes_upto(hi, lo)) << lo << ".." << hi;
    }
}

TEST(ForEachPrime, CrossesSegments)
{
    u64 count = 0;
    u64 last = 0;
    for_each_prime(0, 10'000'000, [&](u64 p) {
        EXPECT_GT(p, last);
        last = p;
        ++count;
    });
    EXPECT_EQ(count, 664'579u);
    EXPECT_EQ(last, 9'999'991u);
}

TEST(Primorial, Examples)
{
    EXPECT_EQ(primorial_from_5(5), 5);
    EXPECT_EQ(primorial_from_5(7), 35);
    EXPECT_EQ(primorial_from_5(11), 385);
    EXPECT_EQ(primorial_from_5(13), 5005);
    EXPECT_THROW(primorial_from_5(3), DomainError);
    EXPECT_THROW(primorial_from_5(9), DomainError);
}

TEST(Primorial, Recurrence)
{
    BigInt prev = primorial_from_5(5);
    for (u64 p : ref::primes_upto(400, 5)) {
        BigInt cur = primorial_from_5(p);
        EXPECT_EQ(cur, prev * p) << p;
        prev = cur;
    }
    EXPECT_GT(primorial_from_5(61), BigInt(UINT64_MAX));
}

TEST(SquarefreeTerms, Examples)
{
    const std::vector<u64> gen{11, 13};
    auto small = squarefree_terms(gen, 15);
    EXPECT_EQ(small, (std::vector<SquarefreeTerm>{{11, -1, 1}, {13, -1, 1}}));
    auto big = squarefree_terms(gen, 200);
    EXPECT_EQ(big.back(), (SquarefreeTerm{143, 1, 2}));
    EXPECT_TRUE(squarefree_terms(std::vector<u64>{}, 100).empty());
}

TEST(SquarefreeTerms, DuplicatesRejected)
{
    EXPECT_THROW(squarefree_terms(std::vector<u64>{11, 13, 11}, 100), DomainError);
}

TEST(SquarefreeTerms, MoebiusAgreesUpTo10k)
{
    // generators: every prime in (7, 10^4]; terms are the squarefree n <= 10^4
    // coprime to 210
    const auto gen = ref::primes_upto(10'000, 7);
    const auto terms = squarefree_terms(gen, 10'000);
    std::set<u64> seen;
    for (const SquarefreeTerm& t : terms) {
        EXPECT_EQ(t.mu, ref::mobius(t.n)) << t.n;
        EXPECT_EQ(t.nu, ref::omega(t.n)) << t.n;
        EXPECT_EQ(t.mu, t.nu % 2 == 0 ? 1 : -1);
        EXPECT_TRUE(seen.insert(t.n).second);
    }
    u64 expected = 0;
    for (u64 n = 2; n <= 10'000; ++n) {
        if (ref::mobius(n) != 0 && n % 2 && n % 3 && n % 5 && n % 7) {
            ++expected;
        }
    }
    EXPECT_EQ(terms.size(), expected);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        EXPECT_LT(terms[i - 1].n, terms[i].n);
    }
}

TEST(SmallestPrimeFactor, Examples)
{
    EXPECT_EQ(smallest_prime_factor(209), 11u);
    EXPECT_EQ(smallest_prime_factor(169), 13u);
    EXPECT_EQ(smallest_prime_factor(7), 7u);
    EXPECT_EQ(smallest_prime_factor(2), 2u);
    EXPECT_THROW(smallest_prime_factor(1), DomainError);
    EXPECT_THROW(smallest_prime_factor(0), DomainError);
}

TEST(SmallestPrimeFactor, RandomAgainstReference)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<u64> pick(2, 1'000'000'000'000ULL);
    for (int i = 0; i < 300; ++i) {
        u64 n = pick(rng);
        EXPECT_EQ(smallest_prime_factor(n), ref::least_factor(n)) << n;
    }
}

// N(p'/6) = N(p/6) for primes 5 <= p < p' exactly when p' = p + 2.
TEST(TwinNsix, ExhaustiveTo10k)
{
    const auto primes = ref::primes_upto(10'000, 4);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t k = i + 1; k < primes.size(); ++k) {
            const bool same = nsix(primes[i]) == nsix(primes[k]);
            ASSERT_EQ(same, primes[k] == primes[i] + 2) << primes[i] << "," << primes[k];
        }
    }
}

TEST(BigIntHelpers, StringsAndApprox)
{
    EXPECT_EQ(to_string(Rational(1425, 143)), "1425/143");
    EXPECT_EQ(to_string(Rational(-4)), "-4");
    EXPECT_EQ(parse_rational("-940/143"), Rational(-940, 143));
    EXPECT_EQ(parse_bigint("123456789012345678901234567890"),
              BigInt("123456789012345678901234567890"));
    EXPECT_NEAR(approx(Rational(215, 13)), 215.0 / 13.0, 1e-12);
    const BigInt huge = primorial_from_5(401);
    EXPECT_NEAR(approx(Rational(huge + 1, huge)), 1.0, 1e-12);
    EXPECT_NEAR(log_of(BigInt(1) << 3000), 3000 * std::log(2.0), 1e-9);
    EXPECT_THROW(to_u64(BigInt(1) << 64), CapacityError);
}
