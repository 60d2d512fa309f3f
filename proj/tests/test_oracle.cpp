#include "twinsieve/arith.hpp"
#include "twinsieve/classify.hpp"
#include "twinsieve/counting.hpp"
#include "twinsieve/errors.hpp"
#include "twinsieve/oracle.hpp"
#include "twinsieve/progressions.hpp"

#include "fixtures.hpp"
#include "reference.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace twinsieve;
using u64 = std::uint64_t;

TEST(SieveSegment, MatchesTrialDivision)
{
    const auto base = ref::primes_upto(2'000);
    for (auto [lo, hi] : {std::pair<u64, u64>{2, 5'000}, {1'000'000, 1'003'001}, {3'999'000, 4'000'000}}) {
        SieveSegment seg(lo, hi);
        seg.sieve(base);
        EXPECT_EQ(seg.lo(), lo);
        EXPECT_EQ(seg.hi(), hi);
        for (u64 n = lo; n < hi; ++n) {
            ASSERT_EQ(seg.is_prime(n), ref::is_prime(n)) << n;
        }
    }
}

TEST(Pi2Exact, Examples)
{
    TwinOracle oracle;
    EXPECT_EQ(oracle.pi2_exact(91), 7u);
    EXPECT_EQ(oracle.pi2_exact(13), 2u);
    EXPECT_EQ(oracle.pi2_exact(6), 0u);
    EXPECT_EQ(oracle.pi2_exact(7), 1u);
    EXPECT_EQ(oracle.pi2_exact(0), 0u);
}

TEST(Pi2Exact, RandomAgainstReference)
{
    TwinOracle oracle({kDefaultCeiling, 1u << 10, 1});
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<u64> pick(0, 200'000);
    for (int i = 0; i < 25; ++i) {
        const u64 y = pick(rng);
        EXPECT_EQ(oracle.pi2_exact(y), ref::pi2(y)) << y;
    }
}

TEST(Pi2Exact, KnownCounts)
{
    // twin pairs below 10^k, excluding (3,5)
    TwinOracle oracle;
    EXPECT_EQ(oracle.pi2_exact(1'000), 34u);
    EXPECT_EQ(oracle.pi2_exact(1'000'000), 8'168u);
    EXPECT_EQ(oracle.pi2_exact(100'000'000), 440'311u);
}

TEST(Pi2Exact, SegmentSizeIndependence)
{
    const u64 y = 20'000'001;
    std::vector<u64> counts;
    std::vector<u64> ranks;
    for (u64 seg : {u64{1} << 10, u64{1} << 16, u64{1} << 20}) {
        TwinOracle oracle({kDefaultCeiling, seg, 1});
        counts.push_back(oracle.pi2_exact(y));
        ranks.push_back(oracle.count_twin_ranks(1'234'567));
    }
    EXPECT_EQ(counts[0], counts[1]);
    EXPECT_EQ(counts[1], counts[2]);
    EXPECT_EQ(ranks[0], ranks[1]);
    EXPECT_EQ(ranks[1], ranks[2]);
}

TEST(Pi2Exact, WorkerIndependence)
{
    const u64 one = TwinOracle({kDefaultCeiling, u64{1} << 16, 1}).pi2_exact(30'000'000);
    for (unsigned w : {4u, 16u}) {
        EXPECT_EQ(TwinOracle({kDefaultCeiling, u64{1} << 16, w}).pi2_exact(30'000'000), one);
    }
}

TEST(Pi2Exact, CeilingIsEnforced)
{
    TwinOracle small({1'000, u64{1} << 10, 1});
    EXPECT_NO_THROW(small.pi2_exact(1'000));
    EXPECT_THROW(small.pi2_exact(1'001), CapacityError);
    EXPECT_THROW(small.count_twin_ranks(167), CapacityError);
    EXPECT_NO_THROW(small.count_twin_ranks(166));
    EXPECT_THROW(small.verify_classify(500), CapacityError);
}

TEST(TwinRanks, Examples)
{
    TwinOracle oracle;
    EXPECT_EQ(oracle.twin_ranks_up_to(18).ranks, fixtures::kTwinRanksHead);
    EXPECT_EQ(oracle.twin_ranks_up_to(747).ranks, fixtures::kLevel61Remnants);
    EXPECT_TRUE(oracle.twin_ranks_up_to(0).ranks.empty());
    EXPECT_EQ(oracle.twin_ranks_up_to(35).ranks.size(), 14u);
}

TEST(TwinRanks, StreamAgreesWithClassify)
{
    TwinOracle oracle({kDefaultCeiling, u64{1} << 12, 3});
    const auto stream = oracle.twin_ranks_up_to(200'000);
    EXPECT_EQ(stream.limit, 6 * 200'000u + 1);
    EXPECT_EQ(stream.ranks.size(), oracle.count_twin_ranks(200'000));
    for (std::size_t i = 0; i < stream.ranks.size(); ++i) {
        if (i > 0) {
            ASSERT_LT(stream.ranks[i - 1], stream.ranks[i]);
        }
        ASSERT_TRUE(classify(stream.ranks[i]).is_twin_rank());
    }
    u64 expected = 0;
    for (u64 m = 1; m <= 200'000; ++m) {
        expected += classify(m).is_twin_rank() ? 1 : 0;
    }
    EXPECT_EQ(stream.ranks.size(), expected);
}

TEST(Verify, SmallExamples)
{
    TwinOracle oracle;
    const auto nineteen = oracle.verify_classify(19, true);
    EXPECT_EQ(nineteen.non_rank_list, fixtures::kNonRanksHead);
    EXPECT_TRUE(nineteen.mismatches.empty());
    EXPECT_EQ(nineteen.twin_ranks + nineteen.non_ranks, 19u);

    const auto one = oracle.verify_classify(1);
    EXPECT_TRUE(one.mismatches.empty());
    EXPECT_EQ(one.twin_ranks, 1u);
    EXPECT_EQ(one.non_ranks, 0u);
    EXPECT_TRUE(one.non_rank_list.empty());
}

// Every m <= 10^6 lands in exactly one class and agrees with the sieve.
TEST(Verify, PartitionToOneMillion)
{
    TwinOracle oracle({kDefaultCeiling, u64{1} << 20, 4});
    const auto rep = oracle.verify_classify(1'000'000);
    EXPECT_TRUE(rep.mismatches.empty());
    EXPECT_EQ(rep.twin_ranks + rep.non_ranks, 1'000'000u);
    EXPECT_EQ(rep.twin_ranks, oracle.count_twin_ranks(1'000'000));
    EXPECT_GT(rep.ranks_per_second, 0.0);
}

TEST(CrossModule, RemnantsBelowFrontBoundAreTheTwinRanks)
{
    TwinOracle oracle;
    for (u64 p : {7, 11, 13, 61}) {
        const u64 front = static_cast<u64>(m_bound(next_prime(p)));
        const auto report = remnants_below(p, front);
        EXPECT_EQ(report.remnants, oracle.twin_ranks_up_to(front - 1).ranks) << p;
    }
}
