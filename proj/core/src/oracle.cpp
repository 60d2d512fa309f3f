#include "twinsieve/oracle.hpp"
#include "twinsieve/arith.hpp"
#include "twinsieve/classify.hpp"
#include "twinsieve/errors.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace twinsieve {

namespace {

using u64 = std::uint64_t;

u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

struct RankChunk {
    u64 first; // inclusive
    u64 last;  // inclusive
};

std::vector<RankChunk> rank_chunks(u64 limit_rank, u64 segment_size)
{
    const u64 per_chunk = std::max<u64>(1, segment_size / 6);
    std::vector<RankChunk> chunks;
    for (u64 first = 1; first <= limit_rank; first += per_chunk) {
        chunks.push_back({first, std::min(limit_rank, first + per_chunk - 1)});
        if (limit_rank - first < per_chunk) {
            break;
        }
    }
    return chunks;
}

// Sieve window covering 6*first - 1 .. 6*last + 1.
SieveSegment sieve_for(const RankChunk& chunk, const PrimeTable& base)
{
    SieveSegment segment(6 * chunk.first - 1, 6 * chunk.last + 2);
    segment.sieve(base.primes());
    return segment;
}

} // namespace

SieveSegment::SieveSegment(std::uint64_t lo, std::uint64_t hi)
    : lo_(lo), hi_(std::max(lo, hi)), composite_((hi_ - lo_) / 64 + 1, 0)
{
}

void SieveSegment::sieve(std::span<const std::uint64_t> base_primes)
{
    std::fill(composite_.begin(), composite_.end(), 0);
    for (u64 n = lo_; n < std::min<u64>(hi_, 2); ++n) {
        mark(n);
    }
    for (u64 p : base_primes) {
        if (p * p >= hi_) {
            break;
        }
        u64 first = std::max(p * p, (lo_ + p - 1) / p * p);
        for (u64 m = first; m < hi_; m += p) {
            mark(m);
        }
    }
}

TwinOracle::TwinOracle(OracleConfig config) : config_(config)
{
    if (config_.segment_size < 6) {
        config_.segment_size = 6;
    }
    if (config_.workers == 0) {
        config_.workers = 1;
    }
}

void TwinOracle::check_rank_limit(std::uint64_t limit_rank) const
{
    if (limit_rank > (config_.ceiling - 1) / 6) {
        throw CapacityError("oracle: 6*" + std::to_string(limit_rank) +
                            "+1 exceeds the sieve ceiling " + std::to_string(config_.ceiling));
    }
}

std::uint64_t TwinOracle::pi2_exact(std::uint64_t y) const
{
    if (y > config_.ceiling) {
        throw CapacityError("pi2_exact: " + std::to_string(y) + " exceeds the sieve ceiling " +
                            std::to_string(config_.ceiling));
    }
    return y == 0 ? 0 : count_twin_ranks((y - 1) / 6);
}

std::uint64_t TwinOracle::count_twin_ranks(std::uint64_t limit_rank) const
{
    check_rank_limit(limit_rank);
    if (limit_rank == 0) {
        return 0;
    }
    const PrimeTable base(isqrt(6 * limit_rank + 1));
    const auto chunks = rank_chunks(limit_rank, config_.segment_size);
    std::vector<u64> counts(chunks.size(), 0);
    detail::parallel_chunks(chunks.size(), config_.workers, [&](std::size_t i) {
        const SieveSegment segment = sieve_for(chunks[i], base);
        u64 count = 0;
        for (u64 m = chunks[i].first; m <= chunks[i].last; ++m) {
            if (segment.is_prime(6 * m - 1) && segment.is_prime(6 * m + 1)) {
                ++count;
            }
        }
        counts[i] = count;
    });
    u64 total = 0;
    for (u64 c : counts) {
        total += c;
    }
    return total;
}

TwinRankStream TwinOracle::twin_ranks_up_to(std::uint64_t limit_rank) const
{
    check_rank_limit(limit_rank);
    TwinRankStream stream;
    stream.limit = 6 * limit_rank + 1;
    if (limit_rank == 0) {
        return stream;
    }
    const PrimeTable base(isqrt(6 * limit_rank + 1));
    const auto chunks = rank_chunks(limit_rank, config_.segment_size);
    std::vector<std::vector<u64>> parts(chunks.size());
    detail::parallel_chunks(chunks.size(), config_.workers, [&](std::size_t i) {
        const SieveSegment segment = sieve_for(chunks[i], base);
        for (u64 m = chunks[i].first; m <= chunks[i].last; ++m) {
            if (segment.is_prime(6 * m - 1) && segment.is_prime(6 * m + 1)) {
                parts[i].push_back(m);
            }
        }
    });
    for (auto& part : parts) {
        stream.ranks.insert(stream.ranks.end(), part.begin(), part.end());
    }
    return stream;
}

VerifyReport TwinOracle::verify_classify(std::uint64_t limit, bool collect_non_ranks) const
{
    check_rank_limit(limit);
    const auto started = std::chrono::steady_clock::now();
    VerifyReport report;
    report.limit = limit;
    if (limit == 0) {
        return report;
    }

    struct Part {
        u64 twins = 0;
        u64 non_ranks = 0;
        std::vector<u64> mismatches;
        std::vector<u64> non_rank_list;
    };
    const PrimeTable base(isqrt(6 * limit + 1));
    const auto chunks = rank_chunks(limit, config_.segment_size);
    std::vector<Part> parts(chunks.size());
    detail::parallel_chunks(chunks.size(), config_.workers, [&](std::size_t i) {
        const SieveSegment segment = sieve_for(chunks[i], base);
        Part& part = parts[i];
        for (u64 m = chunks[i].first; m <= chunks[i].last; ++m) {
            const bool lower_prime = segment.is_prime(6 * m - 1);
            const bool upper_prime = segment.is_prime(6 * m + 1);
            const Classification c = classify(m);
            bool ok = (lower_prime && upper_prime) == c.is_twin_rank() &&
                      c.composite_sides.minus == !lower_prime &&
                      c.composite_sides.plus == !upper_prime;
            if (ok && !c.is_twin_rank()) {
                const u64 p = c.parent.value_or(0);
                const bool divides = p >= 5 && ((!lower_prime && (6 * m - 1) % p == 0) ||
                                                (!upper_prime && (6 * m + 1) % p == 0));
                ok = divides;
            }
            if (!ok) {
                part.mismatches.push_back(m);
            }
            if (lower_prime && upper_prime) {
                ++part.twins;
            } else {
                ++part.non_ranks;
                if (collect_non_ranks) {
                    part.non_rank_list.push_back(m);
                }
            }
        }
    });
    for (auto& part : parts) {
        report.twin_ranks += part.twins;
        report.non_ranks += part.non_ranks;
        report.mismatches.insert(report.mismatches.end(), part.mismatches.begin(),
                                 part.mismatches.end());
        report.non_rank_list.insert(report.non_rank_list.end(), part.non_rank_list.begin(),
                                    part.non_rank_list.end());
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.ranks_per_second = report.seconds > 0 ? static_cast<double>(limit) / report.seconds : 0.0;
    return report;
}

} // namespace twinsieve
