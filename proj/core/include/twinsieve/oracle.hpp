#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace twinsieve {

inline constexpr std::uint64_t kDefaultCeiling = 1'000'000'000;

/// Bit-packed Eratosthenes window over [lo, hi). After sieve(), a bit is
/// clear iff its number is prime.
class SieveSegment {
public:
    SieveSegment(std::uint64_t lo, std::uint64_t hi);

    /// `base_primes` ascending and must include every prime <= sqrt(hi - 1).
    void sieve(std::span<const std::uint64_t> base_primes);

    std::uint64_t lo() const noexcept { return lo_; }
    std::uint64_t hi() const noexcept { return hi_; }

    bool is_prime(std::uint64_t n) const noexcept
    {
        const std::uint64_t i = n - lo_;
        return ((composite_[i >> 6] >> (i & 63)) & 1) == 0;
    }

private:
    void mark(std::uint64_t n) noexcept
    {
        const std::uint64_t i = n - lo_;
        composite_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint64_t> composite_;
};

struct OracleConfig {
    std::uint64_t ceiling = kDefaultCeiling; // largest integer the sieve may touch
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    unsigned workers = 1;
};

/// Twin ranks m with 6m +- 1 both prime and 6m + 1 <= limit.
struct TwinRankStream {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> ranks;
};

struct VerifyReport {
    std::uint64_t limit = 0;
    std::uint64_t twin_ranks = 0;
    std::uint64_t non_ranks = 0;
    std::vector<std::uint64_t> mismatches;
    std::vector<std::uint64_t> non_rank_list; // filled only when requested
    double seconds = 0.0;
    double ranks_per_second = 0.0;
};

/// Ground truth from a segmented sieve. Twin pairs are found by sieving
/// primes and checking 6m - 1, 6m + 1 around each multiple of six; nothing
/// here uses the non-rank machinery it is meant to check.
class TwinOracle {
public:
    explicit TwinOracle(OracleConfig config = {});

    const OracleConfig& config() const noexcept { return config_; }

    /// Number of m >= 1 with 6m - 1, 6m + 1 prime and 6m + 1 <= y.
    /// Throws CapacityError above the ceiling.
    std::uint64_t pi2_exact(std::uint64_t y) const;

    /// Number of twin ranks in [1, limit_rank].
    std::uint64_t count_twin_ranks(std::uint64_t limit_rank) const;

    TwinRankStream twin_ranks_up_to(std::uint64_t limit_rank) const;

    /// Compares classify(m) with sieve truth for every m in [1, limit]:
    /// verdict, the composite sides, and that a non-rank's parent divides a
    /// composite side.
    VerifyReport verify_classify(std::uint64_t limit, bool collect_non_ranks = false) const;

private:
    void check_rank_limit(std::uint64_t limit_rank) const;

    OracleConfig config_;
};

} // namespace twinsieve
