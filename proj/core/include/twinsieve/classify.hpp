#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace twinsieve {

enum class Sign : int { Minus = -1, Plus = 1 };

inline constexpr char sign_char(Sign s) noexcept { return s == Sign::Plus ? '+' : '-'; }

enum class Verdict { TwinRank, NonRank };

const char* to_string(Verdict v) noexcept;

/// Largest m whose pair 6m +- 1 stays inside the deterministic primality range.
inline constexpr std::uint64_t kMaxClassifiable = (UINT64_MAX - 1) / 6;

/// Which members of the pair (6m - 1, 6m + 1) are composite.
struct CompositeSides {
    bool minus = false;
    bool plus = false;

    bool any() const noexcept { return minus || plus; }
    bool operator==(const CompositeSides&) const = default;
};

/// k(n, p)^sign = n*p + sign*N(p/6).
struct NonRankTerm {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    Sign sign = Sign::Plus;
    std::uint64_t value = 0;

    bool operator==(const NonRankTerm&) const = default;
};

/// Builds k(n, p)^sign. Throws DomainError if p is not a prime >= 5 or the
/// value would not be positive.
NonRankTerm make_nonrank_term(std::uint64_t p, std::uint64_t n, Sign sign);

struct Classification {
    std::uint64_t m = 0;
    Verdict verdict = Verdict::NonRank;
    std::optional<std::uint64_t> parent; // set iff NonRank
    CompositeSides composite_sides;      // nonempty iff NonRank

    bool is_twin_rank() const noexcept { return verdict == Verdict::TwinRank; }

    /// For a non-rank, the representation m = kappa*parent +- N(parent/6).
    /// Empty for twin ranks.
    std::optional<NonRankTerm> witness() const;
};

/// All k(n, p)^+- <= limit with n >= 1, ascending by value.
std::vector<NonRankTerm> nonranks_of(std::uint64_t p, std::uint64_t limit);

/// Twin rank iff 6m - 1 and 6m + 1 are both prime; otherwise the parent is
/// the least prime factor over the composite members.
/// Throws DomainError for m == 0 or m > kMaxClassifiable.
Classification classify(std::uint64_t m);

/// 6m for a twin rank m. Throws DomainError otherwise.
std::uint64_t twin_index(std::uint64_t m);

/// The n = 0 case: (p -+ 1)/6 when p's twin partner on the matching side is
/// prime.
std::optional<std::uint64_t> rank_from_prime(std::uint64_t p);

} // namespace twinsieve
