#pragma once

#include "twinsieve/bigint.hpp"
#include "twinsieve/classify.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twinsieve {

/// Largest C_p that residue_set / inductive_step will materialize.
inline constexpr std::uint64_t kResidueSetCapacity = 100'000'000;

/// C_p: residues c mod L(p) with c mod p' outside {N(p'/6), -N(p'/6)} for
/// every prime 5 <= p' <= p. The progressions 6(L(p)n + c) +- 1 hold every
/// twin pair beyond (3,5), (5,7).
struct ResidueSet {
    std::uint64_t p = 0;
    BigInt modulus;
    std::vector<std::uint64_t> constants; // ascending, in [0, modulus)

    bool contains(std::uint64_t c) const;
};

/// Direct construction by modular filtering over one period. The range is
/// split into chunks across `workers` threads; the result does not depend on
/// the split. Throws CapacityError when prod(p'-2) exceeds the capacity.
ResidueSet residue_set(std::uint64_t p, unsigned workers = 1);

/// Lifts each c to L(p)l + c for l in [0, p_next) and drops the lifts that
/// are non-ranks of p_next. `p_next` must be the prime following current.p.
ResidueSet inductive_step(const ResidueSet& current, std::uint64_t p_next);

/// Cardinality prod_{5<=p'<=p}(p'-2), without materializing anything.
BigInt residue_set_size(std::uint64_t p);

/// A_p^(0): one period of the non-ranks with parent prime p, taken from the
/// window [p - N(p/6), p - N(p/6) + L(p)). Its size is G(p).
std::vector<std::uint64_t> initial_nonranks(std::uint64_t p);

struct Intruder {
    std::uint64_t value = 0;
    std::uint64_t parent = 0;

    bool operator==(const Intruder&) const = default;
};

/// Nonzero constants of C_p that are non-ranks (necessarily of a prime > p).
std::vector<Intruder> intruders(const ResidueSet& set);

/// C_p together with the twin ranks m = N(p'/6) >= 2, 5 <= p' <= p, that the
/// congruence filter removes (their own pair contains p'). With these the
/// progressions 6(L(p)n + c) +- 1 cover every twin pair except (3,5), (5,7);
/// this is the form in which the constants are usually listed.
std::vector<std::uint64_t> covering_constants(const ResidueSet& set);

struct RemnantReport {
    std::uint64_t p = 0;
    std::uint64_t bound = 0;
    std::uint64_t front_bound = 0;              // M(j+1) = (p_{j+1}^2 - 1)/6
    std::vector<std::uint64_t> remnants;        // [1, bound), ascending
    std::vector<std::uint64_t> front_twin_ranks; // remnants < front_bound
    std::vector<Intruder> intruders;            // remnants >= front_bound that are non-ranks
    std::vector<std::uint64_t> later_twin_ranks; // remnants >= front_bound that are twin ranks
};

/// Integers m in [1, bound) that are not k(n, p')^+- with n >= 1 for any
/// prime 5 <= p' <= p_sieve. Remnants are found by marking progressions, then
/// split at M(j+1) and classified.
RemnantReport remnants_below(std::uint64_t p_sieve, std::uint64_t bound);

struct FamilyMember {
    std::vector<Sign> signs; // aligned with ProgressionFamily::primes
    BigInt residue;          // in [0, modulus)

    bool operator==(const FamilyMember&) const = default;
};

/// The 2^m residue classes mod prod(primes) that are simultaneous non-ranks
/// of every listed prime, one per sign vector.
struct ProgressionFamily {
    std::vector<std::uint64_t> primes; // ascending
    BigInt modulus;
    std::vector<FamilyMember> members; // ascending by residue

    const FamilyMember* find(const BigInt& residue) const;
    const FamilyMember* find(std::span<const Sign> signs) const;
};

inline constexpr std::size_t kMaxFamilyPrimes = 20;

/// Solves residue = signs_i * N(p_i/6) (mod p_i) for every sign vector.
/// Input order is free; the family lists primes ascending. Throws
/// DomainError for duplicates, non-primes, primes < 5, or more than 20
/// primes.
ProgressionFamily crt_family(std::span<const std::uint64_t> primes, unsigned workers = 1);

/// p_1(p_2(...(p_m n + r_m)...) + r_2) +- N(p_1/6), the nested way of
/// writing a multi-prime non-rank progression with a chosen prime outermost.
/// For a single prime the form degenerates to p_1(n + r_1) +- N(p_1/6).
struct NestedForm {
    std::vector<std::uint64_t> order;   // outermost first
    Sign outer_sign = Sign::Plus;
    std::uint64_t outer_offset = 0;     // N(order[0]/6)
    std::vector<BigInt> coefficients;   // r_2 .. r_m (or r_1 when m == 1)

    BigInt evaluate(const BigInt& n) const;
    std::string to_string() const;
};

/// Nested form with primes[outer_index] outermost and the remaining primes
/// in ascending order inside.
NestedForm nested_form(std::span<const std::uint64_t> primes, const FamilyMember& member,
                       std::size_t outer_index);

/// Nested form with an explicit nesting order (indices into `primes`,
/// outermost first, a permutation of 0..m-1).
NestedForm nested_form(std::span<const std::uint64_t> primes, const FamilyMember& member,
                       std::span<const std::size_t> order);

/// Consecutive non-ranks of p alternate between these gaps:
/// (2 N(p/6), p - 2 N(p/6)).
std::pair<std::uint64_t, std::uint64_t> gap_pattern(std::uint64_t p);

/// Cache file format: a header line "# level=<p> modulus=<L>" followed by the
/// decimal constants, one per line.
void write_residue_set(const ResidueSet& set, std::ostream& out);

/// Parses and validates the cache format. Throws std::runtime_error on any
/// malformed or inconsistent content.
ResidueSet read_residue_set(std::istream& in);

} // namespace twinsieve
