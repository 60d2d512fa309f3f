#pragma once

#include "twinsieve/bigint.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace twinsieve {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Least prime strictly greater than n. Throws CapacityError past 2^64.
std::uint64_t next_prime(std::uint64_t n);

/// Bit-packed odd-only sieve over [0, limit]. Immutable once built.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    /// Throws std::out_of_range for n > limit().
    bool contains(std::uint64_t n) const;

    /// Ascending: p_1 = 2, p_2 = 3, p_3 = 5, ...
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }

    /// 1-based index, matching the p_j convention. Throws std::out_of_range.
    std::uint64_t nth(std::size_t j) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> odd_composite_; // bit i <-> 2i+1
    std::vector<std::uint64_t> primes_;
};

/// The j-th prime (1-based): prime_at(3) == 5.
std::uint64_t prime_at(std::size_t j);

/// 1-based index of a prime: prime_index(5) == 3. Throws DomainError if p is
/// not prime.
std::size_t prime_index(std::uint64_t p);

/// Integer nearest to x. Half-integers are the one ambiguous case and throw
/// DomainError.
BigInt nearest_int(const Rational& x);

/// N(p/6) for a prime p >= 5: (p-1)/6 when p = 1 mod 6, (p+1)/6 when
/// p = -1 mod 6.
std::uint64_t nsix(std::uint64_t p);

/// Primes p with lo < p <= hi, ascending.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

/// Streams the primes in (lo, hi] in ascending order via a segmented sieve.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit);

/// Product of all primes 5 <= p' <= p.
BigInt primorial_from_5(std::uint64_t p);

struct SquarefreeTerm {
    std::uint64_t n = 1;
    int mu = 1;       // (-1)^nu
    unsigned nu = 0;  // number of distinct prime factors

    auto operator<=>(const SquarefreeTerm&) const = default;
};

/// All squarefree n in (1, cap] built from the generating primes, ascending
/// by n. Throws DomainError if the generating primes are not distinct.
std::vector<SquarefreeTerm> squarefree_terms(std::span<const std::uint64_t> generating_primes,
                                             std::uint64_t cap);

/// Depth-first walk over squarefree products n <= cap (n > 1) whose smallest
/// prime factor is primes[first]. `primes` must be ascending and distinct.
/// Visiting every first index in [0, primes.size()) covers each n exactly
/// once, which lets callers split the walk across workers.
template <class Visit>
void visit_squarefree_from(std::span<const std::uint64_t> primes, std::size_t first,
                           std::uint64_t cap, Visit&& visit)
{
    struct Frame {
        std::size_t next;
        std::uint64_t n;
        unsigned nu;
    };
    if (first >= primes.size() || primes[first] > cap) {
        return;
    }
    std::vector<Frame> stack;
    stack.push_back({first + 1, primes[first], 1});
    visit(SquarefreeTerm{primes[first], -1, 1});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next >= primes.size() || primes[top.next] > cap / top.n) {
            stack.pop_back();
            continue;
        }
        std::uint64_t p = primes[top.next++];
        Frame child{top.next, top.n * p, top.nu + 1};
        visit(SquarefreeTerm{child.n, (child.nu % 2 == 0) ? 1 : -1, child.nu});
        stack.push_back(child);
    }
}

/// Least prime dividing n, by trial division. Throws DomainError for n < 2.
std::uint64_t smallest_prime_factor(std::uint64_t n);

} // namespace twinsieve
