#include "twinsieve/classify.hpp"
#include "twinsieve/arith.hpp"
#include "twinsieve/errors.hpp"

#include <algorithm>
#include <string>

namespace twinsieve {

const char* to_string(Verdict v) noexcept
{
    return v == Verdict::TwinRank ? "TwinRank" : "NonRank";
}

NonRankTerm make_nonrank_term(std::uint64_t p, std::uint64_t n, Sign sign)
{
    const std::uint64_t offset = nsix(p);
    const std::uint64_t base = n * p;
    if (sign == Sign::Minus && base <= offset) {
        throw DomainError("make_nonrank_term: k(" + std::to_string(n) + "," + std::to_string(p) +
                          ")^- is not positive");
    }
    return {p, n, sign, sign == Sign::Plus ? base + offset : base - offset};
}

std::optional<NonRankTerm> Classification::witness() const
{
    if (!parent) {
        return std::nullopt;
    }
    const std::uint64_t p = *parent;
    const std::uint64_t offset = nsix(p);
    if (m % p == offset % p) {
        return NonRankTerm{p, (m - offset) / p, Sign::Plus, m};
    }
    return NonRankTerm{p, (m + offset) / p, Sign::Minus, m};
}

std::vector<NonRankTerm> nonranks_of(std::uint64_t p, std::uint64_t limit)
{
    const std::uint64_t offset = nsix(p);
    std::vector<NonRankTerm> out;
    // n*p - s < n*p + s < (n+1)*p - s because 2s < p, so emission order is ascending.
    for (std::uint64_t n = 1; n * p - offset <= limit; ++n) {
        out.push_back({p, n, Sign::Minus, n * p - offset});
        if (n * p + offset <= limit) {
            out.push_back({p, n, Sign::Plus, n * p + offset});
        }
    }
    return out;
}

Classification classify(std::uint64_t m)
{
    if (m == 0) {
        throw DomainError("classify: m must be positive");
    }
    if (m > kMaxClassifiable) {
        throw DomainError("classify: 6m+1 exceeds the deterministic primality range");
    }
    Classification c;
    c.m = m;
    const std::uint64_t lower = 6 * m - 1;
    const std::uint64_t upper = 6 * m + 1;
    c.composite_sides.minus = !is_prime(lower);
    c.composite_sides.plus = !is_prime(upper);
    if (!c.composite_sides.any()) {
        c.verdict = Verdict::TwinRank;
        return c;
    }
    c.verdict = Verdict::NonRank;
    std::uint64_t parent = UINT64_MAX;
    if (c.composite_sides.minus) {
        parent = std::min(parent, smallest_prime_factor(lower));
    }
    if (c.composite_sides.plus) {
        parent = std::min(parent, smallest_prime_factor(upper));
    }
    c.parent = parent;
    return c;
}

std::uint64_t twin_index(std::uint64_t m)
{
    if (!classify(m).is_twin_rank()) {
        throw DomainError("twin_index: " + std::to_string(m) + " is not a twin rank");
    }
    return 6 * m;
}

std::optional<std::uint64_t> rank_from_prime(std::uint64_t p)
{
    const std::uint64_t rank = nsix(p);
    const std::uint64_t partner = (p % 6 == 1) ? p - 2 : p + 2;
    if (is_prime(partner)) {
        return rank;
    }
    return std::nullopt;
}

} // namespace twinsieve
