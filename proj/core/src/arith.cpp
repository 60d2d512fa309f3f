#include "twinsieve/arith.hpp"
#include "twinsieve/errors.hpp"

#include "int128.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace twinsieve {

namespace mp = boost::multiprecision;

namespace {

using u64 = std::uint64_t;
using u128 = detail::u128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m)
{
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(u64 n, u64 d, unsigned s, u64 witness)
{
    u64 x = pow_mod(witness, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

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

void require_prime_from_5(u64 p, const char* what)
{
    if (p < 5 || !is_prime(p)) {
        throw DomainError(std::string(what) + ": expected a prime >= 5, got " + std::to_string(p));
    }
}

} // namespace

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    // Witness set {2..37} is exact below 3.3e24, so for all of u64.
    static constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kWitnesses) {
        if (n % p == 0) {
            return n == p;
        }
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kWitnesses) {
        if (!strong_probable_prime(n, d, s, a)) {
            return false;
        }
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n)
{
    if (n < 2) {
        return 2;
    }
    u64 candidate = n + 1;
    while (true) {
        if (candidate < n) {
            throw CapacityError("next_prime: no prime below 2^64 after " + std::to_string(n));
        }
        if (is_prime(candidate)) {
            return candidate;
        }
        ++candidate;
    }
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit)
{
    const u64 odd_count = limit / 2 + 1; // odd numbers 1, 3, ..., <= limit (+slack)
    odd_composite_.assign(odd_count / 64 + 1, 0);
    auto set = [this](u64 i) { odd_composite_[i >> 6] |= u64{1} << (i & 63); };
    auto test = [this](u64 i) { return (odd_composite_[i >> 6] >> (i & 63)) & 1; };

    set(0); // 1 is not prime
    for (u64 p = 3; p * p <= limit; p += 2) {
        if (test(p / 2)) {
            continue;
        }
        for (u64 m = p * p; m <= limit; m += 2 * p) {
            set(m / 2);
        }
    }
    if (limit >= 2) {
        primes_.push_back(2);
    }
    for (u64 n = 3; n <= limit; n += 2) {
        if (!test(n / 2)) {
            primes_.push_back(n);
        }
    }
}

bool PrimeTable::contains(std::uint64_t n) const
{
    if (n > limit_) {
        throw std::out_of_range("PrimeTable::contains: " + std::to_string(n) + " above limit " +
                                std::to_string(limit_));
    }
    if (n == 2) {
        return true;
    }
    if (n < 2 || n % 2 == 0) {
        return false;
    }
    u64 i = n / 2;
    return ((odd_composite_[i >> 6] >> (i & 63)) & 1) == 0;
}

std::uint64_t PrimeTable::nth(std::size_t j) const
{
    if (j == 0 || j > primes_.size()) {
        throw std::out_of_range("PrimeTable::nth: index " + std::to_string(j) + " out of range");
    }
    return primes_[j - 1];
}

std::uint64_t prime_at(std::size_t j)
{
    if (j == 0) {
        throw DomainError("prime_at: primes are indexed from 1");
    }
    u64 p = 2;
    for (std::size_t i = 1; i < j; ++i) {
        p = next_prime(p);
    }
    return p;
}

std::size_t prime_index(std::uint64_t p)
{
    if (!is_prime(p)) {
        throw DomainError("prime_index: " + std::to_string(p) + " is not prime");
    }
    std::size_t j = 0;
    for_each_prime(0, p, [&j](u64) { ++j; });
    return j;
}

BigInt nearest_int(const Rational& x)
{
    const BigInt& num = mp::numerator(x);
    const BigInt& den = mp::denominator(x); // positive, reduced
    if (den == 2) {
        throw DomainError("nearest_int: " + to_string(x) + " is a half-integer");
    }
    // floor((2*num + den) / (2*den)) == floor(x + 1/2)
    BigInt twice = 2 * num + den;
    BigInt q = twice / (2 * den);
    if (twice < 0 && q * 2 * den != twice) {
        --q;
    }
    return q;
}

std::uint64_t nsix(std::uint64_t p)
{
    require_prime_from_5(p, "nsix");
    return (p % 6 == 1) ? (p - 1) / 6 : (p + 1) / 6;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit)
{
    if (hi <= lo || hi < 2) {
        return;
    }
    constexpr u64 kSegment = u64{1} << 18;
    const u64 root = isqrt(hi);
    PrimeTable base(root);
    std::vector<unsigned char> composite;

    u64 start = std::max<u64>(lo + 1, 2);
    while (start <= hi) {
        u64 stop = (hi - start >= kSegment) ? start + kSegment : hi + 1; // [start, stop)
        composite.assign(static_cast<std::size_t>(stop - start), 0);
        for (u64 p : base.primes()) {
            if (p * p >= stop) {
                break;
            }
            u64 first = std::max(p * p, (start + p - 1) / p * p);
            for (u64 m = first; m < stop; m += p) {
                composite[static_cast<std::size_t>(m - start)] = 1;
            }
        }
        for (u64 n = start; n < stop; ++n) {
            if (!composite[static_cast<std::size_t>(n - start)]) {
                visit(n);
            }
        }
        if (stop == hi + 1) {
            break;
        }
        start = stop;
    }
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<u64> out;
    for_each_prime(lo, hi, [&out](u64 p) { out.push_back(p); });
    return out;
}

BigInt primorial_from_5(std::uint64_t p)
{
    require_prime_from_5(p, "primorial_from_5");
    BigInt product = 1;
    for_each_prime(4, p, [&product](u64 q) { product *= q; });
    return product;
}

std::vector<SquarefreeTerm> squarefree_terms(std::span<const std::uint64_t> generating_primes,
                                             std::uint64_t cap)
{
    std::vector<u64> primes(generating_primes.begin(), generating_primes.end());
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
        throw DomainError("squarefree_terms: generating primes must be distinct");
    }
    std::vector<SquarefreeTerm> terms;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        visit_squarefree_from(std::span<const u64>(primes), i, cap,
                              [&terms](const SquarefreeTerm& t) { terms.push_back(t); });
    }
    std::sort(terms.begin(), terms.end());
    return terms;
}

std::uint64_t smallest_prime_factor(std::uint64_t n)
{
    if (n < 2) {
        throw DomainError("smallest_prime_factor: n must be >= 2");
    }
    if (n % 2 == 0) {
        return 2;
    }
    if (n % 3 == 0) {
        return 3;
    }
    if (is_prime(n)) {
        return n;
    }
    for (u64 d = 5; d <= n / d; d += 6) {
        if (n % d == 0) {
            return d;
        }
        if (n % (d + 2) == 0) {
            return d + 2;
        }
    }
    return n;
}

} // namespace twinsieve
