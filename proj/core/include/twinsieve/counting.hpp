#pragma once

#include "twinsieve/bigint.hpp"
#include "twinsieve/oracle.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace twinsieve {

/// Per-period non-rank bookkeeping at sieve level p_j, all exact.
///   L = prod_{5<=p<=p_j} p          R = prod_{5<=p<=p_j} (p-2)
///   G = 2 prod_{5<=p<p_j} (p-2)     S = L - R
///   q = G/L,  Q = S/L,  x_frac = R/L = 1 - Q
struct CountsRow {
    std::uint64_t p_j = 0;
    std::size_t j = 0; // p_j is the j-th prime
    BigInt L;
    BigInt G;
    Rational q;
    BigInt S;
    Rational Q;
    BigInt R;
    Rational x_frac;

    bool operator==(const CountsRow&) const = default;
};

/// Throws std::logic_error if the sum form of S disagrees with L - R.
CountsRow counts_row(std::uint64_t p_j);

/// Rows for every prime 5 <= p <= p_max, built incrementally.
std::vector<CountsRow> counts_table(std::uint64_t p_max);

/// S(p_j): non-ranks of the supergroup over one period.
BigInt supergroup_size(std::uint64_t p_j);

/// M = (p_next^2 - 1)/6. Throws DomainError unless p_next is a prime >= 5.
BigInt m_bound(std::uint64_t p_next);

struct LegendreOptions {
    std::uint64_t oracle_ceiling = kDefaultCeiling;
    unsigned workers = 1;
    /// Largest x for which the inclusion-exclusion sum is evaluated.
    std::uint64_t formula_limit = 200'000'000;
    /// Largest x for which the exact-rational main term is evaluated.
    std::uint64_t main_term_limit = 1'000'000;
};

/// Twin-rank count at a primorial argument: R0 plus the Moebius-weighted
/// sum over squarefree n <= x built from primes in (p_j, x], compared with
/// sieve truth when the oracle can reach it.
struct LegendreReport {
    std::uint64_t p_j = 0;
    std::uint64_t p_next = 0;
    BigInt M;        // (p_next^2 - 1)/6
    BigInt x;        // L(p_j) - M
    BigInt L;
    BigInt R0;       // prod (p-2)
    BigInt ie_sum;   // sum mu(n) 2^nu(n) floor(x/n)
    BigInt estimate; // R0 + ie_sum
    std::uint64_t term_count = 0;
    std::optional<std::uint64_t> oracle_pi2;    // pi_2(6x+1)
    std::optional<std::uint64_t> oracle_window; // twin ranks in [1, L]
    std::optional<BigInt> residual_pi2;          // estimate - oracle_pi2
    std::optional<BigInt> residual_window;       // estimate - oracle_window
};

/// Requires p_j >= 7 (x must be positive). Oracle fields stay empty when
/// 6x+1 (resp. 6L+1) is above the ceiling. Throws CapacityError when x is
/// above formula_limit.
LegendreReport legendre_pi2(std::uint64_t p_j, const LegendreOptions& options = {});

struct MainTermReport {
    std::uint64_t p_j = 0;
    BigInt x;
    BigInt M;
    BigInt R0;
    BigInt estimate;      // R0 + ie_sum, as in LegendreReport
    Rational rm_sum;      // R0 + sum mu(n) 2^nu(n) x/n
    Rational rm_product;  // L prod_{5<=p<=x}(1-2/p) + M (1 - prod_{p_j<p<=x}(1-2/p))
    Rational gap;         // rm_sum - rm_product
    Rational r_e;         // estimate - rm_sum = -sum mu(n) 2^nu(n) {x/n}
    double asymptote = 0; // asymptotic_density(x)
};

/// Throws CapacityError when x is above main_term_limit.
MainTermReport main_term(std::uint64_t p_j, const LegendreOptions& options = {});

struct TwinPrimeConstantEstimate {
    double value = 0;           // prod_{2<p<=cutoff} (1 - 1/(p-1)^2)
    std::uint64_t cutoff = 0;   // largest prime bound P used
    double tail_bound = 0;      // proven bound on |value - c2|
};

/// Truncated Euler product for c2. The cutoff P is the smallest one whose
/// tail bound, from sum_{p>P} 1/p^2 < 2.51012/(P ln P), is within
/// `tolerance`. Throws DomainError below 1e-12 and CapacityError when the
/// cutoff would pass 4e9.
TwinPrimeConstantEstimate estimate_twin_prime_constant(double tolerance);

double twin_prime_constant(double tolerance);

/// e^{-2 gamma}.
double exp_minus_two_gamma();

/// 2 c2 e^{-2 gamma} ~ 0.416213. x prod_{5<=p<=x}(1-2/p) picks up a factor
/// 3 from the missing p = 3 and 4 from Mertens, so the coefficient of 6x is
/// twice c2 e^{-2 gamma}.
double asymptotic_coefficient(double c2);

/// asymptotic_coefficient(c2) 6x / ln^2(6x+1), with c2 at tolerance 1e-9. x >= 2.
double asymptotic_density(const BigInt& x);

} // namespace twinsieve
