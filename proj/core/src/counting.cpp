#include "twinsieve/counting.hpp"
#include "twinsieve/arith.hpp"
#include "twinsieve/errors.hpp"

#include "parallel.hpp"

#include "int128.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace twinsieve {

namespace {

using u64 = std::uint64_t;

void require_level(u64 p, const char* what)
{
    if (p < 5 || !is_prime(p)) {
        throw DomainError(std::string(what) + ": level must be a prime >= 5, got " +
                          std::to_string(p));
    }
}

struct Level {
    u64 p_j;
    u64 p_next;
    BigInt L;
    BigInt R0;
    BigInt M;
    BigInt x;
};

Level level_of(u64 p_j)
{
    require_level(p_j, "legendre");
    Level lv{p_j, next_prime(p_j), primorial_from_5(p_j), 1, 0, 0};
    for (u64 p : primes_between(4, p_j)) {
        lv.R0 *= (p - 2);
    }
    lv.M = m_bound(lv.p_next);
    lv.x = lv.L - lv.M;
    if (lv.x <= 0) {
        throw DomainError("legendre: x = L(p_j) - M(j+1) is not positive at level " +
                          std::to_string(p_j) + "; use p_j >= 7");
    }
    return lv;
}

// Index blocks over the generating primes; block 0 holds the smallest primes
// and carries most of the work, so blocks are claimed dynamically.
constexpr std::size_t kPrimeBlock = 64;

std::size_t block_count(std::size_t primes) { return (primes + kPrimeBlock - 1) / kPrimeBlock; }

struct IeSum {
    BigInt sum;
    u64 terms = 0;
};

IeSum inclusion_exclusion(std::span<const u64> primes, u64 x, unsigned workers)
{
    const std::size_t blocks = block_count(primes.size());
    std::vector<detail::i128> sums(blocks, 0);
    std::vector<u64> counts(blocks, 0);
    detail::parallel_chunks(blocks, workers, [&](std::size_t b) {
        detail::i128 acc = 0;
        u64 count = 0;
        const std::size_t end = std::min(primes.size(), (b + 1) * kPrimeBlock);
        for (std::size_t first = b * kPrimeBlock; first < end; ++first) {
            visit_squarefree_from(primes, first, x, [&](const SquarefreeTerm& t) {
                const detail::i128 weight = static_cast<detail::i128>(x / t.n) << t.nu;
                acc += t.mu > 0 ? weight : -weight;
                ++count;
            });
        }
        sums[b] = acc;
        counts[b] = count;
    });
    IeSum result;
    for (std::size_t b = 0; b < blocks; ++b) {
        const detail::i128 v = sums[b];
        const bool negative = v < 0;
        detail::u128 mag = negative ? static_cast<detail::u128>(-v)
                                         : static_cast<detail::u128>(v);
        BigInt part = static_cast<u64>(mag >> 64);
        part <<= 64;
        part += static_cast<u64>(mag);
        result.sum += negative ? BigInt(-part) : part;
        result.terms += counts[b];
    }
    return result;
}

} // namespace

std::vector<CountsRow> counts_table(std::uint64_t p_max)
{
    require_level(p_max, "counts_table");
    std::vector<CountsRow> rows;
    BigInt L = 1;
    BigInt R = 1;
    Rational q_sum = 0;          // sum_{5<=p<=p_j} q(p)
    Rational survivor_frac = 1;  // prod_{5<=p'<p_j} (p'-2)/p'
    std::size_t j = 2;           // p_1 = 2, p_2 = 3
    for (u64 p : primes_between(4, p_max)) {
        ++j;
        CountsRow row;
        row.p_j = p;
        row.j = j;
        row.G = 2 * R; // R still holds prod over p' < p
        L *= p;
        R *= (p - 2);
        row.L = L;
        row.R = R;
        row.S = L - R;
        row.q = Rational(row.G, L);
        row.Q = Rational(row.S, L);
        row.x_frac = Rational(R, L);

        // q(p) = (2/p) prod_{p'<p} (p'-2)/p', summed independently of R
        const Rational q_eq = Rational(2, p) * survivor_frac;
        q_sum += q_eq;
        survivor_frac *= Rational(p - 2, p);
        if (q_eq != row.q || q_sum * L != Rational(row.S) || Rational(1) - survivor_frac != row.Q) {
            throw std::logic_error("counts_row: identity check failed at p = " + std::to_string(p));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CountsRow counts_row(std::uint64_t p_j) { return counts_table(p_j).back(); }

BigInt supergroup_size(std::uint64_t p_j) { return counts_row(p_j).S; }

BigInt m_bound(std::uint64_t p_next)
{
    require_level(p_next, "m_bound");
    BigInt p = p_next;
    return (p * p - 1) / 6;
}

LegendreReport legendre_pi2(std::uint64_t p_j, const LegendreOptions& options)
{
    const Level lv = level_of(p_j);
    if (lv.x > options.formula_limit) {
        throw CapacityError("legendre: x = " + lv.x.str() + " exceeds the formula limit " +
                            std::to_string(options.formula_limit));
    }
    const u64 x = to_u64(lv.x);

    LegendreReport report;
    report.p_j = p_j;
    report.p_next = lv.p_next;
    report.M = lv.M;
    report.x = lv.x;
    report.L = lv.L;
    report.R0 = lv.R0;

    const auto primes = primes_between(p_j, x);
    IeSum ie = inclusion_exclusion(primes, x, options.workers);
    report.ie_sum = ie.sum;
    report.term_count = ie.terms;
    report.estimate = report.R0 + report.ie_sum;

    TwinOracle oracle({options.oracle_ceiling, u64{1} << 20, options.workers});
    const BigInt pi2_arg = 6 * lv.x + 1;
    if (pi2_arg <= options.oracle_ceiling) {
        report.oracle_pi2 = oracle.pi2_exact(to_u64(pi2_arg));
        report.residual_pi2 = report.estimate - *report.oracle_pi2;
    }
    if (6 * lv.L + 1 <= options.oracle_ceiling) {
        report.oracle_window = oracle.count_twin_ranks(to_u64(lv.L));
        report.residual_window = report.estimate - *report.oracle_window;
    }
    return report;
}

MainTermReport main_term(std::uint64_t p_j, const LegendreOptions& options)
{
    const Level lv = level_of(p_j);
    if (lv.x > options.main_term_limit) {
        throw CapacityError("mainterm: x = " + lv.x.str() + " exceeds the exact main-term limit " +
                            std::to_string(options.main_term_limit));
    }
    const u64 x = to_u64(lv.x);
    const auto primes = primes_between(p_j, x);

    // Common denominator D = prod_{p_j<p<=x} p makes every x/n an integer
    // multiple of x/D.
    BigInt D = 1;
    BigInt tail_survivors = 1; // prod_{p_j<p<=x} (p-2)
    for (u64 p : primes) {
        D *= p;
        tail_survivors *= (p - 2);
    }

    const std::size_t blocks = block_count(primes.size());
    std::vector<BigInt> numerators(blocks);
    std::vector<detail::i128> floors(blocks, 0);
    detail::parallel_chunks(blocks, options.workers, [&](std::size_t b) {
        BigInt acc = 0;
        detail::i128 floor_acc = 0;
        const std::size_t end = std::min(primes.size(), (b + 1) * kPrimeBlock);
        for (std::size_t first = b * kPrimeBlock; first < end; ++first) {
            visit_squarefree_from(std::span<const u64>(primes), first, x,
                                  [&](const SquarefreeTerm& t) {
                                      BigInt term = (D / t.n) << t.nu;
                                      const detail::i128 fl = static_cast<detail::i128>(x / t.n) << t.nu;
                                      if (t.mu > 0) {
                                          acc += term;
                                          floor_acc += fl;
                                      } else {
                                          acc -= term;
                                          floor_acc -= fl;
                                      }
                                  });
        }
        numerators[b] = std::move(acc);
        floors[b] = floor_acc;
    });
    BigInt numerator = 0;
    detail::i128 ie_sum = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        numerator += numerators[b];
        ie_sum += floors[b];
    }

    MainTermReport report;
    report.p_j = p_j;
    report.x = lv.x;
    report.M = lv.M;
    report.R0 = lv.R0;
    report.estimate = lv.R0 + BigInt(static_cast<long long>(ie_sum));
    report.rm_sum = Rational(lv.R0) + Rational(numerator * x, D);

    // L * prod_{5<=p<=x}(1-2/p) = R0 * tail_survivors / D since the full
    // denominator L*D cancels against L.
    report.rm_product = Rational(lv.R0 * tail_survivors + lv.M * (D - tail_survivors), D);
    report.gap = report.rm_sum - report.rm_product;
    report.r_e = Rational(report.estimate) - report.rm_sum;
    report.asymptote = asymptotic_density(lv.x);
    return report;
}

double exp_minus_two_gamma() { return std::exp(-2.0 * std::numbers::egamma); }

TwinPrimeConstantEstimate estimate_twin_prime_constant(double tolerance)
{
    if (!(tolerance >= 1e-12)) {
        throw DomainError("twin_prime_constant: tolerance must be >= 1e-12");
    }
    // tail of -ln c2 beyond P:  sum_{p>P} -ln(1 - 1/(p-1)^2)
    //   <= (1 + 2/P^2) ((P+1)/P)^2 sum_{p>P} 1/p^2
    //   <  (1 + 2/P^2) ((P+1)/P)^2 * 2 * 1.25506 / (P ln P)
    // using pi(t) < 1.25506 t / ln t. |c2_P - c2| <= c2_P * tail <= tail.
    auto tail_bound = [](double P) {
        const double growth = (P + 1) / P;
        return (1 + 2 / (P * P)) * growth * growth * 2.51012 / (P * std::log(P));
    };
    constexpr u64 kMaxCutoff = 4'000'000'000ULL;
    u64 hi = 16;
    while (tail_bound(static_cast<double>(hi)) > tolerance) {
        hi *= 2;
        if (hi > kMaxCutoff) {
            throw CapacityError("twin_prime_constant: tolerance " + std::to_string(tolerance) +
                                " needs a prime cutoff beyond 4e9");
        }
    }
    u64 lo = hi / 2;
    while (hi - lo > 1) {
        const u64 mid = lo + (hi - lo) / 2;
        if (tail_bound(static_cast<double>(mid)) > tolerance) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    long double sum = 0.0L;
    long double carry = 0.0L; // Kahan compensation
    for_each_prime(2, hi, [&](u64 p) {
        const long double d = static_cast<long double>(p - 1);
        const long double term = std::log1p(-1.0L / (d * d)) - carry;
        const long double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    });
    return {static_cast<double>(std::exp(sum)), hi, tail_bound(static_cast<double>(hi))};
}

double twin_prime_constant(double tolerance) { return estimate_twin_prime_constant(tolerance).value; }

double asymptotic_coefficient(double c2) { return 2 * c2 * exp_minus_two_gamma(); }

double asymptotic_density(const BigInt& x)
{
    if (x < 2) {
        throw DomainError("asymptotic_density: x must be >= 2");
    }
    static const double coefficient = asymptotic_coefficient(twin_prime_constant(1e-9));
    const BigInt six_x = 6 * x;
    const double log_arg = log_of(six_x + 1);
    return coefficient * approx(six_x) / (log_arg * log_arg);
}

} // namespace twinsieve
