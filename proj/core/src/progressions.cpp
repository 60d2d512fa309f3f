#include "twinsieve/progressions.hpp"
#include "twinsieve/arith.hpp"
#include "twinsieve/errors.hpp"

#include "parallel.hpp"

#include "int128.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace twinsieve {

namespace {

using u64 = std::uint64_t;

struct Avoid {
    u64 p;
    u64 plus;  // N(p/6)
    u64 minus; // p - N(p/6)
};

std::vector<Avoid> avoid_list(u64 p_max)
{
    std::vector<Avoid> out;
    for (u64 q : primes_between(4, p_max)) {
        u64 s = nsix(q);
        out.push_back({q, s, q - s});
    }
    return out;
}

bool avoids_all(u64 c, const std::vector<Avoid>& list)
{
    for (const Avoid& a : list) {
        u64 r = c % a.p;
        if (r == a.plus || r == a.minus) {
            return false;
        }
    }
    return true;
}

void check_capacity(const BigInt& size, u64 p)
{
    if (size > kResidueSetCapacity) {
        throw CapacityError("C_" + std::to_string(p) + " has " + size.str() +
                            " constants, above the materialization limit; use remnants_below");
    }
}

u64 mod_inverse(u64 a, u64 m)
{
    // extended Euclid on signed 128-bit to stay clear of overflow
    detail::i128 old_r = static_cast<detail::i128>(a % m), r = m;
    detail::i128 old_s = 1, s = 0;
    while (r != 0) {
        detail::i128 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1) {
        throw DomainError("mod_inverse: arguments not coprime");
    }
    detail::i128 inv = old_s % static_cast<detail::i128>(m);
    if (inv < 0) {
        inv += m;
    }
    return static_cast<u64>(inv);
}

} // namespace

bool ResidueSet::contains(std::uint64_t c) const
{
    return std::binary_search(constants.begin(), constants.end(), c);
}

BigInt residue_set_size(std::uint64_t p)
{
    nsix(p); // validates p
    BigInt size = 1;
    for (u64 q : primes_between(4, p)) {
        size *= (q - 2);
    }
    return size;
}

ResidueSet residue_set(std::uint64_t p, unsigned workers)
{
    check_capacity(residue_set_size(p), p);
    const auto list = avoid_list(p);
    const u64 modulus = to_u64(primorial_from_5(p));

    constexpr u64 kChunk = u64{1} << 20;
    const std::size_t chunks = static_cast<std::size_t>((modulus + kChunk - 1) / kChunk);
    std::vector<std::vector<u64>> parts(chunks);
    detail::parallel_chunks(chunks, workers, [&](std::size_t i) {
        const u64 lo = i * kChunk;
        const u64 hi = std::min(modulus, lo + kChunk);
        for (u64 c = lo; c < hi; ++c) {
            if (avoids_all(c, list)) {
                parts[i].push_back(c);
            }
        }
    });

    ResidueSet set{p, BigInt(modulus), {}};
    for (auto& part : parts) {
        set.constants.insert(set.constants.end(), part.begin(), part.end());
    }
    return set;
}

ResidueSet inductive_step(const ResidueSet& current, std::uint64_t p_next)
{
    if (p_next != next_prime(current.p)) {
        throw DomainError("inductive_step: " + std::to_string(p_next) +
                          " is not the prime following " + std::to_string(current.p));
    }
    check_capacity(BigInt(current.constants.size()) * (p_next - 2), p_next);
    const u64 period = to_u64(current.modulus);
    const u64 s = nsix(p_next);

    ResidueSet next{p_next, current.modulus * p_next, {}};
    next.constants.reserve(current.constants.size() * (p_next - 2));
    for (u64 l = 0; l < p_next; ++l) {
        for (u64 c : current.constants) {
            u64 lifted = period * l + c;
            u64 r = lifted % p_next;
            if (r != s && r != p_next - s) {
                next.constants.push_back(lifted);
            }
        }
    }
    return next;
}

std::vector<std::uint64_t> initial_nonranks(std::uint64_t p)
{
    const u64 s = nsix(p);
    const BigInt period_big = primorial_from_5(p);
    if (period_big / p > kResidueSetCapacity) {
        throw CapacityError("initial_nonranks: period of " + std::to_string(p) + " too large");
    }
    const u64 period = to_u64(period_big);
    const auto smaller = avoid_list(p - 1);
    const u64 lo = p - s;
    const u64 hi = lo + period; // exclusive

    std::vector<u64> out;
    for (u64 n = 1;; ++n) {
        const u64 minus = n * p - s;
        if (minus >= hi) {
            break;
        }
        if (avoids_all(minus, smaller)) {
            out.push_back(minus);
        }
        const u64 plus = n * p + s;
        if (plus < hi && avoids_all(plus, smaller)) {
            out.push_back(plus);
        }
    }
    return out;
}

std::vector<Intruder> intruders(const ResidueSet& set)
{
    std::vector<Intruder> out;
    for (u64 c : set.constants) {
        if (c == 0) {
            continue;
        }
        Classification verdict = classify(c);
        if (!verdict.is_twin_rank()) {
            out.push_back({c, *verdict.parent});
        }
    }
    return out;
}

std::vector<std::uint64_t> covering_constants(const ResidueSet& set)
{
    std::vector<u64> out = set.constants;
    for (u64 p : primes_between(4, set.p)) {
        const u64 m = nsix(p);
        if (m >= 2 && classify(m).is_twin_rank()) {
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RemnantReport remnants_below(std::uint64_t p_sieve, std::uint64_t bound)
{
    nsix(p_sieve);
    const u64 q = next_prime(p_sieve);
    RemnantReport report;
    report.p = p_sieve;
    report.bound = bound;
    report.front_bound = (q * q - 1) / 6;

    // struck[m] for m in [0, bound); index 0 unused
    std::vector<bool> struck(bound, false);
    for (u64 prime : primes_between(4, p_sieve)) {
        const u64 s = nsix(prime);
        if (prime - s >= bound) {
            break;
        }
        for (u64 base = prime; base - s < bound; base += prime) {
            struck[base - s] = true;
            if (base + s < bound) {
                struck[base + s] = true;
            }
        }
    }

    for (u64 m = 1; m < bound; ++m) {
        if (struck[m]) {
            continue;
        }
        report.remnants.push_back(m);
        if (m < report.front_bound) {
            report.front_twin_ranks.push_back(m);
            continue;
        }
        Classification verdict = classify(m);
        if (verdict.is_twin_rank()) {
            report.later_twin_ranks.push_back(m);
        } else {
            report.intruders.push_back({m, *verdict.parent});
        }
    }
    return report;
}

const FamilyMember* ProgressionFamily::find(const BigInt& residue) const
{
    auto it = std::lower_bound(members.begin(), members.end(), residue,
                               [](const FamilyMember& m, const BigInt& r) { return m.residue < r; });
    if (it != members.end() && it->residue == residue) {
        return &*it;
    }
    return nullptr;
}

const FamilyMember* ProgressionFamily::find(std::span<const Sign> signs) const
{
    for (const FamilyMember& m : members) {
        if (std::equal(m.signs.begin(), m.signs.end(), signs.begin(), signs.end())) {
            return &m;
        }
    }
    return nullptr;
}

ProgressionFamily crt_family(std::span<const std::uint64_t> primes, unsigned workers)
{
    if (primes.empty() || primes.size() > kMaxFamilyPrimes) {
        throw DomainError("crt_family: need between 1 and 20 primes");
    }
    ProgressionFamily family;
    family.primes.assign(primes.begin(), primes.end());
    std::sort(family.primes.begin(), family.primes.end());
    if (std::adjacent_find(family.primes.begin(), family.primes.end()) != family.primes.end()) {
        throw DomainError("crt_family: primes must be distinct");
    }
    const std::size_t m = family.primes.size();
    std::vector<u64> offsets(m);
    for (std::size_t i = 0; i < m; ++i) {
        offsets[i] = nsix(family.primes[i]); // validates prime >= 5
    }

    family.modulus = 1;
    for (u64 p : family.primes) {
        family.modulus *= p;
    }
    // basis[i] = 1 mod p_i, 0 mod p_k for k != i
    std::vector<BigInt> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const BigInt cofactor = family.modulus / family.primes[i];
        const u64 reduced = (cofactor % family.primes[i]).convert_to<u64>();
        basis[i] = cofactor * mod_inverse(reduced, family.primes[i]);
    }

    const std::size_t total = std::size_t{1} << m;
    family.members.resize(total);
    constexpr std::size_t kChunk = 1024;
    const std::size_t chunks = (total + kChunk - 1) / kChunk;
    detail::parallel_chunks(chunks, workers, [&](std::size_t chunk) {
        const std::size_t end = std::min(total, (chunk + 1) * kChunk);
        for (std::size_t mask = chunk * kChunk; mask < end; ++mask) {
            FamilyMember& member = family.members[mask];
            member.signs.resize(m);
            BigInt acc = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const bool plus = (mask >> (m - 1 - i)) & 1;
                member.signs[i] = plus ? Sign::Plus : Sign::Minus;
                const u64 target = plus ? offsets[i] : family.primes[i] - offsets[i];
                acc += basis[i] * target;
            }
            member.residue = acc % family.modulus;
        }
    });
    std::sort(family.members.begin(), family.members.end(),
              [](const FamilyMember& a, const FamilyMember& b) { return a.residue < b.residue; });
    return family;
}

BigInt NestedForm::evaluate(const BigInt& n) const
{
    BigInt inner;
    if (order.size() == 1) {
        inner = n + coefficients.front();
    } else {
        inner = n;
        for (std::size_t level = order.size() - 1; level >= 1; --level) {
            inner = inner * order[level] + coefficients[level - 1];
        }
    }
    BigInt value = inner * order.front();
    if (outer_sign == Sign::Plus) {
        value += outer_offset;
    } else {
        value -= outer_offset;
    }
    return value;
}

std::string NestedForm::to_string() const
{
    std::string inner;
    if (order.size() == 1) {
        inner = "n + " + coefficients.front().str();
    } else {
        inner = "n";
        for (std::size_t level = order.size() - 1; level >= 1; --level) {
            std::string factor = std::to_string(order[level]);
            inner = (level == order.size() - 1 ? factor + inner : factor + "(" + inner + ")") +
                    " + " + coefficients[level - 1].str();
        }
    }
    return std::to_string(order.front()) + "(" + inner + ") " + sign_char(outer_sign) + " " +
           std::to_string(outer_offset);
}

NestedForm nested_form(std::span<const std::uint64_t> primes, const FamilyMember& member,
                       std::size_t outer_index)
{
    if (outer_index >= primes.size()) {
        throw DomainError("nested_form: outer index out of range");
    }
    std::vector<std::size_t> order{outer_index};
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i != outer_index) {
            rest.push_back(i);
        }
    }
    std::sort(rest.begin(), rest.end(),
              [&primes](std::size_t a, std::size_t b) { return primes[a] < primes[b]; });
    order.insert(order.end(), rest.begin(), rest.end());
    return nested_form(primes, member, std::span<const std::size_t>(order));
}

NestedForm nested_form(std::span<const std::uint64_t> primes, const FamilyMember& member,
                       std::span<const std::size_t> order)
{
    const std::size_t m = primes.size();
    if (member.signs.size() != m || order.size() != m || m == 0) {
        throw DomainError("nested_form: member, primes and order must have equal nonzero length");
    }
    std::vector<std::size_t> check(order.begin(), order.end());
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < m; ++i) {
        if (check[i] != i) {
            throw DomainError("nested_form: order must be a permutation of prime indices");
        }
    }

    NestedForm form;
    for (std::size_t idx : order) {
        form.order.push_back(primes[idx]);
    }
    const u64 outer = primes[order[0]];
    form.outer_sign = member.signs[order[0]];
    form.outer_offset = nsix(outer);

    BigInt shifted = member.residue;
    if (form.outer_sign == Sign::Plus) {
        shifted -= form.outer_offset;
    } else {
        shifted += form.outer_offset;
    }
    if (shifted < 0 || shifted % outer != 0) {
        throw DomainError("nested_form: residue is not a non-rank of the outer prime with that sign");
    }
    BigInt q = shifted / outer;
    if (m == 1) {
        form.coefficients.push_back(q);
        return form;
    }
    // mixed radix over the inner primes; the innermost digit keeps the rest
    for (std::size_t level = 1; level < m; ++level) {
        if (level == m - 1) {
            form.coefficients.push_back(q);
        } else {
            const u64 radix = form.order[level];
            form.coefficients.push_back(q % radix);
            q /= radix;
        }
    }
    return form;
}

std::pair<std::uint64_t, std::uint64_t> gap_pattern(std::uint64_t p)
{
    const u64 s = nsix(p);
    return {2 * s, p - 2 * s};
}

void write_residue_set(const ResidueSet& set, std::ostream& out)
{
    out << "# level=" << set.p << " modulus=" << set.modulus.str() << '\n';
    for (u64 c : set.constants) {
        out << c << '\n';
    }
}

ResidueSet read_residue_set(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("residue set file: missing header");
    }
    ResidueSet set;
    std::string modulus_text;
    {
        std::istringstream fields(header);
        std::string hash, level_kv, modulus_kv;
        fields >> hash >> level_kv >> modulus_kv;
        if (hash != "#" || level_kv.rfind("level=", 0) != 0 || modulus_kv.rfind("modulus=", 0) != 0) {
            throw std::runtime_error("residue set file: malformed header '" + header + "'");
        }
        try {
            set.p = std::stoull(level_kv.substr(6));
            set.modulus = parse_bigint(modulus_kv.substr(8));
        } catch (const std::exception&) {
            throw std::runtime_error("residue set file: malformed header '" + header + "'");
        }
    }
    if (set.p < 5 || !is_prime(set.p) || set.modulus != primorial_from_5(set.p)) {
        throw std::runtime_error("residue set file: header level and modulus disagree");
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::size_t used = 0;
        u64 c = 0;
        try {
            c = std::stoull(line, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("residue set file: bad constant '" + line + "'");
        }
        if (used != line.size() || c >= set.modulus ||
            (!set.constants.empty() && c <= set.constants.back())) {
            throw std::runtime_error("residue set file: bad constant '" + line + "'");
        }
        set.constants.push_back(c);
    }
    if (BigInt(set.constants.size()) != residue_set_size(set.p)) {
        throw std::runtime_error("residue set file: wrong number of constants");
    }
    return set;
}

} // namespace twinsieve
