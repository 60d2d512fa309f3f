#include "cli.hpp"
#include "envelope.hpp"

#include "twinsieve/arith.hpp"
#include "twinsieve/classify.hpp"
#include "twinsieve/counting.hpp"
#include "twinsieve/errors.hpp"
#include "twinsieve/oracle.hpp"
#include "twinsieve/progressions.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace twinsieve::cli {

namespace fs = std::filesystem;

namespace {

using u64 = std::uint64_t;

struct GlobalOptions {
    std::string emit = "json";
    std::string out_path;
    u64 ceiling = kDefaultCeiling;
    unsigned workers = 1;
    std::string cache_dir;
};

Json big(const BigInt& v) { return v.str(); }
Json rational(const Rational& v) { return to_string(v); }

template <class T>
Json optional_big(const std::optional<T>& v)
{
    if (!v) {
        return nullptr;
    }
    if constexpr (std::is_same_v<T, BigInt>) {
        return v->str();
    } else {
        return *v;
    }
}

std::string sign_string(const std::vector<Sign>& signs)
{
    std::string s;
    for (Sign sign : signs) {
        s += sign_char(sign);
    }
    return s;
}

void write_atomically(const fs::path& target, const std::string& payload)
{
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        file << payload;
        if (!file.flush()) {
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, target);
}

// -- commands ---------------------------------------------------------------

Envelope cmd_classify(u64 m)
{
    Envelope env{"classify"};
    env.parameters["m"] = m;
    const Classification c = classify(m);
    Json& r = env.results;
    r["m"] = m;
    r["verdict"] = to_string(c.verdict);
    r["parent"] = c.parent ? Json(*c.parent) : Json(nullptr);
    r["composite_minus"] = c.composite_sides.minus;
    r["composite_plus"] = c.composite_sides.plus;
    if (auto w = c.witness()) {
        r["witness"] = {{"kappa", w->n}, {"sign", std::string(1, sign_char(w->sign))}};
    } else {
        r["witness"] = {{"kappa", nullptr}, {"sign", nullptr}};
    }
    r["twin_index"] = c.is_twin_rank() ? Json(6 * m) : Json(nullptr);
    return env;
}

Envelope cmd_twins(u64 limit, const GlobalOptions& g)
{
    Envelope env{"twins"};
    env.parameters["limit"] = limit;
    env.parameters["ceiling"] = g.ceiling;
    env.list_key = "ranks";
    TwinOracle oracle({g.ceiling, u64{1} << 20, g.workers});
    const TwinRankStream stream = oracle.twin_ranks_up_to(limit);
    env.results["limit"] = limit;
    env.results["count"] = stream.ranks.size();
    env.results["ranks"] = stream.ranks;
    return env;
}

Envelope cmd_nonranks(u64 prime, u64 limit)
{
    Envelope env{"nonranks"};
    env.parameters["prime"] = prime;
    env.parameters["limit"] = limit;
    env.list_key = "terms";
    const auto terms = nonranks_of(prime, limit);
    const auto [gap_a, gap_b] = gap_pattern(prime);
    env.results["prime"] = prime;
    env.results["nsix"] = nsix(prime);
    env.results["gaps"] = Json::array({gap_a, gap_b});
    env.results["count"] = terms.size();
    Json list = Json::array();
    for (const NonRankTerm& t : terms) {
        list.push_back({{"n", t.n}, {"sign", std::string(1, sign_char(t.sign))}, {"value", t.value}});
    }
    env.results["terms"] = std::move(list);
    return env;
}

ResidueSet load_or_build(u64 level, const GlobalOptions& g)
{
    if (g.cache_dir.empty()) {
        return residue_set(level, g.workers);
    }
    const fs::path file = fs::path(g.cache_dir) / ("C_" + std::to_string(level) + ".txt");
    if (fs::exists(file)) {
        std::ifstream in(file);
        ResidueSet cached = read_residue_set(in);
        if (cached.p != level) {
            throw std::runtime_error("cache file " + file.string() + " holds level " +
                                     std::to_string(cached.p));
        }
        return cached;
    }
    ResidueSet set = residue_set(level, g.workers);
    fs::create_directories(g.cache_dir);
    std::ostringstream text;
    write_residue_set(set, text);
    write_atomically(file, text.str());
    return set;
}

Envelope cmd_constants(u64 level, const GlobalOptions& g)
{
    Envelope env{"constants"};
    env.parameters["level"] = level;
    env.list_key = "constants";
    const ResidueSet set = load_or_build(level, g);
    env.results["level"] = level;
    env.results["modulus"] = big(set.modulus);
    env.results["count"] = set.constants.size();
    // twin ranks N(p'/6) the congruence filter drops but listings keep
    std::vector<u64> additions;
    for (u64 c : covering_constants(set)) {
        if (!set.contains(c)) {
            additions.push_back(c);
        }
    }
    env.results["covering_additions"] = additions;
    env.results["constants"] = set.constants;
    return env;
}

Envelope cmd_remnants(u64 level, u64 bound)
{
    Envelope env{"remnants"};
    env.parameters["level"] = level;
    env.parameters["bound"] = bound;
    env.list_key = "remnants";
    const RemnantReport report = remnants_below(level, bound);
    env.results["level"] = level;
    env.results["bound"] = bound;
    env.results["front_bound"] = report.front_bound;
    env.results["count"] = report.remnants.size();
    env.results["front_count"] = report.front_twin_ranks.size();
    env.results["intruder_count"] = report.intruders.size();

    Json list = Json::array();
    auto intruder = report.intruders.begin();
    for (u64 m : report.remnants) {
        Json row = {{"value", m}, {"kind", "front"}, {"parent", nullptr}};
        if (m >= report.front_bound) {
            if (intruder != report.intruders.end() && intruder->value == m) {
                row["kind"] = "intruder";
                row["parent"] = intruder->parent;
                ++intruder;
            } else {
                row["kind"] = "twin_rank";
            }
        }
        list.push_back(std::move(row));
    }
    env.results["remnants"] = std::move(list);
    return env;
}

std::vector<u64> parse_prime_list(const std::string& text)
{
    std::vector<u64> primes;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        u64 value = 0;
        try {
            value = std::stoull(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--primes", "not an integer: '" + item + "'");
        }
        if (used != item.size() || item.empty() || item[0] == '-') {
            throw CLI::ValidationError("--primes", "not an integer: '" + item + "'");
        }
        primes.push_back(value);
    }
    return primes;
}

Envelope cmd_family(const std::string& primes_text, std::optional<u64> nested, const GlobalOptions& g)
{
    Envelope env{"family"};
    env.parameters["primes"] = primes_text;
    env.parameters["nested"] = nested ? Json(*nested) : Json(nullptr);
    env.list_key = "members";
    const ProgressionFamily family = crt_family(parse_prime_list(primes_text), g.workers);

    std::optional<std::size_t> outer;
    if (nested) {
        auto it = std::find(family.primes.begin(), family.primes.end(), *nested);
        if (it == family.primes.end()) {
            throw DomainError("--nested " + std::to_string(*nested) + " is not one of the primes");
        }
        outer = static_cast<std::size_t>(it - family.primes.begin());
    }

    env.results["primes"] = family.primes;
    env.results["modulus"] = big(family.modulus);
    env.results["count"] = family.members.size();
    Json list = Json::array();
    for (const FamilyMember& member : family.members) {
        Json row = {{"signs", sign_string(member.signs)}, {"residue", big(member.residue)}};
        if (outer) {
            row["nested"] = nested_form(family.primes, member, *outer).to_string();
        }
        list.push_back(std::move(row));
    }
    env.results["members"] = std::move(list);
    return env;
}

Json counts_json(const CountsRow& row)
{
    return {{"level", row.p_j}, {"j", row.j},          {"L", big(row.L)},
            {"G", big(row.G)},  {"q", rational(row.q)}, {"S", big(row.S)},
            {"Q", rational(row.Q)}, {"R", big(row.R)},  {"x_frac", rational(row.x_frac)}};
}

Envelope cmd_counts(u64 level, bool table)
{
    Envelope env{"counts"};
    env.parameters["level"] = level;
    env.parameters["table"] = table;
    if (table) {
        env.list_key = "rows";
        Json rows = Json::array();
        for (const CountsRow& row : counts_table(level)) {
            rows.push_back(counts_json(row));
        }
        env.results["rows"] = std::move(rows);
    } else {
        env.results = counts_json(counts_row(level));
    }
    return env;
}

Envelope cmd_legendre(u64 level, const GlobalOptions& g)
{
    Envelope env{"legendre"};
    env.parameters["level"] = level;
    env.parameters["ceiling"] = g.ceiling;
    LegendreOptions options;
    options.oracle_ceiling = g.ceiling;
    options.workers = g.workers;
    const LegendreReport rep = legendre_pi2(level, options);
    Json& r = env.results;
    r["level"] = rep.p_j;
    r["p_next"] = rep.p_next;
    r["M"] = big(rep.M);
    r["x"] = big(rep.x);
    r["L"] = big(rep.L);
    r["R0"] = big(rep.R0);
    r["ie_sum"] = big(rep.ie_sum);
    r["estimate"] = big(rep.estimate);
    r["term_count"] = rep.term_count;
    r["oracle_pi2"] = optional_big(rep.oracle_pi2);
    r["oracle_window"] = optional_big(rep.oracle_window);
    r["residual_pi2"] = optional_big(rep.residual_pi2);
    r["residual_window"] = optional_big(rep.residual_window);
    return env;
}

Envelope cmd_mainterm(u64 level, const GlobalOptions& g)
{
    Envelope env{"mainterm"};
    env.parameters["level"] = level;
    LegendreOptions options;
    options.workers = g.workers;
    const MainTermReport rep = main_term(level, options);
    Json& r = env.results;
    r["level"] = rep.p_j;
    r["x"] = big(rep.x);
    r["M"] = big(rep.M);
    r["R0"] = big(rep.R0);
    r["estimate"] = big(rep.estimate);
    r["rm_sum"] = rational(rep.rm_sum);
    r["rm_sum_approx"] = approx(rep.rm_sum);
    r["rm_product"] = rational(rep.rm_product);
    r["rm_product_approx"] = approx(rep.rm_product);
    r["gap"] = rational(rep.gap);
    r["gap_approx"] = approx(rep.gap);
    r["r_e"] = rational(rep.r_e);
    r["r_e_approx"] = approx(rep.r_e);
    r["asymptote"] = rep.asymptote;
    r["rm_product_over_asymptote"] = approx(rep.rm_product) / rep.asymptote;
    return env;
}

Envelope cmd_c2(double tolerance)
{
    Envelope env{"c2"};
    env.parameters["tol"] = tolerance;
    const TwinPrimeConstantEstimate est = estimate_twin_prime_constant(tolerance);
    env.results["tolerance"] = tolerance;
    env.results["cutoff"] = est.cutoff;
    env.results["tail_bound"] = est.tail_bound;
    env.results["c2"] = est.value;
    env.results["c2_exp_minus_2gamma"] = est.value * exp_minus_two_gamma();
    env.results["asymptotic_coefficient"] = asymptotic_coefficient(est.value);
    env.results["two_c2"] = 2 * est.value;
    return env;
}

Envelope cmd_verify(u64 limit, bool list, const GlobalOptions& g, std::ostream& err)
{
    Envelope env{"verify"};
    env.parameters["limit"] = limit;
    env.parameters["ceiling"] = g.ceiling;
    env.list_key = "mismatches";
    TwinOracle oracle({g.ceiling, u64{1} << 20, g.workers});
    const VerifyReport rep = oracle.verify_classify(limit, list);
    env.results["limit"] = limit;
    env.results["twin_ranks"] = rep.twin_ranks;
    env.results["non_ranks"] = rep.non_ranks;
    env.results["mismatch_count"] = rep.mismatches.size();
    if (list) {
        env.results["non_rank_list"] = rep.non_rank_list;
    }
    env.results["mismatches"] = rep.mismatches;
    err << "verify: " << limit << " ranks in " << rep.seconds << " s (" << rep.ranks_per_second
        << " ranks/s)\n";
    return env;
}

Envelope cmd_bench(u64 limit, const GlobalOptions& g)
{
    using clock = std::chrono::steady_clock;
    Envelope env{"bench"};
    env.parameters["limit"] = limit;
    if (limit == 0 || limit > kMaxClassifiable) {
        throw DomainError("bench: limit must be in [1, 2^64/6)");
    }

    auto t0 = clock::now();
    u64 twins = 0;
    for (u64 m = 1; m <= limit; ++m) {
        twins += classify(m).is_twin_rank() ? 1 : 0;
    }
    auto t1 = clock::now();
    TwinOracle oracle({g.ceiling, u64{1} << 20, g.workers});
    const u64 sieve_twins = oracle.count_twin_ranks(limit);
    auto t2 = clock::now();

    const double classify_s = std::chrono::duration<double>(t1 - t0).count();
    const double sieve_s = std::chrono::duration<double>(t2 - t1).count();
    env.results["limit"] = limit;
    env.results["twin_ranks_classify"] = twins;
    env.results["twin_ranks_sieve"] = sieve_twins;
    env.results["classify_seconds"] = classify_s;
    env.results["sieve_seconds"] = sieve_s;
    env.results["classify_per_second"] = classify_s > 0 ? static_cast<double>(limit) / classify_s : 0.0;
    return env;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Twin-rank sieve engine: classification, residue sets, counting identities "
                 "and a sieve oracle.",
                 "twinsieve"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(engine_version()));

    GlobalOptions g;
    app.add_option("--emit", g.emit, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "Write the envelope to this file instead of stdout");
    app.add_option("--ceiling", g.ceiling, "Oracle sieve ceiling")->capture_default_str();
    app.add_option("--workers", g.workers, "Worker threads")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    app.add_option("--cache-dir", g.cache_dir, "Memoize residue sets in this directory");

    std::function<Envelope()> action;

    u64 m = 0;
    auto* classify_cmd = app.add_subcommand("classify", "Twin rank or non-rank with parent prime");
    classify_cmd->add_option("m", m, "Positive integer")->required();
    classify_cmd->callback([&] { action = [&] { return cmd_classify(m); }; });

    u64 twins_limit = 0;
    auto* twins_cmd = app.add_subcommand("twins", "Twin ranks up to a rank limit (sieve oracle)");
    twins_cmd->add_option("--limit", twins_limit, "Largest rank")->required();
    twins_cmd->callback([&] { action = [&] { return cmd_twins(twins_limit, g); }; });

    u64 nr_prime = 0;
    u64 nr_limit = 0;
    auto* nonranks_cmd = app.add_subcommand("nonranks", "Non-ranks n*p +- N(p/6) of one prime");
    nonranks_cmd->add_option("--prime", nr_prime, "Prime >= 5")->required();
    nonranks_cmd->add_option("--limit", nr_limit, "Largest value")->required();
    nonranks_cmd->callback([&] { action = [&] { return cmd_nonranks(nr_prime, nr_limit); }; });

    u64 const_level = 0;
    auto* constants_cmd = app.add_subcommand("constants", "Residue set C_p modulo L(p)");
    constants_cmd->add_option("--level", const_level, "Sieve level p")->required();
    constants_cmd->callback([&] { action = [&] { return cmd_constants(const_level, g); }; });

    u64 rem_level = 0;
    u64 rem_bound = 0;
    auto* remnants_cmd = app.add_subcommand("remnants", "Remnants below a bound at a sieve level");
    remnants_cmd->add_option("--level", rem_level, "Sieve level p")->required();
    remnants_cmd->add_option("--bound", rem_bound, "Exclusive upper bound")->required();
    remnants_cmd->callback([&] { action = [&] { return cmd_remnants(rem_level, rem_bound); }; });

    std::string family_primes;
    std::optional<u64> family_nested;
    auto* family_cmd = app.add_subcommand("family", "Simultaneous non-rank progressions (CRT)");
    family_cmd->add_option("--primes", family_primes, "Comma-separated primes, e.g. 5,7,11")->required();
    family_cmd->add_option("--nested", family_nested, "Show the nested form with this prime outermost");
    family_cmd->callback([&] { action = [&] { return cmd_family(family_primes, family_nested, g); }; });

    u64 counts_level = 0;
    bool counts_table_flag = false;
    auto* counts_cmd = app.add_subcommand("counts", "Exact L, G, q, S, Q, R, x at a level");
    counts_cmd->add_option("--level", counts_level, "Sieve level p_j")->required();
    counts_cmd->add_flag("--table", counts_table_flag, "Emit every level from 5 up to --level");
    counts_cmd->callback([&] { action = [&] { return cmd_counts(counts_level, counts_table_flag); }; });

    u64 leg_level = 0;
    auto* legendre_cmd = app.add_subcommand("legendre", "Legendre-type twin-rank count vs. oracle");
    legendre_cmd->add_option("--level", leg_level, "Sieve level p_j >= 7")->required();
    legendre_cmd->callback([&] { action = [&] { return cmd_legendre(leg_level, g); }; });

    u64 main_level = 0;
    auto* mainterm_cmd = app.add_subcommand("mainterm", "Main term in sum and product form");
    mainterm_cmd->add_option("--level", main_level, "Sieve level p_j >= 7")->required();
    mainterm_cmd->callback([&] { action = [&] { return cmd_mainterm(main_level, g); }; });

    double tol = 1e-6;
    auto* c2_cmd = app.add_subcommand("c2", "Twin prime constant by truncated Euler product");
    c2_cmd->add_option("--tol", tol, "Absolute tolerance (>= 1e-12)")->capture_default_str();
    c2_cmd->callback([&] { action = [&] { return cmd_c2(tol); }; });

    u64 verify_limit = 0;
    bool verify_list = false;
    auto* verify_cmd = app.add_subcommand("verify", "Check classify against the sieve oracle");
    verify_cmd->add_option("--limit", verify_limit, "Largest rank")->required();
    verify_cmd->add_flag("--list", verify_list, "Include the list of non-ranks found");
    verify_cmd->callback([&] { action = [&] { return cmd_verify(verify_limit, verify_list, g, err); }; });

    u64 bench_limit = 0;
    auto* bench_cmd = app.add_subcommand("bench", "Time classify and the sieve oracle");
    bench_cmd->add_option("--limit", bench_limit, "Largest rank")->required();
    bench_cmd->callback([&] { action = [&] { return cmd_bench(bench_limit, g); }; });

    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        const Envelope env = action();
        const std::string payload =
            g.emit == "csv" ? to_csv(env) : env.to_json().dump(2) + "\n";
        if (g.out_path.empty()) {
            out << payload;
            out.flush();
        } else {
            write_atomically(g.out_path, payload);
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}

} // namespace twinsieve::cli
