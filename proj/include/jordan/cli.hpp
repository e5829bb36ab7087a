#ifndef JORDAN_CLI_HPP
#define JORDAN_CLI_HPP

// Command-line front end: compute, table, verify and oracle subcommands.
// Exit codes: 0 success, 1 verification failures, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "oracle.hpp"
#include "serialize.hpp"
#include "verify.hpp"

namespace jordan::cli {

enum ExitCode : int { kSuccess = 0, kFailures = 1, kUsage = 2 };

enum class OutputFormat { Text, Json, Csv };

inline OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    return OutputFormat::Text;
}

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string multiplicity_form(const JordanDecomposition& dec) {
    std::string out;
    for (const auto& g : dec.groups()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(g.multiplicity) + '*' + std::to_string(g.part);
    }
    return out;
}

inline std::string quoted(const std::string& s) { return '"' + s + '"'; }

inline const char* flag(bool b) { return b ? "true" : "false"; }

constexpr const char* kPartitionCsvHeader = "m,n,p,composition,partition,standard";

inline std::string csv_row(const BlockPair& pair, const Prime& p, const Composition& comp, const JordanDecomposition& dec) {
    std::ostringstream os;
    os << pair.m() << ',' << pair.n() << ',' << p.value() << ',' << quoted(to_string(comp)) << ','
       << quoted(to_string(dec)) << ',' << flag(is_standard(dec, pair.m(), pair.n()));
    return os.str();
}

inline Int positive(Int value, const char* name) {
    if (value < 1) throw UsageError(std::string("--") + name + " must be >= 1, got " + std::to_string(value));
    return value;
}

struct ComputeArgs {
    Int m = 0, n = 0, p = 0;
    std::string format = "text";
};

inline void cmd_compute(const ComputeArgs& args, std::ostream& out) {
    const BlockPair pair(positive(args.m, "m"), positive(args.n, "n"));
    const Prime p(args.p);
    const Composition comp = composition(pair.m(), pair.n(), p);
    const JordanDecomposition dec = lambda_from_composition(pair.n(), comp);
    switch (parse_format(args.format)) {
        case OutputFormat::Json: out << partition_document(pair, p, comp, dec).dump() << '\n'; break;
        case OutputFormat::Csv: out << kPartitionCsvHeader << '\n' << csv_row(pair, p, comp, dec) << '\n'; break;
        case OutputFormat::Text:
            out << "m: " << pair.m() << '\n'
                << "n: " << pair.n() << '\n'
                << "p: " << p.value() << '\n'
                << "composition: " << to_string(comp) << '\n'
                << "multiplicity_form: " << multiplicity_form(dec) << '\n'
                << "partition: " << to_string(dec) << '\n'
                << "standard: " << flag(is_standard(dec, pair.m(), pair.n())) << '\n';
            break;
    }
}

struct TableArgs {
    Int m_max = 0, n_max = 0, p = 0;
    std::string format = "text";
};

inline void cmd_table(const TableArgs& args, std::ostream& out) {
    positive(args.m_max, "m-max");
    positive(args.n_max, "n-max");
    const Prime p(args.p);
    const OutputFormat format = parse_format(args.format);
    nlohmann::json rows = nlohmann::json::array();
    if (format == OutputFormat::Csv) out << kPartitionCsvHeader << '\n';
    if (format == OutputFormat::Text) out << "m\tn\tp\tcomposition\tpartition\tstandard\n";
    for (Int m = 1; m <= args.m_max; ++m) {
        for (Int n = m; n <= args.n_max; ++n) {
            const BlockPair pair(m, n);
            const Composition comp = composition(m, n, p);
            const JordanDecomposition dec = lambda_from_composition(n, comp);
            switch (format) {
                case OutputFormat::Json: rows.push_back(partition_document(pair, p, comp, dec)); break;
                case OutputFormat::Csv: out << csv_row(pair, p, comp, dec) << '\n'; break;
                case OutputFormat::Text:
                    out << m << '\t' << n << '\t' << p.value() << '\t' << to_string(comp) << '\t' << to_string(dec) << '\t'
                        << flag(is_standard(dec, m, n)) << '\n';
                    break;
            }
        }
    }
    if (format == OutputFormat::Json) out << rows.dump() << '\n';
}

struct OracleArgs {
    Int m = 0, n = 0, p = 0;
    Int max_entries = OracleLimits{}.max_dimension;
    std::string format = "text";
};

inline void cmd_oracle(const OracleArgs& args, std::ostream& out) {
    const BlockPair pair(positive(args.m, "m"), positive(args.n, "n"));
    const Prime p(args.p);
    const OracleRun run = oracle_run(pair, p, OracleLimits{positive(args.max_entries, "max-entries")});
    const std::vector<Int>& ranks = run.ranks.ranks;
    switch (parse_format(args.format)) {
        case OutputFormat::Json:
            out << nlohmann::json{{"m", pair.m()},
                                  {"n", pair.n()},
                                  {"p", p.value()},
                                  {"partition", run.decomposition.partition()},
                                  {"multiplicity_form", run.decomposition.groups()},
                                  {"ranks", ranks}}
                       .dump()
                << '\n';
            break;
        case OutputFormat::Csv:
            out << "m,n,p,partition,ranks\n"
                << pair.m() << ',' << pair.n() << ',' << p.value() << ',' << quoted(to_string(run.decomposition)) << ','
                << quoted(to_string(ranks)) << '\n';
            break;
        case OutputFormat::Text:
            out << "m: " << pair.m() << '\n'
                << "n: " << pair.n() << '\n'
                << "p: " << p.value() << '\n'
                << "partition: " << to_string(run.decomposition) << '\n'
                << "multiplicity_form: " << multiplicity_form(run.decomposition) << '\n'
                << "ranks: " << to_string(ranks) << '\n';
            break;
    }
}

struct VerifyArgs {
    std::string suite;
    std::optional<Int> m_max, n_max, m;
    std::optional<int> t;
    std::vector<Int> primes;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    Int max_entries = OracleLimits{}.max_dimension;
    std::size_t counterexample_cap = 100;
    std::string format = "text";
};

/// Runs one per-(m, t) theorem-2 check for each prime and merges the results.
template <class Check>
VerifyReport merge_over_primes(const std::string& name, const std::vector<Prime>& primes, Check check, std::size_t cap) {
    VerifyReport merged;
    merged.suite = name;
    for (const Prime& p : primes) {
        VerifyReport r = check(p);
        merged.cases_checked += r.cases_checked;
        merged.failure_count += r.failure_count;
        merged.elapsed += r.elapsed;
        for (auto& f : r.failures)
            if (merged.failures.size() < cap) merged.failures.push_back(std::move(f));
    }
    return merged;
}

inline VerifyReport run_verify(const VerifyArgs& args) {
    const auto suite = parse_suite(args.suite);
    if (!suite) throw UsageError("unknown suite '" + args.suite + "'");

    SweepSpec spec;
    spec.suites = {*suite};
    spec.samples = args.samples;
    spec.seed = args.seed;
    spec.options.threads = std::max<std::size_t>(1, args.threads);
    spec.options.counterexample_cap = args.counterexample_cap;
    spec.options.limits.max_dimension = positive(args.max_entries, "max-entries");
    spec.primes.clear();
    for (Int p : args.primes) spec.primes.emplace_back(p);
    if (spec.primes.empty()) spec.primes.emplace_back(2);

    const bool theorem2 = *suite == Suite::Periodicity || *suite == Suite::Reflection;
    if (theorem2 && args.t) {
        if (!args.m) throw UsageError("--t requires --m for the " + args.suite + " suite");
        const Int m = *args.m;
        const int t = *args.t;
        if (*suite == Suite::Periodicity) {
            return merge_over_primes("periodicity", spec.primes, [&](const Prime& p) {
                const Int n_max = args.n_max.value_or(4 * jordan::detail::checked_period(m, t, p));
                return check_periodicity(m, t, p, n_max, spec.options);
            }, spec.options.counterexample_cap);
        }
        return merge_over_primes("reflection", spec.primes, [&](const Prime& p) {
            return check_reflection(m, t, p, spec.options);
        }, spec.options.counterexample_cap);
    }
    if (theorem2 && args.m) throw UsageError("--m requires --t for the " + args.suite + " suite");

    if (*suite == Suite::Theorem1) {
        for (const Prime& p : spec.primes)
            if (p.value() != 2) throw UsageError("the theorem1 suite is defined for p = 2 only");
    }

    const Int default_bound = theorem2 ? 32 : 16;
    spec.n_max = positive(args.n_max.value_or(std::max(default_bound, args.m_max.value_or(1))), "n-max");
    spec.m_max = positive(args.m_max.value_or(spec.n_max), "m-max");
    if (spec.m_max > spec.n_max) throw UsageError("--m-max must not exceed --n-max");
    return run_suites(spec).front();
}

inline void print_report(const VerifyReport& report, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::Json: out << nlohmann::json(report).dump() << '\n'; break;
        case OutputFormat::Csv:
            out << "suite,cases_checked,failure_count,elapsed_ms,passed\n"
                << report.suite << ',' << report.cases_checked << ',' << report.failure_count << ','
                << report.elapsed.count() << ',' << flag(report.passed()) << '\n';
            break;
        case OutputFormat::Text:
            out << "suite: " << report.suite << '\n'
                << "cases_checked: " << report.cases_checked << '\n'
                << "failures: " << report.failure_count << '\n'
                << "elapsed_ms: " << report.elapsed.count() << '\n';
            for (const auto& f : report.failures) {
                out << "  m=" << f.m << " n=" << f.n << " p=" << f.p << " expected=" << quoted(f.expected)
                    << " actual=" << quoted(f.actual) << '\n';
            }
            out << "result: " << (report.passed() ? "PASS" : "FAIL") << '\n';
            break;
    }
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jordan partitions of tensor products of unipotent Jordan blocks", "jordan"};
    app.require_subcommand(1);
    const auto formats = CLI::IsMember({"text", "json", "csv"});

    detail::ComputeArgs compute;
    auto* compute_cmd = app.add_subcommand("compute", "Jordan partition via the composition recursion");
    compute_cmd->add_option("--m", compute.m, "first block size")->required();
    compute_cmd->add_option("--n", compute.n, "second block size")->required();
    compute_cmd->add_option("--p", compute.p, "characteristic")->required();
    compute_cmd->add_option("--format", compute.format)->check(formats);

    detail::TableArgs table;
    auto* table_cmd = app.add_subcommand("table", "one row per pair m <= n within the bounds");
    table_cmd->add_option("--m-max", table.m_max)->required();
    table_cmd->add_option("--n-max", table.n_max)->required();
    table_cmd->add_option("--p", table.p)->required();
    table_cmd->add_option("--format", table.format)->check(formats);

    detail::VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", verify.suite,
                           "oracle | theorem1 | periodicity | reflection | corollary1 | invariants")
        ->required();
    verify_cmd->add_option("--m-max", verify.m_max);
    verify_cmd->add_option("--n-max", verify.n_max);
    verify_cmd->add_option("--m", verify.m, "block size for a single periodicity/reflection check");
    verify_cmd->add_option("--t", verify.t, "exponent t of the period p^t");
    verify_cmd->add_option("--p", verify.primes, "characteristic (repeatable)");
    verify_cmd->add_option("--samples", verify.samples, "random triples instead of an exhaustive sweep");
    verify_cmd->add_option("--seed", verify.seed);
    verify_cmd->add_option("--threads", verify.threads);
    verify_cmd->add_option("--max-entries", verify.max_entries, "oracle bound on the matrix dimension m*n");
    verify_cmd->add_option("--counterexample-cap", verify.counterexample_cap);
    verify_cmd->add_option("--format", verify.format)->check(formats);

    detail::OracleArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Jordan partition by brute-force linear algebra over GF(p)");
    oracle_cmd->add_option("--m", oracle.m)->required();
    oracle_cmd->add_option("--n", oracle.n)->required();
    oracle_cmd->add_option("--p", oracle.p)->required();
    oracle_cmd->add_option("--max-entries", oracle.max_entries, "bound on the matrix dimension m*n");
    oracle_cmd->add_option("--format", oracle.format)->check(formats);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (compute_cmd->parsed()) detail::cmd_compute(compute, out);
        if (table_cmd->parsed()) detail::cmd_table(table, out);
        if (oracle_cmd->parsed()) detail::cmd_oracle(oracle, out);
        if (verify_cmd->parsed()) {
            const VerifyReport report = detail::run_verify(verify);
            detail::print_report(report, parse_format(verify.format), out);
            return report.passed() ? kSuccess : kFailures;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kUsage;
    }
    return kSuccess;
}

}  // namespace jordan::cli

#endif  // JORDAN_CLI_HPP
