#ifndef JORDAN_VERIFY_HPP
#define JORDAN_VERIFY_HPP

// Sweeps that cross-check the recursion against the GF(p) oracle and against
// the known structural facts about c(m, n, p). Failures are collected, not
// thrown; reports are identical for serial and threaded runs.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "oracle.hpp"

namespace jordan {

enum class Suite { Oracle, Theorem1, Periodicity, Reflection, Corollary1, Invariants };

inline std::string to_string(Suite suite) {
    switch (suite) {
        case Suite::Oracle: return "oracle";
        case Suite::Theorem1: return "theorem1";
        case Suite::Periodicity: return "periodicity";
        case Suite::Reflection: return "reflection";
        case Suite::Corollary1: return "corollary1";
        case Suite::Invariants: return "invariants";
    }
    return "unknown";
}

inline std::optional<Suite> parse_suite(const std::string& name) {
    for (Suite s : {Suite::Oracle, Suite::Theorem1, Suite::Periodicity, Suite::Reflection, Suite::Corollary1,
                    Suite::Invariants}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

struct SweepOptions {
    std::size_t threads = 1;
    std::size_t counterexample_cap = 100;
    OracleLimits limits{};
};

struct SweepSpec {
    Int m_max = 1;
    Int n_max = 1;
    std::vector<Prime> primes{Prime(2)};
    std::set<Suite> suites{Suite::Invariants};
    /// 0 sweeps every pair exhaustively; otherwise draws this many random triples.
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    SweepOptions options{};

    void validate() const {
        if (m_max < 1 || n_max < 1) throw std::invalid_argument("sweep bounds must be >= 1");
        if (m_max > n_max) throw std::invalid_argument("m_max must not exceed n_max");
        if (suites.empty()) throw std::invalid_argument("at least one suite is required");
        if (primes.empty()) throw std::invalid_argument("at least one prime is required");
    }
};

struct Triple {
    Int m, n, p;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct Failure {
    Int m = 0;
    Int n = 0;
    Int p = 0;
    std::string expected;
    std::string actual;
    friend bool operator==(const Failure&, const Failure&) = default;
};

struct VerifyReport {
    std::string suite;
    std::size_t cases_checked = 0;
    std::size_t failure_count = 0;   // may exceed failures.size() when capped
    std::vector<Failure> failures;   // ordered by (m, n, p)
    std::chrono::milliseconds elapsed{0};

    [[nodiscard]] bool passed() const noexcept { return failure_count == 0; }
};

namespace detail {

/// Runs `check` over `cases` (any order) and merges outcomes by (m, n, p).
template <class Check>
VerifyReport run_sweep(std::string suite, std::vector<Triple> cases, Check check, const SweepOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    std::sort(cases.begin(), cases.end());
    std::vector<std::optional<Failure>> outcomes(cases.size());

    auto guarded = [&](std::size_t i) {
        const Triple& t = cases[i];
        try {
            outcomes[i] = check(t);
        } catch (const std::exception& e) {
            outcomes[i] = Failure{t.m, t.n, t.p, "no exception", std::string("exception: ") + e.what()};
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, cases.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < cases.size(); ++i) guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cases.size(); i = next++) guarded(i);
            });
        }
    }

    VerifyReport report;
    report.suite = std::move(suite);
    report.cases_checked = cases.size();
    for (auto& outcome : outcomes) {
        if (!outcome) continue;
        ++report.failure_count;
        if (report.failures.size() < options.counterexample_cap) report.failures.push_back(std::move(*outcome));
    }
    report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return report;
}

inline std::vector<Triple> exhaustive_cases(Int m_max, Int n_max, const std::vector<Prime>& primes) {
    std::vector<Triple> cases;
    for (const Prime& p : primes)
        for (Int m = 1; m <= m_max; ++m)
            for (Int n = m; n <= n_max; ++n) cases.push_back({m, n, p.value()});
    return cases;
}

inline std::vector<Triple> spec_cases(const SweepSpec& spec) {
    if (spec.samples == 0) return exhaustive_cases(spec.m_max, spec.n_max, spec.primes);
    std::mt19937_64 rng(spec.seed);
    std::vector<Triple> cases;
    cases.reserve(spec.samples);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const Int p = spec.primes[std::uniform_int_distribution<std::size_t>(0, spec.primes.size() - 1)(rng)].value();
        const Int n = std::uniform_int_distribution<Int>(1, spec.n_max)(rng);
        const Int m = std::uniform_int_distribution<Int>(1, std::min(n, spec.m_max))(rng);
        cases.push_back({m, n, p});
    }
    return cases;
}

inline Int power(Int base, int exponent) {
    Int out = 1;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

inline Int checked_period(Int m, int t, const Prime& p) {
    if (t < 0) throw std::invalid_argument("exponent t must be non-negative");
    const Int period = power(p.value(), t);
    if (period > kMaxBlockSize) throw std::invalid_argument("p^t exceeds the supported block size");
    if (m < 1 || m > period) throw std::invalid_argument("theorem hypothesis requires 1 <= m <= p^t");
    return period;
}

/// Every structural fact about one instance; returns the first violation.
inline std::optional<std::string> invariant_violation(Int m, Int n, const Prime& p) {
    const Composition comp = composition(m, n, p);
    if (comp.empty()) return "composition is empty";
    for (Int part : comp.parts())
        if (part < 1) return "non-positive part " + std::to_string(part);
    if (comp.total() != m) return "parts sum to " + std::to_string(comp.total());

    bool shrinking = true;
    const RecursionObserver watch = [&](Int pm, Int pn, Int cm, Int cn) {
        if (cm + cn >= pm + pn || cm > cn || cm < 0) shrinking = false;
    };
    if (CompositionSolver(false).traced(m, n, p, watch) != comp) return "traced recursion disagrees with memoized";
    if (!shrinking) return "a reduction step did not decrease m + n";

    const JordanDecomposition dec = lambda_from_composition(n, comp);
    const auto& groups = dec.groups();
    Int before = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const Int mi = groups[i].multiplicity;
        const Int after = m - before - mi;
        const Int n_form = n + after - before;
        const Int mn_form = m + n - 2 * before - mi;
        // mean of (m + n - 2k + 1) over the k covered by this group
        Int mean_sum = 0;
        for (Int k = before + 1; k <= before + mi; ++k) mean_sum += m + n - 2 * k + 1;
        if (n_form != mn_form || mean_sum != mi * n_form || groups[i].part != n_form) return "block size forms disagree";
        if (groups[i].part < 1 || (i && groups[i - 1].part <= groups[i].part)) return "parts not strictly decreasing";
        before += mi;
    }
    if (dec.block_count() != m) return "block count " + std::to_string(dec.block_count());
    if (dec.dimension() != m * n) return "dimension " + std::to_string(dec.dimension());
    const Int top = groups.front().part;
    if (top < n || top > m + n - 1) return "largest block " + std::to_string(top) + " out of [n, m+n-1]";
    if (is_standard(dec, m, n) != comp.all_ones()) return "standardness tests disagree";
    return std::nullopt;
}

}  // namespace detail

inline VerifyReport check_oracle_agreement(const SweepSpec& spec) {
    spec.validate();
    return detail::run_sweep(
        "oracle", detail::spec_cases(spec),
        [&](const Triple& t) -> std::optional<Failure> {
            const BlockPair pair(t.m, t.n);
            const Prime p(t.p);
            const auto expected = oracle_jordan_partition(pair, p, spec.options.limits);
            const auto actual = jordan_partition(pair, p);
            if (expected == actual) return std::nullopt;
            return Failure{t.m, t.n, t.p, to_string(expected), to_string(actual)};
        },
        spec.options);
}

inline VerifyReport check_theorem1(Int m_max, Int n_max, const SweepOptions& options = {}) {
    if (m_max < 1 || n_max < 1) throw std::invalid_argument("sweep bounds must be >= 1");
    const Prime two(2);
    return detail::run_sweep(
        "theorem1", detail::exhaustive_cases(m_max, n_max, {two}),
        [&](const Triple& t) -> std::optional<Failure> {
            const BlockPair pair(t.m, t.n);
            const bool predicted = standard_predicate_p2(pair);
            const bool computed = is_standard(jordan_partition(pair, two), t.m, t.n);
            if (predicted == computed) return std::nullopt;
            return Failure{t.m, t.n, 2, predicted ? "standard" : "not standard",
                           computed ? "standard" : "not standard"};
        },
        options);
}

/// c(m, n, p) == c(m, n + p^t, p) for m <= n <= n_max.
inline VerifyReport check_periodicity(Int m, int t, const Prime& p, Int n_max, const SweepOptions& options = {}) {
    const Int period = detail::checked_period(m, t, p);
    std::vector<Triple> cases;
    for (Int n = m; n <= n_max; ++n) cases.push_back({m, n, p.value()});
    return detail::run_sweep(
        "periodicity", std::move(cases),
        [&](const Triple& c) -> std::optional<Failure> {
            const Composition here = composition(c.m, c.n, p);
            const Composition shifted = composition(c.m, c.n + period, p);
            if (here == shifted) return std::nullopt;
            return Failure{c.m, c.n, c.p, to_string(here), to_string(shifted)};
        },
        options);
}

/// c(m, p^t + i, p) == reverse(c(m, 2 p^t - i, p)) for i in [0, p^t]. Failures
/// record n = p^t + i.
inline VerifyReport check_reflection(Int m, int t, const Prime& p, const SweepOptions& options = {}) {
    const Int period = detail::checked_period(m, t, p);
    std::vector<Triple> cases;
    for (Int i = 0; i <= period; ++i) cases.push_back({m, period + i, p.value()});
    return detail::run_sweep(
        "reflection", std::move(cases),
        [&](const Triple& c) -> std::optional<Failure> {
            const Int i = c.n - period;
            const Composition left = composition(c.m, c.n, p);
            const Composition right = reverse(composition(c.m, 2 * period - i, p));
            if (left == right) return std::nullopt;
            return Failure{c.m, c.n, c.p, to_string(left), to_string(right)};
        },
        options);
}

inline VerifyReport check_corollary1(const SweepSpec& spec) {
    spec.validate();
    return detail::run_sweep(
        "corollary1", detail::spec_cases(spec),
        [&](const Triple& t) -> std::optional<Failure> {
            const Prime p(t.p);
            const Composition comp = composition(t.m, t.n, p);
            const bool by_parts = is_standard(lambda_from_composition(t.n, comp), t.m, t.n);
            if (by_parts == comp.all_ones()) return std::nullopt;
            return Failure{t.m, t.n, t.p, comp.all_ones() ? "standard" : "not standard",
                           by_parts ? "standard" : "not standard"};
        },
        spec.options);
}

inline VerifyReport check_invariants(const SweepSpec& spec) {
    spec.validate();
    return detail::run_sweep(
        "invariants", detail::spec_cases(spec),
        [&](const Triple& t) -> std::optional<Failure> {
            auto violation = detail::invariant_violation(t.m, t.n, Prime(t.p));
            if (!violation) return std::nullopt;
            return Failure{t.m, t.n, t.p, "all invariants hold", *violation};
        },
        spec.options);
}

namespace detail {

/// Merges per-(p, t, m) reports of one theorem-2 suite into a single report.
template <class PerInstance>
VerifyReport theorem2_grid(const std::string& suite, const SweepSpec& spec, PerInstance run) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport merged;
    merged.suite = suite;
    for (const Prime& p : spec.primes) {
        for (int t = 0; power(p.value(), t) <= spec.n_max; ++t) {
            for (Int m = 1; m <= power(p.value(), t); ++m) {
                VerifyReport part = run(m, t, p);
                merged.cases_checked += part.cases_checked;
                merged.failure_count += part.failure_count;
                for (auto& f : part.failures) merged.failures.push_back(std::move(f));
            }
        }
    }
    std::stable_sort(merged.failures.begin(), merged.failures.end(), [](const Failure& a, const Failure& b) {
        return std::tie(a.m, a.n, a.p) < std::tie(b.m, b.n, b.p);
    });
    if (merged.failures.size() > spec.options.counterexample_cap) merged.failures.resize(spec.options.counterexample_cap);
    merged.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return merged;
}

}  // namespace detail

/// Runs every suite named in `spec`. The theorem-2 suites sweep each t with
/// p^t <= n_max, every m <= p^t and (for periodicity) n up to 4 p^t.
inline std::vector<VerifyReport> run_suites(const SweepSpec& spec) {
    spec.validate();
    std::vector<VerifyReport> reports;
    for (Suite suite : spec.suites) {
        switch (suite) {
            case Suite::Oracle: reports.push_back(check_oracle_agreement(spec)); break;
            case Suite::Theorem1: reports.push_back(check_theorem1(spec.m_max, spec.n_max, spec.options)); break;
            case Suite::Periodicity:
                reports.push_back(detail::theorem2_grid("periodicity", spec, [&](Int m, int t, const Prime& p) {
                    return check_periodicity(m, t, p, 4 * detail::power(p.value(), t), spec.options);
                }));
                break;
            case Suite::Reflection:
                reports.push_back(detail::theorem2_grid("reflection", spec, [&](Int m, int t, const Prime& p) {
                    return check_reflection(m, t, p, spec.options);
                }));
                break;
            case Suite::Corollary1: reports.push_back(check_corollary1(spec)); break;
            case Suite::Invariants: reports.push_back(check_invariants(spec)); break;
        }
    }
    return reports;
}

}  // namespace jordan

#endif  // JORDAN_VERIFY_HPP
