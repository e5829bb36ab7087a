#ifndef JORDAN_CORE_HPP
#define JORDAN_CORE_HPP

// Jordan partitions of tensor products of unipotent Jordan blocks.
//
// For 1 <= m <= n and a prime p, J_m(1) (x) J_n(1) over a field of
// characteristic p splits into exactly m Jordan blocks. Their sizes, grouped
// by multiplicity, are described by a composition (m_1, ..., m_r) of m; the
// composition is computed by a six-way recursion on the base-p^k digits of
// m and n, and the block sizes follow from it in closed form.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jordan {

using Int = std::int64_t;

/// Largest block size accepted by the recursion.
inline constexpr Int kMaxBlockSize = Int{1} << 20;
/// Largest characteristic accepted; keeps p * n well inside 64 bits.
inline constexpr Int kMaxPrime = (Int{1} << 31) - 1;

class Prime {
public:
    explicit Prime(Int value) : value_(value) {
        if (value_ < 2) throw std::invalid_argument("p must be a prime >= 2, got " + std::to_string(value));
        if (value_ > kMaxPrime) throw std::invalid_argument("p exceeds the supported bound " + std::to_string(kMaxPrime));
        for (Int q = 2; q * q <= value_; ++q) {
            if (value_ % q == 0) throw std::invalid_argument(std::to_string(value) + " is not prime");
        }
    }

    [[nodiscard]] Int value() const noexcept { return value_; }
    friend bool operator==(const Prime&, const Prime&) = default;

private:
    Int value_;
};

/// Unordered pair of block sizes, stored with m <= n.
class BlockPair {
public:
    BlockPair(Int m, Int n) : m_(std::min(m, n)), n_(std::max(m, n)) {
        if (m_ < 1) throw std::invalid_argument("block sizes must be >= 1");
        if (n_ > kMaxBlockSize) {
            throw std::invalid_argument("block size exceeds the supported bound " + std::to_string(kMaxBlockSize));
        }
    }

    [[nodiscard]] Int m() const noexcept { return m_; }
    [[nodiscard]] Int n() const noexcept { return n_; }
    friend bool operator==(const BlockPair&, const BlockPair&) = default;

private:
    Int m_;
    Int n_;
};

/// Digits of m and n in base p^k, where p^k <= n < p^(k+1):
/// n = b p^k + d and m = a p^k + c.
struct RadixParams {
    int k = 0;
    Int a = 0;
    Int b = 0;
    Int c = 0;
    Int d = 0;
    Int scale = 1;  // p^k

    friend bool operator==(const RadixParams&, const RadixParams&) = default;
};

enum class CaseId { Case1 = 1, Case2, Case3, Case4, Case5, Case6 };

inline std::ostream& operator<<(std::ostream& os, CaseId id) { return os << "Case" << static_cast<int>(id); }

/// Ordered multiplicities (m_1, ..., m_r); every part is positive.
class Composition {
public:
    Composition() = default;
    Composition(std::initializer_list<Int> parts) : Composition(std::vector<Int>(parts)) {}
    explicit Composition(std::vector<Int> parts) : parts_(std::move(parts)) {
        for (Int part : parts_) {
            if (part < 1) throw std::invalid_argument("composition parts must be positive");
        }
    }

    [[nodiscard]] const std::vector<Int>& parts() const noexcept { return parts_; }
    [[nodiscard]] std::size_t size() const noexcept { return parts_.size(); }
    [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
    [[nodiscard]] Int total() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), Int{0}); }

    [[nodiscard]] bool all_ones() const noexcept {
        return std::all_of(parts_.begin(), parts_.end(), [](Int x) { return x == 1; });
    }

    /// Concatenation; zero-sized parts are dropped.
    Composition& append(Int part) {
        if (part < 0) throw std::logic_error("negative composition part");
        if (part > 0) parts_.push_back(part);
        return *this;
    }
    Composition& append(const Composition& other) {
        parts_.insert(parts_.end(), other.parts_.begin(), other.parts_.end());
        return *this;
    }

    friend bool operator==(const Composition&, const Composition&) = default;

private:
    std::vector<Int> parts_;
};

inline Composition reverse(Composition comp) {
    std::vector<Int> parts = comp.parts();
    std::reverse(parts.begin(), parts.end());
    return Composition(std::move(parts));
}

inline std::string to_string(const Composition& comp) {
    std::string out;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (i) out += '+';
        out += std::to_string(comp.parts()[i]);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Composition& comp) { return os << '(' << to_string(comp) << ')'; }

struct BlockGroup {
    Int multiplicity = 0;
    Int part = 0;
    friend bool operator==(const BlockGroup&, const BlockGroup&) = default;
};

/// A partition in multiplicity form: distinct parts, strictly decreasing.
class JordanDecomposition {
public:
    JordanDecomposition() = default;
    JordanDecomposition(std::vector<BlockGroup> groups, Int n_context)
        : groups_(std::move(groups)), n_context_(n_context) {
        for (std::size_t i = 0; i < groups_.size(); ++i) {
            if (groups_[i].multiplicity < 1 || groups_[i].part < 1) {
                throw std::invalid_argument("multiplicities and parts must be positive");
            }
            if (i && groups_[i - 1].part <= groups_[i].part) {
                throw std::invalid_argument("parts must be strictly decreasing");
            }
        }
    }

    /// Groups equal entries of a weakly decreasing partition.
    static JordanDecomposition from_partition(const std::vector<Int>& partition, Int n_context) {
        std::vector<BlockGroup> groups;
        for (Int part : partition) {
            if (!groups.empty() && groups.back().part == part) {
                ++groups.back().multiplicity;
            } else {
                groups.push_back({1, part});
            }
        }
        return JordanDecomposition(std::move(groups), n_context);
    }

    [[nodiscard]] const std::vector<BlockGroup>& groups() const noexcept { return groups_; }
    [[nodiscard]] Int n_context() const noexcept { return n_context_; }

    [[nodiscard]] Int block_count() const noexcept {
        Int total = 0;
        for (const auto& g : groups_) total += g.multiplicity;
        return total;
    }
    [[nodiscard]] Int dimension() const noexcept {
        Int total = 0;
        for (const auto& g : groups_) total += g.multiplicity * g.part;
        return total;
    }

    [[nodiscard]] Composition multiplicities() const {
        std::vector<Int> parts;
        parts.reserve(groups_.size());
        for (const auto& g : groups_) parts.push_back(g.multiplicity);
        return Composition(std::move(parts));
    }

    /// Expanded, weakly decreasing list of block sizes.
    [[nodiscard]] std::vector<Int> partition() const {
        std::vector<Int> out;
        for (const auto& g : groups_) out.insert(out.end(), static_cast<std::size_t>(g.multiplicity), g.part);
        return out;
    }

    /// Equality ignores n_context: two decompositions are equal if the blocks are.
    friend bool operator==(const JordanDecomposition& lhs, const JordanDecomposition& rhs) {
        return lhs.groups_ == rhs.groups_;
    }

private:
    std::vector<BlockGroup> groups_;
    Int n_context_ = 0;
};

inline std::string to_string(const std::vector<Int>& partition) {
    std::string out;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(partition[i]);
    }
    return out;
}

inline std::string to_string(const JordanDecomposition& dec) { return to_string(dec.partition()); }

inline std::ostream& operator<<(std::ostream& os, const JordanDecomposition& dec) {
    os << '[';
    for (std::size_t i = 0; i < dec.groups().size(); ++i) {
        if (i) os << ", ";
        os << dec.groups()[i].multiplicity << '*' << dec.groups()[i].part;
    }
    return os << ']';
}

inline RadixParams radix_params(Int m, Int n, Int p) {
    if (m < 0 || n < 1 || m > n) throw std::invalid_argument("radix_params requires 0 <= m <= n, n >= 1");
    RadixParams r;
    while (r.scale * p <= n) {
        r.scale *= p;
        ++r.k;
    }
    r.b = n / r.scale;
    r.d = n % r.scale;
    r.a = m / r.scale;
    r.c = m % r.scale;
    return r;
}

inline RadixParams radix_params(const BlockPair& pair, const Prime& p) { return radix_params(pair.m(), pair.n(), p.value()); }

namespace detail {

inline CaseId classify(Int m, Int n, Int p, const RadixParams& r) {
    const Int next = r.scale * p;
    if (m + n > next) return CaseId::Case1;
    if (r.c + r.d > r.scale) return CaseId::Case2;
    if (r.c + r.d >= 1) {
        if (r.a > 0) return CaseId::Case3;
        return r.d > 0 ? CaseId::Case4 : CaseId::Case5;
    }
    if (r.a > 0) return CaseId::Case6;
    throw std::logic_error("no recursion case matches (" + std::to_string(m) + ", " + std::to_string(n) + ", " +
                           std::to_string(p) + ")");
}

}  // namespace detail

inline CaseId classify_case(const BlockPair& pair, const Prime& p) {
    return detail::classify(pair.m(), pair.n(), p.value(), radix_params(pair, p));
}

/// Observer for one evaluation: called with (parent m, parent n, child m, child n)
/// whenever the recursion reduces to a smaller instance.
using RecursionObserver = std::function<void(Int, Int, Int, Int)>;

/// Computes c(m, n, p), memoizing sub-results per characteristic.
///
/// The chains "prefix (+) c(m', n')" of cases 1, 2, 3 and 6 are followed
/// iteratively, so the native stack only grows with case 3 inner calls and
/// case 4 reflections. A solver may be shared between threads.
class CompositionSolver {
public:
    explicit CompositionSolver(bool memoize = true) : memoize_(memoize) {}

    Composition operator()(Int m, Int n, const Prime& p) const {
        if (m < 0 || n < 0) throw std::invalid_argument("block sizes must be non-negative");
        if (m > n) throw std::invalid_argument("composition requires m <= n");
        if (n > kMaxBlockSize) throw std::invalid_argument("block size exceeds the supported bound");
        return solve(m, n, p.value(), nullptr);
    }

    /// Uncached evaluation reporting every reduction step to `observer`.
    Composition traced(Int m, Int n, const Prime& p, const RecursionObserver& observer) const {
        if (m < 0 || m > n || n > kMaxBlockSize) throw std::invalid_argument("composition requires 0 <= m <= n");
        return solve(m, n, p.value(), &observer);
    }

    [[nodiscard]] std::size_t cache_size() const {
        std::shared_lock lock(mutex_);
        return cache_.size();
    }

    void clear() {
        std::unique_lock lock(mutex_);
        cache_.clear();
    }

private:
    struct Key {
        Int m, n, p;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const noexcept {
            std::size_t h = std::hash<Int>{}(key.m);
            h ^= std::hash<Int>{}(key.n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= std::hash<Int>{}(key.p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    Composition solve(Int m, Int n, Int p, const RecursionObserver* observer) const {
        if (m == 0 || n == 0) return {};
        const bool cached = memoize_ && observer == nullptr;
        if (cached) {
            std::shared_lock lock(mutex_);
            if (auto it = cache_.find({m, n, p}); it != cache_.end()) return it->second;
        }
        Composition result = evaluate(m, n, p, observer);
        if (cached) {
            std::unique_lock lock(mutex_);
            cache_.insert_or_assign(Key{m, n, p}, result);
        }
        return result;
    }

    Composition evaluate(Int m, Int n, Int p, const RecursionObserver* observer) const {
        Composition out;
        auto step = [&](Int m2, Int n2) {
            if (observer) (*observer)(m, n, m2, n2);
            m = m2;
            n = n2;
        };
        while (m > 0 && n > 0) {
            const RadixParams r = radix_params(m, n, p);
            const Int scale = r.scale;
            const Int next = scale * p;
            switch (detail::classify(m, n, p, r)) {
                case CaseId::Case1:
                    out.append(m + n - next);
                    step(next - n, next - m);
                    break;
                case CaseId::Case2: {
                    const Int top = (r.a + r.b + 1) * scale;
                    out.append(r.c + r.d - scale);
                    step(top - n, top - m);
                    break;
                }
                case CaseId::Case3: {
                    const Int lo = std::min(r.c, r.d);
                    const Int hi = std::max(r.c, r.d);
                    if (observer) (*observer)(m, n, lo, hi);
                    const Composition inner = solve(lo, hi, p, observer);
                    out.append(inner).append(hi - lo).append(reverse(inner));
                    const Int top = (r.a + r.b) * scale;
                    step(top - n, top - m);
                    break;
                }
                case CaseId::Case4: {
                    const Int reflected = r.b * scale - r.d;
                    if (m > reflected) throw std::logic_error("case 4 reflection left the domain m <= n");
                    if (observer) (*observer)(m, n, m, reflected);
                    out.append(reverse(solve(m, reflected, p, observer)));
                    return out;
                }
                case CaseId::Case5:
                    out.append(m);
                    return out;
                case CaseId::Case6:
                    out.append(scale);
                    step((r.a - 1) * scale, (r.b - 1) * scale);
                    break;
            }
        }
        return out;
    }

    bool memoize_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<Key, Composition, KeyHash> cache_;
};

inline const CompositionSolver& shared_solver() {
    static const CompositionSolver solver;
    return solver;
}

/// c(m, n, p). Zero-sized arguments give the empty composition.
inline Composition composition(Int m, Int n, const Prime& p) { return shared_solver()(m, n, p); }

/// Block sizes from the multiplicities: lambda_i = n + sum_{k>i} m_k - sum_{k<i} m_k.
/// The alternative form m + n - 2 sum_{k<i} m_k - m_i is evaluated alongside
/// and must agree.
inline JordanDecomposition lambda_from_composition(Int n, const Composition& comp) {
    if (comp.empty()) throw std::invalid_argument("lambda_from_composition needs a non-empty composition");
    const Int m = comp.total();
    if (m > n) throw std::invalid_argument("composition total exceeds n");

    std::vector<BlockGroup> groups;
    groups.reserve(comp.size());
    Int before = 0;
    Int after = m;
    for (Int part : comp.parts()) {
        after -= part;
        const Int size = n + after - before;
        if (size != m + n - 2 * before - part) throw std::logic_error("block size forms disagree");
        if (size < 1 || (!groups.empty() && groups.back().part <= size)) {
            throw std::invalid_argument("composition " + to_string(comp) + " is not valid for n = " + std::to_string(n));
        }
        groups.push_back({part, size});
        before += part;
    }
    return JordanDecomposition(std::move(groups), n);
}

inline JordanDecomposition jordan_partition(const BlockPair& pair, const Prime& p) {
    return lambda_from_composition(pair.n(), composition(pair.m(), pair.n(), p));
}

/// lambda_i = m + n - 2i + 1 for i = 1..m.
inline bool is_standard(const JordanDecomposition& dec, Int m, Int n) {
    if (m > n) std::swap(m, n);
    const std::vector<Int> parts = dec.partition();
    if (static_cast<Int>(parts.size()) != m) return false;
    for (Int i = 1; i <= m; ++i) {
        if (parts[static_cast<std::size_t>(i - 1)] != m + n - 2 * i + 1) return false;
    }
    return true;
}

/// Closed-form standardness test in characteristic 2.
inline bool standard_predicate_p2(const BlockPair& pair) {
    const Int m = pair.m();
    const Int n = pair.n();
    if (m == 1) return true;
    if (m == 2) return n % 2 == 1;
    if (m == 3) return n >= 6 && (n - 6) % 4 == 0;
    return false;
}

}  // namespace jordan

#endif  // JORDAN_CORE_HPP
