#ifndef JORDAN_ORACLE_HPP
#define JORDAN_ORACLE_HPP

// Brute-force Jordan type of J_m(1) (x) J_n(1) over GF(p).
//
// The block sizes of a nilpotent N are read off the ranks of its powers:
// rank(N^(j-1)) - rank(N^j) is the number of blocks of size >= j.

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "gf_matrix.hpp"

namespace jordan {

struct OracleLimits {
    /// Largest matrix dimension m * n the oracle will build.
    Int max_dimension = 10'000;
};

class SizeBoundError : public std::invalid_argument {
public:
    SizeBoundError(Int requested, Int bound)
        : std::invalid_argument("matrix dimension " + std::to_string(requested) + " exceeds the bound " +
                                std::to_string(bound) + " (raise it with --max-entries)"),
          requested_(requested),
          bound_(bound) {}

    [[nodiscard]] Int requested() const noexcept { return requested_; }
    [[nodiscard]] Int bound() const noexcept { return bound_; }

private:
    Int requested_;
    Int bound_;
};

class NotNilpotentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (rank N^0, rank N^1, ..., 0).
struct RankSequence {
    std::vector<Int> ranks;
    friend bool operator==(const RankSequence&, const RankSequence&) = default;
};

/// size x size matrix with ones on the diagonal and superdiagonal.
inline GfMatrix unipotent_jordan_block(std::size_t size, const Prime& p, Layout layout = Layout::Auto) {
    GfMatrix out = GfMatrix::identity(size, p, layout);
    for (std::size_t i = 0; i + 1 < size; ++i) out.set(i, i + 1, 1);
    return out;
}

inline GfMatrix kronecker(const GfMatrix& a, const GfMatrix& b, const OracleLimits& limits = {}) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("kronecker: characteristic mismatch");
    const Int rows = static_cast<Int>(a.rows() * b.rows());
    const Int cols = static_cast<Int>(a.cols() * b.cols());
    if (std::max(rows, cols) > limits.max_dimension) throw SizeBoundError(std::max(rows, cols), limits.max_dimension);

    GfMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.prime(), a.packed() ? Layout::Packed : Layout::Unpacked);
    const Int p = a.modulus();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Int aij = a.get(i, j);
            if (!aij) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    const Int bkl = b.get(k, l);
                    if (bkl) out.set(i * b.rows() + k, j * b.cols() + l, aij * bkl % p);
                }
        }
    }
    return out;
}

namespace detail {

struct SparseEntry {
    std::size_t col;
    Int value;
};

inline std::vector<std::vector<SparseEntry>> sparse_rows(const GfMatrix& a) {
    std::vector<std::vector<SparseEntry>> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a.packed()) {
            auto words = a.row_words(i);
            for (std::size_t w = 0; w < words.size(); ++w) {
                for (GfMatrix::Word bits = words[w]; bits; bits &= bits - 1) {
                    rows[i].push_back({w * GfMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits)), 1});
                }
            }
        } else {
            auto cells = a.row_residues(i);
            for (std::size_t j = 0; j < cells.size(); ++j)
                if (cells[j]) rows[i].push_back({j, cells[j]});
        }
    }
    return rows;
}

// Both variants keep an echelon basis B_j of the row space of N^j. Since
// row(N^(j+1)) = row(N^j N) = row(B_j N), rank(N^(j+1)) = rank(B_j N); each
// step multiplies the r_j basis rows by N and re-reduces.

inline std::vector<Int> rank_powers_packed(const GfMatrix& nil) {
    using Word = GfMatrix::Word;
    const std::size_t dim = nil.rows();
    const std::size_t stride = (dim + GfMatrix::kWordBits - 1) / GfMatrix::kWordBits;
    const auto sparse = sparse_rows(nil);

    std::vector<Int> ranks{static_cast<Int>(dim)};
    std::vector<Word> basis(dim * stride, 0);
    for (std::size_t i = 0; i < dim; ++i) basis[i * stride + i / GfMatrix::kWordBits] |= Word{1} << (i % GfMatrix::kWordBits);
    std::size_t rank = dim;

    std::vector<Word> next;
    while (rank > 0) {
        if (ranks.size() > dim) throw NotNilpotentError("matrix is not nilpotent");
        next.assign(rank * stride, 0);
        for (std::size_t r = 0; r < rank; ++r) {
            const Word* src = basis.data() + r * stride;
            Word* dst = next.data() + r * stride;
            for (std::size_t w = 0; w < stride; ++w) {
                for (Word bits = src[w]; bits; bits &= bits - 1) {
                    const std::size_t k = w * GfMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                    for (const auto& e : sparse[k]) dst[e.col / GfMatrix::kWordBits] ^= Word{1} << (e.col % GfMatrix::kWordBits);
                }
            }
        }
        const std::size_t reduced = echelon_packed(next, rank, stride, dim);
        if (reduced == rank) throw NotNilpotentError("matrix is not nilpotent: rank stalled at " + std::to_string(rank));
        rank = reduced;
        next.resize(rank * stride);
        basis.swap(next);
        ranks.push_back(static_cast<Int>(rank));
    }
    return ranks;
}

inline std::vector<Int> rank_powers_residues(const GfMatrix& nil) {
    const std::size_t dim = nil.rows();
    const Int p = nil.modulus();
    const auto sparse = sparse_rows(nil);

    std::vector<Int> ranks{static_cast<Int>(dim)};
    std::vector<Int> basis(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i) basis[i * dim + i] = 1;
    std::size_t rank = dim;

    std::vector<Int> next;
    while (rank > 0) {
        if (ranks.size() > dim) throw NotNilpotentError("matrix is not nilpotent");
        next.assign(rank * dim, 0);
        for (std::size_t r = 0; r < rank; ++r) {
            const Int* src = basis.data() + r * dim;
            Int* dst = next.data() + r * dim;
            for (std::size_t k = 0; k < dim; ++k) {
                if (!src[k]) continue;
                for (const auto& e : sparse[k]) dst[e.col] = (dst[e.col] + src[k] * e.value) % p;
            }
        }
        const std::size_t reduced = echelon_residues(next, rank, dim, p);
        if (reduced == rank) throw NotNilpotentError("matrix is not nilpotent: rank stalled at " + std::to_string(rank));
        rank = reduced;
        next.resize(rank * dim);
        basis.swap(next);
        ranks.push_back(static_cast<Int>(rank));
    }
    return ranks;
}

}  // namespace detail

inline RankSequence rank_sequence_of_nilpotent(const GfMatrix& nil) {
    if (nil.rows() != nil.cols()) throw std::invalid_argument("rank sequence needs a square matrix");
    return {nil.packed() ? detail::rank_powers_packed(nil) : detail::rank_powers_residues(nil)};
}

/// Conjugate reading of a rank sequence: blocks of size >= j number r_{j-1} - r_j.
/// Returns the expanded partition in weakly decreasing order.
inline std::vector<Int> partition_from_ranks(const RankSequence& rs) {
    const auto& r = rs.ranks;
    if (r.empty() || r.back() != 0) throw std::invalid_argument("rank sequence must end in 0");
    std::vector<Int> at_least;  // at_least[j-1] = number of blocks of size >= j
    for (std::size_t j = 1; j < r.size(); ++j) {
        const Int diff = r[j - 1] - r[j];
        if (diff <= 0) throw std::invalid_argument("ranks must strictly decrease to 0");
        if (!at_least.empty() && diff > at_least.back()) {
            throw std::invalid_argument("rank differences must be weakly decreasing");
        }
        at_least.push_back(diff);
    }
    std::vector<Int> parts;
    for (std::size_t j = at_least.size(); j >= 1; --j) {
        const Int exact = at_least[j - 1] - (j < at_least.size() ? at_least[j] : 0);
        parts.insert(parts.end(), static_cast<std::size_t>(exact), static_cast<Int>(j));
    }
    return parts;
}

struct OracleRun {
    RankSequence ranks;
    JordanDecomposition decomposition;
};

/// Builds T = J_m(1) (x) J_n(1), takes N = T - I and reads its Jordan type.
inline OracleRun oracle_run(const BlockPair& pair, const Prime& p, const OracleLimits& limits = {}) {
    const Int dim = pair.m() * pair.n();
    if (dim > limits.max_dimension) throw SizeBoundError(dim, limits.max_dimension);
    GfMatrix nil = kronecker(unipotent_jordan_block(static_cast<std::size_t>(pair.m()), p),
                             unipotent_jordan_block(static_cast<std::size_t>(pair.n()), p), limits);
    for (std::size_t i = 0; i < nil.rows(); ++i) nil.set(i, i, nil.get(i, i) - 1);

    RankSequence ranks = rank_sequence_of_nilpotent(nil);
    auto dec = JordanDecomposition::from_partition(partition_from_ranks(ranks), pair.n());
    return {std::move(ranks), std::move(dec)};
}

inline JordanDecomposition oracle_jordan_partition(const BlockPair& pair, const Prime& p, const OracleLimits& limits = {}) {
    return oracle_run(pair, p, limits).decomposition;
}

}  // namespace jordan

#endif  // JORDAN_ORACLE_HPP
