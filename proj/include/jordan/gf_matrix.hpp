#ifndef JORDAN_GF_MATRIX_HPP
#define JORDAN_GF_MATRIX_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace jordan {

/// Storage choice for a GF(p) matrix. Packed rows are only available for p = 2.
enum class Layout { Auto, Packed, Unpacked };

/// Dense row-major matrix over GF(p).
///
/// For p = 2 (with Layout::Auto) each row is a run of 64-bit words, one bit
/// per column. Otherwise each entry is one residue in [0, p).
class GfMatrix {
public:
    using Word = std::uint64_t;
    using Residue = std::uint16_t;
    static constexpr std::size_t kWordBits = 64;
    static constexpr Int kMaxResiduePrime = 65521;

    GfMatrix(std::size_t rows, std::size_t cols, const Prime& p, Layout layout = Layout::Auto)
        : rows_(rows), cols_(cols), p_(p.value()) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
        packed_ = layout == Layout::Packed || (layout == Layout::Auto && p_ == 2);
        if (packed_ && p_ != 2) throw std::invalid_argument("packed layout requires p = 2");
        if (!packed_ && p_ > kMaxResiduePrime) {
            throw std::invalid_argument("p too large for dense residue storage: " + std::to_string(p_));
        }
        if (packed_) {
            stride_ = (cols + kWordBits - 1) / kWordBits;
            words_.assign(rows * stride_, 0);
        } else {
            stride_ = cols;
            residues_.assign(rows * cols, 0);
        }
    }

    static GfMatrix identity(std::size_t size, const Prime& p, Layout layout = Layout::Auto) {
        GfMatrix out(size, size, p, layout);
        for (std::size_t i = 0; i < size; ++i) out.set(i, i, 1);
        return out;
    }

    /// Builds from nested rows of integers; values are reduced mod p.
    static GfMatrix from_rows(const std::vector<std::vector<Int>>& rows, const Prime& p, Layout layout = Layout::Auto) {
        if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
        GfMatrix out(rows.size(), rows.front().size(), p, layout);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != out.cols()) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < rows[i].size(); ++j) out.set(i, j, rows[i][j]);
        }
        return out;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] Int modulus() const noexcept { return p_; }
    [[nodiscard]] Prime prime() const { return Prime(p_); }
    [[nodiscard]] bool packed() const noexcept { return packed_; }

    [[nodiscard]] Int get(std::size_t i, std::size_t j) const {
        if (packed_) return static_cast<Int>((words_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1U);
        return residues_[i * stride_ + j];
    }

    void set(std::size_t i, std::size_t j, Int value) {
        const Int r = ((value % p_) + p_) % p_;
        if (packed_) {
            Word& w = words_[i * stride_ + j / kWordBits];
            const Word bit = Word{1} << (j % kWordBits);
            w = r ? (w | bit) : (w & ~bit);
        } else {
            residues_[i * stride_ + j] = static_cast<Residue>(r);
        }
    }

    /// Words of packed row i; only valid for packed matrices.
    [[nodiscard]] std::span<const Word> row_words(std::size_t i) const {
        return {words_.data() + i * stride_, stride_};
    }
    [[nodiscard]] std::span<Word> row_words(std::size_t i) { return {words_.data() + i * stride_, stride_}; }

    [[nodiscard]] std::span<const Residue> row_residues(std::size_t i) const {
        return {residues_.data() + i * stride_, stride_};
    }
    [[nodiscard]] std::span<Residue> row_residues(std::size_t i) { return {residues_.data() + i * stride_, stride_}; }

    [[nodiscard]] bool is_zero() const {
        if (packed_) {
            for (Word w : words_)
                if (w) return false;
            return true;
        }
        for (Residue r : residues_)
            if (r) return false;
        return true;
    }

    [[nodiscard]] GfMatrix with_layout(Layout layout) const {
        GfMatrix out(rows_, cols_, prime(), layout);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, get(i, j));
        return out;
    }

    friend bool operator==(const GfMatrix& lhs, const GfMatrix& rhs) {
        if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_ || lhs.p_ != rhs.p_) return false;
        if (lhs.packed_ == rhs.packed_) return lhs.words_ == rhs.words_ && lhs.residues_ == rhs.residues_;
        for (std::size_t i = 0; i < lhs.rows_; ++i)
            for (std::size_t j = 0; j < lhs.cols_; ++j)
                if (lhs.get(i, j) != rhs.get(i, j)) return false;
        return true;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    Int p_;
    bool packed_ = false;
    std::size_t stride_ = 0;
    std::vector<Word> words_;
    std::vector<Residue> residues_;
};

inline Int mod_inverse(Int value, Int p) {
    // Fermat: value^(p-2) mod p.
    Int result = 1;
    Int base = value % p;
    for (Int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return result;
}

namespace detail {

/// Row-reduces the packed rows in place; returns the rank. The first `rank`
/// rows are left as an echelon basis of the row space.
inline std::size_t echelon_packed(std::vector<GfMatrix::Word>& words, std::size_t rows, std::size_t stride,
                                  std::size_t cols) {
    using Word = GfMatrix::Word;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        const std::size_t wi = col / GfMatrix::kWordBits;
        const Word bit = Word{1} << (col % GfMatrix::kWordBits);
        std::size_t pivot = rank;
        while (pivot < rows && !(words[pivot * stride + wi] & bit)) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            std::swap_ranges(words.begin() + static_cast<std::ptrdiff_t>(pivot * stride),
                             words.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * stride),
                             words.begin() + static_cast<std::ptrdiff_t>(rank * stride));
        }
        const Word* prow = words.data() + rank * stride;
        for (std::size_t r = rank + 1; r < rows; ++r) {
            Word* row = words.data() + r * stride;
            if (row[wi] & bit) {
                for (std::size_t w = wi; w < stride; ++w) row[w] ^= prow[w];
            }
        }
        ++rank;
    }
    return rank;
}

/// Generic modular elimination on unpacked residues; same contract as above.
inline std::size_t echelon_residues(std::vector<Int>& cells, std::size_t rows, std::size_t cols, Int p) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && cells[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            std::swap_ranges(cells.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                             cells.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                             cells.begin() + static_cast<std::ptrdiff_t>(rank * cols));
        }
        Int* prow = cells.data() + rank * cols;
        const Int inv = mod_inverse(prow[col], p);
        for (std::size_t j = col; j < cols; ++j) prow[j] = prow[j] * inv % p;
        for (std::size_t r = rank + 1; r < rows; ++r) {
            Int* row = cells.data() + r * cols;
            const Int factor = row[col];
            if (!factor) continue;
            for (std::size_t j = col; j < cols; ++j) row[j] = ((row[j] - factor * prow[j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Rank by modular Gaussian elimination through get(), whatever the layout.
inline std::size_t rank_generic(const GfMatrix& a) {
    std::vector<Int> cells(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) cells[i * a.cols() + j] = a.get(i, j);
    return detail::echelon_residues(cells, a.rows(), a.cols(), a.modulus());
}

/// Rank over GF(p). Packed matrices are reduced with word-wide XOR.
inline std::size_t rank_gfp(const GfMatrix& a) {
    if (!a.packed()) return rank_generic(a);
    const std::size_t stride = a.row_words(0).size();
    std::vector<GfMatrix::Word> words;
    words.reserve(a.rows() * stride);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto row = a.row_words(i);
        words.insert(words.end(), row.begin(), row.end());
    }
    return detail::echelon_packed(words, a.rows(), stride, a.cols());
}

inline GfMatrix multiply(const GfMatrix& a, const GfMatrix& b) {
    if (a.cols() != b.rows() || a.modulus() != b.modulus()) throw std::invalid_argument("multiply: shape mismatch");
    GfMatrix out(a.rows(), b.cols(), a.prime(), a.packed() ? Layout::Packed : Layout::Unpacked);
    if (a.packed() && b.packed()) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            auto dst = out.row_words(i);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (!a.get(i, k)) continue;
                auto src = b.row_words(k);
                for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
            }
        }
        return out;
    }
    const Int p = a.modulus();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc = (acc + a.get(i, k) * b.get(k, j)) % p;
            out.set(i, j, acc);
        }
    }
    return out;
}

}  // namespace jordan

#endif  // JORDAN_GF_MATRIX_HPP
