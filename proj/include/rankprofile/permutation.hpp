#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace rankprofile {

/**
 * Permutation of {0..n-1} in one-line notation: `(*this)[s]` is the image of s.
 *
 * As a row permutation, P(sigma) A has row s equal to row sigma(s) of A. In a
 * PLUQ decomposition we keep the maps "factor position s -> original index",
 * so sigma_P(s) is the original row of pivot s and sigma_Q(s) its original
 * column. I/O is 1-based; everything in memory is 0-based.
 */
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> one_line) : map_(std::move(one_line)) {
        if (!is_bijection(map_)) throw InvalidPermutation("one-line notation is not a bijection");
    }

    static Permutation identity(std::size_t n) {
        Permutation p;
        p.map_.resize(n);
        std::iota(p.map_.begin(), p.map_.end(), std::size_t{0});
        return p;
    }

    /// (k,i)-rotation: moves index i to position k and shifts k..i-1 up by one.
    static Permutation rotation(std::size_t k, std::size_t i, std::size_t n) {
        if (k > i || i >= n)
            throw InvalidIndices("rotation needs k <= i < n, got k=" + std::to_string(k) +
                                 " i=" + std::to_string(i) + " n=" + std::to_string(n));
        Permutation p = identity(n);
        p.rotate(k, i);
        return p;
    }

    static Permutation transposition(std::size_t a, std::size_t b, std::size_t n) {
        if (a >= n || b >= n) throw InvalidIndices("transposition index out of range");
        Permutation p = identity(n);
        std::swap(p.map_[a], p.map_[b]);
        return p;
    }

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t s) const noexcept { return map_[s]; }
    const std::vector<std::size_t>& one_line() const noexcept { return map_; }

    Permutation inverse() const {
        Permutation p;
        p.map_.resize(map_.size());
        for (std::size_t s = 0; s < map_.size(); ++s) p.map_[map_[s]] = s;
        return p;
    }

    /// (this ∘ rhs)(s) = this(rhs(s)).
    Permutation compose(const Permutation& rhs) const {
        if (rhs.size() != size()) throw DimensionMismatch("composing permutations of different sizes");
        Permutation p;
        p.map_.resize(size());
        for (std::size_t s = 0; s < size(); ++s) p.map_[s] = map_[rhs.map_[s]];
        return p;
    }

    bool is_identity() const noexcept {
        for (std::size_t s = 0; s < map_.size(); ++s)
            if (map_[s] != s) return false;
        return true;
    }

    /// In-place move of entry i to position k (k <= i), shifting k..i-1 up.
    void rotate(std::size_t k, std::size_t i) noexcept {
        std::rotate(map_.begin() + static_cast<std::ptrdiff_t>(k), map_.begin() + static_cast<std::ptrdiff_t>(i),
                    map_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    void swap_entries(std::size_t a, std::size_t b) noexcept { std::swap(map_[a], map_[b]); }

    /// Pre-composes a block-local permutation acting on positions [offset, offset+local.size()).
    void permute_block(std::size_t offset, const Permutation& local) {
        std::vector<std::size_t> tmp(local.size());
        for (std::size_t s = 0; s < local.size(); ++s) tmp[s] = map_[offset + local[s]];
        std::copy(tmp.begin(), tmp.end(), map_.begin() + static_cast<std::ptrdiff_t>(offset));
    }

    /**
     * LAPACK-style sequential-swap form (ipiv): applying swaps
     * (s, ipiv[s]) for s = 0.. to the identity yields this permutation.
     * Display only.
     */
    std::vector<std::size_t> to_swaps() const {
        std::vector<std::size_t> cur(map_.size()), where(map_.size()), ipiv(map_.size());
        std::iota(cur.begin(), cur.end(), std::size_t{0});
        std::iota(where.begin(), where.end(), std::size_t{0});
        for (std::size_t s = 0; s < map_.size(); ++s) {
            const std::size_t t = where[map_[s]];
            ipiv[s] = t;
            std::swap(cur[s], cur[t]);
            where[cur[s]] = s;
            where[cur[t]] = t;
        }
        return ipiv;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

    static bool is_bijection(const std::vector<std::size_t>& v) {
        std::vector<char> seen(v.size(), 0);
        for (std::size_t x : v) {
            if (x >= v.size() || seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    }

private:
    std::vector<std::size_t> map_;
};

/// True iff the last n-k values of the one-line notation are strictly increasing.
inline bool is_monotonically_increasing(const Permutation& p, std::size_t k) {
    if (k > p.size()) throw InvalidIndices("monotonicity index beyond permutation size");
    for (std::size_t s = k + 1; s < p.size(); ++s)
        if (p[s - 1] >= p[s]) return false;
    return true;
}

/// Row s of the result is row sigma(s) of `a`.
inline DenseMatrix apply_perm_rows(const Permutation& p, ConstMatrixView a) {
    if (p.size() != a.rows()) throw DimensionMismatch("row permutation size differs from row count");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t s = 0; s < a.rows(); ++s) std::copy_n(a.row(p[s]), a.cols(), out.row(s));
    return out;
}

/// Column s of the result is column sigma(s) of `a`.
inline DenseMatrix apply_perm_cols(const Permutation& p, ConstMatrixView a) {
    if (p.size() != a.cols()) throw DimensionMismatch("column permutation size differs from column count");
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t s = 0; s < a.cols(); ++s) out(i, s) = a(i, p[s]);
    return out;
}

/// Explicit row-permutation matrix: entry (s, sigma(s)) is one.
inline DenseMatrix permutation_matrix(const Permutation& p) {
    DenseMatrix m(p.size(), p.size());
    for (std::size_t s = 0; s < p.size(); ++s) m(s, p[s]) = 1;
    return m;
}

/**
 * r-sub-permutation matrix in an m x n frame, stored as its r pivot
 * coordinates. Row and column indices are pairwise distinct. Pivots are kept
 * sorted by row so equality is set equality.
 */
class SubPermutationMatrix {
public:
    using Pivot = std::pair<std::size_t, std::size_t>;

    SubPermutationMatrix() = default;
    SubPermutationMatrix(std::size_t rows, std::size_t cols, std::vector<Pivot> pivots)
        : rows_(rows), cols_(cols), pivots_(std::move(pivots)) {
        std::vector<char> used_r(rows, 0), used_c(cols, 0);
        for (const auto& [i, j] : pivots_) {
            if (i >= rows || j >= cols) throw IndexOutOfRange("pivot outside the frame");
            if (used_r[i] || used_c[j]) throw InvalidPermutation("two pivots share a row or a column");
            used_r[i] = used_c[j] = 1;
        }
        std::sort(pivots_.begin(), pivots_.end());
    }

    /// Inverse of to_dense(); throws if `a` is not a 0/1 matrix with at most one one per row and column.
    static SubPermutationMatrix from_dense(ConstMatrixView a) {
        std::vector<Pivot> piv;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (a(i, j) == 1)
                    piv.emplace_back(i, j);
                else if (a(i, j) != 0)
                    throw InvalidPermutation("entry other than 0/1");
            }
        return SubPermutationMatrix(a.rows(), a.cols(), std::move(piv));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return pivots_.size(); }
    const std::vector<Pivot>& pivots() const& noexcept { return pivots_; }
    /// By value on rvalues, so range-for over a temporary stays valid.
    std::vector<Pivot> pivots() && { return std::move(pivots_); }

    DenseMatrix to_dense() const {
        DenseMatrix a(rows_, cols_);
        for (const auto& [i, j] : pivots_) a(i, j) = 1;
        return a;
    }

    /// Row support, ascending.
    std::vector<std::size_t> row_support() const {
        std::vector<std::size_t> r;
        for (const auto& p : pivots_) r.push_back(p.first);
        return r;
    }
    /// Column support, ascending.
    std::vector<std::size_t> col_support() const {
        std::vector<std::size_t> c;
        for (const auto& p : pivots_) c.push_back(p.second);
        std::sort(c.begin(), c.end());
        return c;
    }

    /// Leading i x j sub-matrix (pivots with row < i and col < j).
    SubPermutationMatrix leading(std::size_t i, std::size_t j) const {
        std::vector<Pivot> piv;
        for (const auto& p : pivots_)
            if (p.first < i && p.second < j) piv.push_back(p);
        return SubPermutationMatrix(i, j, std::move(piv));
    }

    std::size_t count_leading(std::size_t i, std::size_t j) const noexcept {
        std::size_t c = 0;
        for (const auto& p : pivots_) c += (p.first < i && p.second < j);
        return c;
    }

    friend bool operator==(const SubPermutationMatrix&, const SubPermutationMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Pivot> pivots_;
};

/// Pivoting matrix P [I_r 0; 0 0] Q: pivot s sits at (sigma_P(s), sigma_Q(s)).
inline SubPermutationMatrix pivoting_matrix(const Permutation& rows, const Permutation& cols, std::size_t rank) {
    if (rank > rows.size() || rank > cols.size()) throw InvalidRank("rank exceeds permutation sizes");
    std::vector<SubPermutationMatrix::Pivot> piv;
    piv.reserve(rank);
    for (std::size_t s = 0; s < rank; ++s) piv.emplace_back(rows[s], cols[s]);
    return SubPermutationMatrix(rows.size(), cols.size(), std::move(piv));
}

} // namespace rankprofile
