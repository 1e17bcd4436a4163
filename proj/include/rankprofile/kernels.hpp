#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace rankprofile {

/// B <- L^{-1} B with L square unit lower triangular (diagonal and upper part ignored).
inline void trsm_left_lower_unit(const PrimeField& f, ConstMatrixView l, MatrixView b) {
    if (l.rows() != l.cols() || l.rows() != b.rows())
        throw DimensionMismatch("trsm_left_lower_unit: L is " + std::to_string(l.rows()) + "x" +
                                std::to_string(l.cols()) + ", B has " + std::to_string(b.rows()) + " rows");
    const auto ld = static_cast<std::ptrdiff_t>(b.ld());
    for (std::size_t i = 1; i < b.rows(); ++i)
        for (std::size_t c = 0; c < b.cols(); ++c)
            b(i, c) = f.sub(b(i, c), f.dot(l.row(i), 1, b.data() + c, ld, i));
}

/// B <- B U^{-1} with U square upper triangular; throws SingularDiagonal on a zero pivot.
inline void trsm_right_upper(const PrimeField& f, ConstMatrixView u, MatrixView b) {
    if (u.rows() != u.cols() || u.rows() != b.cols())
        throw DimensionMismatch("trsm_right_upper: U is " + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + ", B has " + std::to_string(b.cols()) + " columns");
    const std::size_t k = u.rows();
    std::vector<Residue> inv_diag(k);
    for (std::size_t c = 0; c < k; ++c) {
        if (u(c, c) == 0) throw SingularDiagonal("zero on the diagonal of U at " + std::to_string(c));
        inv_diag[c] = f.inv(u(c, c));
    }
    const auto ldu = static_cast<std::ptrdiff_t>(u.ld());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        Residue* row = b.row(i);
        for (std::size_t c = 0; c < k; ++c) {
            const Residue acc = f.dot(row, 1, u.data() + c, ldu, c);
            row[c] = f.mul(f.sub(row[c], acc), inv_diag[c]);
        }
    }
}

/// C <- C - A B with one delayed-reduction dot product per entry.
inline void mm_acc(const PrimeField& f, MatrixView c, ConstMatrixView a, ConstMatrixView b) {
    if (a.rows() != c.rows() || b.cols() != c.cols() || a.cols() != b.rows())
        throw DimensionMismatch("mm_acc: C " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                ", A " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", B " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    if (a.cols() == 0) return;
    const auto ldb = static_cast<std::ptrdiff_t>(b.ld());
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
            c(i, j) = f.sub(c(i, j), f.dot(a.row(i), 1, b.data() + j, ldb, a.cols()));
}

/// Row s of v becomes old row p[s]. Follows cycles with one row of scratch.
inline void permute_rows_inplace(MatrixView v, const Permutation& p) {
    if (p.size() != v.rows()) throw DimensionMismatch("row permutation size differs from view height");
    if (v.cols() == 0 || p.is_identity()) return;
    std::vector<char> done(p.size(), 0);
    std::vector<Residue> tmp(v.cols());
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (done[start] || p[start] == start) {
            done[start] = 1;
            continue;
        }
        std::copy_n(v.row(start), v.cols(), tmp.data());
        std::size_t s = start;
        while (p[s] != start) {
            std::copy_n(v.row(p[s]), v.cols(), v.row(s));
            done[s] = 1;
            s = p[s];
        }
        std::copy_n(tmp.data(), v.cols(), v.row(s));
        done[s] = 1;
    }
}

/// Column s of v becomes old column p[s].
inline void permute_cols_inplace(MatrixView v, const Permutation& p) {
    if (p.size() != v.cols()) throw DimensionMismatch("column permutation size differs from view width");
    if (v.rows() == 0 || p.is_identity()) return;
    std::vector<Residue> tmp(v.cols());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        Residue* row = v.row(i);
        for (std::size_t s = 0; s < v.cols(); ++s) tmp[s] = row[p[s]];
        std::copy(tmp.begin(), tmp.end(), row);
    }
}

/// Moves row i to position k (k <= i), shifting rows k..i-1 down by one.
inline void rotate_rows(MatrixView v, std::size_t k, std::size_t i) {
    if (k == i || v.cols() == 0) return;
    std::vector<Residue> tmp(v.row(i), v.row(i) + v.cols());
    for (std::size_t s = i; s > k; --s) std::copy_n(v.row(s - 1), v.cols(), v.row(s));
    std::copy(tmp.begin(), tmp.end(), v.row(k));
}

/// Moves column j to position k (k <= j), shifting columns k..j-1 right by one.
inline void rotate_cols(MatrixView v, std::size_t k, std::size_t j) {
    if (k == j) return;
    for (std::size_t r = 0; r < v.rows(); ++r) {
        Residue* row = v.row(r);
        std::rotate(row + k, row + j, row + j + 1);
    }
}

inline void swap_rows(MatrixView v, std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(v.row(a), v.row(a) + v.cols(), v.row(b));
}

inline void swap_cols(MatrixView v, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, a), v(r, b));
}

} // namespace rankprofile
