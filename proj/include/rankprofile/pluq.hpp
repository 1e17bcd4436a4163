#pragma once

#include <cstddef>
#include <utility>

#include "field.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace rankprofile {

/**
 * A = P [L; M] [U V] Q with packed storage [L\U V; M 0].
 *
 * rows[s] / cols[s] give the original row / column sitting at factor
 * position s, so pivot s was found at (rows[s], cols[s]). L is unit lower
 * triangular (its diagonal is implicit), U carries the pivots.
 */
struct PluqDecomposition {
    Permutation rows;
    Permutation cols;
    std::size_t rank = 0;
    DenseMatrix packed;

    std::size_t m() const noexcept { return packed.rows(); }
    std::size_t n() const noexcept { return packed.cols(); }

    /// m x r unit lower trapezoid [L; M].
    DenseMatrix lower() const {
        DenseMatrix l(m(), rank);
        for (std::size_t a = 0; a < m(); ++a)
            for (std::size_t b = 0; b < rank && b <= a; ++b) l(a, b) = (a == b) ? 1 : packed(a, b);
        return l;
    }

    /// r x n upper trapezoid [U V].
    DenseMatrix upper() const {
        DenseMatrix u(rank, n());
        for (std::size_t a = 0; a < rank; ++a)
            for (std::size_t b = a; b < n(); ++b) u(a, b) = packed(a, b);
        return u;
    }

    /// Pi_{P,Q}: pivot s at (rows[s], cols[s]).
    SubPermutationMatrix pivoting_matrix() const { return rankprofile::pivoting_matrix(rows, cols, rank); }

    /// P L U Q in the original frame.
    DenseMatrix reconstruct(const PrimeField& f) const {
        const DenseMatrix lu = multiply(f, lower(), upper());
        DenseMatrix a(m(), n());
        for (std::size_t s = 0; s < m(); ++s)
            for (std::size_t t = 0; t < n(); ++t) a(rows[s], cols[t]) = lu(s, t);
        return a;
    }
};

/// Block-local result of an in-place elimination on a view.
struct LocalPluq {
    Permutation rows;
    Permutation cols;
    std::size_t rank = 0;
};

inline PluqDecomposition make_decomposition(LocalPluq local, DenseMatrix packed) {
    return PluqDecomposition{std::move(local.rows), std::move(local.cols), local.rank, std::move(packed)};
}

} // namespace rankprofile
