#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "base_case.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "pluq.hpp"

namespace rankprofile {

/// A = Lbar E Ubar with Lbar m x m lower triangular, Ubar n x n upper triangular, E = R_A.
struct LeuDecomposition {
    DenseMatrix lbar;
    SubPermutationMatrix e;
    DenseMatrix ubar;

    DenseMatrix product(const PrimeField& f) const { return multiply(f, multiply(f, lbar, e.to_dense()), ubar); }
};

/// A = V P U with V, U upper triangular and P an r-sub-permutation matrix.
struct BruhatVpu {
    DenseMatrix v;
    SubPermutationMatrix p;
    DenseMatrix u;

    DenseMatrix product(const PrimeField& f) const { return multiply(f, multiply(f, v, p.to_dense()), u); }
};

/// A = X F Y with X m x r column echelon, F an r x r permutation, Y r x n row echelon.
struct GeneralizedBruhat {
    DenseMatrix x;
    DenseMatrix f;
    DenseMatrix y;

    DenseMatrix product(const PrimeField& fld) const { return multiply(fld, multiply(fld, x, f), y); }
};

struct EchelonPair {
    DenseMatrix column_echelon;
    DenseMatrix row_echelon;
};

/// Throws NotRpmRevealing unless the pivoting matrix of `d` is the rank profile matrix of `a`.
inline void require_rpm_revealing(const PrimeField& f, const PluqDecomposition& d, ConstMatrixView a) {
    if (a.rows() != d.m() || a.cols() != d.n()) throw DimensionMismatch("decomposition and matrix shapes differ");
    if (!(d.pivoting_matrix() == oracle::rpm(f, a)))
        throw NotRpmRevealing("pivoting matrix differs from the rank profile matrix");
}

/// Lbar = P [L 0] P^T, E = Pi_{P,Q}, Ubar = Q^T [U; 0] Q. Only row and column moves.
inline LeuDecomposition leu_from_pluq(const PluqDecomposition& d) {
    const std::size_t m = d.m(), n = d.n(), r = d.rank;
    LeuDecomposition out{DenseMatrix(m, m), d.pivoting_matrix(), DenseMatrix(n, n)};
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < r && b <= a; ++b)
            out.lbar(d.rows[a], d.rows[b]) = (a == b) ? 1 : d.packed(a, b);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a; b < n; ++b) out.ubar(d.cols[a], d.cols[b]) = d.packed(a, b);
    return out;
}

/// Same, after checking against the oracle that `d` reveals R_A.
inline LeuDecomposition leu_from_pluq(const PrimeField& f, const PluqDecomposition& d, ConstMatrixView a) {
    require_rpm_revealing(f, d, a);
    return leu_from_pluq(d);
}

/// E^T Lbar E lower triangular, evaluated on an explicit LEU.
inline bool leu_uniqueness_predicate(const LeuDecomposition& leu) {
    // (E^T Lbar E)[c1, c2] = Lbar[row(c1), row(c2)] for pivot columns c1, c2.
    for (const auto& [i1, c1] : leu.e.pivots())
        for (const auto& [i2, c2] : leu.e.pivots())
            if (c1 < c2 && leu.lbar(i1, i2) != 0) return false;
    return true;
}

/// The same predicate read off a PLUQ: L[a,b] != 0 with a > b requires sigma_Q(a) > sigma_Q(b).
inline bool leu_uniqueness_predicate(const PluqDecomposition& d) {
    for (std::size_t a = 0; a < d.rank; ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (d.packed(a, b) != 0 && d.cols[a] < d.cols[b]) return false;
    return true;
}

/// VPU from the LEU of J_m A: V = J Lbar J, P = J E.
inline BruhatVpu bruhat_vpu(const PrimeField& f, ConstMatrixView a) {
    const std::size_t m = a.rows();
    DenseMatrix ja(m, a.cols());
    for (std::size_t i = 0; i < m; ++i) std::copy_n(a.row(m - 1 - i), a.cols(), ja.row(i));
    const LeuDecomposition leu = leu_from_pluq(crout_pluq(f, ja));
    BruhatVpu out{DenseMatrix(m, m), SubPermutationMatrix(), leu.ubar};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out.v(i, j) = leu.lbar(m - 1 - i, m - 1 - j);
    std::vector<SubPermutationMatrix::Pivot> piv;
    for (const auto& [i, j] : leu.e.pivots()) piv.emplace_back(m - 1 - i, j);
    out.p = SubPermutationMatrix(m, a.cols(), std::move(piv));
    return out;
}

namespace detail {

/// Pivots s with sigma_P(s) < i and sigma_Q(s) < j, sorted by key (row or column).
inline std::vector<std::size_t> sorted_pivots(const PluqDecomposition& d, std::size_t i, std::size_t j, bool by_row) {
    std::vector<std::size_t> sel;
    for (std::size_t s = 0; s < d.rank; ++s)
        if (d.rows[s] < i && d.cols[s] < j) sel.push_back(s);
    std::stable_sort(sel.begin(), sel.end(), [&](std::size_t x, std::size_t y) {
        return by_row ? d.rows[x] < d.rows[y] : d.cols[x] < d.cols[y];
    });
    return sel;
}

} // namespace detail

/**
 * Column and row echelon forms of the leading i x j block, obtained by
 * sorting the pivot columns of P L by row (tau) and the pivot rows of U Q by
 * column (chi). Both results are i x j.
 */
inline EchelonPair echelon_of_leading_submatrix(const PluqDecomposition& d, std::size_t i, std::size_t j) {
    if (i == 0 || j == 0 || i > d.m() || j > d.n())
        throw IndexOutOfRange("leading block " + std::to_string(i) + "x" + std::to_string(j) + " of a " +
                              std::to_string(d.m()) + "x" + std::to_string(d.n()) + " matrix");
    const std::vector<std::size_t> tau = detail::sorted_pivots(d, i, j, true);
    const std::vector<std::size_t> chi = detail::sorted_pivots(d, i, j, false);
    EchelonPair out{DenseMatrix(i, j), DenseMatrix(i, j)};
    for (std::size_t t = 0; t < tau.size(); ++t) {
        const std::size_t b = tau[t];
        for (std::size_t a = b; a < d.m(); ++a) {
            if (d.rows[a] >= i) continue;
            out.column_echelon(d.rows[a], t) = (a == b) ? 1 : d.packed(a, b);
        }
    }
    for (std::size_t t = 0; t < chi.size(); ++t) {
        const std::size_t a = chi[t];
        for (std::size_t b = a; b < d.n(); ++b) {
            if (d.cols[b] >= j) continue;
            out.row_echelon(t, d.cols[b]) = d.packed(a, b);
        }
    }
    return out;
}

inline EchelonPair echelon_forms(const PluqDecomposition& d) { return echelon_of_leading_submatrix(d, d.m(), d.n()); }

inline EchelonPair echelon_forms(const PrimeField& f, const PluqDecomposition& d, ConstMatrixView a) {
    require_rpm_revealing(f, d, a);
    return echelon_forms(d);
}

/// X = P L S_tau, F = S_tau^T S_chi^T, Y = S_chi U Q.
inline GeneralizedBruhat generalized_bruhat(const PluqDecomposition& d) {
    const std::size_t m = d.m(), n = d.n(), r = d.rank;
    const std::vector<std::size_t> tau = detail::sorted_pivots(d, m, n, true);
    const std::vector<std::size_t> chi = detail::sorted_pivots(d, m, n, false);
    GeneralizedBruhat out{DenseMatrix(m, r), DenseMatrix(r, r), DenseMatrix(r, n)};
    for (std::size_t t = 0; t < r; ++t) {
        const std::size_t b = tau[t];
        for (std::size_t a = b; a < m; ++a) out.x(d.rows[a], t) = (a == b) ? 1 : d.packed(a, b);
        const std::size_t c = chi[t];
        for (std::size_t b2 = c; b2 < n; ++b2) out.y(t, d.cols[b2]) = d.packed(c, b2);
    }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) out.f(a, b) = (tau[a] == chi[b]) ? 1 : 0;
    return out;
}

inline GeneralizedBruhat generalized_bruhat(const PrimeField& f, const PluqDecomposition& d, ConstMatrixView a) {
    require_rpm_revealing(f, d, a);
    return generalized_bruhat(d);
}

/// F^T X_{RowRP(X),*} F lower triangular. X is assumed column echelon, F a permutation.
inline bool xfy_uniqueness_predicate(const GeneralizedBruhat& g) {
    const std::size_t r = g.f.rows();
    std::vector<std::size_t> lead(r), pi(r);
    for (std::size_t t = 0; t < r; ++t) lead[t] = leading_row(g.x, t);
    std::sort(lead.begin(), lead.end());
    // F[pi(a), a] = 1, so (F^T M F)[a, b] = M[pi(a), pi(b)].
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            if (g.f(b, a) == 1) pi[a] = b;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            if (g.x(lead[pi[a]], pi[b]) != 0) return false;
    return true;
}

/**
 * R_A read directly off a PLU (Q = I: pivots (sigma_P(s), s)) or an LUP
 * (P = I: pivots (s, sigma_Q(s))).
 */
inline SubPermutationMatrix rpm_from_plu(const PluqDecomposition& d) {
    std::vector<SubPermutationMatrix::Pivot> piv;
    if (d.cols.is_identity()) {
        for (std::size_t s = 0; s < d.rank; ++s) piv.emplace_back(d.rows[s], s);
    } else if (d.rows.is_identity()) {
        for (std::size_t s = 0; s < d.rank; ++s) piv.emplace_back(s, d.cols[s]);
    } else {
        throw PreconditionViolated("neither permutation is the identity; not a PLU or LUP decomposition");
    }
    return SubPermutationMatrix(d.m(), d.n(), std::move(piv));
}

/// As above, also checking that `a` has the generic column (PLU) or row (LUP) rank profile.
inline SubPermutationMatrix rpm_from_plu(const PrimeField& f, const PluqDecomposition& d, ConstMatrixView a) {
    std::vector<std::size_t> generic(d.rank);
    std::iota(generic.begin(), generic.end(), std::size_t{0});
    const bool plu = d.cols.is_identity();
    const auto profile = plu ? oracle::col_rank_profile(f, a) : oracle::row_rank_profile(f, a);
    if (profile != generic)
        throw PreconditionViolated(std::string("matrix does not have a generic ") + (plu ? "column" : "row") +
                                   " rank profile");
    return rpm_from_plu(d);
}

} // namespace rankprofile
