#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "base_case.hpp"
#include "decompositions.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace rankprofile {

/// Default Monte Carlo prime: per-pivot failure probability is about 1 / p.
inline constexpr std::uint64_t kMonteCarloPrime = 2147483647ULL;

/**
 * Incrementally grown non-singular submatrix A[P, Q] = L U, with L unit lower
 * and U upper triangular. rows[s], cols[s] is the s-th discovered pivot.
 */
struct IncrementalBasis {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    DenseMatrix l;
    DenseMatrix u;

    std::size_t size() const noexcept { return rows.size(); }
};

/// b = A x for x uniform over K^n.
template <class Rng>
std::vector<Residue> sample_column_space(const PrimeField& f, ConstMatrixView a, Rng& rng) {
    std::uniform_int_distribution<Residue> dist(0, f.modulus() - 1);
    std::vector<Residue> x(a.cols());
    for (auto& v : x) v = dist(rng);
    std::vector<Residue> b(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) b[i] = f.dot(a.row(i), 1, x.data(), 1, a.cols());
    return b;
}

namespace detail {

/// y <- L^{-1} y for unit lower L.
inline void forward_solve(const PrimeField& f, const DenseMatrix& l, std::vector<Residue>& y) {
    for (std::size_t i = 1; i < y.size(); ++i) y[i] = f.sub(y[i], f.dot(l.row(i), 1, y.data(), 1, i));
}

/// y <- U^{-1} y for upper U with non-zero diagonal.
inline void backward_solve(const PrimeField& f, const DenseMatrix& u, std::vector<Residue>& y) {
    const std::size_t s = y.size();
    for (std::size_t i = s; i-- > 0;) {
        const Residue acc = f.dot(u.row(i) + i + 1, 1, y.data() + i + 1, 1, s - i - 1);
        y[i] = f.div(f.sub(y[i], acc), u(i, i));
    }
}

/// x <- x U^{-1} for a row vector x.
inline void row_solve_upper(const PrimeField& f, const DenseMatrix& u, std::vector<Residue>& x) {
    const auto ld = static_cast<std::ptrdiff_t>(u.cols());
    for (std::size_t c = 0; c < x.size(); ++c) {
        const Residue acc = f.dot(x.data(), 1, u.row(0) + c, ld, c);
        x[c] = f.div(f.sub(x[c], acc), u(c, c));
    }
}

/// x <- x L^{-1} for a row vector x and unit lower L.
inline void row_solve_lower_unit(const PrimeField& f, const DenseMatrix& l, std::vector<Residue>& x) {
    const std::size_t s = x.size();
    const auto ld = static_cast<std::ptrdiff_t>(l.cols());
    for (std::size_t c = s; c-- > 0;) {
        const Residue acc = f.dot(x.data() + c + 1, 1, l.row(c + 1) + c, ld, s - c - 1);
        x[c] = f.sub(x[c], acc);
    }
}

} // namespace detail

/// (A[P,Q])^{-1} y via two triangular solves.
inline std::vector<Residue> basis_solve(const PrimeField& f, const IncrementalBasis& basis, std::vector<Residue> y) {
    detail::forward_solve(f, basis.l, y);
    detail::backward_solve(f, basis.u, y);
    return y;
}

/// b - A[*,Q] (A[P,Q])^{-1} b[P].
inline std::vector<Residue> residual_column(const PrimeField& f, const IncrementalBasis& basis, ConstMatrixView a,
                                            const std::vector<Residue>& b) {
    if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length differs from row count");
    const std::size_t s = basis.size();
    std::vector<Residue> y(s);
    for (std::size_t t = 0; t < s; ++t) y[t] = b[basis.rows[t]];
    const std::vector<Residue> z = basis_solve(f, basis, std::move(y));
    std::vector<Residue> out(b);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        DelayedAccumulator acc(f);
        for (std::size_t t = 0; t < s; ++t) acc.add_product(a(i, basis.cols[t]), z[t]);
        out[i] = f.sub(out[i], acc.value());
    }
    return out;
}

/// A[i,*] - A[i,Q] (A[P,Q])^{-1} A[P,*]: the Schur complement row of i.
inline std::vector<Residue> residual_row(const PrimeField& f, const IncrementalBasis& basis, ConstMatrixView a,
                                         std::size_t i) {
    if (i >= a.rows()) throw IndexOutOfRange("row " + std::to_string(i) + " outside the matrix");
    const std::size_t s = basis.size();
    std::vector<Residue> w(s);
    for (std::size_t t = 0; t < s; ++t) w[t] = a(i, basis.cols[t]);
    detail::row_solve_upper(f, basis.u, w);
    detail::row_solve_lower_unit(f, basis.l, w);
    std::vector<Residue> out(a.row(i), a.row(i) + a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        DelayedAccumulator acc(f);
        for (std::size_t t = 0; t < s; ++t) acc.add_product(w[t], a(basis.rows[t], c));
        out[c] = f.sub(out[c], acc.value());
    }
    return out;
}

/**
 * Rank-one extension [A_s u; v d] = [L 0; v U^{-1} 1] [U L^{-1} u; 0 w] with
 * w = d - v U^{-1} L^{-1} u. Throws SingularExtension when w = 0.
 */
inline IncrementalBasis online_lu_update(const PrimeField& f, const IncrementalBasis& basis, std::size_t row,
                                         std::size_t col, const std::vector<Residue>& u, const std::vector<Residue>& v,
                                         Residue d) {
    const std::size_t s = basis.size();
    if (u.size() != s || v.size() != s) throw DimensionMismatch("extension vectors must match the basis size");
    std::vector<Residue> lu = u;
    detail::forward_solve(f, basis.l, lu);
    std::vector<Residue> vu = v;
    detail::row_solve_upper(f, basis.u, vu);
    const Residue w = f.sub(d, f.dot(vu.data(), 1, lu.data(), 1, s));
    if (w == 0) throw SingularExtension("extended submatrix is singular (Schur scalar is zero)");

    IncrementalBasis out;
    out.rows = basis.rows;
    out.cols = basis.cols;
    out.rows.push_back(row);
    out.cols.push_back(col);
    out.l = DenseMatrix(s + 1, s + 1);
    out.u = DenseMatrix(s + 1, s + 1);
    for (std::size_t a = 0; a < s; ++a) {
        std::copy_n(basis.l.row(a), s, out.l.row(a));
        std::copy_n(basis.u.row(a), s, out.u.row(a));
        out.u(a, s) = lu[a];
    }
    for (std::size_t b = 0; b < s; ++b) out.l(s, b) = vu[b];
    out.l(s, s) = 1;
    out.u(s, s) = w;
    return out;
}

/// Convenience form reading u, v and d from A.
inline IncrementalBasis online_lu_update(const PrimeField& f, const IncrementalBasis& basis, ConstMatrixView a,
                                         std::size_t row, std::size_t col) {
    std::vector<Residue> u(basis.size()), v(basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t) {
        u[t] = a(basis.rows[t], col);
        v[t] = a(row, basis.cols[t]);
    }
    return online_lu_update(f, basis, row, col, u, v, a(row, col));
}

struct LowRankOptions {
    std::size_t max_failures = 2;
    /// Called after every accepted extension with the new basis.
    std::function<void(const IncrementalBasis&)> observer;
};

/**
 * Monte Carlo rank profile matrix. Each round samples b from the column
 * space; the first non-zero of its residual gives the next pivot row, and the
 * first non-zero of that row's Schur complement gives the pivot column.
 * Columns already in Q are skipped, which plays the role of a column rotation.
 * Stops after max_failures consecutive zero residuals.
 */
inline std::pair<SubPermutationMatrix, IncrementalBasis> lowrank_rpm_with_basis(const PrimeField& f, ConstMatrixView a,
                                                                                 std::uint64_t seed,
                                                                                 const LowRankOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    IncrementalBasis basis;
    std::vector<char> used_col(a.cols(), 0);
    std::size_t failures = 0;
    const std::size_t limit = std::min(a.rows(), a.cols());
    while (failures < std::max<std::size_t>(opt.max_failures, 1) && basis.size() < limit) {
        const auto b = sample_column_space(f, a, rng);
        const auto c = residual_column(f, basis, a, b);
        const auto it = std::find_if(c.begin(), c.end(), [](Residue x) { return x != 0; });
        if (it == c.end()) {
            ++failures;
            continue;
        }
        failures = 0;
        const auto i = static_cast<std::size_t>(it - c.begin());
        const auto row = residual_row(f, basis, a, i);
        std::size_t j = 0;
        while (j < a.cols() && (used_col[j] || row[j] == 0)) ++j;
        if (j == a.cols()) throw SingularExtension("residual row has no admissible pivot column");
        basis = online_lu_update(f, basis, a, i, j);
        used_col[j] = 1;
        if (opt.observer) opt.observer(basis);
    }
    std::vector<SubPermutationMatrix::Pivot> piv;
    for (std::size_t s = 0; s < basis.size(); ++s) piv.emplace_back(basis.rows[s], basis.cols[s]);
    return {SubPermutationMatrix(a.rows(), a.cols(), std::move(piv)), std::move(basis)};
}

inline SubPermutationMatrix lowrank_rpm(const PrimeField& f, ConstMatrixView a, std::uint64_t seed,
                                        const LowRankOptions& opt = {}) {
    return lowrank_rpm_with_basis(f, a, seed, opt).first;
}

/**
 * Profiles first, then the invertible core: RowRP from a run on A, ColRP from
 * a run on A^T, an LUP of B = A[RowRP, ColRP] with lexicographic search and
 * rotations, and its permutation embedded back into the m x n frame.
 */
inline SubPermutationMatrix lowrank_rpm_via_profiles(const PrimeField& f, ConstMatrixView a, std::uint64_t seed,
                                                     const LowRankOptions& opt = {}) {
    const SubPermutationMatrix by_rows = lowrank_rpm(f, a, seed, opt);
    const DenseMatrix at = DenseMatrix(a).transposed();
    const SubPermutationMatrix by_cols = lowrank_rpm(f, at, seed ^ 0x9e3779b97f4a7c15ULL, opt);
    const std::vector<std::size_t> prof_rows = by_rows.row_support();
    const std::vector<std::size_t> prof_cols = by_cols.row_support();
    if (prof_rows.size() != prof_cols.size())
        throw SingularExtension("row and column rank estimates disagree");
    const std::size_t r = prof_rows.size();
    DenseMatrix core(r, r);
    for (std::size_t s = 0; s < r; ++s)
        for (std::size_t t = 0; t < r; ++t) core(s, t) = a(prof_rows[s], prof_cols[t]);
    const PluqDecomposition lup = crout_pluq(f, core);
    if (lup.rank != r) throw SingularExtension("extracted core is singular");
    std::vector<SubPermutationMatrix::Pivot> piv;
    for (const auto& [s, t] : rpm_from_plu(lup).pivots()) piv.emplace_back(prof_rows[s], prof_cols[t]);
    return SubPermutationMatrix(a.rows(), a.cols(), std::move(piv));
}

} // namespace rankprofile
