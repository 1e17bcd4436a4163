#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace rankprofile {

/**
 * Brute-force ground truth. Nothing here shares code with the elimination
 * engines: ranks come from a plain Gauss-Jordan sweep.
 */
namespace oracle {

/// Rank of the leading i x j block of `a` for every i, j: table[i][j].
inline std::vector<std::vector<std::size_t>> leading_ranks(const PrimeField& f, ConstMatrixView a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<std::size_t>> table(m + 1, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t i = 1; i <= m; ++i) {
        // Fresh column-by-column reduction of the first i rows.
        DenseMatrix w(a.sub(0, 0, i, n));
        std::vector<char> used(i, 0);
        std::size_t rank = 0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t t = 0;
            while (t < i && (used[t] || w(t, j) == 0)) ++t;
            if (t < i) {
                used[t] = 1;
                ++rank;
                const Residue inv = f.inv(w(t, j));
                for (std::size_t u = 0; u < i; ++u) {
                    if (used[u] || w(u, j) == 0) continue;
                    const Residue factor = f.mul(w(u, j), inv);
                    for (std::size_t c = j; c < n; ++c) w(u, c) = f.sub(w(u, c), f.mul(factor, w(t, c)));
                }
            }
            table[i][j + 1] = rank;
        }
    }
    return table;
}

inline std::size_t rank(const PrimeField& f, ConstMatrixView a) {
    const std::size_t m = a.rows(), n = a.cols();
    DenseMatrix w(a);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        std::size_t t = r;
        while (t < m && w(t, j) == 0) ++t;
        if (t == m) continue;
        std::swap_ranges(w.row(t), w.row(t) + n, w.row(r));
        const Residue inv = f.inv(w(r, j));
        for (std::size_t u = r + 1; u < m; ++u) {
            if (w(u, j) == 0) continue;
            const Residue factor = f.mul(w(u, j), inv);
            for (std::size_t c = j; c < n; ++c) w(u, c) = f.sub(w(u, c), f.mul(factor, w(r, c)));
        }
        ++r;
    }
    return r;
}

/**
 * Rank profile matrix built row by row: row i carries a pivot iff appending
 * it raises the rank, and the pivot sits in the smallest column k for which
 * the leading (i+1) x k block has one more rank than the leading i x k block.
 */
inline SubPermutationMatrix rpm(const PrimeField& f, ConstMatrixView a) {
    const auto rho = leading_ranks(f, a);
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<SubPermutationMatrix::Pivot> piv;
    for (std::size_t i = 0; i < m; ++i) {
        if (rho[i + 1][n] == rho[i][n]) continue;
        std::size_t k = 1;
        while (rho[i + 1][k] != rho[i][k] + 1) ++k;
        piv.emplace_back(i, k - 1);
    }
    return SubPermutationMatrix(m, n, std::move(piv));
}

/// True iff every leading block of `s` has the rank of the matching block of the table.
inline bool satisfies_leading_ranks(const SubPermutationMatrix& s, const std::vector<std::vector<std::size_t>>& rho) {
    for (std::size_t i = 0; i <= s.rows(); ++i)
        for (std::size_t j = 0; j <= s.cols(); ++j)
            if (s.count_leading(i, j) != rho[i][j]) return false;
    return true;
}

/// Greedy scan: row i belongs to the profile iff it is independent of the rows before it.
inline std::vector<std::size_t> row_rank_profile(const PrimeField& f, ConstMatrixView a) {
    std::vector<std::size_t> out;
    std::size_t prev = 0;
    for (std::size_t i = 1; i <= a.rows(); ++i) {
        const std::size_t r = rank(f, a.sub(0, 0, i, a.cols()));
        if (r > prev) out.push_back(i - 1);
        prev = r;
    }
    return out;
}

inline std::vector<std::size_t> col_rank_profile(const PrimeField& f, ConstMatrixView a) {
    std::vector<std::size_t> out;
    std::size_t prev = 0;
    for (std::size_t j = 1; j <= a.cols(); ++j) {
        const std::size_t r = rank(f, a.sub(0, 0, a.rows(), j));
        if (r > prev) out.push_back(j - 1);
        prev = r;
    }
    return out;
}

/// Uniformly drawn r-sub-permutation matrix in an m x n frame.
template <class Rng>
SubPermutationMatrix random_subpermutation(std::size_t m, std::size_t n, std::size_t r, Rng& rng) {
    if (r > std::min(m, n)) throw InvalidRank("rank " + std::to_string(r) + " exceeds min(m, n)");
    std::vector<std::size_t> rows(m), cols(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    std::vector<SubPermutationMatrix::Pivot> piv;
    for (std::size_t s = 0; s < r; ++s) piv.emplace_back(rows[s], cols[s]);
    return SubPermutationMatrix(m, n, std::move(piv));
}

struct PlantedMatrix {
    DenseMatrix matrix;
    SubPermutationMatrix rpm;
};

/**
 * A = L R U with L (U) random lower (upper) triangular with non-zero
 * diagonal and R a random r-sub-permutation. Each leading block of A is the
 * matching block of R times invertible factors, so R is the rank profile
 * matrix of A; `verify` re-checks that against rpm().
 */
inline PlantedMatrix random_with_profile(const PrimeField& f, std::size_t m, std::size_t n, std::size_t r,
                                         std::uint64_t seed, bool verify = true) {
    std::mt19937_64 rng(seed);
    SubPermutationMatrix planted = random_subpermutation(m, n, r, rng);
    std::uniform_int_distribution<Residue> any(0, f.modulus() - 1), nonzero(1, f.modulus() - 1);

    // L R has column c equal to column i of L when (i, c) is a pivot; then (L R) U.
    DenseMatrix lr(m, n);
    for (const auto& [i, c] : planted.pivots()) {
        lr(i, c) = nonzero(rng);
        for (std::size_t t = i + 1; t < m; ++t) lr(t, c) = any(rng);
    }
    DenseMatrix u(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        u(a, a) = nonzero(rng);
        for (std::size_t b = a + 1; b < n; ++b) u(a, b) = any(rng);
    }
    DenseMatrix out = multiply(f, lr, u);
    if (verify && !(rpm(f, out) == planted))
        throw PreconditionViolated("planted rank profile matrix was not preserved");
    return {std::move(out), std::move(planted)};
}

} // namespace oracle
} // namespace rankprofile
