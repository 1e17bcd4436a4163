#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <rankprofile/rankprofile.hpp>

namespace rptest {

using namespace rankprofile;

/// Each entry is non-zero with probability `density`.
inline DenseMatrix random_sparse(const PrimeField& f, std::size_t m, std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<Residue> val(1, f.modulus() - 1);
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (keep(rng)) a(i, j) = val(rng);
    return a;
}

/// Product of random m x r and r x n factors: rank at most r, generic profiles.
inline DenseMatrix random_low_rank(const PrimeField& f, std::size_t m, std::size_t n, std::size_t r, std::mt19937_64& rng) {
    std::uniform_int_distribution<Residue> val(0, f.modulus() - 1);
    DenseMatrix b(m, r), c(r, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t t = 0; t < r; ++t) b(i, t) = val(rng);
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t j = 0; j < n; ++j) c(t, j) = val(rng);
    return multiply(f, b, c);
}

/// Mix of structures that stress pivoting: planted profiles, sparse, low rank, zero rows and columns.
inline DenseMatrix random_instance(const PrimeField& f, std::size_t m, std::size_t n, std::mt19937_64& rng) {
    const std::size_t kind = rng() % 4;
    const std::size_t rmax = std::min(m, n);
    switch (kind) {
    case 0: return oracle::random_with_profile(f, m, n, rmax ? rng() % (rmax + 1) : 0, rng(), false).matrix;
    case 1: return random_sparse(f, m, n, 0.15, rng);
    case 2: return random_low_rank(f, m, n, rmax ? rng() % (rmax + 1) : 0, rng);
    default: {
        DenseMatrix a = random_sparse(f, m, n, 0.6, rng);
        for (std::size_t i = 0; i < m; ++i)
            if (rng() % 3 == 0)
                for (std::size_t j = 0; j < n; ++j) a(i, j) = 0;
        return a;
    }
    }
}

/// Gauss-Jordan inverse of a square non-singular matrix.
inline DenseMatrix inverse(const PrimeField& f, const DenseMatrix& a) {
    const std::size_t n = a.rows();
    DenseMatrix w(a), inv = DenseMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (w(p, c) == 0) ++p;
        std::swap_ranges(w.row(p), w.row(p) + n, w.row(c));
        std::swap_ranges(inv.row(p), inv.row(p) + n, inv.row(c));
        const Residue s = f.inv(w(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            w(c, j) = f.mul(w(c, j), s);
            inv(c, j) = f.mul(inv(c, j), s);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            const Residue g = w(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) = f.sub(w(i, j), f.mul(g, w(c, j)));
                inv(i, j) = f.sub(inv(i, j), f.mul(g, inv(c, j)));
            }
        }
    }
    return inv;
}

inline DenseMatrix gather(const DenseMatrix& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    DenseMatrix s(rows.size(), cols.size());
    for (std::size_t x = 0; x < rows.size(); ++x)
        for (std::size_t y = 0; y < cols.size(); ++y) s(x, y) = a(rows[x], cols[y]);
    return s;
}

/// Checks that online_lu_update keeps L U = A[P, Q] and that its Schur scalar equals d - v A_s^{-1} u.
/// Returns an empty string on success.
inline std::string check_extension(const PrimeField& f, const DenseMatrix& a, const IncrementalBasis& b) {
    const std::size_t s = b.size();
    if (!is_lower_triangular(b.l) || !is_upper_triangular(b.u)) return "factor shape";
    if (!(multiply(f, b.l, b.u) == gather(a, b.rows, b.cols))) return "L U differs from A[P,Q]";
    const std::vector<std::size_t> pr(b.rows.begin(), b.rows.end() - 1), pc(b.cols.begin(), b.cols.end() - 1);
    Residue w = a(b.rows.back(), b.cols.back());
    if (s > 1) {
        const DenseMatrix ainv = inverse(f, gather(a, pr, pc));
        const DenseMatrix v = gather(a, {b.rows.back()}, pc), u = gather(a, pr, {b.cols.back()});
        w = f.sub(w, multiply(f, multiply(f, v, ainv), u)(0, 0));
    }
    return b.u(s - 1, s - 1) == w ? "" : "Schur scalar differs from d - v A^{-1} u";
}

inline const DenseMatrix& example4x4() {
    static const DenseMatrix a{{2, 0, 3, 0}, {1, 0, 0, 0}, {0, 0, 4, 0}, {0, 2, 0, 1}};
    return a;
}

/// Pivots of the example's rank profile matrix, 0-based.
inline SubPermutationMatrix example4x4_rpm() { return SubPermutationMatrix(4, 4, {{0, 0}, {1, 2}, {3, 1}}); }

} // namespace rptest
