#pragma once

#include <cstddef>
#include <future>
#include <stdexcept>
#include <utility>
#include <vector>

#include "base_case.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "kernels.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "pluq.hpp"

namespace rankprofile {

struct BlockConfig {
    std::size_t threshold = 64;
    BaseSchedule base = BaseSchedule::Crout;
    bool parallel_fg = false;
};

namespace detail {

#ifdef RANKPROFILE_CHECK_BLOCKS
inline void check_equal(const DenseMatrix& got, const DenseMatrix& want, const char* what) {
    if (!(got == want)) throw std::logic_error(std::string("tile recursion block identity failed: ") + what);
}

/// The view equals [L1 0; M1 I; E 0 I] times [U1 V1 D; 0 0 F; 0 G H], in the frame permuted by (p1, q1).
inline void check_first_group(const PrimeField& f, const DenseMatrix& orig, ConstMatrixView a, const LocalPluq& l1,
                              std::size_t m2, std::size_t n2) {
    const std::size_t m = a.rows(), n = a.cols(), r1 = l1.rank;
    DenseMatrix want(orig);
    permute_rows_inplace(want.sub(0, 0, m2, n), l1.rows);
    permute_cols_inplace(want.sub(0, 0, m, n2), l1.cols);
    DenseMatrix lo = DenseMatrix::identity(m), up(a);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < std::min(i, r1); ++j) {
            lo(i, j) = a(i, j);
            up(i, j) = 0;
        }
    for (std::size_t i = r1; i < m; ++i)
        for (std::size_t j = 0; j < r1; ++j) up(i, j) = 0;
    const PrimeField g = f.fork();
    check_equal(multiply(g, lo, up), want, "after the first TRSM/MM group");
}

inline void check_final(const PrimeField& f, const DenseMatrix& orig, ConstMatrixView a, const LocalPluq& out) {
    PluqDecomposition d{out.rows, out.cols, out.rank, DenseMatrix(a)};
    const PrimeField g = f.fork();
    check_equal(d.reconstruct(g), orig, "final P L U Q");
    for (std::size_t i = out.rank; i < a.rows(); ++i)
        for (std::size_t j = out.rank; j < a.cols(); ++j)
            if (a(i, j) != 0) throw std::logic_error("tile recursion left a non-zero trailing block");
}
#endif

/// Maps a position of the concatenated (pivots of block, rest) order back to the block's original index.
inline std::size_t compose_local(const Permutation& outer, std::size_t outer_rank, const Permutation& inner,
                                 std::size_t t) {
    return t < outer_rank ? outer[t] : outer[outer_rank + inner[t - outer_rank]];
}

inline LocalPluq tile_recursive(const PrimeField& f, MatrixView a, const BlockConfig& cfg, int depth) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m == 0 || n == 0) return LocalPluq{Permutation::identity(m), Permutation::identity(n), 0};
    if (std::min(m, n) <= cfg.threshold) return base_case_inplace(f, a, cfg.base);

#ifdef RANKPROFILE_CHECK_BLOCKS
    const DenseMatrix orig(a);
#endif
    const std::size_t m2 = m / 2, n2 = n / 2;

    const LocalPluq l1 = tile_recursive(f, a.sub(0, 0, m2, n2), cfg, depth + 1);
    const std::size_t r1 = l1.rank;
    permute_rows_inplace(a.sub(0, n2, m2, n - n2), l1.rows);
    permute_cols_inplace(a.sub(m2, 0, m - m2, n2), l1.cols);

    const ConstMatrixView l1u1 = a.sub(0, 0, r1, r1);
    const MatrixView d = a.sub(0, n2, r1, n - n2);
    const MatrixView e = a.sub(m2, 0, m - m2, r1);
    trsm_left_lower_unit(f, l1u1, d);
    trsm_right_upper(f, l1u1, e);
    mm_acc(f, a.sub(r1, n2, m2 - r1, n - n2), a.sub(r1, 0, m2 - r1, r1), d);
    mm_acc(f, a.sub(m2, r1, m - m2, n2 - r1), e, a.sub(0, r1, r1, n2 - r1));
    mm_acc(f, a.sub(m2, n2, m - m2, n - n2), e, d);
#ifdef RANKPROFILE_CHECK_BLOCKS
    check_first_group(f, orig, a, l1, m2, n2);
#endif

    const MatrixView fblk = a.sub(r1, n2, m2 - r1, n - n2);
    const MatrixView gblk = a.sub(m2, r1, m - m2, n2 - r1);
    LocalPluq l2, l3;
    if (cfg.parallel_fg && depth < 3) {
        const PrimeField fg = f.fork();
        auto fut = std::async(std::launch::async, [&] { return tile_recursive(fg, gblk, cfg, depth + 1); });
        l2 = tile_recursive(f, fblk, cfg, depth + 1);
        l3 = fut.get();
        f.absorb(fg);
    } else {
        l2 = tile_recursive(f, fblk, cfg, depth + 1);
        l3 = tile_recursive(f, gblk, cfg, depth + 1);
    }
    const std::size_t r2 = l2.rank, r3 = l3.rank;

    permute_rows_inplace(a.sub(m2, 0, m - m2, r1), l3.rows);
    permute_rows_inplace(a.sub(m2, n2, m - m2, n - n2), l3.rows);
    permute_cols_inplace(a.sub(0, n2, r1, n - n2), l2.cols);
    permute_cols_inplace(a.sub(m2, n2, m - m2, n - n2), l2.cols);
    permute_rows_inplace(a.sub(r1, 0, m2 - r1, r1), l2.rows);
    permute_cols_inplace(a.sub(0, r1, r1, n2 - r1), l3.cols);

    const std::size_t mb = m - m2 - r3, nb = n - n2 - r2;
    const ConstMatrixView u2 = a.sub(r1, n2, r2, r2);
    const ConstMatrixView v2 = a.sub(r1, n2 + r2, r2, nb);
    const ConstMatrixView l3u3 = a.sub(m2, r1, r3, r3);
    const ConstMatrixView m3 = a.sub(m2 + r3, r1, mb, r3);
    const MatrixView h1 = a.sub(m2, n2, r3, r2);
    const MatrixView h2 = a.sub(m2, n2 + r2, r3, nb);
    const MatrixView h3 = a.sub(m2 + r3, n2, mb, r2);
    const MatrixView h4 = a.sub(m2 + r3, n2 + r2, mb, nb);
    trsm_right_upper(f, u2, h1);     // I = H1 U2^{-1}
    mm_acc(f, h2, h1, v2);           // H2 - I V2
    trsm_left_lower_unit(f, l3u3, h2); // O = L3^{-1} (H2 - I V2)
    trsm_right_upper(f, u2, h3);     // K = H3 U2^{-1}
    mm_acc(f, h4, h3, v2);
    mm_acc(f, h4, m3, h2);           // R = H4 - K V2 - M3 O

    const LocalPluq l4 = tile_recursive(f, h4, cfg, depth + 1);
    const std::size_t r4 = l4.rank;
    permute_rows_inplace(a.sub(m2 + r3, 0, mb, n2 + r2), l4.rows);
    permute_cols_inplace(a.sub(0, n2 + r2, m2 + r3, nb), l4.cols);

    std::vector<std::size_t> s, t;
    s.reserve(m);
    t.reserve(n);
    auto append = [](std::vector<std::size_t>& v, std::size_t from, std::size_t to) {
        for (std::size_t x = from; x < to; ++x) v.push_back(x);
    };
    append(s, 0, r1 + r2);
    append(s, m2, m2 + r3 + r4);
    append(s, r1 + r2, m2);
    append(s, m2 + r3 + r4, m);
    append(t, 0, r1);
    append(t, n2, n2 + r2);
    append(t, r1, r1 + r3);
    append(t, n2 + r2, n2 + r2 + r4);
    append(t, r1 + r3, n2);
    append(t, n2 + r2 + r4, n);

    std::vector<std::size_t> rows(m), cols(n);
    for (std::size_t x = 0; x < m; ++x) {
        const std::size_t y = s[x];
        rows[x] = y < m2 ? compose_local(l1.rows, r1, l2.rows, y) : m2 + compose_local(l3.rows, r3, l4.rows, y - m2);
    }
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t y = t[x];
        cols[x] = y < n2 ? compose_local(l1.cols, r1, l3.cols, y) : n2 + compose_local(l2.cols, r2, l4.cols, y - n2);
    }
    permute_rows_inplace(a, Permutation(std::move(s)));
    permute_cols_inplace(a, Permutation(std::move(t)));

    LocalPluq out{Permutation(std::move(rows)), Permutation(std::move(cols)), r1 + r2 + r3 + r4};
#ifdef RANKPROFILE_CHECK_BLOCKS
    check_final(f, orig, a, out);
#endif
    return out;
}

} // namespace detail

/// In-place tile recursive elimination of a view.
inline LocalPluq tile_recursive_pluq_inplace(const PrimeField& f, MatrixView a, const BlockConfig& cfg = {}) {
    if (cfg.threshold == 0) throw PreconditionViolated("block threshold must be at least 1");
    return detail::tile_recursive(f, a, cfg, 0);
}

inline PluqDecomposition tile_recursive_pluq(const PrimeField& f, ConstMatrixView a, const BlockConfig& cfg = {}) {
    DenseMatrix w(a);
    LocalPluq local = tile_recursive_pluq_inplace(f, w.view(), cfg);
    return make_decomposition(std::move(local), std::move(w));
}

} // namespace rankprofile
