#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "kernels.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "pivoting.hpp"
#include "pluq.hpp"

namespace rankprofile {

/**
 * Base-case eliminations with lexicographic search and row and column
 * rotations. The three schedules compute the same (P, Q, r, packed) and differ
 * only in when Schur updates happen, hence in how many modular reductions
 * they perform.
 */
enum class BaseSchedule { Crout, LeftLooking, RightLooking };

inline std::string to_string(BaseSchedule s) {
    switch (s) {
    case BaseSchedule::Crout: return "crout";
    case BaseSchedule::LeftLooking: return "left";
    case BaseSchedule::RightLooking: return "right";
    }
    return "?";
}

inline BaseSchedule parse_schedule(std::string_view s) {
    if (s == "crout") return BaseSchedule::Crout;
    if (s == "left") return BaseSchedule::LeftLooking;
    if (s == "right") return BaseSchedule::RightLooking;
    throw ParseError("unknown base case '" + std::string(s) + "' (expected crout, left or right)");
}

/**
 * Crout schedule: row i receives all pending updates in one delayed dot
 * product per entry when it is reached; once it yields a pivot, only the
 * pivot column below it is brought up to date and normalized.
 */
inline LocalPluq crout_pluq_inplace(const PrimeField& f, MatrixView a) {
    const std::size_t m = a.rows(), n = a.cols();
    LocalPluq out{Permutation::identity(m), Permutation::identity(n), 0};
    const auto ld = static_cast<std::ptrdiff_t>(a.ld());
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Residue* row = a.row(i);
        for (std::size_t c = k; c < n; ++c) row[c] = f.sub(row[c], f.dot(row, 1, a.data() + c, ld, k));
        std::size_t s = k;
        while (s < n && row[s] == 0) ++s;
        if (s == n) continue;

        const Residue inv = f.inv(row[s]);
        for (std::size_t t = i + 1; t < m; ++t) {
            Residue* rt = a.row(t);
            rt[s] = f.mul(f.sub(rt[s], f.dot(rt, 1, a.data() + s, ld, k)), inv);
        }
        rotate_cols(a, k, s);
        out.cols.rotate(k, s);
        rotate_rows(a, k, i);
        out.rows.rotate(k, i);
        ++k;
    }
    out.rank = k;
    return out;
}

/**
 * Left-looking schedule: nothing below the current row is touched at pivot
 * time. When row i is reached its multipliers are solved against U_11 by
 * column-oriented substitution (one reduction per update), then the rest of
 * the row is updated with delayed dot products.
 */
inline LocalPluq left_looking_pluq_inplace(const PrimeField& f, MatrixView a) {
    const std::size_t m = a.rows(), n = a.cols();
    LocalPluq out{Permutation::identity(m), Permutation::identity(n), 0};
    const auto ld = static_cast<std::ptrdiff_t>(a.ld());
    std::vector<Residue> inv_pivot;
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Residue* row = a.row(i);
        for (std::size_t t = 0; t < k; ++t) {
            if (row[t] == 0) continue;
            row[t] = f.mul(row[t], inv_pivot[t]);
            const Residue* ut = a.row(t);
            for (std::size_t c = t + 1; c < k; ++c) row[c] = f.sub(row[c], f.mul(row[t], ut[c]));
        }
        for (std::size_t c = k; c < n; ++c) row[c] = f.sub(row[c], f.dot(row, 1, a.data() + c, ld, k));
        std::size_t s = k;
        while (s < n && row[s] == 0) ++s;
        if (s == n) continue;

        inv_pivot.push_back(f.inv(row[s]));
        rotate_cols(a, k, s);
        out.cols.rotate(k, s);
        rotate_rows(a, k, i);
        out.rows.rotate(k, i);
        ++k;
    }
    out.rank = k;
    return out;
}

/// Right-looking schedule: eager rank-one update of the trailing matrix after each pivot.
inline LocalPluq right_looking_pluq_inplace(const PrimeField& f, MatrixView a) {
    return iterative_pluq_inplace(f, a, {SearchOrder::Lex, PivotPermutation::Rotation, PivotPermutation::Rotation});
}

inline LocalPluq base_case_inplace(const PrimeField& f, MatrixView a, BaseSchedule s) {
    switch (s) {
    case BaseSchedule::Crout: return crout_pluq_inplace(f, a);
    case BaseSchedule::LeftLooking: return left_looking_pluq_inplace(f, a);
    case BaseSchedule::RightLooking: return right_looking_pluq_inplace(f, a);
    }
    throw PreconditionViolated("unknown base schedule");
}

inline PluqDecomposition base_case_pluq(const PrimeField& f, ConstMatrixView a, BaseSchedule s) {
    DenseMatrix w(a);
    LocalPluq local = base_case_inplace(f, w.view(), s);
    return make_decomposition(std::move(local), std::move(w));
}

inline PluqDecomposition crout_pluq(const PrimeField& f, ConstMatrixView a) {
    return base_case_pluq(f, a, BaseSchedule::Crout);
}
inline PluqDecomposition left_looking_pluq(const PrimeField& f, ConstMatrixView a) {
    return base_case_pluq(f, a, BaseSchedule::LeftLooking);
}
inline PluqDecomposition right_looking_pluq(const PrimeField& f, ConstMatrixView a) {
    return base_case_pluq(f, a, BaseSchedule::RightLooking);
}

} // namespace rankprofile
