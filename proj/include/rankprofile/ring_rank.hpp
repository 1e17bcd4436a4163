#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "permutation.hpp"

namespace rankprofile::ring {

/// Z/nZ for small n; everything in this namespace is exhaustive enumeration.
class SmallRing {
public:
    static constexpr std::uint64_t kMaxModulus = 12;

    explicit SmallRing(std::uint64_t n) : n_(n) {
        if (n < 2 || n > kMaxModulus)
            throw BudgetExceeded("ring modulus " + std::to_string(n) + " outside [2, " + std::to_string(kMaxModulus) +
                                 "]");
        unit_.resize(n);
        for (std::uint64_t a = 0; a < n; ++a) unit_[a] = std::gcd(a, n) == 1;
    }

    std::uint64_t modulus() const noexcept { return n_; }
    bool is_unit(std::uint64_t a) const noexcept { return unit_[a % n_]; }
    std::uint64_t reduce(std::int64_t v) const noexcept {
        const auto n = static_cast<std::int64_t>(n_);
        const std::int64_t r = v % n;
        return static_cast<std::uint64_t>(r < 0 ? r + n : r);
    }

private:
    std::uint64_t n_;
    std::vector<char> unit_;
};

inline constexpr std::size_t kMaxDim = 4;
inline constexpr double kEnumerationBudget = 2e8;

inline void check_dims(ConstMatrixView a) {
    if (a.rows() > kMaxDim || a.cols() > kMaxDim)
        throw BudgetExceeded("matrix " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " exceeds the enumeration budget");
}

/// Integer Leibniz determinant of the minor (rows, cols), reduced in the ring.
inline std::uint64_t minor_det(const SmallRing& ring, ConstMatrixView a, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) {
    const std::size_t s = rows.size();
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::int64_t det = 0;
    do {
        std::int64_t term = 1;
        for (std::size_t t = 0; t < s && term != 0; ++t) term *= static_cast<std::int64_t>(a(rows[t], cols[perm[t]]));
        if (term == 0) continue;
        std::size_t inversions = 0;
        for (std::size_t x = 0; x < s; ++x)
            for (std::size_t y = x + 1; y < s; ++y) inversions += perm[x] > perm[y];
        det += (inversions % 2 ? -term : term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return ring.reduce(det);
}

/// Calls fn on every k-subset of {0..n-1}, in lexicographic order; stops when fn returns true.
inline bool for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (fn(idx)) return true;
        std::size_t t = k;
        while (t > 0 && idx[t - 1] == n - k + t - 1) --t;
        if (t == 0) return false;
        ++idx[t - 1];
        for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
}

/// Largest s such that some s x s minor is a unit.
inline std::size_t mccoy_rank(const SmallRing& ring, ConstMatrixView a) {
    check_dims(a);
    for (std::size_t s = std::min(a.rows(), a.cols()); s > 0; --s) {
        const bool found = for_each_subset(a.rows(), s, [&](const std::vector<std::size_t>& rows) {
            return for_each_subset(a.cols(), s, [&](const std::vector<std::size_t>& cols) {
                return ring.is_unit(minor_det(ring, a, rows, cols));
            });
        });
        if (found) return s;
    }
    return 0;
}

/// True iff A[:, cols] x = 0 has only the trivial solution.
inline bool trivial_right_nullspace(const SmallRing& ring, ConstMatrixView a, const std::vector<std::size_t>& cols) {
    const std::uint64_t n = ring.modulus();
    const std::size_t k = cols.size();
    std::vector<std::uint64_t> x(k, 0);
    while (true) {
        std::size_t t = 0;
        while (t < k && x[t] == n - 1) x[t++] = 0;
        if (t == k) return true;
        ++x[t];
        bool zero = true;
        for (std::size_t i = 0; i < a.rows() && zero; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < k; ++c) acc += a(i, cols[c]) * x[c];
            zero = acc % n == 0;
        }
        if (zero) return false;
    }
}

/// Second characterization: largest column selection with trivial right nullspace.
inline std::size_t mccoy_rank_by_nullspace(const SmallRing& ring, ConstMatrixView a) {
    check_dims(a);
    for (std::size_t s = a.cols(); s > 0; --s) {
        if (std::pow(static_cast<double>(ring.modulus()), static_cast<double>(s)) > kEnumerationBudget)
            throw BudgetExceeded("nullspace enumeration too large");
        if (for_each_subset(a.cols(), s,
                            [&](const std::vector<std::size_t>& cols) { return trivial_right_nullspace(ring, a, cols); }))
            return s;
    }
    return 0;
}

/// Smallest r with A = B C, B m x r and C r x n, by enumerating B and testing each column of A for membership in B's image.
inline std::size_t spanning_rank(const SmallRing& ring, ConstMatrixView a) {
    check_dims(a);
    const std::size_t m = a.rows(), n = a.cols();
    if (a.is_zero()) return 0;
    const std::uint64_t q = ring.modulus();
    const std::size_t full = std::min(m, n);
    for (std::size_t r = 1; r < full; ++r) {
        const double work = std::pow(static_cast<double>(q), static_cast<double>(m * r + r));
        if (work > kEnumerationBudget) throw BudgetExceeded("spanning rank enumeration too large");
        std::vector<std::uint64_t> b(m * r, 0);
        std::vector<std::uint64_t> img;
        while (true) {
            // Image of B: all B x, encoded base q.
            img.clear();
            std::vector<std::uint64_t> x(r, 0);
            while (true) {
                std::uint64_t code = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    std::uint64_t acc = 0;
                    for (std::size_t t = 0; t < r; ++t) acc += b[i * r + t] * x[t];
                    code = code * q + acc % q;
                }
                img.push_back(code);
                std::size_t t = 0;
                while (t < r && x[t] == q - 1) x[t++] = 0;
                if (t == r) break;
                ++x[t];
            }
            std::sort(img.begin(), img.end());
            bool spans = true;
            for (std::size_t j = 0; j < n && spans; ++j) {
                std::uint64_t code = 0;
                for (std::size_t i = 0; i < m; ++i) code = code * q + a(i, j);
                spans = std::binary_search(img.begin(), img.end(), code);
            }
            if (spans) return r;
            std::size_t t = 0;
            while (t < b.size() && b[t] == q - 1) b[t++] = 0;
            if (t == b.size()) break;
            ++b[t];
        }
    }
    return full;
}

using RankFunction = std::function<std::size_t(const SmallRing&, ConstMatrixView)>;

/// table[i][j] = rank of the leading i x j block.
inline std::vector<std::vector<std::size_t>> leading_ranks(const SmallRing& ring, ConstMatrixView a,
                                                           const RankFunction& rank) {
    std::vector<std::vector<std::size_t>> t(a.rows() + 1, std::vector<std::size_t>(a.cols() + 1, 0));
    for (std::size_t i = 1; i <= a.rows(); ++i)
        for (std::size_t j = 1; j <= a.cols(); ++j) t[i][j] = rank(ring, a.sub(0, 0, i, j));
    return t;
}

/// Every sub-permutation matrix of an m x n frame (any rank).
inline std::vector<SubPermutationMatrix> all_subpermutations(std::size_t m, std::size_t n) {
    std::vector<SubPermutationMatrix> out;
    std::vector<SubPermutationMatrix::Pivot> cur;
    std::vector<char> used(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m) {
            out.emplace_back(m, n, cur);
            return;
        }
        rec(i + 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            cur.emplace_back(i, j);
            rec(i + 1);
            cur.pop_back();
            used[j] = 0;
        }
    };
    rec(0);
    return out;
}

/// Sub-permutation matrices whose leading blocks all have A's McCoy ranks.
inline std::vector<SubPermutationMatrix> mccoy_rpm_candidates(const SmallRing& ring, ConstMatrixView a) {
    check_dims(a);
    const auto rho = leading_ranks(ring, a, mccoy_rank);
    std::vector<SubPermutationMatrix> out;
    for (auto& s : all_subpermutations(a.rows(), a.cols())) {
        bool ok = true;
        for (std::size_t i = 1; i <= a.rows() && ok; ++i)
            for (std::size_t j = 1; j <= a.cols() && ok; ++j) ok = s.count_leading(i, j) == rho[i][j];
        if (ok) out.push_back(std::move(s));
    }
    return out;
}

/// The McCoy rank profile matrix; exactly one candidate must pass.
inline SubPermutationMatrix mccoy_rpm(const SmallRing& ring, ConstMatrixView a) {
    auto c = mccoy_rpm_candidates(ring, a);
    if (c.empty()) throw NoCandidate("no sub-permutation matrix matches the leading McCoy ranks");
    if (c.size() > 1)
        throw MultipleCandidates(std::to_string(c.size()) + " sub-permutation matrices match the leading McCoy ranks");
    return c.front();
}

/// Calls fn on every m x n matrix over the ring (row-major odometer).
inline void for_each_matrix(const SmallRing& ring, std::size_t m, std::size_t n,
                            const std::function<void(const DenseMatrix&)>& fn) {
    if (std::pow(static_cast<double>(ring.modulus()), static_cast<double>(m * n)) > kEnumerationBudget)
        throw BudgetExceeded("matrix sweep too large");
    DenseMatrix a(m, n);
    const std::size_t total = m * n;
    while (true) {
        fn(a);
        std::size_t t = 0;
        while (t < total && a(t / n, t % n) == ring.modulus() - 1) {
            a(t / n, t % n) = 0;
            ++t;
        }
        if (t == total) return;
        ++a(t / n, t % n);
    }
}

/**
 * No 2x2 matrix over Z/4Z with at most two non-zero entries has the leading
 * spanning ranks of [[0,2],[2,1]].
 */
inline bool verify_cex_lemma() {
    const SmallRing z4(4);
    const DenseMatrix a{{0, 2}, {2, 1}};
    const auto target = leading_ranks(z4, a, spanning_rank);
    bool none = true;
    for_each_matrix(z4, 2, 2, [&](const DenseMatrix& r) {
        std::size_t nz = 0;
        for (std::size_t t = 0; t < 4; ++t) nz += r(t / 2, t % 2) != 0;
        if (nz > 2) return;
        if (leading_ranks(z4, r, spanning_rank) == target) none = false;
    });
    return none;
}

/// Rank discrepancies of [B u; v^T alpha] against its three sub-blocks.
struct Deltas {
    std::array<int, 4> d{};
};

inline Deltas deltas(const SmallRing& ring, ConstMatrixView full, const RankFunction& rank) {
    const std::size_t m = full.rows() - 1, n = full.cols() - 1;
    const auto r_b = static_cast<int>(rank(ring, full.sub(0, 0, m, n)));
    const auto r_bu = static_cast<int>(rank(ring, full.sub(0, 0, m, n + 1)));
    const auto r_bv = static_cast<int>(rank(ring, full.sub(0, 0, m + 1, n)));
    const auto r_all = static_cast<int>(rank(ring, full));
    return Deltas{{r_bu - r_b, r_bv - r_b, r_all - r_bu, r_all - r_bv}};
}

/// Clauses (i)-(v) relating the four discrepancies.
inline bool delta_clauses_hold(const Deltas& x) {
    const auto [d1, d2, d3, d4] = x.d;
    for (int v : x.d)
        if (v != 0 && v != 1) return false;
    const bool i = (d1 == 0 && d4 == 1) == (d2 == 0 && d3 == 1);
    const bool ii = (d1 == 1 && d3 == 1) == (d2 == 1 && d4 == 1);
    const bool iii = !(d1 == 1 && d3 == 0) || (d2 == 0 && d4 == 1);
    const bool iv = d1 != 1 || d4 == 1;
    const bool v = d2 != 1 || d3 == 1;
    return i && ii && iii && iv && v;
}

struct DeltaReport {
    std::size_t cases = 0;
    std::size_t violations = 0;
    bool spanning_cex_reproduced = false;
    bool ok() const noexcept { return violations == 0 && spanning_cex_reproduced; }
};

/// Discrepancies of the spanning rank on [[0,2],[2,1]] over Z/4Z.
inline Deltas spanning_cex_deltas() {
    const SmallRing z4(4);
    const DenseMatrix a{{0, 2}, {2, 1}};
    return deltas(z4, a, spanning_rank);
}

/**
 * Checks the clauses with McCoy rank on every (B, u, v, alpha) with B of
 * size rows x cols (trials == 0) or on `trials` random samples.
 */
inline DeltaReport verify_delta_lemma(const SmallRing& ring, std::size_t rows, std::size_t cols, std::size_t trials,
                                      std::uint64_t seed = 1) {
    DeltaReport rep;
    auto check = [&](const DenseMatrix& full) {
        ++rep.cases;
        if (!delta_clauses_hold(deltas(ring, full, mccoy_rank))) ++rep.violations;
    };
    if (trials == 0) {
        for_each_matrix(ring, rows + 1, cols + 1, check);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Residue> dist(0, ring.modulus() - 1);
        DenseMatrix full(rows + 1, cols + 1);
        for (std::size_t t = 0; t < trials; ++t) {
            for (std::size_t i = 0; i <= rows; ++i)
                for (std::size_t j = 0; j <= cols; ++j) full(i, j) = dist(rng);
            check(full);
        }
    }
    const Deltas cex = spanning_cex_deltas();
    rep.spanning_cex_reproduced = cex.d == std::array<int, 4>{1, 1, 0, 0} && !delta_clauses_hold(cex);
    return rep;
}

} // namespace rankprofile::ring
