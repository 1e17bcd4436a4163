#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "kernels.hpp"
#include "matrix.hpp"
#include "permutation.hpp"
#include "pluq.hpp"

namespace rankprofile {

enum class SearchOrder { Row, Col, Lex, RevLex, Product };
enum class PivotPermutation { Transposition, Rotation };

struct PivotingStrategy {
    SearchOrder search = SearchOrder::Lex;
    PivotPermutation row_perm = PivotPermutation::Rotation;
    PivotPermutation col_perm = PivotPermutation::Rotation;

    friend bool operator==(const PivotingStrategy&, const PivotingStrategy&) = default;
};

/// Profiles a strategy is guaranteed to reveal, and which permutations stay monotone.
struct RevealClaim {
    bool reveals_rowrp = false;
    bool reveals_colrp = false;
    bool reveals_rpm = false;
    bool row_monotone = false;
    bool col_monotone = false;

    friend bool operator==(const RevealClaim&, const RevealClaim&) = default;
};

/**
 * Claims follow from the partial-decomposition argument applied one pivot at
 * a time. Row-first searches (row, lex) always find the first independent
 * row; column-first searches dually. A rotation on one side keeps the
 * unprocessed indices of that side in order, which lifts a lex (resp. revlex)
 * search to the full rank profile matrix, and lets a product search recover
 * the matching profile.
 */
inline RevealClaim reveal_claim(const PivotingStrategy& s) {
    const bool row_rot = s.row_perm == PivotPermutation::Rotation;
    const bool col_rot = s.col_perm == PivotPermutation::Rotation;
    RevealClaim c;
    c.row_monotone = row_rot;
    c.col_monotone = col_rot;
    switch (s.search) {
    case SearchOrder::Row:
        c.reveals_rowrp = true;
        break;
    case SearchOrder::Col:
        c.reveals_colrp = true;
        break;
    case SearchOrder::Lex:
        c.reveals_rowrp = true;
        c.reveals_rpm = c.reveals_colrp = col_rot;
        break;
    case SearchOrder::RevLex:
        c.reveals_colrp = true;
        c.reveals_rpm = c.reveals_rowrp = row_rot;
        break;
    case SearchOrder::Product:
        c.reveals_rowrp = row_rot;
        c.reveals_colrp = col_rot;
        c.reveals_rpm = row_rot && col_rot;
        break;
    }
    return c;
}

inline constexpr std::array<SearchOrder, 5> kAllSearchOrders = {SearchOrder::Row, SearchOrder::Col, SearchOrder::Lex,
                                                                SearchOrder::RevLex, SearchOrder::Product};

/// All 5 x 2 x 2 combinations.
inline std::vector<PivotingStrategy> all_strategies() {
    std::vector<PivotingStrategy> out;
    for (SearchOrder s : kAllSearchOrders)
        for (auto rp : {PivotPermutation::Transposition, PivotPermutation::Rotation})
            for (auto cp : {PivotPermutation::Transposition, PivotPermutation::Rotation}) out.push_back({s, rp, cp});
    return out;
}

inline std::string to_string(SearchOrder s) {
    switch (s) {
    case SearchOrder::Row: return "row";
    case SearchOrder::Col: return "col";
    case SearchOrder::Lex: return "lex";
    case SearchOrder::RevLex: return "revlex";
    case SearchOrder::Product: return "product";
    }
    return "?";
}

inline std::string to_string(PivotPermutation p) { return p == PivotPermutation::Rotation ? "rot" : "trans"; }

inline std::string to_string(const PivotingStrategy& s) {
    return to_string(s.search) + "," + to_string(s.row_perm) + "," + to_string(s.col_perm);
}

/// Parses "search,rowperm,colperm"; separators may be ',', '-', ':' or '/'.
inline PivotingStrategy parse_strategy(std::string_view text) {
    std::vector<std::string> parts(1);
    for (char ch : text) {
        if (ch == ',' || ch == '-' || ch == ':' || ch == '/')
            parts.emplace_back();
        else
            parts.back() += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    if (parts.size() != 3) throw ParseError("strategy must look like lex,rot,rot; got '" + std::string(text) + "'");
    PivotingStrategy s;
    if (parts[0] == "row") s.search = SearchOrder::Row;
    else if (parts[0] == "col") s.search = SearchOrder::Col;
    else if (parts[0] == "lex") s.search = SearchOrder::Lex;
    else if (parts[0] == "revlex") s.search = SearchOrder::RevLex;
    else if (parts[0] == "product") s.search = SearchOrder::Product;
    else throw ParseError("unknown search order '" + parts[0] + "'");
    auto perm = [](const std::string& p) {
        if (p == "trans") return PivotPermutation::Transposition;
        if (p == "rot") return PivotPermutation::Rotation;
        throw ParseError("unknown pivot permutation '" + p + "'");
    };
    s.row_perm = perm(parts[1]);
    s.col_perm = perm(parts[2]);
    return s;
}

using Coordinate = std::pair<std::size_t, std::size_t>;

/// Every non-zero of `v` that is minimal for the preorder, in lexicographic order.
inline std::vector<Coordinate> minimal_pivots(ConstMatrixView v, SearchOrder order) {
    std::vector<Coordinate> out;
    const std::size_t m = v.rows(), n = v.cols();
    switch (order) {
    case SearchOrder::Row:
        for (std::size_t i = 0; i < m && out.empty(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (v(i, j) != 0) out.emplace_back(i, j);
        break;
    case SearchOrder::Col:
        for (std::size_t j = 0; j < n && out.empty(); ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (v(i, j) != 0) out.emplace_back(i, j);
        break;
    case SearchOrder::Lex:
        for (std::size_t i = 0; i < m && out.empty(); ++i) {
            const std::size_t j = leading_column(v, i);
            if (j < n) out.emplace_back(i, j);
        }
        break;
    case SearchOrder::RevLex:
        for (std::size_t j = 0; j < n && out.empty(); ++j) {
            const std::size_t i = leading_row(v, j);
            if (i < m) out.emplace_back(i, j);
        }
        break;
    case SearchOrder::Product: {
        // Only the leftmost non-zero of a row can be minimal, and only if it
        // lies strictly left of every non-zero in the rows above.
        std::size_t bound = n;
        for (std::size_t i = 0; i < m && bound > 0; ++i) {
            const std::size_t j = leading_column(v, i);
            if (j < bound) {
                out.emplace_back(i, j);
                bound = j;
            }
        }
        break;
    }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Lexicographically smallest minimum of the preorder, or nothing on a zero view.
inline std::optional<Coordinate> search_pivot(ConstMatrixView v, SearchOrder order) {
    const std::size_t m = v.rows(), n = v.cols();
    if (order == SearchOrder::Col || order == SearchOrder::RevLex) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (v(i, j) != 0) return Coordinate{i, j};
        return std::nullopt;
    }
    // Row and product minima both contain the lex minimum, which is the smallest of them.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (v(i, j) != 0) return Coordinate{i, j};
    return std::nullopt;
}

/**
 * Tie-breaking among the minima. The default picks the lexicographically
 * smallest; a seeded random choice exercises the claim that every minimal
 * choice reveals the same profiles.
 */
struct IterativeOptions {
    bool random_ties = false;
    std::uint64_t tie_seed = 0;
};

/**
 * Right-looking elimination of the view in place. Row and column
 * permutations are applied across the full width (resp. height) of the view
 * so the packed layout stays consistent.
 */
inline LocalPluq iterative_pluq_inplace(const PrimeField& f, MatrixView w, const PivotingStrategy& strategy,
                                        const IterativeOptions& opt = {}) {
    const std::size_t m = w.rows(), n = w.cols();
    LocalPluq out{Permutation::identity(m), Permutation::identity(n), 0};
    std::mt19937_64 rng(opt.tie_seed);
    std::size_t k = 0;
    for (; k < std::min(m, n); ++k) {
        ConstMatrixView trailing = w.sub(k, k, m - k, n - k);
        std::optional<Coordinate> pick;
        if (opt.random_ties) {
            const auto minima = minimal_pivots(trailing, strategy.search);
            if (!minima.empty())
                pick = minima[std::uniform_int_distribution<std::size_t>(0, minima.size() - 1)(rng)];
        } else {
            pick = search_pivot(trailing, strategy.search);
        }
        if (!pick) break;
        const std::size_t i = k + pick->first, j = k + pick->second;

        if (strategy.row_perm == PivotPermutation::Rotation) {
            rotate_rows(w, k, i);
            out.rows.rotate(k, i);
        } else {
            swap_rows(w, k, i);
            out.rows.swap_entries(k, i);
        }
        if (strategy.col_perm == PivotPermutation::Rotation) {
            rotate_cols(w, k, j);
            out.cols.rotate(k, j);
        } else {
            swap_cols(w, k, j);
            out.cols.swap_entries(k, j);
        }

        const Residue inv = f.inv(w(k, k));
        for (std::size_t t = k + 1; t < m; ++t) {
            if (w(t, k) == 0) continue;
            const Residue l = f.mul(w(t, k), inv);
            w(t, k) = l;
            Residue* row = w.row(t);
            const Residue* piv = w.row(k);
            for (std::size_t c = k + 1; c < n; ++c) row[c] = f.sub(row[c], f.mul(l, piv[c]));
        }
    }
    out.rank = k;
    return out;
}

inline PluqDecomposition iterative_pluq(const PrimeField& f, ConstMatrixView a, const PivotingStrategy& strategy,
                                        const IterativeOptions& opt = {}) {
    DenseMatrix w(a);
    LocalPluq local = iterative_pluq_inplace(f, w.view(), strategy, opt);
    return make_decomposition(std::move(local), std::move(w));
}

} // namespace rankprofile
