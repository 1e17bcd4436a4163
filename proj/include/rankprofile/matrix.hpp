#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace rankprofile {

/**
 * Non-owning row-major window (offset, rows, cols, ld) into matrix storage.
 * Writes through a mutable view are visible in the parent. Sub-views are
 * bounds-checked against the view they are taken from.
 */
template <class T>
class BasicMatrixView {
public:
    using value_type = std::remove_const_t<T>;

    BasicMatrixView() = default;
    BasicMatrixView(T* data, std::size_t rows, std::size_t cols, std::size_t ld) noexcept
        : data_(data), rows_(rows), cols_(cols), ld_(ld) {}

    /// Mutable views convert to const views.
    template <class U, class = std::enable_if_t<std::is_same_v<const U, T> && !std::is_same_v<U, T>>>
    BasicMatrixView(const BasicMatrixView<U>& other) noexcept
        : data_(other.data()), rows_(other.rows()), cols_(other.cols()), ld_(other.ld()) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t ld() const noexcept { return ld_; }
    T* data() const noexcept { return data_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) const noexcept {
        assert(i < rows_ && j < cols_);
        return data_[i * ld_ + j];
    }
    T* row(std::size_t i) const noexcept { return data_ + i * ld_; }

    BasicMatrixView sub(std::size_t i0, std::size_t j0, std::size_t m, std::size_t n) const {
        if (i0 + m > rows_ || j0 + n > cols_)
            throw IndexOutOfRange("view [" + std::to_string(i0) + "+" + std::to_string(m) + ", " +
                                  std::to_string(j0) + "+" + std::to_string(n) + "] exceeds " +
                                  std::to_string(rows_) + "x" + std::to_string(cols_));
        if (m == 0 || n == 0) return BasicMatrixView(data_, m, n, ld_);
        return BasicMatrixView(data_ + i0 * ld_ + j0, m, n, ld_);
    }

    bool is_zero() const noexcept {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) return false;
        return true;
    }

private:
    T* data_ = nullptr;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t ld_ = 0;
};

using MatrixView = BasicMatrixView<Residue>;
using ConstMatrixView = BasicMatrixView<const Residue>;

/// Owning dense row-major matrix of canonical residues (ld == cols).
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, Residue fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    DenseMatrix(std::initializer_list<std::initializer_list<Residue>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : init) {
            if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    explicit DenseMatrix(ConstMatrixView v) : DenseMatrix(v.rows(), v.cols()) {
        for (std::size_t i = 0; i < rows_; ++i) std::copy_n(v.row(i), cols_, row(i));
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
        return I;
    }

    /// Unit anti-diagonal J_n.
    static DenseMatrix anti_identity(std::size_t n) {
        DenseMatrix J(n, n);
        for (std::size_t i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
        return J;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue& operator()(std::size_t i, std::size_t j) noexcept {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    Residue operator()(std::size_t i, std::size_t j) const noexcept {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    Residue* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const Residue* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    MatrixView view() noexcept { return MatrixView(data_.data(), rows_, cols_, cols_); }
    ConstMatrixView view() const noexcept { return ConstMatrixView(data_.data(), rows_, cols_, cols_); }
    operator ConstMatrixView() const noexcept { return view(); }

    MatrixView sub(std::size_t i0, std::size_t j0, std::size_t m, std::size_t n) {
        return view().sub(i0, j0, m, n);
    }
    ConstMatrixView sub(std::size_t i0, std::size_t j0, std::size_t m, std::size_t n) const {
        return view().sub(i0, j0, m, n);
    }

    bool is_zero() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
    }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

/// Reduces every entry of `a` modulo the field (for matrices built from raw integers).
inline void canonicalize(const PrimeField& f, DenseMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) %= f.modulus();
}

/// Plain product with one reduction per entry; for tests and small post-processing.
inline DenseMatrix multiply(const PrimeField& f, ConstMatrixView a, ConstMatrixView b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(i, j) = f.dot(a.row(i), 1, b.data() + j, static_cast<std::ptrdiff_t>(b.ld()), a.cols());
    return c;
}

inline bool is_lower_triangular(ConstMatrixView a) noexcept {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

inline bool is_upper_triangular(ConstMatrixView a) noexcept {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < std::min(i, a.cols()); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

/// Column of the first non-zero entry of row i, or cols() if the row is zero.
inline std::size_t leading_column(ConstMatrixView a, std::size_t i) noexcept {
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0) return j;
    return a.cols();
}

/// Row of the first non-zero entry of column j, or rows() if the column is zero.
inline std::size_t leading_row(ConstMatrixView a, std::size_t j) noexcept {
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (a(i, j) != 0) return i;
    return a.rows();
}

/// Staircase shape: leading columns strictly increase, zero rows at the bottom.
inline bool is_row_echelon(ConstMatrixView a) noexcept {
    std::size_t prev = 0;
    bool first = true, seen_zero = false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const std::size_t lead = leading_column(a, i);
        if (lead == a.cols()) {
            seen_zero = true;
            continue;
        }
        if (seen_zero) return false;
        if (!first && lead <= prev) return false;
        prev = lead;
        first = false;
    }
    return true;
}

/// Transposed staircase: leading rows strictly increase, zero columns at the right.
inline bool is_column_echelon(ConstMatrixView a) noexcept {
    std::size_t prev = 0;
    bool first = true, seen_zero = false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const std::size_t lead = leading_row(a, j);
        if (lead == a.rows()) {
            seen_zero = true;
            continue;
        }
        if (seen_zero) return false;
        if (!first && lead <= prev) return false;
        prev = lead;
        first = false;
    }
    return true;
}

} // namespace rankprofile
