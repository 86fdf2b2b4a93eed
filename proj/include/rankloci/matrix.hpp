#pragma once

// Dense matrices over an exact field plus the elimination kernels everything
// else is built on: reduced row echelon form, rank, kernel, determinant.

#include "rankloci/rational.hpp"

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rankloci {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != T(0)) return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        check_same_shape(a, b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        check_same_shape(a, b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
        return c;
    }
    friend Matrix operator*(const T& s, const Matrix& a)
    {
        Matrix c = a;
        for (auto& x : c.data_) x *= s;
        return c;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

/// Horizontal block [a | b].
template <class T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row counts differ");
    Matrix<T> c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

/// Vertical block [a ; b].
template <class T>
Matrix<T> vconcat(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: column counts differ");
    Matrix<T> c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

template <class T>
struct Echelon {
    Matrix<T> reduced;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row, in order
};

/// Reduced row echelon form by Gauss-Jordan elimination. Rows with a zero in the
/// pivot column are skipped, which keeps the sparse systems assembled elsewhere cheap.
template <class T>
Echelon<T> rref(Matrix<T> m)
{
    Echelon<T> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == T(0)) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(row, pivot);
        const T inv = T(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == T(0)) continue;
            const T factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != T(0)) m(i, j) -= factor * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m)
{
    return rref(m).pivots.size();
}

/// Basis of the right kernel, one vector per free column of the echelon form.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m)
{
    const auto ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[free] = T(1);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix obtained by
/// clearing each row's denominators. Independent of rref(); used as a cross-check.
inline std::size_t rank_fraction_free(const QMatrix& m)
{
    Matrix<Integer> a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer den = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) den = boost::multiprecision::lcm(den, denominator_of(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = numerator_of(m(i, j)) * (den / denominator_of(m(i, j)));
    }
    Integer prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(row, pivot);
        for (std::size_t i = row + 1; i < a.rows(); ++i) {
            for (std::size_t j = col + 1; j < a.cols(); ++j)
                a(i, j) = (a(row, col) * a(i, j) - a(i, col) * a(row, j)) / prev;
            a(i, col) = 0;
        }
        prev = a(row, col);
        ++row;
    }
    return row;
}

template <class T>
T determinant(Matrix<T> m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    T det(1);
    for (std::size_t col = 0; col < m.cols(); ++col) {
        std::size_t pivot = col;
        while (pivot < m.rows() && m(pivot, col) == T(0)) ++pivot;
        if (pivot == m.rows()) return T(0);
        if (pivot != col) {
            m.swap_rows(pivot, col);
            det = -det;
        }
        det *= m(col, col);
        const T inv = T(1) / m(col, col);
        for (std::size_t i = col + 1; i < m.rows(); ++i) {
            if (m(i, col) == T(0)) continue;
            const T factor = m(i, col) * inv;
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(col, j);
        }
    }
    return det;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    auto ech = rref(hconcat(m, Matrix<T>::identity(n)));
    if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
    return inv;
}

} // namespace rankloci
