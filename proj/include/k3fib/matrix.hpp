#pragma once

#include "integer.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace k3fib {

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (auto& row : init) {
            if (row.size() != cols_)
                throw Error(ErrorKind::invalid_argument, "ragged matrix literal");
            for (auto& v : row) data_.push_back(v);
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

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.cols_ != y.rows_)
            throw Error(ErrorKind::invalid_argument, "matrix product shape mismatch");
        Matrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
            }
        return out;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y)
    {
        Matrix out = x;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += y.data_[i];
        return out;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y)
    {
        Matrix out = x;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= y.data_[i];
        return out;
    }

    Matrix operator-() const
    {
        Matrix out = *this;
        for (auto& v : out.data_) v = -v;
        return out;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    bool is_symmetric() const
    {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    void swap_rows(std::size_t i, std::size_t j)
    {
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

// Bareiss fraction-free determinant
inline Int determinant(IntMatrix m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw Error(ErrorKind::invalid_argument, "determinant of non-square matrix");
    if (n == 0) return 1;
    int sgn = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sgn * m(n - 1, n - 1);
}

// Faddeev-LeVerrier; coefficients c_0..c_n of det(xI - M), c_n = 1
inline std::vector<Int> characteristic_polynomial(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RatMatrix A(n, n), Mk(n, n), I = RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = Rational(m(i, j));
    // M_0 = 0, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = A * Mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        Mk = next;
        RatMatrix AM = A * Mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
        c[n - k] = -tr / Rational(static_cast<long long>(k));
    }
    std::vector<Int> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (denominator(c[i]) != 1)
            throw Error(ErrorKind::internal, "non-integral characteristic polynomial");
        out[i] = numerator(c[i]);
    }
    return out;
}

} // namespace k3fib
