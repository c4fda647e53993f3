#pragma once

#include <synclat/field.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace synclat {

/// Dense row-major matrix over a coefficient field.
template <class Field>
class Matrix {
public:
    using value_type = typename Field::value_type;

    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    static Matrix identity(const Field& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    /// Embeds a rational matrix into `field`.
    template <class Source>
    static Matrix embed(const Field& field, const Matrix<Source>& src) {
        static_assert(std::is_same_v<Source, RationalField>, "only rational matrices embed");
        Matrix m(field, src.rows(), src.cols());
        for (std::size_t i = 0; i < src.rows(); ++i)
            for (std::size_t j = 0; j < src.cols(); ++j) m(i, j) = field.from_rational(src(i, j));
        return m;
    }

    static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<std::vector<value_type>>& rows) {
        Matrix m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged row");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::vector<value_type> row_vector(std::size_t i) const {
        auto r = row(i);
        return {r.begin(), r.end()};
    }
    std::vector<value_type> column_vector(std::size_t j) const {
        std::vector<value_type> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    void append_row(std::span<const value_type> r) {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Rows of `a` followed by rows of `b`.
    static Matrix stack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw std::invalid_argument("stack: column mismatch");
        Matrix m = a;
        m.data_.insert(m.data_.end(), b.data_.begin(), b.data_.end());
        m.rows_ += b.rows_;
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        const Field& f = a.field_;
        Matrix m(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& aik = a(i, k);
                if (f.is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (f.is_zero(b(k, j))) continue;
                    m(i, j) = f.add(m(i, j), f.mul(aik, b(k, j)));
                }
            }
        return m;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
        return m;
    }
    Matrix scaled(const value_type& s) const {
        Matrix m = *this;
        for (auto& x : m.data_) x = field_.mul(x, s);
        return m;
    }

    std::vector<value_type> apply(std::span<const value_type> x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector product: dimension mismatch");
        std::vector<value_type> y(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (field_.is_zero((*this)(i, j)) || field_.is_zero(x[j])) continue;
                y[i] = field_.add(y[i], field_.mul((*this)(i, j), x[j]));
            }
        return y;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!field_.is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_same_shape(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

using QMatrix = Matrix<RationalField>;

/// Exact Horner evaluation of p(a).
template <class Field>
Matrix<Field> apply_poly(const Matrix<Field>& a, const RationalPoly& p) {
    if (a.rows() != a.cols()) throw std::invalid_argument("apply_poly: matrix must be square");
    const Field& f = a.field();
    const std::size_t n = a.rows();
    Matrix<Field> acc(f, n, n);
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * a;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) = f.add(acc(i, i), f.from_rational(*it));
    }
    return acc;
}

}  // namespace synclat
