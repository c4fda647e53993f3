#pragma once

#include <synclat/matrix.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace synclat {

template <class Field>
struct RrefResult {
    Matrix<Field> reduced;  // same shape as the input; zero rows last
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

namespace detail {

// Plain Gauss-Jordan over an arbitrary field.
template <class Field>
RrefResult<Field> gauss_jordan(Matrix<Field> m) {
    const Field& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && f.is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        auto inv = f.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots), r};
}

// Bareiss fraction-free forward elimination on integer rows, then
// back-substitution to reduced echelon form with leading ones.
inline RrefResult<RationalField> bareiss_rref(const Matrix<RationalField>& src) {
    const std::size_t rows = src.rows(), cols = src.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), src(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = src(i, j).get_num() * (l / src(i, j).get_den());
    }
    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                if (!mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("fraction-free elimination: inexact division");
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    Matrix<RationalField> m(RationalField{}, rows, cols);
    for (std::size_t i = 0; i < r; ++i) {
        const mpz_class& lead = a[i][pivots[i]];
        for (std::size_t j = 0; j < cols; ++j) {
            if (a[i][j] == 0) continue;
            m(i, j) = Rational(a[i][j], lead);
            m(i, j).canonicalize();
        }
    }
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t c = pivots[k];
        for (std::size_t i = 0; i < k; ++i) {
            if (m(i, c) == 0) continue;
            Rational factor = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (m(k, j) != 0) m(i, j) -= factor * m(k, j);
        }
    }
    return {std::move(m), std::move(pivots), r};
}

}  // namespace detail

/// Unique reduced row-echelon form with leading-one pivots.
template <class Field>
RrefResult<Field> rref(const Matrix<Field>& m) {
    if constexpr (std::is_same_v<Field, RationalField>) {
        return detail::bareiss_rref(m);
    } else {
        return detail::gauss_jordan(m);
    }
}

/// A linear subspace of Field^n held as the reduced echelon form of a
/// spanning set of row vectors. The representation is canonical, so
/// equality is entry-wise equality of bases.
template <class Field>
class Subspace {
public:
    using value_type = typename Field::value_type;
    using Vector = std::vector<value_type>;

    Subspace() = default;

    static Subspace zero(const Field& field, std::size_t n) { return Subspace(Matrix<Field>(field, 0, n), {}); }
    static Subspace full(const Field& field, std::size_t n) {
        std::vector<std::size_t> piv(n);
        for (std::size_t i = 0; i < n; ++i) piv[i] = i;
        return Subspace(Matrix<Field>::identity(field, n), std::move(piv));
    }
    /// Row span of `rows`.
    static Subspace span(const Matrix<Field>& rows) {
        auto res = rref(rows);
        Matrix<Field> basis(rows.field(), 0, rows.cols());
        for (std::size_t i = 0; i < res.rank; ++i) basis.append_row(res.reduced.row(i));
        return Subspace(std::move(basis), std::move(res.pivots));
    }
    static Subspace span(const Field& field, std::size_t n, const std::vector<Vector>& vectors) {
        Matrix<Field> m(field, 0, n);
        for (const auto& v : vectors) m.append_row(v);
        return span(m);
    }

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_dim(); }
    const Matrix<Field>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }

    /// Reduces `v` against the basis; zero iff v lies in the subspace.
    Vector reduce(Vector v) const {
        const Field& f = field();
        for (std::size_t i = 0; i < dim(); ++i) {
            const std::size_t c = pivots_[i];
            if (f.is_zero(v[c])) continue;
            auto factor = v[c];
            for (std::size_t j = c; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(factor, basis_(i, j)));
        }
        return v;
    }
    bool contains(std::span<const value_type> v) const {
        if (v.size() != ambient_dim()) throw std::invalid_argument("contains: ambient mismatch");
        Vector r = reduce(Vector(v.begin(), v.end()));
        for (const auto& x : r)
            if (!field().is_zero(x)) return false;
        return true;
    }
    bool contains(const Subspace& other) const {
        check_compatible(other);
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    /// Rows spanning the annihilator: x lies in the subspace iff E x = 0.
    Matrix<Field> equations() const;

    void check_compatible(const Subspace& other) const {
        if (ambient_dim() != other.ambient_dim()) throw std::invalid_argument("subspace ambient dimension mismatch");
        if (!(field() == other.field())) throw std::invalid_argument("subspace field mismatch");
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_dim() == b.ambient_dim() && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    /// Stable textual key of the canonical basis.
    std::string key() const {
        std::string s;
        for (std::size_t i = 0; i < dim(); ++i) {
            s += '[';
            for (std::size_t j = 0; j < ambient_dim(); ++j) {
                if (j) s += ',';
                s += field().to_string(basis_(i, j));
            }
            s += ']';
        }
        return s;
    }

private:
    Subspace(Matrix<Field> basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix<Field> basis_;
    std::vector<std::size_t> pivots_;
};

using QSubspace = Subspace<RationalField>;

/// Ker m as a subspace of Field^{cols}.
template <class Field>
Subspace<Field> nullspace(const Matrix<Field>& m) {
    const Field& f = m.field();
    const std::size_t n = m.cols();
    auto res = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : res.pivots) is_pivot[p] = true;
    Matrix<Field> basis(f, 0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename Field::value_type> v(n, f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < res.rank; ++i) v[res.pivots[i]] = f.neg(res.reduced(i, free));
        basis.append_row(v);
    }
    return Subspace<Field>::span(basis);
}

template <class Field>
Matrix<Field> Subspace<Field>::equations() const {
    if (dim() == 0) return Matrix<Field>::identity(field(), ambient_dim());
    return nullspace(basis_).basis();
}

/// Span of the columns of m, in Field^{rows}.
template <class Field>
Subspace<Field> columnspace(const Matrix<Field>& m) {
    return Subspace<Field>::span(m.transpose());
}

template <class Field>
Subspace<Field> intersect(const Subspace<Field>& u, const Subspace<Field>& v) {
    u.check_compatible(v);
    if (u.is_full()) return v;
    if (v.is_full()) return u;
    return nullspace(Matrix<Field>::stack(u.equations(), v.equations()));
}

template <class Field>
struct SumResult {
    Subspace<Field> space;
    bool direct = false;
};

template <class Field>
SumResult<Field> sum(const Subspace<Field>& u, const Subspace<Field>& v) {
    u.check_compatible(v);
    auto s = Subspace<Field>::span(Matrix<Field>::stack(u.basis(), v.basis()));
    const bool direct = s.dim() == u.dim() + v.dim();
    return {std::move(s), direct};
}

/// {x : m x in u}.
template <class Field>
Subspace<Field> preimage(const Matrix<Field>& m, const Subspace<Field>& u) {
    if (m.rows() != u.ambient_dim()) throw std::invalid_argument("preimage: dimension mismatch");
    if (u.is_full()) return Subspace<Field>::full(m.field(), m.cols());
    return nullspace(u.equations() * m);
}

/// Image of a subspace under m.
template <class Field>
Subspace<Field> image(const Matrix<Field>& m, const Subspace<Field>& u) {
    if (m.cols() != u.ambient_dim()) throw std::invalid_argument("image: dimension mismatch");
    return Subspace<Field>::span(u.basis() * m.transpose());
}

}  // namespace synclat
