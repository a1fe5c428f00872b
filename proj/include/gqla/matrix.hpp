#pragma once

#include "gqla/scalar.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace gqla {

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <class F>
class Matrix;
template <class F>
struct RowEchelon;

namespace detail {
/// Product through integer rows and columns with one normalization per entry.
Matrix<Rational> rational_product(const Matrix<Rational>& a, const Matrix<Rational>& b);
/// False when clearing denominators row by row would widen entries far beyond their size.
bool denominators_align(const Matrix<Rational>& m);
bool denominators_align(const Matrix<Gaussian>& m);
/// Fraction-free elimination on rows cleared of denominators (Bareiss).
template <class F>
RowEchelon<F> ff_row_reduce(const Matrix<F>& m);
template <class F>
std::size_t ff_rank(const Matrix<F>& m);
template <class F>
F ff_determinant(const Matrix<F>& m);
template <class F>
inline constexpr bool exact_field_v = std::is_same_v<F, Rational> || std::is_same_v<F, Gaussian>;
}  // namespace detail

/// Dense row-major matrix over an exact field (Rational or Gaussian).
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<F> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw ShapeError("matrix data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<F>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeError("ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool is_square() const { return rows_ == cols_; }

    F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!gqla::is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix conj() const {
        Matrix t(*this);
        for (auto& x : t.data_) x = FieldTraits<F>::conj(x);
        return t;
    }

    Matrix operator-() const {
        Matrix t(*this);
        for (auto& x : t.data_) x = -x;
        return t;
    }
    Matrix& operator+=(const Matrix& o) {
        check_same(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const F& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if constexpr (std::is_same_v<F, Rational>) {
            if (a.rows_ * a.cols_ * b.cols_ >= 512 && detail::denominators_align(a) &&
                detail::denominators_align(b.transpose()))
                return detail::rational_product(a, b);
        }
        if (a.cols_ != b.rows_) {
            throw ShapeError("matrix product " + a.shape_str() + " * " + b.shape_str());
        }
        Matrix c(a.rows_, b.cols_);
        F t;
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (gqla::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (gqla::is_zero(b(k, j))) continue;
                    t = aik;
                    t *= b(k, j);
                    c(i, j) += t;
                }
            }
        return c;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeError("set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

    /// Columns selected by index, in the given order.
    Matrix cols_at(const std::vector<std::size_t>& idx) const {
        Matrix m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    void check_same(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw ShapeError(std::string("matrix ") + op + " " + shape_str() + " vs " + o.shape_str());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

using QMat = Matrix<Rational>;
using GMat = Matrix<Gaussian>;

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() && !(a.cols() == 0 || b.cols() == 0)) throw ShapeError("hstack rows differ");
    std::size_t r = a.cols() ? a.rows() : b.rows();
    if (a.cols() == 0 && b.cols() == 0) r = std::max(a.rows(), b.rows());
    Matrix<F> m(r, a.cols() + b.cols());
    if (a.cols()) m.set_block(0, 0, a);
    if (b.cols()) m.set_block(0, a.cols(), b);
    return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols() && !(a.rows() == 0 || b.rows() == 0)) throw ShapeError("vstack cols differ");
    std::size_t c = a.rows() ? a.cols() : b.cols();
    if (a.rows() == 0 && b.rows() == 0) c = std::max(a.cols(), b.cols());
    Matrix<F> m(a.rows() + b.rows(), c);
    if (a.rows()) m.set_block(0, 0, a);
    if (b.rows()) m.set_block(a.rows(), 0, b);
    return m;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

/// [[a, b], [c, d]]
template <class F>
Matrix<F> block2x2(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& d) {
    return vstack(hstack(a, b), hstack(c, d));
}

inline GMat to_gaussian(const QMat& m) {
    GMat g(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = Gaussian(m(i, j));
    return g;
}

/// Componentwise real and imaginary parts.
inline QMat real_part(const GMat& m) {
    QMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).re();
    return r;
}
inline QMat imag_part(const GMat& m) {
    QMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).im();
    return r;
}

/// Result of Gauss-Jordan elimination: reduced row echelon form and pivot columns.
template <class F>
struct RowEchelon {
    Matrix<F> rref;
    std::vector<std::size_t> pivots;
};

template <class F>
RowEchelon<F> row_reduce(Matrix<F> m) {
    if constexpr (detail::exact_field_v<F>) {
        if (m.rows() * m.cols() >= 64 && detail::denominators_align(m)) return detail::ff_row_reduce(m);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    F t;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        F inv = FieldTraits<F>::inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            F f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (is_zero(m(r, j))) continue;
                t = f;
                t *= m(r, j);
                m(i, j) -= t;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    if constexpr (detail::exact_field_v<F>) {
        if (m.rows() * m.cols() >= 64 && detail::denominators_align(m)) return detail::ff_rank(m);
    }
    return row_reduce(m).pivots.size();
}

/// Columns form a basis of the right null space (free variables set to unit vectors).
template <class F>
Matrix<F> null_space(const Matrix<F>& m) {
    auto [rr, piv] = row_reduce(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::size_t nfree = m.cols() - piv.size();
    Matrix<F> k(m.cols(), nfree);
    std::size_t f = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_piv[c]) continue;
        k(c, f) = F(1);
        for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -rr(i, c);
        ++f;
    }
    return k;
}

/// One solution x of m*x = rhs (free variables zero), or nullopt if inconsistent.
template <class F>
std::optional<Matrix<F>> solve_particular(const Matrix<F>& m, const Matrix<F>& rhs) {
    if (m.rows() != rhs.rows()) throw ShapeError("solve: rhs rows " + rhs.shape_str() + " vs " + m.shape_str());
    auto [rr, piv] = row_reduce(hstack(m, rhs));
    for (auto p : piv)
        if (p >= m.cols()) return std::nullopt;
    Matrix<F> x(m.cols(), rhs.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(piv[i], j) = rr(i, m.cols() + j);
    return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
    if (!m.is_square()) throw ShapeError("inverse of non-square " + m.shape_str());
    auto [rr, piv] = row_reduce(hstack(m, Matrix<F>::identity(m.rows())));
    if (piv.size() < m.rows() || (m.rows() > 0 && piv[m.rows() - 1] >= m.cols())) return std::nullopt;
    return rr.block(0, m.cols(), m.rows(), m.rows());
}

template <class F>
Matrix<F> inverse_or_throw(const Matrix<F>& m, const char* what = "matrix") {
    auto inv = inverse(m);
    if (!inv) throw std::domain_error(std::string(what) + " is singular");
    return *inv;
}

template <class F>
F determinant(Matrix<F> m) {
    if (!m.is_square()) throw ShapeError("determinant of non-square " + m.shape_str());
    if constexpr (detail::exact_field_v<F>) {
        if (m.rows() >= 4 && detail::denominators_align(m)) return detail::ff_determinant(m);
    }
    F det(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c))) ++p;
        if (p == n) return F(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        F inv = FieldTraits<F>::inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            F f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

template <class F>
std::string to_string(const Matrix<F>& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace gqla
