#include "gqla/matrix.hpp"

#include <algorithm>

namespace gqla::detail {

namespace {

/// Ring elements for fraction-free elimination: Z for Rational, Z[i] for Gaussian.
template <class F>
struct Ring;

template <>
struct Ring<Rational> {
    using T = mpz_class;
    static bool zero(const T& x) { return sgn(x) == 0; }
    static std::size_t size(const T& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }
    static void den_lcm(mpz_class& l, const Rational& x) {
        if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    static std::size_t den_size(const Rational& x) { return mpz_sizeinbase(x.get_den_mpz_t(), 2); }
    static T scaled(const Rational& x, const mpz_class& l) {
        T out;
        if (sgn(x) == 0) return out;
        mpz_divexact(out.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        out *= x.get_num();
        return out;
    }
    /// x = (x * p - f * y) / d
    static void update(T& x, const T& p, const T& f, const T& y, const T& d, bool use_y) {
        mpz_mul(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        if (use_y) mpz_submul(x.get_mpz_t(), f.get_mpz_t(), y.get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    }
    static Rational quotient(const T& x, const T& d) {
        Rational q;
        mpz_set(mpq_numref(q.get_mpq_t()), x.get_mpz_t());
        mpz_set(mpq_denref(q.get_mpq_t()), d.get_mpz_t());
        q.canonicalize();
        return q;
    }
    static T one() { return T(1); }
    static T neg(const T& x) { return -x; }
};

struct GaussInt {
    mpz_class re, im;
};

template <>
struct Ring<Gaussian> {
    using T = GaussInt;
    static bool zero(const T& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }
    static std::size_t size(const T& x) {
        return std::max(mpz_sizeinbase(x.re.get_mpz_t(), 2), mpz_sizeinbase(x.im.get_mpz_t(), 2));
    }
    static void den_lcm(mpz_class& l, const Gaussian& x) {
        Ring<Rational>::den_lcm(l, x.re());
        Ring<Rational>::den_lcm(l, x.im());
    }
    static std::size_t den_size(const Gaussian& x) {
        return std::max(Ring<Rational>::den_size(x.re()), Ring<Rational>::den_size(x.im()));
    }
    static T scaled(const Gaussian& x, const mpz_class& l) {
        return {Ring<Rational>::scaled(x.re(), l), Ring<Rational>::scaled(x.im(), l)};
    }
    static void mul(T& out, const T& a, const T& b) {
        mpz_class rr = a.re * b.re - a.im * b.im;
        mpz_class ii = a.re * b.im + a.im * b.re;
        out.re.swap(rr);
        out.im.swap(ii);
    }
    static void update(T& x, const T& p, const T& f, const T& y, const T& d, bool use_y) {
        T t;
        mul(t, x, p);
        if (use_y) {
            T fy;
            mul(fy, f, y);
            t.re -= fy.re;
            t.im -= fy.im;
        }
        if (sgn(d.im) == 0) {
            mpz_divexact(x.re.get_mpz_t(), t.re.get_mpz_t(), d.re.get_mpz_t());
            mpz_divexact(x.im.get_mpz_t(), t.im.get_mpz_t(), d.re.get_mpz_t());
            return;
        }
        T c{d.re, -d.im};
        mul(t, t, c);
        mpz_class nrm = d.re * d.re + d.im * d.im;
        mpz_divexact(x.re.get_mpz_t(), t.re.get_mpz_t(), nrm.get_mpz_t());
        mpz_divexact(x.im.get_mpz_t(), t.im.get_mpz_t(), nrm.get_mpz_t());
    }
    static Gaussian quotient(const T& x, const T& d) {
        // x / d = x conj(d) / |d|^2
        T t;
        mul(t, x, T{d.re, -d.im});
        mpz_class nrm = d.re * d.re + d.im * d.im;
        return {Ring<Rational>::quotient(t.re, nrm), Ring<Rational>::quotient(t.im, nrm)};
    }
    static T one() { return {mpz_class(1), mpz_class(0)}; }
    static T neg(const T& x) { return {-x.re, -x.im}; }
};

template <class F>
struct IntRows {
    using T = typename Ring<F>::T;
    std::size_t rows = 0, cols = 0;
    std::vector<T> data;
    std::vector<mpz_class> scale;  ///< row i of the input times scale[i]
    T& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
};

template <class F>
IntRows<F> integer_rows(const Matrix<F>& m) {
    IntRows<F> out{m.rows(), m.cols(), std::vector<typename Ring<F>::T>(m.rows() * m.cols()),
                   std::vector<mpz_class>(m.rows(), 1)};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class& l = out.scale[i];
        for (std::size_t j = 0; j < m.cols(); ++j) Ring<F>::den_lcm(l, m(i, j));
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = Ring<F>::scaled(m(i, j), l);
    }
    return out;
}

template <class F>
bool aligned(const Matrix<F>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        std::size_t widest = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (is_zero(m(i, j))) continue;
            widest = std::max(widest, Ring<F>::den_size(m(i, j)));
            Ring<F>::den_lcm(l, m(i, j));
        }
        if (mpz_sizeinbase(l.get_mpz_t(), 2) > 2 * widest + 64) return false;
    }
    return true;
}

/// Row with the smallest nonzero entry in column c among rows r.., or m.rows.
template <class F>
std::size_t choose_pivot(IntRows<F>& m, std::size_t r, std::size_t c) {
    std::size_t p = m.rows, best = 0;
    for (std::size_t i = r; i < m.rows; ++i) {
        if (Ring<F>::zero(m.at(i, c))) continue;
        std::size_t sz = Ring<F>::size(m.at(i, c));
        if (p == m.rows || sz < best) {
            p = i;
            best = sz;
        }
    }
    return p;
}

template <class F>
void swap_rows(IntRows<F>& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
    std::swap(m.scale[a], m.scale[b]);
}

/// Fraction-free elimination. With `jordan`, rows above the pivot are cleared too.
/// Returns the pivot columns; `last` receives the final pivot and `swaps` the parity.
template <class F>
std::vector<std::size_t> eliminate(IntRows<F>& m, bool jordan, typename Ring<F>::T& last, bool& odd) {
    using R = Ring<F>;
    std::vector<std::size_t> pivots;
    typename R::T prev = R::one();
    odd = false;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = choose_pivot(m, r, c);
        if (p == m.rows) continue;
        if (p != r) {
            swap_rows(m, p, r);
            odd = !odd;
        }
        const typename R::T piv = m.at(r, c);
        for (std::size_t i = jordan ? 0 : r + 1; i < m.rows; ++i) {
            if (i == r) continue;
            const typename R::T f = m.at(i, c);
            const bool zero_f = R::zero(f);
            for (std::size_t j = jordan ? 0 : c; j < m.cols; ++j) {
                auto& x = m.at(i, j);
                if (j == c) {
                    x = typename R::T{};
                    continue;
                }
                const bool use = !zero_f && !R::zero(m.at(r, j));
                if (R::zero(x) && !use) continue;
                R::update(x, piv, f, m.at(r, j), prev, use);
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    last = prev;
    return pivots;
}

}  // namespace

bool denominators_align(const QMat& m) { return aligned(m); }
bool denominators_align(const GMat& m) { return aligned(m); }

QMat rational_product(const QMat& a, const QMat& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product " + a.shape_str() + " * " + b.shape_str());
    const std::size_t n = a.rows(), k = a.cols(), p = b.cols();
    IntRows<Rational> ai = integer_rows(a), bt = integer_rows(QMat(b.transpose()));
    std::vector<std::vector<std::size_t>> nz(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (sgn(ai.at(i, t)) != 0) nz[i].push_back(t);
    QMat c(n, p);
    mpz_class s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            s = 0;
            for (std::size_t t : nz[i]) {
                const mpz_class& y = bt.data[j * k + t];
                if (sgn(y) != 0) mpz_addmul(s.get_mpz_t(), ai.data[i * k + t].get_mpz_t(), y.get_mpz_t());
            }
            if (sgn(s) == 0) continue;
            Rational& out = c(i, j);
            mpz_swap(mpq_numref(out.get_mpq_t()), s.get_mpz_t());
            mpz_mul(mpq_denref(out.get_mpq_t()), ai.scale[i].get_mpz_t(), bt.scale[j].get_mpz_t());
            out.canonicalize();
        }
    return c;
}

template <class F>
RowEchelon<F> ff_row_reduce(const Matrix<F>& in) {
    IntRows<F> m = integer_rows(in);
    typename Ring<F>::T last;
    bool odd = false;
    std::vector<std::size_t> pivots = eliminate(m, true, last, odd);
    Matrix<F> out(m.rows, m.cols);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (!Ring<F>::zero(m.at(i, j))) out(i, j) = Ring<F>::quotient(m.at(i, j), last);
    return {std::move(out), std::move(pivots)};
}

template <class F>
std::size_t ff_rank(const Matrix<F>& in) {
    IntRows<F> m = integer_rows(in);
    typename Ring<F>::T last;
    bool odd = false;
    return eliminate(m, false, last, odd).size();
}

template <class F>
F ff_determinant(const Matrix<F>& in) {
    IntRows<F> m = integer_rows(in);
    typename Ring<F>::T last;
    bool odd = false;
    if (eliminate(m, false, last, odd).size() < m.rows) return F(0);
    mpz_class scale = 1;
    for (const auto& s : m.scale) scale *= s;
    typename Ring<F>::T d = odd ? Ring<F>::neg(last) : last;
    typename Ring<F>::T den;
    if constexpr (std::is_same_v<F, Rational>)
        den = scale;
    else
        den = {scale, mpz_class(0)};
    return Ring<F>::quotient(d, den);
}

template RowEchelon<Rational> ff_row_reduce(const QMat&);
template RowEchelon<Gaussian> ff_row_reduce(const GMat&);
template std::size_t ff_rank(const QMat&);
template std::size_t ff_rank(const GMat&);
template Rational ff_determinant(const QMat&);
template Gaussian ff_determinant(const GMat&);

}  // namespace gqla::detail
