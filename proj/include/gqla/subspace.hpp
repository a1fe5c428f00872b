#pragma once

#include "gqla/matrix.hpp"

namespace gqla {

/// Linear subspace of F^ambient. span() keeps the basis in reduced column echelon
/// form; with_basis() keeps a given basis. Coordinates are read off a set of pivot
/// rows on which the basis is invertible.
template <class F>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

    /// Span of the columns of `generators`.
    static Subspace span(const Matrix<F>& generators) {
        Subspace s(generators.rows());
        if (generators.cols() == 0) return s;
        auto [rr, piv] = row_reduce(generators.transpose());
        s.basis_ = rr.block(0, 0, piv.size(), rr.cols()).transpose();
        s.pivots_ = std::move(piv);
        return s;
    }
    /// Subspace with the given linearly independent columns as its basis.
    static Subspace with_basis(const Matrix<F>& basis) {
        Subspace s(basis.rows());
        if (basis.cols() == 0) return s;
        auto [rr, piv] = row_reduce(basis.transpose());
        if (piv.size() != basis.cols()) throw std::invalid_argument("with_basis: columns are dependent");
        s.basis_ = basis;
        s.pivots_ = std::move(piv);
        Matrix<F> top(s.dim(), s.dim());
        for (std::size_t j = 0; j < s.dim(); ++j)
            for (std::size_t c = 0; c < s.dim(); ++c) top(j, c) = basis(s.pivots_[j], c);
        if (!(top == Matrix<F>::identity(s.dim()))) s.pivot_inverse_ = inverse_or_throw(top);
        return s;
    }
    static Subspace whole(std::size_t n) { return span(Matrix<F>::identity(n)); }
    /// Span of the standard basis vectors e_first .. e_{first+count-1}.
    static Subspace coordinate(std::size_t n, std::size_t first, std::size_t count) {
        Matrix<F> g(n, count);
        for (std::size_t k = 0; k < count; ++k) g(first + k, k) = F(1);
        return span(g);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    bool is_zero() const { return dim() == 0; }
    const Matrix<F>& basis() const { return basis_; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.contains(b);
    }

    bool contains(const Matrix<F>& vectors) const {
        check_ambient(vectors.rows());
        if (vectors.cols() == 0) return true;
        return basis_ * pivot_rows(vectors) == vectors;
    }
    bool contains(const Subspace& other) const { return contains(other.basis_); }

    /// Coordinates of `vectors` in this subspace's basis; throws if not contained.
    Matrix<F> coordinates(const Matrix<F>& vectors) const {
        check_ambient(vectors.rows());
        Matrix<F> x = pivot_rows(vectors);
        if (!(basis_ * x == vectors)) throw std::invalid_argument("vector not in subspace");
        return x;
    }

    /// Rows on which the basis is invertible.
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    /// True when the basis consists of standard basis vectors (then they sit at the pivots).
    bool is_coordinate() const {
        if (!pivot_inverse_.empty()) return false;
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t i = 0; i < ambient_; ++i)
                if (i != pivots_[j] && !gqla::is_zero(basis_(i, j))) return false;
        return true;
    }

    void check_ambient(std::size_t n) const {
        if (n != ambient_) {
            throw ShapeError("ambient mismatch: " + std::to_string(n) + " vs " + std::to_string(ambient_));
        }
    }

private:
    Matrix<F> pivot_rows(const Matrix<F>& vectors) const {
        Matrix<F> x(dim(), vectors.cols());
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t c = 0; c < vectors.cols(); ++c) x(j, c) = vectors(pivots_[j], c);
        return pivot_inverse_.empty() ? x : pivot_inverse_ * x;
    }

    std::size_t ambient_ = 0;
    Matrix<F> basis_;
    std::vector<std::size_t> pivots_;
    Matrix<F> pivot_inverse_;  ///< empty when the pivot rows already form the identity
};

using QSub = Subspace<Rational>;
using GSub = Subspace<Gaussian>;

template <class F>
Subspace<F> sum(const Subspace<F>& s, const Subspace<F>& t) {
    s.check_ambient(t.ambient());
    return Subspace<F>::span(hstack(s.basis(), t.basis()));
}

template <class F>
Subspace<F> intersect(const Subspace<F>& s, const Subspace<F>& t) {
    s.check_ambient(t.ambient());
    if (s.is_zero() || t.is_zero()) return Subspace<F>(s.ambient());
    if (t.is_coordinate() || s.is_coordinate()) {
        const Subspace<F>& c = t.is_coordinate() ? t : s;
        const Subspace<F>& o = t.is_coordinate() ? s : t;
        std::vector<bool> inside(c.ambient(), false);
        for (auto p : c.pivots()) inside[p] = true;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < c.ambient(); ++i)
            if (!inside[i]) rest.push_back(i);
        if (rest.empty()) return o;
        Matrix<F> r(rest.size(), o.dim());
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = 0; j < o.dim(); ++j) r(i, j) = o.basis()(rest[i], j);
        return Subspace<F>::span(o.basis() * null_space(r));
    }
    Matrix<F> k = null_space(hstack(s.basis(), -t.basis()));
    return Subspace<F>::span(s.basis() * k.block(0, 0, s.dim(), k.cols()));
}

/// Complement of s inside t, completing greedily by the columns of t's basis
/// and then the standard basis. Requires s contained in t.
template <class F>
Subspace<F> complement_in(const Subspace<F>& s, const Subspace<F>& t) {
    s.check_ambient(t.ambient());
    if (!t.contains(s)) throw std::invalid_argument("complement_in: S is not contained in T");
    Matrix<F> acc = s.basis();
    Matrix<F> chosen(s.ambient(), 0);
    std::size_t r = s.dim();
    for (std::size_t j = 0; j < t.dim() && r < t.dim(); ++j) {
        Matrix<F> cand = hstack(acc, t.basis().col(j));
        if (rank(cand) > r) {
            acc = cand;
            chosen = hstack(chosen, t.basis().col(j));
            ++r;
        }
    }
    return Subspace<F>::with_basis(chosen);
}

/// Image of a subspace under a linear map.
template <class F>
Subspace<F> image(const Matrix<F>& map, const Subspace<F>& s) {
    if (map.cols() != s.ambient()) throw ShapeError("image: map " + map.shape_str());
    if (s.is_zero()) return Subspace<F>(map.rows());
    return Subspace<F>::span(map * s.basis());
}

/// Preimage {x : map x in s}.
template <class F>
Subspace<F> preimage(const Matrix<F>& map, const Subspace<F>& s) {
    if (map.rows() != s.ambient()) throw ShapeError("preimage: map " + map.shape_str());
    Matrix<F> k = null_space(hstack(map, -s.basis()));
    return Subspace<F>::span(k.block(0, 0, map.cols(), k.cols()));
}

template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
    return Subspace<F>::span(null_space(m));
}

template <class F>
Subspace<F> column_space(const Matrix<F>& m) {
    return Subspace<F>::span(m);
}

/// Symmetric bilinear form given by its Gram matrix.
template <class F>
class BilinearForm {
public:
    BilinearForm() = default;
    explicit BilinearForm(Matrix<F> gram) : gram_(std::move(gram)) {
        if (!gram_.is_square() || !(gram_ == gram_.transpose())) {
            throw std::invalid_argument("bilinear form Gram matrix must be symmetric");
        }
    }
    const Matrix<F>& gram() const { return gram_; }
    std::size_t dim() const { return gram_.rows(); }
    F operator()(const Matrix<F>& x, const Matrix<F>& y) const { return (x.transpose() * gram_ * y)(0, 0); }

private:
    Matrix<F> gram_;
};

template <class F>
Subspace<F> orthogonal_complement(const Subspace<F>& s, const BilinearForm<F>& q) {
    s.check_ambient(q.dim());
    if (s.is_zero()) return Subspace<F>::whole(q.dim());
    return kernel(Matrix<F>(s.basis().transpose() * q.gram()));
}

template <class F>
bool is_isotropic(const Subspace<F>& s, const BilinearForm<F>& q) {
    s.check_ambient(q.dim());
    return (s.basis().transpose() * q.gram() * s.basis()).is_zero();
}

template <class F>
bool is_nondegenerate_on(const Subspace<F>& s, const BilinearForm<F>& q) {
    s.check_ambient(q.dim());
    return rank(Matrix<F>(s.basis().transpose() * q.gram() * s.basis())) == s.dim();
}

/// Solution of m x = rhs: one particular solution plus the kernel of m.
template <class F>
struct LinearSolution {
    Matrix<F> particular;
    Subspace<F> kernel;
};

template <class F>
std::optional<LinearSolution<F>> solve(const Matrix<F>& m, const Matrix<F>& rhs) {
    auto x = solve_particular(m, rhs);
    if (!x) return std::nullopt;
    return LinearSolution<F>{*x, kernel(m)};
}

}  // namespace gqla
