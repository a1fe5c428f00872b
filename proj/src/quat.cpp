#include "gqla/quat.hpp"

namespace gqla {

namespace {

void check_sq_minus_one(const QMat& x, const char* name) {
    if (!x.is_square()) throw InvalidQuaternionic(std::string(name) + " must be square");
    if (!(x * x == -QMat::identity(x.rows()))) throw InvalidQuaternionic(std::string(name) + " does not square to -1");
}

/// Columns of m stacked into one column.
QMat vec(const QMat& m) {
    QMat v(m.rows() * m.cols(), 1);
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) v(c * m.rows() + r, 0) = m(r, c);
    return v;
}

QMat annihilator_rows(const QSub& s) {
    if (s.is_zero()) return QMat::identity(s.ambient());
    return null_space(QMat(s.basis().transpose())).transpose();
}

}  // namespace

HypercomplexTriple::HypercomplexTriple(QMat i, QMat j) : i_(std::move(i)), j_(std::move(j)) {
    check_sq_minus_one(i_, "I");
    check_sq_minus_one(j_, "J");
    if (i_.rows() != j_.rows()) throw InvalidQuaternionic("I and J have different sizes");
    if (i_.rows() % 4 != 0) throw InvalidQuaternionic("dimension must be a multiple of 4");
    k_ = i_ * j_;
    if (!(k_ == -(j_ * i_))) throw InvalidQuaternionic("I and J do not anticommute");
}

const QMat& HypercomplexTriple::gen(std::size_t a) const {
    switch (a) {
        case 0: return i_;
        case 1: return j_;
        case 2: return k_;
        default: throw std::out_of_range("generator index");
    }
}

HypercomplexTriple HypercomplexTriple::rotated(const QMat& r) const {
    if (!is_rotation(r)) throw InvalidQuaternionic("rotation must lie in SO(3)");
    auto combo = [&](std::size_t c) {
        QMat x(dim(), dim());
        for (std::size_t b = 0; b < 3; ++b) x += gen(b) * r(b, c);
        return x;
    };
    return HypercomplexTriple(combo(0), combo(1));
}

HypercomplexTriple HypercomplexTriple::quaternions() {
    QMat li{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    QMat lj{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    return HypercomplexTriple(li, lj);
}

HypercomplexTriple HypercomplexTriple::standard(std::size_t m) {
    HypercomplexTriple h = quaternions();
    HypercomplexTriple out;
    for (std::size_t k = 0; k < m; ++k) out = direct_sum(out, h);
    return out;
}

HypercomplexTriple HypercomplexTriple::dual() const {
    if (dim() == 0) return *this;
    return HypercomplexTriple(-i_.transpose(), -j_.transpose());
}

HypercomplexTriple direct_sum(const HypercomplexTriple& a, const HypercomplexTriple& b) {
    if (a.dim() == 0) return b;
    if (b.dim() == 0) return a;
    return HypercomplexTriple(block_diag(a.i_, b.i_), block_diag(a.j_, b.j_));
}

HypercomplexTriple HypercomplexTriple::conjugated(const QMat& p) const {
    QMat pinv = inverse_or_throw(p, "transport isomorphism");
    return HypercomplexTriple(p * i_ * pinv, p * j_ * pinv);
}

bool on_unit_sphere(const SpherePoint& p) { return p.a * p.a + p.b * p.b + p.c * p.c == 1; }

QMat admissible(const HypercomplexTriple& t, const SpherePoint& p) {
    if (!on_unit_sphere(p)) throw InvalidQuaternionic("point is not on the unit sphere");
    return t.I() * p.a + t.J() * p.b + t.K() * p.c;
}

bool is_rotation(const QMat& r) {
    return r.rows() == 3 && r.cols() == 3 && r.transpose() * r == QMat::identity(3) && determinant(r) == 1;
}

std::optional<QMat> quaternionic_map_check(const QMat& t, const HypercomplexTriple& source,
                                           const HypercomplexTriple& target) {
    if (t.rows() != target.dim() || t.cols() != source.dim()) {
        throw ShapeError("quaternionic_map_check: map " + t.shape_str());
    }
    if (t.is_zero()) return QMat::identity(3);
    QMat basis = hstack(hstack(vec(target.I() * t), vec(target.J() * t)), vec(target.K() * t));
    if (rank(basis) < 3) return std::nullopt;
    QMat r(3, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        auto c = solve_particular(basis, vec(t * source.gen(a)));
        if (!c) return std::nullopt;
        for (std::size_t b = 0; b < 3; ++b) r(b, a) = (*c)(b, 0);
    }
    if (!is_rotation(r)) return std::nullopt;
    return r;
}

bool same_structure(const HypercomplexTriple& a, const HypercomplexTriple& b) {
    return a.dim() == b.dim() && quaternionic_map_check(QMat::identity(a.dim()), a, b).has_value();
}

PairUE make_pair_checked(HypercomplexTriple e, QSub u) {
    u.check_ambient(e.dim());
    return {std::move(e), std::move(u)};
}

PairUE pair_h_h() { return {HypercomplexTriple::quaternions(), QSub::whole(4)}; }
PairUE pair_imh_h() { return {HypercomplexTriple::quaternions(), QSub::coordinate(4, 1, 3)}; }
PairUE pair_r_h() { return {HypercomplexTriple::quaternions(), QSub::coordinate(4, 0, 1)}; }
PairUE pair_zero_h() { return {HypercomplexTriple::quaternions(), QSub(4)}; }

PairUE dual_pair(const PairUE& p) {
    QSub ann = p.u.is_zero() ? QSub::whole(p.dim()) : kernel(QMat(p.u.basis().transpose()));
    return {p.e.dual(), ann};
}

PairUE direct_sum_pairs(const PairUE& a, const PairUE& b) {
    const std::size_t n = a.dim() + b.dim();
    QMat g = block_diag(a.u.basis(), b.u.basis());
    return {direct_sum(a.e, b.e), g.cols() == 0 ? QSub(n) : QSub::span(g)};
}

std::vector<QMat> pair_morphisms(const PairUE& p1, const PairUE& p2, const std::optional<QMat>& rotation) {
    const std::size_t n1 = p1.dim(), n2 = p2.dim();
    if (n1 == 0 || n2 == 0) return {};
    if (rotation && !is_rotation(*rotation)) throw InvalidQuaternionic("rotation must lie in SO(3)");
    const std::size_t nunk = n1 * n2;
    // Unknown t stored column-major: t(r, c) at index c * n2 + r.
    auto idx = [n2](std::size_t r, std::size_t c) { return c * n2 + r; };
    std::vector<QMat> blocks;

    for (std::size_t a = 0; a < 2; ++a) {
        const QMat& x = p1.e.gen(a);
        QMat y(n2, n2);
        if (rotation) {
            for (std::size_t b = 0; b < 3; ++b) y += p2.e.gen(b) * (*rotation)(b, a);
        } else {
            y = p2.e.gen(a);
        }
        // (t x - y t)(r, c) = sum_l t(r, l) x(l, c) - sum_l y(r, l) t(l, c)
        QMat eq(n2 * n1, nunk);
        for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t c = 0; c < n1; ++c) {
                std::size_t row = idx(r, c);
                for (std::size_t l = 0; l < n1; ++l)
                    if (sgn(x(l, c)) != 0) eq(row, idx(r, l)) += x(l, c);
                for (std::size_t l = 0; l < n2; ++l)
                    if (sgn(y(r, l)) != 0) eq(row, idx(l, c)) -= y(r, l);
            }
        blocks.push_back(std::move(eq));
    }
    if (!p1.u.is_zero() && p2.u.dim() < n2) {
        // N t u = 0 for each basis vector u of U1 and annihilator rows N of U2.
        QMat n = annihilator_rows(p2.u);
        const QMat& u = p1.u.basis();
        QMat eq(n.rows() * u.cols(), nunk);
        for (std::size_t s = 0; s < n.rows(); ++s)
            for (std::size_t k = 0; k < u.cols(); ++k) {
                std::size_t row = s * u.cols() + k;
                for (std::size_t r = 0; r < n2; ++r)
                    for (std::size_t c = 0; c < n1; ++c) {
                        if (sgn(n(s, r)) == 0 || sgn(u(c, k)) == 0) continue;
                        eq(row, idx(r, c)) += n(s, r) * u(c, k);
                    }
            }
        blocks.push_back(std::move(eq));
    }
    QMat sys = blocks[0];
    for (std::size_t b = 1; b < blocks.size(); ++b) sys = vstack(sys, blocks[b]);
    QMat ker = null_space(sys);
    std::vector<QMat> out;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        QMat t(n2, n1);
        for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t c = 0; c < n1; ++c) t(r, c) = ker(idx(r, c), k);
        out.push_back(std::move(t));
    }
    return out;
}

QMat rotation_from_quaternion(const Rational& w, const Rational& x, const Rational& y, const Rational& z) {
    Rational s = w * w + x * x + y * y + z * z;
    if (s == 0) throw InvalidQuaternionic("zero quaternion");
    QMat r{{w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) /= s;
    return r;
}

}  // namespace gqla
