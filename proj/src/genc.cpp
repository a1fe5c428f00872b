#include "gqla/genc.hpp"

#include <algorithm>
#include <functional>

namespace gqla {

namespace {

QMat skew_check(QMat b) {
    if (!b.is_square()) throw InvalidStructure("two-form must be square, got " + b.shape_str());
    if (!(b.transpose() == -b)) throw InvalidStructure("two-form is not skew-symmetric");
    return b;
}

/// Rows spanning the annihilator of a subspace: N x = 0 iff x in s.
template <class F>
Matrix<F> annihilator_rows(const Subspace<F>& s) {
    if (s.is_zero()) return Matrix<F>::identity(s.ambient());
    return null_space(Matrix<F>(s.basis().transpose())).transpose();
}

}  // namespace

BilinearForm<Rational> canonical_pairing(std::size_t n) {
    QMat g(2 * n, 2 * n);
    Rational half = make_rational(1, 2);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, n + i) = half;
        g(n + i, i) = half;
    }
    return BilinearForm<Rational>(std::move(g));
}

QSub dual_part(std::size_t n) { return QSub::coordinate(2 * n, n, n); }
QSub primal_part(std::size_t n) { return QSub::coordinate(2 * n, 0, n); }

BField::BField(QMat b) : b_(skew_check(std::move(b))) {}

QMat bfield_matrix(const BField& b) {
    const std::size_t n = b.dim();
    QMat e = QMat::identity(2 * n);
    e.set_block(n, 0, b.matrix());
    return e;
}

QMat gl_matrix(const QMat& a) {
    QMat inv = inverse_or_throw(a, "basis change A");
    return block_diag(a, inv.transpose());
}

std::optional<std::string> gc_defect(const QMat& m) {
    if (!m.is_square() || m.rows() % 2 != 0) return "matrix must be 2n x 2n, got " + m.shape_str();
    const std::size_t n = m.rows() / 2;
    if (!(m * m == -QMat::identity(2 * n))) return std::string("does not square to -1");
    const QMat q = canonical_pairing(n).gram();
    if (!(m.transpose() * q * m == q)) return std::string("not orthogonal for the canonical pairing");
    return std::nullopt;
}

GCStructure::GCStructure(QMat m) : m_(std::move(m)) {
    if (auto d = gc_defect(m_)) throw InvalidStructure("generalized complex structure " + *d);
}

GCStructure GCStructure::trusted(QMat m) {
    GCStructure s;
    s.m_ = std::move(m);
    return s;
}

QMat conjugate(const QMat& m, const QMat& psi, const QMat& psi_inv) { return psi * m * psi_inv; }
QMat conjugate(const QMat& m, const QMat& psi) { return conjugate(m, psi, inverse_or_throw(psi, "conjugator")); }

GCStructure bfield_transform(const GCStructure& s, const BField& b) {
    if (b.dim() != s.n()) throw ShapeError("bfield_transform: dimension mismatch");
    return GCStructure::trusted(conjugate(s.matrix(), bfield_matrix(b), bfield_matrix(-b)));
}

GCStructure gl_transform(const GCStructure& s, const QMat& a) {
    if (a.rows() != s.n()) throw ShapeError("gl_transform: dimension mismatch");
    QMat c = gl_matrix(a);
    QMat ainv = inverse_or_throw(a);
    return GCStructure::trusted(conjugate(s.matrix(), c, block_diag(ainv, a.transpose())));
}

QSub graph_of(const BField& b) {
    const std::size_t n = b.dim();
    return QSub::span(vstack(QMat::identity(n), b.matrix()));
}

BField bfield_from_isotropic_complement(const QSub& w, std::size_t n) {
    w.check_ambient(2 * n);
    if (w.dim() != n) throw InvalidStructure("not a complement of V*: dimension " + std::to_string(w.dim()));
    if (!intersect(w, dual_part(n)).is_zero()) throw InvalidStructure("subspace meets V*");
    if (!is_isotropic(w, canonical_pairing(n))) throw InvalidStructure("subspace is not isotropic");
    QMat top = w.basis().block(0, 0, n, n);
    QMat bottom = w.basis().block(n, 0, n, n);
    return BField(bottom * inverse_or_throw(top));
}

GCStructure from_complex(const QMat& j) {
    if (!j.is_square()) throw InvalidStructure("complex structure must be square");
    if (!(j * j == -QMat::identity(j.rows()))) throw InvalidStructure("J does not square to -1");
    return GCStructure::trusted(block_diag(j, QMat(-j.transpose())));
}

GCStructure from_symplectic(const QMat& w) {
    QMat ws = skew_check(w);
    auto inv = inverse(ws);
    if (!inv) throw InvalidStructure("symplectic form is degenerate");
    const std::size_t n = w.rows();
    QMat m(2 * n, 2 * n);
    m.set_block(0, n, *inv);
    m.set_block(n, 0, -ws);
    return GCStructure::trusted(std::move(m));
}

QMat product_permutation(std::size_t n1, std::size_t n2) {
    // Source order (V1, V1*, V2, V2*), target order (V1, V2, V1*, V2*).
    const std::size_t n = n1 + n2;
    QMat p(2 * n, 2 * n);
    for (std::size_t i = 0; i < n1; ++i) {
        p(i, i) = 1;
        p(n + i, n1 + i) = 1;
    }
    for (std::size_t i = 0; i < n2; ++i) {
        p(n1 + i, 2 * n1 + i) = 1;
        p(n + n1 + i, 2 * n1 + n2 + i) = 1;
    }
    return p;
}

QMat product_matrix(const QMat& m1, const QMat& m2) {
    const std::size_t n1 = m1.rows() / 2, n2 = m2.rows() / 2;
    QMat p = product_permutation(n1, n2);
    return p * block_diag(m1, m2) * p.transpose();
}

GCStructure product_gc(const GCStructure& s1, const GCStructure& s2) {
    return GCStructure::trusted(product_matrix(s1.matrix(), s2.matrix()));
}

GCType type_of(const GCStructure& s) {
    QSub vs = dual_part(s.n());
    return {intersect(vs, image(s.matrix(), vs)).dim() / 2};
}

std::optional<QSub> invariant_isotropic_complement(const QSub& w, const QSub& d, const std::vector<QMat>& ops,
                                                   const BilinearForm<Rational>& q,
                                                   const std::optional<ComplementConstraint>& constraint) {
    if (!w.contains(d)) throw std::invalid_argument("invariant complement: D is not contained in W");
    QMat c;
    std::size_t k0 = 0;
    if (constraint) {
        if (!intersect(constraint->seed_dir, d).is_zero() || !w.contains(constraint->seed_dir)) {
            throw std::invalid_argument("invariant complement: seed directions must lie in W and avoid D");
        }
        k0 = constraint->seed_dir.dim();
        QSub rest = complement_in(sum(d, constraint->seed_dir), w);
        c = hstack(constraint->seed_dir.basis(), rest.basis());
    } else {
        c = complement_in(d, w).basis();
    }
    const QMat& db = d.basis();
    const std::size_t k = c.cols(), kd = db.cols();
    if (k == 0) return QSub(w.ambient());
    const std::size_t nunk = kd * k;
    auto idx = [k](std::size_t a, std::size_t j) { return a * k + j; };

    std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
    std::vector<Rational> rhs;
    auto push = [&](std::vector<std::pair<std::size_t, Rational>> row, Rational r) {
        rows.push_back(std::move(row));
        rhs.push_back(std::move(r));
    };

    const QMat& g = q.gram();
    QMat ctqc = c.transpose() * g * c;
    QMat m = db.transpose() * g * c;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            std::vector<std::pair<std::size_t, Rational>> row;
            for (std::size_t a = 0; a < kd; ++a) {
                if (sgn(m(a, i)) != 0) row.emplace_back(idx(a, j), m(a, i));
                if (sgn(m(a, j)) != 0) row.emplace_back(idx(a, i), m(a, j));
            }
            push(std::move(row), -ctqc(i, j));
        }

    QMat wb = hstack(c, db);
    for (const auto& op : ops) {
        auto x = solve_particular(wb, QMat(op * c));
        auto y = solve_particular(wb, QMat(op * db));
        if (!x || !y) throw std::invalid_argument("invariant complement: operator does not preserve W");
        QMat p = x->block(0, 0, k, k), r = x->block(k, 0, kd, k);
        if (!y->block(0, 0, k, kd).is_zero()) {
            throw std::invalid_argument("invariant complement: operator does not preserve D");
        }
        QMat s = y->block(k, 0, kd, kd);
        // R + S phi - phi P = 0
        for (std::size_t a = 0; a < kd; ++a)
            for (std::size_t j = 0; j < k; ++j) {
                std::vector<std::pair<std::size_t, Rational>> row;
                for (std::size_t b = 0; b < kd; ++b)
                    if (sgn(s(a, b)) != 0) row.emplace_back(idx(b, j), s(a, b));
                for (std::size_t l = 0; l < k; ++l)
                    if (sgn(p(l, j)) != 0) row.emplace_back(idx(a, l), -p(l, j));
                push(std::move(row), -r(a, j));
            }
    }

    if (constraint && k0 > 0) {
        QMat nd = annihilator_rows(constraint->target) * db;
        for (std::size_t t = 0; t < nd.rows(); ++t)
            for (std::size_t j = 0; j < k0; ++j) {
                std::vector<std::pair<std::size_t, Rational>> row;
                for (std::size_t a = 0; a < kd; ++a)
                    if (sgn(nd(t, a)) != 0) row.emplace_back(idx(a, j), nd(t, a));
                push(std::move(row), Rational(0));
            }
    }

    QMat sys(rows.size(), nunk), b(rows.size(), 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [col, v] : rows[r]) sys(r, col) += v;
        b(r, 0) = rhs[r];
    }
    auto phi_vec = solve_particular(sys, b);
    if (!phi_vec) return std::nullopt;
    QMat phi(kd, k);
    for (std::size_t a = 0; a < kd; ++a)
        for (std::size_t j = 0; j < k; ++j) phi(a, j) = (*phi_vec)(idx(a, j), 0);
    return QSub::span(c + db * phi);
}

QSub find_invariant_isotropic_complement(const GCStructure& s, const QSub& w, const QSub& d) {
    const auto q = canonical_pairing(s.n());
    const QMat& j = s.matrix();
    if (d.is_zero() && !w.is_zero()) throw std::invalid_argument("precondition: D is zero in a nonzero block");
    if (!w.contains(d)) throw std::invalid_argument("precondition: D not contained in W");
    if (2 * d.dim() != w.dim()) throw std::invalid_argument("precondition: D is not maximal isotropic in W");
    if (!is_isotropic(d, q)) throw std::invalid_argument("precondition: D is not isotropic");
    if (!is_nondegenerate_on(w, q)) throw std::invalid_argument("precondition: W is degenerate");
    if (!(image(j, w) == w) || !(image(j, d) == d)) {
        throw std::invalid_argument("precondition: W and D must be J-invariant");
    }
    auto l = invariant_isotropic_complement(w, d, {j}, q);
    if (!l) throw std::logic_error("no invariant isotropic complement found");
    return *l;
}

GCSplitting split_gc(const GCStructure& s) {
    const std::size_t n = s.n();
    const auto q = canonical_pairing(n);
    const QMat& j = s.matrix();
    QSub vs = dual_part(n);
    QSub d = intersect(vs, image(j, vs));
    QSub u = complement_in(d, vs);
    QSub ju = image(j, u);
    QSub w2 = orthogonal_complement(sum(u, ju), q);

    QSub l1 = d.is_zero() ? QSub(2 * n) : find_invariant_isotropic_complement(s, w2, d);
    QSub l = sum(l1, ju);
    BField b = bfield_from_isotropic_complement(l, n);
    QMat e_minus = bfield_matrix(-b);

    // Basis of V adapted to the splitting: first the image of L1, then of JU.
    QMat v1 = (e_minus * l1.basis()).block(0, 0, n, l1.dim());
    QMat v2 = (e_minus * ju.basis()).block(0, 0, n, ju.dim());
    QMat a = hstack(v1, v2);
    QMat ainv = inverse_or_throw(a, "adapted basis");
    QMat p = conjugate(conjugate(j, e_minus, bfield_matrix(b)), block_diag(ainv, a.transpose()), gl_matrix(a));

    const std::size_t k = l1.dim();
    GCSplitting out;
    out.b = b;
    out.a = a;
    out.complex_part = p.block(0, 0, k, k);
    out.symplectic_part = -p.block(n + k, k, n - k, n - k);
    return out;
}

bool verify_splitting(const GCStructure& s, const GCSplitting& sp) {
    const std::size_t n = s.n();
    if (sp.a.rows() != n || sp.b.dim() != n) return false;
    const std::size_t k = sp.complex_part.rows();
    if (sp.symplectic_part.rows() != n - k) return false;
    GCStructure prod;
    try {
        prod = product_gc(from_complex(sp.complex_part), from_symplectic(sp.symplectic_part));
    } catch (const InvalidStructure&) {
        return false;
    }
    auto ainv = inverse(sp.a);
    if (!ainv) return false;
    QMat psi = bfield_matrix(sp.b) * gl_matrix(sp.a);
    QMat psi_inv = block_diag(*ainv, sp.a.transpose()) * bfield_matrix(-sp.b);
    return conjugate(prod.matrix(), psi, psi_inv) == s.matrix();
}

// ---------------------------------------------------------------------------
// Polynomial sections and the Courant bracket.

MPoly MPoly::constant(std::size_t nvars, const Gaussian& c) {
    return monomial(Exponent(nvars, 0), c);
}

MPoly MPoly::monomial(const Exponent& e, const Gaussian& c) {
    MPoly p(e.size());
    p.add_term(e, c);
    return p;
}

std::vector<MPoly::Exponent> MPoly::monomials_up_to(std::size_t nvars, int d) {
    std::vector<Exponent> out;
    Exponent e(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t var, int left) {
        if (var == nvars) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[var] = k;
            rec(var + 1, left - k);
        }
        e[var] = 0;
    };
    rec(0, d);
    return out;
}

int MPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

void MPoly::add_term(const Exponent& e, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::partial(std::size_t var) const {
    MPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] -= 1;
        out.add_term(f, c * Gaussian(static_cast<long>(e[var])));
    }
    return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (nvars_ == 0) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (nvars_ == 0) nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly& MPoly::operator*=(const Gaussian& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out(std::max(a.nvars_, b.nvars_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exponent e = ea;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
            out.add_term(e, ca * cb);
        }
    return out;
}

PolySection PolySection::zero(std::size_t n) {
    return {std::vector<MPoly>(n, MPoly(n)), std::vector<MPoly>(n, MPoly(n))};
}

PolySection PolySection::monomial_times(const MPoly::Exponent& e, const GMat& c) {
    const std::size_t n = e.size();
    if (c.rows() != 2 * n || c.cols() != 1) throw ShapeError("section vector must be 2n x 1");
    PolySection s = zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.vec[i] = MPoly::monomial(e, c(i, 0));
        s.form[i] = MPoly::monomial(e, c(n + i, 0));
    }
    return s;
}

int PolySection::degree() const {
    int d = -1;
    for (const auto& p : vec) d = std::max(d, p.degree());
    for (const auto& p : form) d = std::max(d, p.degree());
    return d;
}

PolySection& PolySection::operator+=(const PolySection& o) {
    if (o.dim() != dim()) throw ShapeError("section dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) {
        vec[i] += o.vec[i];
        form[i] += o.form[i];
    }
    return *this;
}

PolySection PolySection::operator*(const Gaussian& s) const {
    PolySection r = *this;
    for (auto& p : r.vec) p *= s;
    for (auto& p : r.form) p *= s;
    return r;
}

PolySection operator-(const PolySection& a, const PolySection& b) {
    PolySection r = a;
    r += b * Gaussian(-1);
    return r;
}

namespace {

/// Lie derivative of a one-form along a vector field: (L_X b)_j = X^i d_i b_j + b_i d_j X^i.
std::vector<MPoly> lie_derivative(const std::vector<MPoly>& x, const std::vector<MPoly>& beta) {
    const std::size_t n = x.size();
    std::vector<MPoly> out(n, MPoly(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out[j] += x[i] * beta[j].partial(i);
            out[j] += beta[i] * x[i].partial(j);
        }
    return out;
}

MPoly contraction(const std::vector<MPoly>& x, const std::vector<MPoly>& beta) {
    MPoly out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out += x[i] * beta[i];
    return out;
}

}  // namespace

PolySection courant_bracket(const PolySection& s, const PolySection& t) {
    if (s.dim() != t.dim()) throw ShapeError("courant_bracket: dimension mismatch");
    const std::size_t n = s.dim();
    PolySection out = PolySection::zero(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out.vec[j] += s.vec[i] * t.vec[j].partial(i);
            out.vec[j] -= t.vec[i] * s.vec[j].partial(i);
        }
    auto lx_beta = lie_derivative(s.vec, t.form);
    auto ly_alpha = lie_derivative(t.vec, s.form);
    MPoly f = contraction(s.vec, t.form) - contraction(t.vec, s.form);
    const Gaussian half(make_rational(1, 2));
    for (std::size_t j = 0; j < n; ++j) {
        out.form[j] = lx_beta[j] - ly_alpha[j] - f.partial(j) * half;
    }
    return out;
}

bool subbundle_closed(const GSub& l, int degree_bound) {
    if (l.ambient() % 2 != 0) throw ShapeError("subbundle ambient must be even");
    const std::size_t n = l.ambient() / 2;
    const GMat ann = annihilator_rows(l);
    std::vector<PolySection> sections;
    for (const auto& e : MPoly::monomials_up_to(n, degree_bound))
        for (std::size_t c = 0; c < l.dim(); ++c) sections.push_back(PolySection::monomial_times(e, l.basis().col(c)));

    for (std::size_t p = 0; p < sections.size(); ++p)
        for (std::size_t q = p + 1; q < sections.size(); ++q) {
            PolySection br = courant_bracket(sections[p], sections[q]);
            // Collect coefficient vectors per monomial and test pointwise membership.
            std::map<MPoly::Exponent, GMat> coeffs;
            auto collect = [&](const MPoly& poly, std::size_t row) {
                for (const auto& [e, c] : poly.terms()) {
                    auto it = coeffs.try_emplace(e, GMat(2 * n, 1)).first;
                    it->second(row, 0) = c;
                }
            };
            for (std::size_t i = 0; i < n; ++i) {
                collect(br.vec[i], i);
                collect(br.form[i], n + i);
            }
            for (const auto& [e, v] : coeffs)
                if (!(ann * v).is_zero()) return false;
        }
    return true;
}

GSub plus_i_eigenbundle(const GCStructure& s) {
    GMat m = to_gaussian(s.matrix());
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= Gaussian::i();
    return kernel(m);
}

bool eigenbundle_closed(const GCStructure& s, int degree_bound) {
    return subbundle_closed(plus_i_eigenbundle(s), degree_bound);
}

}  // namespace gqla
