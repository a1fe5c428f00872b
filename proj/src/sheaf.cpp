#include "gqla/sheaf.hpp"

#include <algorithm>
#include <map>

namespace gqla {

namespace {

template <class F>
Matrix<F> annihilator_rows(const Subspace<F>& s) {
    if (s.is_zero()) return Matrix<F>::identity(s.ambient());
    return null_space(Matrix<F>(s.basis().transpose())).transpose();
}

bool lex_less_gaussian(const Gaussian& a, const Gaussian& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
}

/// Pairwise coprime square-free polynomials whose products give every input.
std::vector<Poly> coprime_base(std::vector<Poly> polys) {
    std::vector<Poly> base;
    for (auto& p : polys)
        if (!p.is_constant()) base.push_back(p.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < base.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                Poly g = gcd_poly(base[i], base[j]);
                if (g.is_constant()) continue;
                Poly a = base[i].divmod(g).first, b = base[j].divmod(g).first;
                base.erase(base.begin() + static_cast<long>(j));
                base.erase(base.begin() + static_cast<long>(i));
                for (Poly q : {g, a, b})
                    if (!q.is_constant()) base.push_back(q.monic());
                changed = true;
            }
    }
    return base;
}

int multiplicity(Poly p, const Poly& f) {
    int k = 0;
    while (!p.is_zero()) {
        auto [q, r] = p.divmod(f);
        if (!r.is_zero()) break;
        p = q;
        ++k;
    }
    return k;
}

/// Real and imaginary parts of complex vectors, as real columns.
QMat realify(const GMat& v) { return hstack(real_part(v), imag_part(v)); }

}  // namespace

std::string to_string(const ChartPoint& p) { return p.infinite ? "inf" : to_string(p.value); }

ChartPoint parse_chart_point(const std::string& s) {
    if (s == "inf") return ChartPoint::infinity();
    return ChartPoint::at(parse_gaussian(s));
}

bool chart_less(const ChartPoint& a, const ChartPoint& b) {
    if (a.infinite != b.infinite) return b.infinite;
    if (a.infinite) return false;
    return lex_less_gaussian(a.value, b.value);
}

ChartPoint antipode(const ChartPoint& p) {
    if (p.infinite) return ChartPoint::at(Gaussian(0));
    if (p.value.is_zero()) return ChartPoint::infinity();
    return ChartPoint::at(-(p.value.conj().inverse()));
}

std::vector<int> column_degrees(const PolyMatrix& m) {
    std::vector<int> d(m.cols(), Poly::kZeroDegree);
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) d[c] = std::max(d[c], m(r, c).degree());
    return d;
}

PolyMatrix column_reduce(PolyMatrix m) {
    const std::size_t k = m.cols();
    while (true) {
        std::vector<int> deg = column_degrees(m);
        GMat lead(m.rows(), k);
        for (std::size_t c = 0; c < k; ++c) {
            if (deg[c] < 0) throw std::invalid_argument("column_reduce: zero column");
            for (std::size_t r = 0; r < m.rows(); ++r) lead(r, c) = m(r, c).coeff(deg[c]);
        }
        GMat null = null_space(lead);
        if (null.cols() == 0) return m;
        std::size_t pivot = k;
        for (std::size_t c = 0; c < k; ++c) {
            if (null(c, 0).is_zero()) continue;
            if (pivot == k || deg[c] > deg[pivot]) pivot = c;
        }
        Gaussian scale = null(pivot, 0).inverse();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Poly acc;
            for (std::size_t c = 0; c < k; ++c) {
                if (null(c, 0).is_zero()) continue;
                acc += Poly::monomial(deg[pivot] - deg[c], null(c, 0) * scale) * m(r, c);
            }
            m(r, pivot) = acc;
        }
    }
}

int KroneckerInvariants::regular_degree() const {
    int t = 0;
    for (const auto& f : finite)
        for (int d : f.degrees) t += d;
    for (const auto& s : symbolic)
        for (int k : s.powers) t += k * s.poly.degree();
    for (int d : infinite) t += d;
    return t;
}

KroneckerInvariants kronecker_smith(const Pencil& p) {
    const std::size_t m = p.rows(), r = p.cols();
    KroneckerInvariants out;
    if (m == 0 || r == 0) {
        out.column_indices.assign(r, 0);
        out.row_indices.assign(m, 0);
        out.kernel_basis = PolyMatrix::identity(r);
        return out;
    }
    PolyMatrix pm = p.matrix();
    SmithForm s = smith_form(pm, SmithTransforms::kTrack);
    const std::size_t rank = s.invariant_factors.size();
    out.normal_rank = rank;

    auto sorted_basis = [](PolyMatrix basis, std::vector<int>& indices) {
        basis = column_reduce(std::move(basis));
        std::vector<int> deg = column_degrees(basis);
        std::vector<std::size_t> order(deg.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
        PolyMatrix sorted(basis.rows(), basis.cols());
        for (std::size_t j = 0; j < order.size(); ++j) {
            for (std::size_t i = 0; i < basis.rows(); ++i) sorted(i, j) = basis(i, order[j]);
            indices.push_back(deg[order[j]]);
        }
        return sorted;
    };
    if (rank < r) {
        out.kernel_basis = sorted_basis(s.right.cols_range(rank, r - rank), out.column_indices);
    } else {
        out.kernel_basis = PolyMatrix(r, 0);
    }
    if (rank < m) sorted_basis(s.left.rows_range(rank, m - rank).transpose(), out.row_indices);

    // Finite elementary divisors.
    std::map<std::string, std::pair<Gaussian, std::vector<int>>> points;
    std::vector<Poly> remainders;
    for (const auto& d : s.invariant_factors) {
        if (d.is_constant()) continue;
        RootExtraction e = linear_factor_roots(d);
        for (const auto& rm : e.roots) {
            auto& slot = points[to_string(rm.root)];
            slot.first = rm.root;
            slot.second.push_back(rm.multiplicity);
        }
        remainders.push_back(e.remainder);
    }
    for (auto& [key, v] : points) {
        std::sort(v.second.begin(), v.second.end());
        out.finite.push_back({v.first, v.second});
    }
    std::sort(out.finite.begin(), out.finite.end(),
              [](const PointDivisors& a, const PointDivisors& b) { return lex_less_gaussian(a.root, b.root); });

    std::vector<Poly> parts;
    for (const auto& rem : remainders)
        for (const auto& [k, f] : squarefree_decomposition(rem)) parts.push_back(f);
    for (const auto& f : coprime_base(parts)) {
        SymbolicDivisors sd{f, {}};
        for (const auto& rem : remainders) {
            int k = multiplicity(rem, f);
            if (k > 0) sd.powers.push_back(k);
        }
        std::sort(sd.powers.begin(), sd.powers.end());
        out.symbolic.push_back(std::move(sd));
    }
    std::sort(out.symbolic.begin(), out.symbolic.end(),
              [](const SymbolicDivisors& a, const SymbolicDivisors& b) { return to_string(a.poly) < to_string(b.poly); });

    // Infinite elementary divisors: those of B + mu A at mu = 0.
    SmithForm rev = smith_form(PolyMatrix::pencil(p.b, p.a), SmithTransforms::kNone);
    for (const auto& d : rev.invariant_factors) {
        int k = multiplicity(d, Poly::x());
        if (k > 0) out.infinite.push_back(k);
    }
    std::sort(out.infinite.begin(), out.infinite.end());
    return out;
}

namespace {

/// Striped Toeplitz matrix whose kernel is the space of degree <= d kernel vectors.
GMat toeplitz(const GMat& a, const GMat& b, std::size_t d) {
    const std::size_t m = a.rows(), r = a.cols();
    GMat t(m * (d + 2), r * (d + 1));
    for (std::size_t j = 0; j <= d; ++j) {
        t.set_block(j * m, j * r, a);
        t.set_block((j + 1) * m, j * r, b);
    }
    return t;
}

/// Block lower-triangular Toeplitz matrix of the pencil expanded at a point: p0 on the diagonal, p1 below.
GMat local_toeplitz(const GMat& p0, const GMat& p1, std::size_t k) {
    const std::size_t m = p0.rows(), r = p0.cols();
    GMat t(m * k, r * k);
    for (std::size_t j = 0; j < k; ++j) {
        t.set_block(j * m, j * r, p0);
        if (j + 1 < k) t.set_block((j + 1) * m, j * r, p1);
    }
    return t;
}

std::size_t kernel_dim(const GMat& m) { return m.cols() - rank(m); }

/// Upper bound on the number of column minimal indices: r minus the rank at a few points.
std::size_t column_count_bound(const GMat& a, const GMat& b) {
    const Gaussian pts[3] = {Gaussian(Rational(17, 13), Rational(5, 19)), Gaussian(Rational(-23, 29), Rational(31, 7)),
                             Gaussian(Rational(3, 41), Rational(-11, 37))};
    std::size_t best = 0;
    for (const auto& z : pts) best = std::max(best, rank(GMat(a + b * z)));
    return a.cols() - best;
}

struct MinimalIndices {
    std::vector<int> indices;
    PolyMatrix basis;
};

/// Column minimal indices from the kernels of the Toeplitz matrices, with a degree-by-degree
/// minimal basis: at each degree the new vectors complete the shifts of the lower-degree ones.
MinimalIndices minimal_indices(const GMat& a, const GMat& b, bool want_basis) {
    const std::size_t m = a.rows(), r = a.cols();
    MinimalIndices out;
    std::vector<GMat> found;  // coefficient stacks (x_0; ...; x_e)
    const std::size_t bound = column_count_bound(a, b);
    std::size_t prev_kernel = 0, prev_count = 0;
    int sum = 0;
    for (std::size_t d = 0; prev_count < bound; ++d) {
        if (sum + static_cast<int>(d) > static_cast<int>(std::min(m, r)) && d > 0) break;
        GMat t = toeplitz(a, b, d);
        const std::size_t nk = kernel_dim(t);
        const std::size_t count = nk - prev_kernel;  // #{eps <= d}
        const std::size_t fresh = count - prev_count;
        if (fresh > 0) {
            if (want_basis) {
                GMat kern = null_space(t);
                GMat span(r * (d + 1), 0);
                for (const auto& w : found) {
                    const std::size_t e = w.rows() / r - 1;
                    for (std::size_t j = 0; j + e <= d; ++j) {
                        GMat shifted(r * (d + 1), 1);
                        shifted.set_block(j * r, 0, w);
                        span = hstack(span, shifted);
                    }
                }
                std::size_t have = rank(span), added = 0;
                for (std::size_t c = 0; c < nk && added < fresh; ++c) {
                    GMat cand = hstack(span, kern.col(c));
                    if (rank(cand) > have) {
                        span = std::move(cand);
                        ++have;
                        ++added;
                        found.push_back(kern.col(c));
                    }
                }
                if (added != fresh) throw std::logic_error("minimal_indices: kernel does not extend the shifted basis");
            }
            for (std::size_t k = 0; k < fresh; ++k) {
                out.indices.push_back(static_cast<int>(d));
                sum += static_cast<int>(d);
            }
        }
        prev_kernel = nk;
        prev_count = count;
    }
    if (want_basis) {
        out.basis = PolyMatrix(r, found.size());
        for (std::size_t c = 0; c < found.size(); ++c) {
            const std::size_t e = found[c].rows() / r;
            for (std::size_t i = 0; i < r; ++i) {
                std::vector<Gaussian> coeffs(e);
                for (std::size_t k = 0; k < e; ++k) coeffs[k] = found[c](k * r + i, 0);
                out.basis(i, c) = Poly(std::move(coeffs));
            }
        }
    }
    return out;
}

/// Sizes of the Jordan blocks at a point, from the local kernel dimensions
/// dim ker T_k = k #eps + sum_j min(k, s_j).
std::vector<int> local_sizes(const GMat& p0, const GMat& p1, std::size_t n_eps) {
    std::vector<std::size_t> w;  // w[k-1] = #{s >= k}
    std::size_t prev = 0;
    for (std::size_t k = 1;; ++k) {
        std::size_t dk = kernel_dim(local_toeplitz(p0, p1, k));
        std::size_t wk = dk - prev - n_eps;
        prev = dk;
        if (wk == 0) break;
        w.push_back(wk);
    }
    std::vector<int> sizes;
    for (std::size_t k = 0; k < w.size(); ++k) {
        std::size_t next = k + 1 < w.size() ? w[k + 1] : 0;
        for (std::size_t c = 0; c < w[k] - next; ++c) sizes.push_back(static_cast<int>(k + 1));
    }
    return sizes;
}

Poly interpolate(const std::vector<Gaussian>& xs, const std::vector<Gaussian>& ys) {
    std::vector<Gaussian> dd = ys;
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    Poly p(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) p = p * Poly::linear(xs[i]) + Poly(dd[i]);
    return p;
}

/// det(m0 + lambda m1) by evaluation and interpolation.
Poly pencil_determinant(const GMat& m0, const GMat& m1) {
    const std::size_t n = m0.rows();
    std::vector<Gaussian> xs, ys;
    for (std::size_t k = 0; k <= n; ++k) {
        Gaussian t{Rational(static_cast<long>(k))};
        xs.push_back(t);
        ys.push_back(determinant(GMat(m0 + m1 * t)));
    }
    return interpolate(xs, ys);
}

}  // namespace

KroneckerInvariants kronecker(const Pencil& p) {
    const std::size_t m = p.rows(), r = p.cols();
    KroneckerInvariants out;
    if (m == 0 || r == 0) {
        out.column_indices.assign(r, 0);
        out.row_indices.assign(m, 0);
        out.kernel_basis = PolyMatrix::identity(r);
        return out;
    }
    MinimalIndices cols = minimal_indices(p.a, p.b, true);
    MinimalIndices rows = minimal_indices(p.a.transpose(), p.b.transpose(), false);
    out.column_indices = cols.indices;
    out.kernel_basis = std::move(cols.basis);
    out.row_indices = rows.indices;
    const std::size_t n_eps = out.column_indices.size();
    out.normal_rank = r - n_eps;
    if (out.normal_rank != m - out.row_indices.size()) throw std::logic_error("kronecker: inconsistent minimal indices");
    int regular = static_cast<int>(out.normal_rank);
    for (int e : out.column_indices) regular -= e;
    for (int h : out.row_indices) regular -= h;

    out.infinite = local_sizes(p.b, p.a, n_eps);
    std::sort(out.infinite.begin(), out.infinite.end());
    int finite_degree = regular;
    for (int s : out.infinite) finite_degree -= s;
    if (finite_degree < 0) throw std::logic_error("kronecker: infinite part exceeds the regular part");
    if (finite_degree == 0) return out;

    // gcd of determinants of random square compressions X P Y is a multiple of the
    // product of the invariant factors; equality is certified by its degree.
    SeededRng rng(0x5eed);
    const std::size_t rho = out.normal_rank;
    Poly g;
    for (int attempt = 0; attempt < 40 && g.degree() != finite_degree; ++attempt) {
        GMat x(rho, m), y(r, rho);
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t j = 0; j < m; ++j) x(i, j) = Gaussian(Rational(rng.uniform(-3, 3)));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < rho; ++j) y(i, j) = Gaussian(Rational(rng.uniform(-3, 3)));
        Poly d = pencil_determinant(GMat(x * p.a * y), GMat(x * p.b * y));
        if (d.is_zero()) continue;
        g = gcd_poly(g, d);
    }
    if (g.degree() != finite_degree) throw std::logic_error("kronecker: could not isolate the regular determinant");

    RootExtraction e = linear_factor_roots(g);
    for (const auto& rm : e.roots) {
        std::vector<int> sizes = local_sizes(GMat(p.a + p.b * rm.root), p.b, n_eps);
        int total = 0;
        for (int s : sizes) total += s;
        if (total != rm.multiplicity) throw std::logic_error("kronecker: local sizes disagree with the determinant");
        std::sort(sizes.begin(), sizes.end());
        out.finite.push_back({rm.root, sizes});
    }
    std::sort(out.finite.begin(), out.finite.end(),
              [](const PointDivisors& a, const PointDivisors& b) { return lex_less_gaussian(a.root, b.root); });
    if (!e.remainder.is_constant()) out.symbolic = kronecker_smith(p).symbolic;
    return out;
}

std::string TorsionEntry::support_string() const { return point ? to_string(*point) : to_string(poly); }

int TorsionEntry::total_length() const {
    int t = 0;
    for (int l : lengths) t += l;
    return point ? t : t * poly.degree();
}

int SheafInvariants::total_torsion_length() const {
    int t = 0;
    for (const auto& e : torsion) t += e.total_length();
    return t;
}

SheafInvariants sheaf_from_kronecker(const KroneckerInvariants& k) {
    SheafInvariants s;
    for (int e : k.column_indices) s.minus.push_back(-1 - e);
    for (int h : k.row_indices) s.plus.push_back(h);
    std::sort(s.minus.begin(), s.minus.end());
    std::sort(s.plus.begin(), s.plus.end());
    for (const auto& f : k.finite) s.torsion.push_back({ChartPoint::at(f.root), Poly(), f.degrees});
    if (!k.infinite.empty()) s.torsion.push_back({ChartPoint::infinity(), Poly(), k.infinite});
    for (const auto& f : k.symbolic) s.torsion.push_back({std::nullopt, f.poly, f.powers});
    return s;
}

GMat antiholomorphic_basis(const HypercomplexTriple& t) {
    // v = x + i I x over standard vectors x spanning a complement of their I-images.
    const std::size_t n = t.dim();
    const QMat& im = t.I();
    QMat acc(n, 0);
    GMat v(n, 0);
    for (std::size_t k = 0; k < n && acc.cols() < n; ++k) {
        QMat x(n, 1);
        x(k, 0) = 1;
        QMat ix = im.col(k);
        QMat cand = hstack(acc, hstack(x, ix));
        if (rank(cand) != acc.cols() + 2) continue;
        acc = std::move(cand);
        GMat col(n, 1);
        for (std::size_t i = 0; i < n; ++i) col(i, 0) = Gaussian(x(i, 0), ix(i, 0));
        v = hstack(v, col);
    }
    return v;
}

Pencil pencil_of_pair(const PairUE& p) {
    GMat proj = to_gaussian(annihilator_rows(p.u));
    GMat v = antiholomorphic_basis(p.e);
    return {proj * v, proj * to_gaussian(p.e.J()) * v};
}

SheafInvariants sheaf_of_pair(const PairUE& p) { return sheaf_from_kronecker(kronecker(pencil_of_pair(p))); }

SpherePoint admissible_from_lambda(const HypercomplexTriple& t, const ChartPoint& lambda) {
    GMat v = antiholomorphic_basis(t);
    GMat jv = to_gaussian(t.J()) * v;
    GMat f = lambda.infinite ? jv : GMat(v + jv * lambda.value);
    GMat cols[3] = {to_gaussian(t.I()) * f, to_gaussian(t.J()) * f, to_gaussian(t.K()) * f};
    GMat rhs = f * (-Gaussian::i());
    const std::size_t n = f.rows() * f.cols();
    QMat sys(2 * n, 3), b(2 * n, 1);
    for (std::size_t r = 0; r < f.rows(); ++r)
        for (std::size_t c = 0; c < f.cols(); ++c) {
            std::size_t row = r * f.cols() + c;
            for (std::size_t a = 0; a < 3; ++a) {
                sys(row, a) = cols[a](r, c).re();
                sys(n + row, a) = cols[a](r, c).im();
            }
            b(row, 0) = rhs(r, c).re();
            b(n + row, 0) = rhs(r, c).im();
        }
    auto x = solve_particular(sys, b);
    if (!x || rank(sys) != 3) throw std::logic_error("admissible_from_lambda: inconsistent eigen-equation");
    SpherePoint pt{(*x)(0, 0), (*x)(1, 0), (*x)(2, 0)};
    if (!on_unit_sphere(pt)) throw std::logic_error("admissible_from_lambda: solution is not a unit vector");
    return pt;
}

bool is_cr(const PairUE& p) {
    SheafInvariants s = sheaf_of_pair(p);
    return s.plus.empty() && !s.has_torsion();
}

bool is_co_cr(const PairUE& p) {
    SheafInvariants s = sheaf_of_pair(p);
    return s.minus.empty() && !s.has_torsion();
}

PairUE product_pairs(const PairUE& a, const PairUE& b) {
    if (sheaf_of_pair(a).has_torsion() && sheaf_of_pair(b).has_torsion()) {
        throw std::invalid_argument("product of pairs is only defined when one factor has torsion-free sheaf");
    }
    return direct_sum_pairs(a, b);
}

QSub quaternionic_span(const HypercomplexTriple& t, const QMat& vectors) {
    if (vectors.cols() == 0) return QSub(t.dim());
    return QSub::span(hstack(hstack(vectors, QMat(t.I() * vectors)), hstack(QMat(t.J() * vectors), QMat(t.K() * vectors))));
}

bool is_quaternionic(const HypercomplexTriple& t, const QSub& s) {
    return s.contains(QMat(t.I() * s.basis())) && s.contains(QMat(t.J() * s.basis()));
}

SubPair restrict_pair(const PairUE& p, const QSub& s) {
    if (!is_quaternionic(p.e, s)) throw std::invalid_argument("restrict_pair: subspace is not quaternionic");
    SubPair out;
    out.space = s;
    out.basis = s.basis();
    if (s.is_zero()) {
        out.pair = {HypercomplexTriple(), QSub(0)};
        return out;
    }
    QMat i = s.coordinates(QMat(p.e.I() * out.basis));
    QMat j = s.coordinates(QMat(p.e.J() * out.basis));
    QSub us = intersect(p.u, s);
    QSub u = us.is_zero() ? QSub(s.dim()) : QSub::span(s.coordinates(us.basis()));
    out.pair = {HypercomplexTriple(i, j), u};
    return out;
}

QSub negative_part(const PairUE& p) { return negative_part(p, kronecker(pencil_of_pair(p))); }

QSub negative_part(const PairUE& p, const KroneckerInvariants& k) {
    GMat v = antiholomorphic_basis(p.e);
    GMat jv = to_gaussian(p.e.J()) * v;
    const PolyMatrix& w = k.kernel_basis;
    GMat coeffs(p.dim(), 0);
    for (std::size_t c = 0; c < w.cols(); ++c) {
        int deg = k.column_indices[c];
        GMat prev(v.cols(), 1);
        for (int e = 0; e <= deg + 1; ++e) {
            GMat wk(v.cols(), 1);
            for (std::size_t r = 0; r < w.rows(); ++r) wk(r, 0) = w(r, c).coeff(e);
            coeffs = hstack(coeffs, GMat(v * wk + jv * prev));
            prev = wk;
        }
    }
    return quaternionic_span(p.e, realify(coeffs));
}

QMat quaternionic_complement_generators(const HypercomplexTriple& t, const QSub& s, const QSub& big) {
    if (!big.contains(s)) throw std::invalid_argument("quaternionic complement: S is not contained in T");
    QMat acc = s.basis();
    QMat gens(t.dim(), 0);
    std::size_t r = s.dim();
    for (std::size_t j = 0; j < big.dim() && r < big.dim(); ++j) {
        QMat w = big.basis().col(j);
        if (rank(hstack(acc, w)) == r) continue;
        acc = hstack(hstack(acc, w), hstack(hstack(QMat(t.I() * w), QMat(t.J() * w)), QMat(t.K() * w)));
        r += 4;
        if (rank(acc) != r) throw std::invalid_argument("quaternionic complement: subspaces are not quaternionic");
        gens = hstack(gens, w);
    }
    if (r != big.dim()) throw std::invalid_argument("quaternionic complement: T is not quaternionic");
    return gens;
}

QMat quaternionic_frame(const HypercomplexTriple& t, const QMat& gens) {
    QMat out(t.dim(), 0);
    for (std::size_t j = 0; j < gens.cols(); ++j) {
        QMat w = gens.col(j);
        out = hstack(out, hstack(hstack(w, QMat(t.I() * w)), hstack(QMat(t.J() * w), QMat(t.K() * w))));
    }
    return out;
}

QSub adapted_complement(const HypercomplexTriple& t, const QSub& u, const QSub& s, const QSub& big) {
    if (!big.contains(s)) throw std::invalid_argument("adapted_complement: S is not contained in T");
    if (s.dim() == big.dim()) return QSub(t.dim());
    if (s.is_zero()) return big;
    // Every quaternionic complement is the graph of an H-linear map Phi: C0 -> S over a
    // fixed one C0 = H<w_1, ..., w_h>; Phi is fixed by sigma_j = Phi(w_j) in S.
    const QMat w = quaternionic_complement_generators(t, s, big);
    const QMat c0 = quaternionic_frame(t, w);
    const std::size_t h = w.cols(), k = s.dim();
    QMat xs[4] = {QMat::identity(k), s.coordinates(QMat(t.I() * s.basis())), s.coordinates(QMat(t.J() * s.basis())),
                  s.coordinates(QMat(t.K() * s.basis()))};
    QSub ut = intersect(u, big);
    QMat sigma(k, h);
    if (!ut.is_zero()) {
        // The projection along the graph maps U cap T into U cap S:
        // n (s_u - sum_{j,a} alpha_{j,a} X_a sigma_j) = 0 for every u.
        QSub us = intersect(u, s);
        QMat n = annihilator_rows(us.is_zero() ? QSub(k) : QSub::span(s.coordinates(us.basis())));
        QMat coords = solve_particular(hstack(s.basis(), c0), ut.basis()).value();
        QMat su = coords.block(0, 0, k, coords.cols()), alpha = coords.block(k, 0, 4 * h, coords.cols());
        QMat nx[4];
        for (std::size_t a = 0; a < 4; ++a) nx[a] = n * xs[a];
        QMat nsu = n * su;
        QMat eq(n.rows() * coords.cols(), h * k), rhs(n.rows() * coords.cols(), 1);
        for (std::size_t q = 0; q < coords.cols(); ++q)
            for (std::size_t r = 0; r < n.rows(); ++r) {
                const std::size_t row = q * n.rows() + r;
                for (std::size_t j = 0; j < h; ++j)
                    for (std::size_t a = 0; a < 4; ++a) {
                        const Rational& al = alpha(4 * j + a, q);
                        if (sgn(al) == 0) continue;
                        for (std::size_t i = 0; i < k; ++i)
                            if (sgn(nx[a](r, i)) != 0) eq(row, j * k + i) += al * nx[a](r, i);
                    }
                rhs(row, 0) = nsu(r, q);
            }
        auto x = solve_particular(eq, rhs);
        if (!x) throw std::logic_error("adapted_complement: no adapted quaternionic complement");
        for (std::size_t j = 0; j < h; ++j)
            for (std::size_t i = 0; i < k; ++i) sigma(i, j) = (*x)(j * k + i, 0);
    }
    return QSub::span(quaternionic_frame(t, QMat(w + s.basis() * sigma)));
}

PairDecomposition decompose_pair(const PairUE& p) {
    PairDecomposition d;
    d.e_minus = negative_part(p);
    QSub dual_minus = negative_part(dual_pair(p));
    d.e_minus_torsion = dual_minus.is_zero() ? QSub::whole(p.dim()) : kernel(QMat(dual_minus.basis().transpose()));
    if (!d.e_minus_torsion.contains(d.e_minus)) throw std::logic_error("decompose_pair: filtration is not nested");
    QSub e_t = adapted_complement(p.e, p.u, d.e_minus, d.e_minus_torsion);
    QSub f = adapted_complement(p.e, p.u, d.e_minus_torsion, QSub::whole(p.dim()));
    d.neg = restrict_pair(p, d.e_minus);
    d.tor = restrict_pair(p, e_t);
    d.pos = restrict_pair(p, f);
    return d;
}

}  // namespace gqla
