#include "gqla/genq.hpp"

#include "gqla/lattice.hpp"
#include "gqla/random.hpp"

#include <algorithm>
#include <numeric>

namespace gqla {

namespace {

QMat combo(const std::array<QMat, 3>& gens, const Rational& a, const Rational& b, const Rational& c) {
    return gens[0] * a + gens[1] * b + gens[2] * c;
}

QMat solve_or_throw(const QMat& basis, const QMat& vectors, const char* what) {
    auto x = solve_particular(basis, vectors);
    if (!x) throw ClassificationError(std::string(what) + ": vectors leave the subspace");
    return *x;
}

/// Coefficients c with target = sum_b c_b ms[b], if unique.
std::optional<std::array<Rational, 3>> coefficients(const QMat& target, const std::array<QMat, 3>& ms) {
    const std::size_t r = target.rows(), cc = target.cols();
    QMat sys(r * cc, 3), rhs(r * cc, 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cc; ++j) {
            for (std::size_t b = 0; b < 3; ++b) sys(i * cc + j, b) = ms[b](i, j);
            rhs(i * cc + j, 0) = target(i, j);
        }
    auto x = solve_particular(sys, rhs);
    if (!x || rank(sys) != 3) return std::nullopt;
    return std::array<Rational, 3>{(*x)(0, 0), (*x)(1, 0), (*x)(2, 0)};
}

/// Isotropic quaternionic complement L of the isotropic quaternionic D in the
/// nondegenerate quaternionic W, as the graph of an H-linear map C0 -> D over
/// C0 = H<w_1, ..., w_h>, such that every seed vector x (in U) satisfies
/// x + (correction) in L with correction in `target`.
struct SplitComplement {
    QSub l;
    /// One vector of L per seed vector, differing from it by an element of `target`.
    QMat seeds;
};

std::optional<SplitComplement> isotropic_quaternionic_complement(const HypercomplexTriple& t, const QSub& w, const QSub& d,
                                                      const QMat& gram, const QSub& seed, const QSub& target) {
    const QMat gens = quaternionic_complement_generators(t, d, w);
    const QMat c0 = quaternionic_frame(t, gens);
    const std::size_t h = gens.cols(), k = d.dim(), nc = 4 * h;
    const QMat& db = d.basis();
    QMat xd[4] = {QMat::identity(k), d.coordinates(QMat(t.I() * db)), d.coordinates(QMat(t.J() * db)),
                  d.coordinates(QMat(t.K() * db))};
    // phi(c_(j,a)) = D xd[a] sigma_j; unknown sigma_j(i) at j * k + i.
    const QMat dg = db.transpose() * gram * c0;  // k x nc
    const QMat cc = c0.transpose() * gram * c0;
    std::vector<QMat> coeff(nc);  // coefficient of sigma_j in Q(phi c_(j,a), c_m), as k x nc
    for (std::size_t col = 0; col < nc; ++col) coeff[col] = xd[col % 4].transpose() * dg;
    QMat eq(nc * (nc + 1) / 2, h * k), rhs(nc * (nc + 1) / 2, 1);
    std::size_t row = 0;
    for (std::size_t p = 0; p < nc; ++p)
        for (std::size_t m = p; m < nc; ++m, ++row) {
            // Q(c_p, c_m) + Q(phi c_p, c_m) + Q(c_p, phi c_m) = 0
            for (std::size_t i = 0; i < k; ++i) {
                eq(row, (p / 4) * k + i) += coeff[p](i, m);
                eq(row, (m / 4) * k + i) += coeff[m](i, p);
            }
            rhs(row, 0) = -cc(p, m);
        }
    QMat alpha, dx;
    if (!seed.is_zero()) {
        QMat n = target.is_zero() ? QMat::identity(k)
                                  : null_space(QMat(d.coordinates(target.basis()).transpose())).transpose();
        QMat coords = solve_particular(hstack(db, c0), seed.basis()).value();
        dx = coords.block(0, 0, k, coords.cols());
        alpha = coords.block(k, 0, nc, coords.cols());
        QMat nx[4];
        for (std::size_t a = 0; a < 4; ++a) nx[a] = n * xd[a];
        QMat ndx = n * dx;
        QMat e2(n.rows() * coords.cols(), h * k), r2(n.rows() * coords.cols(), 1);
        for (std::size_t q = 0; q < coords.cols(); ++q)
            for (std::size_t r = 0; r < n.rows(); ++r) {
                const std::size_t rr = q * n.rows() + r;
                for (std::size_t col = 0; col < nc; ++col) {
                    const Rational& al = alpha(col, q);
                    if (sgn(al) == 0) continue;
                    for (std::size_t i = 0; i < k; ++i) e2(rr, (col / 4) * k + i) += al * nx[col % 4](r, i);
                }
                r2(rr, 0) = ndx(r, q);
            }
        eq = vstack(eq, e2);
        rhs = vstack(rhs, r2);
    }
    auto x = solve_particular(eq, rhs);
    if (!x) return std::nullopt;
    QMat sigma(k, h);
    for (std::size_t j = 0; j < h; ++j)
        for (std::size_t i = 0; i < k; ++i) sigma(i, j) = (*x)(j * k + i, 0);
    SplitComplement out{reduced(QSub::with_basis(quaternionic_frame(t, QMat(gens + db * sigma)))), QMat(w.ambient(), 0)};
    if (!seed.is_zero()) {
        QMat phi(k, seed.dim());
        for (std::size_t col = 0; col < nc; ++col) {
            QMat img = xd[col % 4] * sigma.col(col / 4);
            for (std::size_t q = 0; q < seed.dim(); ++q)
                if (sgn(alpha(col, q)) != 0)
                    for (std::size_t i = 0; i < k; ++i) phi(i, q) += alpha(col, q) * img(i, 0);
        }
        out.seeds = seed.basis() + db * QMat(phi - dx);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

GQStructure GQStructure::from_pair(QMat i, QMat j) {
    QMat k = i * j;
    return {std::move(i), std::move(j), std::move(k)};
}

GQStructure GQStructure::rotated(const QMat& r) const {
    if (r.rows() != 3 || r.cols() != 3) throw ShapeError("rotation must be 3x3");
    std::array<QMat, 3> out;
    for (std::size_t a = 0; a < 3; ++a) out[a] = combo(gens_, r(0, a), r(1, a), r(2, a));
    return {out[0], out[1], out[2]};
}

QMat GQStructure::admissible(const SpherePoint& p) const {
    if (!on_unit_sphere(p)) throw std::invalid_argument("admissible: point is not on the unit sphere");
    return combo(gens_, p.a, p.b, p.c);
}

GQReport check_gq(const GQStructure& g) {
    GQReport rep;
    auto fail = [&rep](std::string why) {
        rep.valid = false;
        rep.failure = std::move(why);
        return rep;
    };
    const char* names[3] = {"I", "J", "K"};
    const std::size_t dim = g.gen(0).rows();
    for (std::size_t a = 0; a < 3; ++a) {
        const QMat& m = g.gen(a);
        if (m.rows() != dim || m.cols() != dim || dim % 2 != 0) return fail(std::string(names[a]) + ": bad shape");
    }
    for (std::size_t a = 0; a < 2; ++a)
        if (auto why = gc_defect(g.gen(a))) return fail(std::string(names[a]) + ": " + *why);
    if (!(g.gen(0) * g.gen(1) + g.gen(1) * g.gen(0)).is_zero()) return fail("I and J do not anticommute");
    if (!(g.gen(0) * g.gen(1) == g.gen(2))) return fail("K != IJ");
    return rep;
}

bool is_complex_symplectic_pair(const QMat& j, const QMat& w) {
    return QMat(j.transpose() * w * j) == -w;
}

GQStructure from_complex_symplectic(const QMat& j, const QMat& w, GQReport* report) {
    const std::size_t m = j.rows();
    if (!j.is_square() || w.rows() != m || w.cols() != m) throw InvalidStructure("complex-symplectic: shape mismatch");
    if (!(j * j == -QMat::identity(m))) throw InvalidStructure("complex-symplectic: J^2 != -1");
    if (!(w.transpose() == -w)) throw InvalidStructure("complex-symplectic: form is not skew");
    if (!is_complex_symplectic_pair(j, w)) {
        throw InvalidStructure("complex-symplectic: the (1,1) part of the form is nonzero (w(J., J.) != -w)");
    }
    if (rank(w) != m) throw InvalidStructure("complex-symplectic: form is degenerate");
    QMat cj = from_complex(j).matrix();
    QMat cw = from_symplectic(w).matrix();
    QMat third = cj * cw;
    if (report) {
        *report = GQReport{};
        QMat wj = w * j;
        if (third == from_symplectic(wj).matrix())
            report->third_generator_sign = 1;
        else if (third == from_symplectic(-wj).matrix())
            report->third_generator_sign = -1;
    }
    return {std::move(cj), std::move(cw), std::move(third)};
}

QMat co_cr_frame(const QMat& rho, const QMat& section) {
    const std::size_t u = rho.rows(), d = rho.cols();
    if (section.rows() != d || section.cols() != u) throw ShapeError("co-CR: section shape");
    if (!(rho * section == QMat::identity(u))) throw std::invalid_argument("co-CR: section is not a right inverse");
    QMat kb = null_space(rho);
    QMat skb = hstack(section, kb);
    QMat rhs(d, d - u);
    for (std::size_t k = 0; k < d - u; ++k) rhs(u + k, k) = 1;
    QMat kt = solve_particular(QMat(skb.transpose()), rhs).value();
    QMat phi(2 * d, 2 * d);
    phi.set_block(0, 0, section);
    phi.set_block(0, 2 * d - (d - u), kb);
    phi.set_block(d, u, kt);
    phi.set_block(d, d, rho.transpose());
    return phi;
}

GQStructure from_co_cr(const HypercomplexTriple& e, const QMat& rho, const QMat& section) {
    if (rho.cols() != e.dim()) throw ShapeError("co-CR: rho shape");
    if (rank(rho) != rho.rows()) throw std::invalid_argument("co-CR: rho is not surjective");
    if (!is_co_cr({e, kernel(rho)})) throw std::invalid_argument("co-CR: (ker rho, E) is not co-CR");
    QMat phi = co_cr_frame(rho, section);
    QMat phi_inv = inverse_or_throw(phi, "co-CR frame");
    std::array<QMat, 3> out;
    for (std::size_t a = 0; a < 3; ++a) {
        const QMat& x = e.gen(a);
        out[a] = phi_inv * block_diag(x, QMat(-x.transpose())) * phi;
    }
    return {out[0], out[1], out[2]};
}

GQStructure from_cr(const HypercomplexTriple& e, const QMat& iota, const std::optional<QMat>& section) {
    if (iota.rows() != e.dim()) throw ShapeError("CR: iota shape");
    if (rank(iota) != iota.cols()) throw std::invalid_argument("CR: iota is not injective");
    if (!is_cr({e, QSub::span(iota)})) throw std::invalid_argument("CR: (iota U, E) is not CR");
    QMat rho = iota.transpose();
    QMat s = section ? *section : solve_particular(rho, QMat::identity(rho.rows())).value();
    return from_co_cr(e.dual(), rho, s);
}

GQStructure direct_sum_gq(const GQStructure& a, const GQStructure& b) {
    if (a.gen(0).rows() == 0) return b;
    if (b.gen(0).rows() == 0) return a;
    return {product_matrix(a.gen(0), b.gen(0)), product_matrix(a.gen(1), b.gen(1)),
            product_matrix(a.gen(2), b.gen(2))};
}

GQStructure product_gq(const GQStructure& a, const GQStructure& b) {
    if (sheaf_of_pair(a.pair()).has_torsion() && sheaf_of_pair(b.pair()).has_torsion()) {
        throw std::invalid_argument("product of generalized quaternionic structures needs a torsion-free factor");
    }
    return direct_sum_gq(a, b);
}

GQStructure scramble(const GQStructure& g, const BField& b, const QMat& a) {
    const std::size_t n = a.rows();
    const QMat a_inv = inverse_or_throw(a, "basis change A");
    const QMat at = a.transpose();
    // (E_b C_A)^{-1} = [[A^{-1}, 0], [-A^T b, A^T]]
    const QMat psi = block2x2(a, QMat(n, n), QMat(b.matrix() * a), QMat(a_inv.transpose()));
    const QMat psi_inv = block2x2(a_inv, QMat(n, n), QMat(-(at * b.matrix())), at);
    return {conjugate(g.gen(0), psi, psi_inv), conjugate(g.gen(1), psi, psi_inv), conjugate(g.gen(2), psi, psi_inv)};
}

GQStructure scramble_seeded(const GQStructure& g, std::uint64_t seed, BField* b_out, QMat* a_out) {
    SeededRng rng(seed);
    BField b(random_skew(rng, g.n()));
    QMat a = random_invertible(rng, g.n());
    if (b_out) *b_out = b;
    if (a_out) *a_out = a;
    return scramble(g, b, a);
}

// ---------------------------------------------------------------------------

QMat frame_for(const SpherePoint& p) {
    if (!on_unit_sphere(p)) throw std::invalid_argument("frame_for: point is not on the unit sphere");
    // Quaternion 1 + e1.p + e1 x p rotates e1 onto p.
    QMat r = p.a == -1 ? rotation_from_quaternion(0, 0, 1, 0)
                       : rotation_from_quaternion(1 + p.a, 0, -p.c, p.b);
    if (!(r(0, 0) == p.a && r(1, 0) == p.b && r(2, 0) == p.c)) throw std::logic_error("frame_for: wrong first column");
    return r;
}

ChartPoint lambda_from_admissible(const SpherePoint& p) {
    if (!on_unit_sphere(p)) throw std::invalid_argument("lambda_from_admissible: point is not on the unit sphere");
    if (p.a == -1) return ChartPoint::infinity();
    Rational den = 1 + p.a;
    return ChartPoint::at(Gaussian(Rational(-p.c / den), Rational(p.b / den)));
}

GQStructure CSFactor::structure() const { return from_complex_symplectic(j, w).rotated(frame.transpose()); }

std::vector<std::size_t> Certificate::factor_dims() const {
    std::vector<std::size_t> out;
    if (cr) out.push_back(cr->dim());
    for (const auto& f : cs) out.push_back(f.dim());
    return out;
}

void sort_factors(Certificate& c) {
    std::stable_sort(c.cs.begin(), c.cs.end(),
                     [](const CSFactor& a, const CSFactor& b) { return chart_less(a.support[0], b.support[0]); });
}

namespace {

/// Isometric embedding of a factor's model V x V* into the ambient space.
struct Embedded {
    QMat v_part;
    QMat dual_part;
};

struct SupportPair {
    std::array<ChartPoint, 2> pts;
    int length = 0;
};

std::vector<SupportPair> pair_supports(const SheafInvariants& s, Certificate& c) {
    std::vector<TorsionEntry> pts;
    for (const auto& t : s.torsion) {
        if (t.point)
            pts.push_back(t);
        else {
            c.partial = true;
            c.field_extension_required.push_back(t.support_string());
        }
    }
    std::vector<SupportPair> out;
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        ChartPoint other = antipode(*pts[i].point);
        std::size_t j = 0;
        while (j < pts.size() && !(used[j] == false && j != i && *pts[j].point == other)) ++j;
        if (j == pts.size()) throw ClassificationError("torsion support is not closed under the antipode");
        if (pts[i].lengths != pts[j].lengths) throw ClassificationError("antipodal torsion lengths differ");
        used[i] = used[j] = true;
        SupportPair sp;
        sp.pts = {*pts[i].point, other};
        if (chart_less(sp.pts[1], sp.pts[0])) std::swap(sp.pts[0], sp.pts[1]);
        sp.length = 2 * pts[i].total_length();
        out.push_back(sp);
    }
    return out;
}

}  // namespace

Certificate classify(const GQStructure& g, const ClassifyOptions& opts) {
    GQReport rep = check_gq(g);
    if (!rep.valid) throw InvalidStructure("classify: " + rep.failure);
    const std::size_t n = g.n();
    const auto q = canonical_pairing(n);
    const QMat& qg = q.gram();
    const PairUE pair = g.pair();
    const QSub& vstar = pair.u;

    KroneckerInvariants kr = kronecker(pencil_of_pair(pair));
    Certificate c;
    c.seed = opts.seed;
    c.invariants = sheaf_from_kronecker(kr);

    QSub e_minus = reduced(negative_part(pair, kr));
    if (!is_isotropic(e_minus, q)) throw ClassificationError("negative part is not isotropic");
    QSub w = reduced(orthogonal_complement(e_minus, q));
    QSub e_t = reduced(adapted_complement(pair.e, vstar, e_minus, w));
    QSub e_f = reduced(orthogonal_complement(e_t, q));
    QSub u_t = reduced(intersect(vstar, e_t)), u_f = reduced(intersect(vstar, e_f));
    if (2 * u_t.dim() != e_t.dim() || u_t.dim() + u_f.dim() != n || !e_f.contains(e_minus) ||
        static_cast<int>(e_t.dim()) != 2 * c.invariants.total_torsion_length()) {
        throw ClassificationError("torsion block does not split off");
    }

    std::vector<Embedded> cs_embed;
    std::size_t torsion_dim = 0;
    for (const auto& sp : pair_supports(c.invariants, c)) {
        SpherePoint p = admissible_from_lambda(pair.e, sp.pts[0]);
        CSFactor f;
        f.frame = frame_for(p);
        f.support = sp.pts;
        QMat jk = combo(g.gens(), f.frame(0, 0), f.frame(1, 0), f.frame(2, 0));
        QMat kk = combo(g.gens(), f.frame(0, 1), f.frame(1, 1), f.frame(2, 1));
        QSub uk = reduced(intersect(u_t, QSub::with_basis(QMat(jk * u_t.basis()))));
        const QMat lb = kk * uk.basis();
        if (static_cast<int>(uk.dim()) != sp.length || rank(hstack(uk.basis(), lb)) != 2 * uk.dim())
            throw ClassificationError("complex-symplectic block at " + to_string(sp.pts[0]) + " has wrong dimension");
        QMat ub = uk.basis() * inverse_or_throw(QMat(Rational(2) * lb.transpose() * qg * uk.basis()), "block pairing");
        f.j = solve_or_throw(lb, QMat(jk * lb), "complex-type axis");
        f.w = -solve_or_throw(ub, QMat(kk * lb), "symplectic axis");
        try {
            from_complex_symplectic(f.j, f.w);
        } catch (const InvalidStructure& e) {
            throw ClassificationError(std::string("extracted block is not complex-symplectic: ") + e.what());
        }
        torsion_dim += 2 * uk.dim();
        c.cs.push_back(std::move(f));
        cs_embed.push_back({lb, ub});
    }
    if (!c.partial && torsion_dim != e_t.dim()) throw ClassificationError("torsion blocks do not fill the torsion part");

    std::optional<Embedded> cr_embed;
    if (!e_f.is_zero()) {
        const std::size_t d = e_minus.dim();
        if (e_f.dim() != 2 * d) throw ClassificationError("torsion-free part is not twice the negative part");
        QSub u_m = reduced(intersect(vstar, e_minus));
        QSub seed_dir = complement_in(u_m, u_f);
        auto e_p = isotropic_quaternionic_complement(pair.e, e_f, e_minus, qg, seed_dir, u_m);
        if (!e_p) throw ClassificationError("no adapted isotropic quaternionic complement of the negative part");
        QSub u_p = reduced(QSub::span(e_p->seeds));
        if (u_m.dim() + u_p.dim() != u_f.dim()) throw ClassificationError("V* does not split over the complement");

        const QMat& bm = e_minus.basis();
        const QMat& epb = e_p->l.basis();
        QMat bp = epb * inverse_or_throw(QMat(Rational(2) * bm.transpose() * qg * epb), "pairing");
        HypercomplexTriple tm(solve_or_throw(bm, QMat(g.gen(0) * bm), "I on E-"),
                              solve_or_throw(bm, QMat(g.gen(1) * bm), "J on E-"));
        QMat iota = solve_or_throw(bm, u_m.basis(), "U-");
        QMat kb = solve_or_throw(bp, u_p.basis(), "U+");
        if (!QMat(iota.transpose() * kb).is_zero()) throw ClassificationError("U+ is not the annihilator of U-");
        if (!is_cr({tm, QSub::span(iota)})) throw ClassificationError("negative pair is not CR");

        SeededRng rng(opts.seed);
        const HypercomplexTriple tp = tm.dual();
        std::optional<QMat> section;
        for (int attempt = 0; attempt < opts.max_retries && !section; ++attempt) {
            QMat cand = random_int_matrix(rng, d, iota.cols());
            if (rank(hstack(cand, kb)) != d) continue;
            if (!is_cr({tp, QSub::span(cand)})) continue;
            section = cand * inverse_or_throw(QMat(iota.transpose() * cand), "section");
        }
        if (!section) throw ClassificationError("no CR complement found within the retry budget");
        QMat psi = hstack(bp, bm) * co_cr_frame(iota.transpose(), *section);
        cr_embed = Embedded{psi.block(0, 0, 2 * n, d), psi.block(0, d, 2 * n, d)};
        c.cr = CRQFactor{tm, iota, *section};
    }

    std::vector<std::size_t> order(c.cs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return chart_less(c.cs[a].support[0], c.cs[b].support[0]); });
    std::vector<CSFactor> sorted;
    std::vector<Embedded> embeds;
    if (cr_embed) embeds.push_back(*cr_embed);
    for (std::size_t k : order) {
        sorted.push_back(c.cs[k]);
        embeds.push_back(cs_embed[k]);
    }
    c.cs = std::move(sorted);
    if (c.partial) return c;

    QMat psi(2 * n, 0), psi_dual(2 * n, 0);
    for (const auto& e : embeds) {
        psi = hstack(psi, e.v_part);
        psi_dual = hstack(psi_dual, e.dual_part);
    }
    psi = hstack(psi, psi_dual);
    QMat a = psi.block(0, 0, n, n);
    QMat a_inv = inverse_or_throw(a, "adapted frame");
    QMat b = psi.block(n, 0, n, n) * a_inv;
    if (!psi.block(0, n, n, n).is_zero() || !(psi.block(n, n, n, n) == a_inv.transpose()) || !(b.transpose() == -b))
        throw ClassificationError("assembled frame is not a B-field times GL transform");
    c.a = a;
    c.b = BField(b);
    VerifyReport vr = verify_certificate_report(g, c, c.invariants);
    if (!vr.ok) throw ClassificationError("certificate does not reproduce the input: " + vr.reason);
    return c;
}

GQStructure rebuild_model(const Certificate& c) {
    Certificate s = c;
    sort_factors(s);
    GQStructure out{QMat(), QMat(), QMat()};
    if (s.cr) out = s.cr->structure();
    for (const auto& f : s.cs) out = direct_sum_gq(out, f.structure());
    return out;
}

VerifyReport verify_certificate_report(const GQStructure& g, const Certificate& c,
                                       const std::optional<SheafInvariants>& fresh) {
    VerifyReport rep;
    if (c.partial) {
        rep.reason = "partial certificate";
        return rep;
    }
    SheafInvariants inv = fresh ? *fresh : sheaf_of_pair(g.pair());
    if (!(inv == c.invariants)) {
        rep.reason = "sheaf invariants differ";
        return rep;
    }
    GQStructure model;
    try {
        model = rebuild_model(c);
    } catch (const std::exception& e) {
        rep.reason = std::string("factor rebuild failed: ") + e.what();
        return rep;
    }
    if (model.n() != g.n() || c.a.rows() != g.n() || c.b.dim() != g.n()) {
        rep.reason = "dimension mismatch";
        return rep;
    }
    const std::size_t n = g.n();
    if (rank(c.a) != n) {
        rep.reason = "invalid transform: A is singular";
        return rep;
    }
    // g = E_b C_A M C_A^{-1} E_{-b} with M = sum_b r_b model_b, checked blockwise without
    // inverting A: undo b, then compare [X'A; Y'; A^T Z' A; A^T W'] with
    // [A M11; A M12 A^T; M21; M22 A^T].
    const QMat& a_mat = c.a;
    const QMat at = a_mat.transpose();
    const QMat& bm = c.b.matrix();
    auto stacked = [](const QMat& m11, const QMat& m12, const QMat& m21, const QMat& m22) {
        return vstack(vstack(m11, m12), vstack(m21, m22));
    };
    std::array<QMat, 3> model_side;
    for (std::size_t k = 0; k < 3; ++k) {
        const QMat& m = model.gen(k);
        model_side[k] = stacked(a_mat * m.block(0, 0, n, n), QMat(QMat(a_mat * m.block(0, n, n, n)) * at),
                                m.block(n, 0, n, n), QMat(m.block(n, n, n, n) * at));
    }
    rep.rotation = QMat(3, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        const QMat& m = g.gen(a);
        const QMat m11 = m.block(0, 0, n, n), m12 = m.block(0, n, n, n);
        const QMat m21 = m.block(n, 0, n, n), m22 = m.block(n, n, n, n);
        const QMat x1 = m11 + QMat(m12 * bm);
        const QMat z1 = m21 + QMat(m22 * bm) - QMat(bm * x1);
        const QMat w1 = m22 - QMat(bm * m12);
        QMat target = stacked(QMat(x1 * a_mat), m12, QMat(QMat(at * z1) * a_mat), QMat(at * w1));
        auto x = coefficients(target, model_side);
        if (!x) {
            rep.reason = "generator " + std::to_string(a) + " is not in the span of the rebuilt structure";
            return rep;
        }
        for (std::size_t b = 0; b < 3; ++b) rep.rotation(b, a) = (*x)[b];
        if (!on_unit_sphere({(*x)[0], (*x)[1], (*x)[2]})) {
            rep.reason = "generator " + std::to_string(a) + " is not a unit combination";
            return rep;
        }
    }
    if (!is_rotation(rep.rotation)) {
        rep.reason = "coefficients do not form a rotation";
        return rep;
    }
    rep.ok = true;
    return rep;
}

bool verify_certificate(const GQStructure& g, const Certificate& c) { return verify_certificate_report(g, c).ok; }

// ---------------------------------------------------------------------------

QMat holomorphic_symplectic_real(std::size_t m, const Rational& re, const Rational& im) {
    QMat w(4 * m, 4 * m);
    auto add = [&w](std::size_t i, std::size_t j, const Rational& v) {
        w(i, j) += v;
        w(j, i) -= v;
    };
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t xa = 4 * k, ya = xa + 1, xb = xa + 2, yb = xa + 3;
        add(xa, xb, re);
        add(ya, yb, -re);
        add(xa, yb, -im);
        add(ya, xb, -im);
    }
    return w;
}

std::pair<QMat, QMat> random_complex_symplectic(SeededRng& rng, std::size_t m) {
    Rational re, im;
    do {
        re = rng.uniform(-2, 2);
        im = rng.uniform(-2, 2);
    } while (sgn(re) == 0 && sgn(im) == 0);
    QMat p = random_invertible(rng, 4 * m);
    QMat p_inv = inverse_or_throw(p);
    return {p * standard_complex(2 * m) * p_inv,
            QMat(p_inv.transpose() * holomorphic_symplectic_real(m, re, im) * p_inv)};
}

std::pair<QMat, QMat> random_kahler_type(SeededRng& rng, std::size_t m) {
    QMat w0 = standard_symplectic(m) * Rational(rng.uniform(1, 3));
    if (m % 2 == 0 && rng.uniform(0, 1))
        w0 += holomorphic_symplectic_real(m / 2, Rational(rng.uniform(-2, 2)), Rational(rng.uniform(-2, 2)));
    QMat p = random_invertible(rng, 2 * m);
    QMat p_inv = inverse_or_throw(p);
    return {p * standard_complex(m) * p_inv, QMat(p_inv.transpose() * w0 * p_inv)};
}

PairUE random_cr_pair(SeededRng& rng, std::size_t d) {
    if (d == 0 || d % 4 != 0) throw std::invalid_argument("random_cr_pair: dimension must be a positive multiple of 4");
    HypercomplexTriple e = HypercomplexTriple::standard(d / 4).conjugated(random_invertible(rng, d));
    for (;;) {
        auto u = static_cast<std::size_t>(rng.uniform(static_cast<long>(d / 2 + 1), static_cast<long>(d)));
        QSub s = QSub::span(random_int_matrix(rng, d, u));
        if (s.dim() == u && is_cr({e, s})) return {e, s};
    }
}

CompositeTruth random_composite(SeededRng& rng, const CompositeSpec& spec, bool scrambled) {
    CompositeTruth t;
    t.g = GQStructure{QMat(), QMat(), QMat()};
    if (spec.cr_dim > 0) {
        PairUE p = random_cr_pair(rng, spec.cr_dim);
        QMat iota = p.u.basis();
        QMat rho = iota.transpose();
        QMat s = solve_particular(rho, QMat::identity(rho.rows())).value();
        QMat kb = null_space(rho);
        if (kb.cols() > 0) s += kb * random_int_matrix(rng, kb.cols(), s.cols(), 1);
        t.g = from_cr(p.e, iota, s);
        t.factor_dims.push_back(spec.cr_dim);
    }
    std::vector<SpherePoint> used;
    for (std::size_t dk : spec.cs_dims) {
        if (dk == 0 || dk % 4 != 0) throw std::invalid_argument("random_composite: CS factor dimension must be 4 or 8");
        auto [j, w] = random_complex_symplectic(rng, dk / 4);
        QMat r;
        SpherePoint p;
        for (;;) {
            long uq[4];
            for (auto& x : uq) x = rng.uniform(-2, 2);
            if (uq[0] == 0 && uq[1] == 0 && uq[2] == 0 && uq[3] == 0) continue;
            r = rotation_from_quaternion(uq[0], uq[1], uq[2], uq[3]);
            p = {r(0, 0), r(1, 0), r(2, 0)};
            bool clash = std::any_of(used.begin(), used.end(), [&p](const SpherePoint& o) {
                return (o.a == p.a && o.b == p.b && o.c == p.c) || (o.a == -p.a && o.b == -p.b && o.c == -p.c);
            });
            if (!clash) break;
        }
        used.push_back(p);
        t.g = direct_sum_gq(t.g, from_complex_symplectic(j, w).rotated(r.transpose()));
        std::array<ChartPoint, 2> sup{lambda_from_admissible(p), lambda_from_admissible({-p.a, -p.b, -p.c})};
        if (chart_less(sup[1], sup[0])) std::swap(sup[0], sup[1]);
        t.supports.push_back(sup);
        t.lengths.push_back(std::vector<int>(dk / 2, 1));
        t.factor_dims.push_back(dk);
    }
    if (scrambled && t.g.n() > 0) {
        BField b(random_skew(rng, t.g.n()));
        t.g = scramble(t.g, b, random_invertible(rng, t.g.n()));
    }
    return t;
}

GQStructure irrational_torsion_example() {
    // Frame R = R0 + s R1 with s = sqrt 3 and first column (0, s/2, 1/2); the
    // second factor uses the conjugate frame. The change of basis
    // (x1, x2) -> (x1 + x2, s (x1 - x2)) on V1 x V2 makes every entry rational.
    const Rational h(1, 2);
    QMat r0{{0, 1, 0}, {0, 0, h}, {h, 0, 0}};
    QMat r1{{0, 0, 0}, {h, 0, 0}, {0, 0, -h}};
    GQStructure cs = from_complex_symplectic(standard_complex(2), holomorphic_symplectic_real(1, 1, 0));
    const std::size_t m = 4;
    std::array<QMat, 3> out;
    for (std::size_t a = 0; a < 3; ++a) {
        QMat p = combo(cs.gens(), r0(a, 0), r0(a, 1), r0(a, 2));
        QMat q = combo(cs.gens(), r1(a, 0), r1(a, 1), r1(a, 2));
        auto blk = [m](const QMat& x, std::size_t i, std::size_t j) { return x.block(i * m, j * m, m, m); };
        auto quad = [](const QMat& tl, const QMat& tr, const QMat& bl, const QMat& br) {
            return block2x2(tl, tr, bl, br);
        };
        QMat vv = quad(blk(p, 0, 0), blk(q, 0, 0), QMat(blk(q, 0, 0) * Rational(3)), blk(p, 0, 0));
        QMat vd = quad(QMat(blk(p, 0, 1) * Rational(2)), QMat(blk(q, 0, 1) * Rational(6)),
                       QMat(blk(q, 0, 1) * Rational(6)), QMat(blk(p, 0, 1) * Rational(6)));
        QMat dv = quad(QMat(blk(p, 1, 0) * h), QMat(blk(q, 1, 0) * h), QMat(blk(q, 1, 0) * h),
                       QMat(blk(p, 1, 0) * Rational(1, 6)));
        QMat dd = quad(blk(p, 1, 1), QMat(blk(q, 1, 1) * Rational(3)), blk(q, 1, 1), blk(p, 1, 1));
        out[a] = block2x2(vv, vd, dv, dd);
    }
    return {out[0], out[1], out[2]};
}

}  // namespace gqla
