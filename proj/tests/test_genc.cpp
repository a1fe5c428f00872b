#include "doctest.h"
#include "gqla/genc.hpp"
#include "gqla/random.hpp"
#include "gc_support.hpp"

using namespace gqla;
using test::random_scrambled_product;
using test::random_section;

TEST_CASE("canonical pairing") {
    CHECK(canonical_pairing(1).gram() == QMat{{0, make_rational(1, 2)}, {make_rational(1, 2), 0}});
    auto q = canonical_pairing(3);
    SeededRng rng(1);
    QMat x = vstack(test::random_qmat(rng, 3, 1), QMat(3, 1)), y = vstack(test::random_qmat(rng, 3, 1), QMat(3, 1));
    CHECK(q(x, y) == 0);
    QMat beta = test::random_qmat(rng, 3, 1);
    QMat xa = vstack(x.block(0, 0, 3, 1), test::random_qmat(rng, 3, 1));
    CHECK(q(xa, vstack(QMat(3, 1), beta)) == (beta.transpose() * x.block(0, 0, 3, 1))(0, 0) / 2);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(GCStructure(QMat::identity(4)), InvalidStructure);
    CHECK_THROWS_AS(GCStructure(QMat(3, 3)), InvalidStructure);
    CHECK_THROWS_AS(BField(QMat{{1, 0}, {0, 0}}), InvalidStructure);
    CHECK_THROWS_AS(from_complex(QMat::identity(2)), InvalidStructure);
    CHECK_THROWS_AS(from_symplectic(QMat(2, 2)), InvalidStructure);
    // A complex structure on V x V* that is not orthogonal for the pairing.
    QMat bad = block_diag(standard_complex(1), QMat{{1, -2}, {1, -1}});
    CHECK(gc_defect(bad).has_value());
}

TEST_CASE("complex and symplectic normal forms") {
    QMat j{{0, -1}, {1, 0}};
    GCStructure c = from_complex(j);
    CHECK(c.matrix() == block_diag(j, QMat(-j.transpose())));
    CHECK(image(c.matrix(), dual_part(2)) == dual_part(2));
    CHECK(type_of(c).k == 1);

    GCStructure s = from_symplectic(QMat{{0, 1}, {-1, 0}});
    CHECK(s.matrix() == QMat{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}});
    CHECK(intersect(dual_part(2), image(s.matrix(), dual_part(2))).is_zero());
    CHECK(type_of(s).k == 0);
    CHECK_FALSE(gc_defect(s.matrix()));
}

TEST_CASE("B-field transforms") {
    SeededRng rng(2);
    GCStructure s = random_scrambled_product(rng, 1, 1);
    const std::size_t n = s.n();
    CHECK(bfield_transform(s, BField::zero(n)) == s);
    BField b1(random_skew(rng, n)), b2(random_skew(rng, n));
    CHECK(bfield_transform(bfield_transform(s, b1), b2) == bfield_transform(s, b1 + b2));
    QMat e = bfield_matrix(b1);
    CHECK(e * dual_part(n).basis() == dual_part(n).basis());
    CHECK_FALSE(gc_defect(bfield_transform(s, b1).matrix()));
    CHECK(type_of(bfield_transform(s, b1)) == type_of(s));
    CHECK(type_of(gl_transform(s, random_invertible(rng, n))) == type_of(s));
}

TEST_CASE("bfield_from_isotropic_complement") {
    CHECK(bfield_from_isotropic_complement(primal_part(3), 3) == BField::zero(3));
    SeededRng rng(3);
    BField b(random_skew(rng, 4));
    CHECK(bfield_from_isotropic_complement(graph_of(b), 4) == b);
    QSub sym = QSub::span(vstack(QMat::identity(2), QMat{{1, 0}, {0, 0}}));
    CHECK_THROWS_AS(bfield_from_isotropic_complement(sym, 2), InvalidStructure);
    CHECK_THROWS_AS(bfield_from_isotropic_complement(dual_part(2), 2), InvalidStructure);
}

TEST_CASE("products") {
    SeededRng rng(4);
    GCStructure c1 = from_complex(random_complex_structure(rng, 1));
    GCStructure c2 = from_complex(random_complex_structure(rng, 2));
    GCStructure p = product_gc(c1, c2);
    CHECK_FALSE(gc_defect(p.matrix()));
    CHECK(image(p.matrix(), dual_part(6)) == dual_part(6));
    GCStructure s = from_symplectic(random_symplectic(rng, 1));
    CHECK(type_of(product_gc(c2, s)).k == type_of(c2).k + type_of(s).k);
    GCStructure empty = GCStructure(QMat(0, 0));
    CHECK(product_gc(c1, empty) == c1);
    CHECK(product_gc(empty, c1) == c1);
}

TEST_CASE("split_gc on normal forms") {
    QMat j = standard_complex(2);
    GCSplitting sc = split_gc(from_complex(j));
    CHECK(sc.b == BField::zero(4));
    CHECK(sc.a == QMat::identity(4));
    CHECK(sc.complex_part == j);
    CHECK(sc.symplectic_part.rows() == 0);

    QMat w = standard_symplectic(2);
    GCSplitting ss = split_gc(from_symplectic(w));
    CHECK(ss.complex_part.rows() == 0);
    CHECK(ss.symplectic_part == ss.a.transpose() * w * ss.a);
    CHECK(verify_splitting(from_symplectic(w), ss));
}

TEST_CASE("split_gc round trip on scrambled products") {
    SeededRng rng(99);
    for (int t = 0; t < 40; ++t) {
        std::size_t mc = rng.uniform(0, 2), ms = rng.uniform(0, 2);
        GCStructure s = random_scrambled_product(rng, mc, ms);
        GCSplitting sp = split_gc(s);
        CHECK(sp.complex_part.rows() == 2 * type_of(s).k);
        CHECK(type_of(s).k == mc);
        CHECK(verify_splitting(s, sp));
    }
}

TEST_CASE("find_invariant_isotropic_complement") {
    GCStructure c = from_complex(standard_complex(1));
    QSub whole = QSub::whole(4);
    CHECK(find_invariant_isotropic_complement(c, whole, dual_part(2)) == primal_part(2));

    SeededRng rng(8);
    BField b(random_skew(rng, 4));
    QMat j = random_complex_structure(rng, 2);
    GCStructure sb = bfield_transform(from_complex(j), b);
    QSub l = find_invariant_isotropic_complement(sb, QSub::whole(8), dual_part(4));
    CHECK(image(sb.matrix(), l) == l);
    CHECK(is_isotropic(l, canonical_pairing(4)));
    CHECK(image(sb.matrix(), graph_of(b)) == graph_of(b));
    // Invariant complements differ from graph(b) by a J-invariant two-form.
    QMat delta = bfield_from_isotropic_complement(l, 4).matrix() - b.matrix();
    CHECK(j.transpose() * delta * j == delta);

    CHECK_THROWS(find_invariant_isotropic_complement(c, whole, QSub(4)));
}

TEST_CASE("courant bracket") {
    const std::size_t n = 2;
    GMat c1(4, 1), c2(4, 1);
    c1(1, 0) = Gaussian(1);
    c2(0, 0) = Gaussian(1);
    c2(3, 0) = Gaussian(2);
    CHECK(courant_bracket(PolySection::monomial_times({0, 0}, c1), PolySection::monomial_times({0, 0}, c2)) ==
          PolySection::zero(n));

    // [x1 d2, d1] = -d2
    PolySection s = PolySection::monomial_times({1, 0}, c1);
    PolySection t = PolySection::monomial_times({0, 0}, GMat{{Gaussian(1)}, {0}, {0}, {0}});
    PolySection expect = PolySection::monomial_times({0, 0}, GMat{{0}, {Gaussian(-1)}, {0}, {0}});
    CHECK(courant_bracket(s, t) == expect);

    SeededRng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        PolySection a = random_section(rng, 3, 2), b = random_section(rng, 3, 2), c = random_section(rng, 3, 1);
        Gaussian k = test::random_gaussian(rng);
        PolySection ab = courant_bracket(a, b);
        CHECK(ab == PolySection::zero(3) - courant_bracket(b, a));
        PolySection lin = a * k;
        lin += c;
        PolySection rhs = courant_bracket(a, b) * k;
        rhs += courant_bracket(c, b);
        CHECK(courant_bracket(lin, b) == rhs);
        CHECK(ab.degree() <= a.degree() + b.degree());
    }
}

TEST_CASE("eigenbundle closure") {
    SeededRng rng(21);
    CHECK(eigenbundle_closed(from_complex(random_complex_structure(rng, 1)), 2));
    CHECK(eigenbundle_closed(from_symplectic(random_symplectic(rng, 1)), 2));
    CHECK(eigenbundle_closed(random_scrambled_product(rng, 1, 1), 1));
    CHECK(plus_i_eigenbundle(from_complex(standard_complex(1))).dim() == 2);

    // L = span{(d1, dx2), (d2, dx1)}: [x1 (d1, dx2); (d2, dx1)] = (0, dx1) is not in L.
    GMat basis{{Gaussian(1), 0}, {0, Gaussian(1)}, {0, Gaussian(1)}, {Gaussian(1), 0}};
    GSub l = GSub::span(basis);
    CHECK_FALSE(subbundle_closed(l, 1));
}
