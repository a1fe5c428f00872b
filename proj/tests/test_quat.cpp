#include "doctest.h"
#include "gqla/quat.hpp"
#include "gqla/random.hpp"
#include "test_support.hpp"

using namespace gqla;

namespace {

/// Left and right multiplication by w + xi + yj + zk on H, basis (1, i, j, k).
QMat left_mult(long w, long x, long y, long z) {
    return QMat{{w, -x, -y, -z}, {x, w, -z, y}, {y, z, w, -x}, {z, -y, x, w}};
}
QMat right_mult(long w, long x, long y, long z) {
    return QMat{{w, -x, -y, -z}, {x, w, z, -y}, {y, -z, w, x}, {z, y, -x, w}};
}

}  // namespace

TEST_CASE("hypercomplex triples") {
    HypercomplexTriple h = HypercomplexTriple::quaternions();
    CHECK(h.I() == left_mult(0, 1, 0, 0));
    CHECK(h.J() == left_mult(0, 0, 1, 0));
    CHECK(h.K() == left_mult(0, 0, 0, 1));
    CHECK_THROWS_AS(HypercomplexTriple(h.I(), h.I()), InvalidQuaternionic);
    CHECK_THROWS_AS(HypercomplexTriple(QMat::identity(4), h.J()), InvalidQuaternionic);
    HypercomplexTriple d = h.dual();
    CHECK(d.K() == QMat(-h.K().transpose()));
    CHECK(HypercomplexTriple::standard(3).dim() == 12);
}

TEST_CASE("admissible structures") {
    HypercomplexTriple h = HypercomplexTriple::standard(2);
    CHECK(admissible(h, {1, 0, 0}) == h.I());
    QMat x = admissible(h, {make_rational(3, 5), make_rational(4, 5), 0});
    CHECK(x == (h.I() * Rational(3) + h.J() * Rational(4)) * make_rational(1, 5));
    CHECK(x * x == -QMat::identity(8));
    CHECK_THROWS_AS(admissible(h, {1, 1, 0}), InvalidQuaternionic);
    // Rational sphere points from Pythagorean quadruples.
    const long quads[][4] = {{1, 2, 2, 3}, {2, 3, 6, 7}, {1, 4, 8, 9}, {2, 6, 9, 11}, {-4, 4, 7, 9}};
    for (const auto& q : quads) {
        SpherePoint p{make_rational(q[0], q[3]), make_rational(q[1], q[3]), make_rational(q[2], q[3])};
        QMat y = admissible(h, p);
        CHECK(y * y == -QMat::identity(8));
    }
}

TEST_CASE("quaternionic_map_check") {
    HypercomplexTriple h = HypercomplexTriple::quaternions();
    CHECK(quaternionic_map_check(QMat::identity(4), h, h) == QMat::identity(3));
    CHECK(quaternionic_map_check(QMat(4, 4), h, h) == QMat::identity(3));
    // Right multiplications commute with the left action.
    auto r = quaternionic_map_check(right_mult(1, 2, -1, 3), h, h);
    REQUIRE(r);
    CHECK(*r == QMat::identity(3));
    // Left multiplication by u intertwines X with u X u^{-1}.
    auto l = quaternionic_map_check(left_mult(1, 2, -1, 3), h, h);
    REQUIRE(l);
    CHECK(*l == rotation_from_quaternion(1, 2, -1, 3));
    CHECK(is_rotation(*l));

    SeededRng rng(5);
    for (int t = 0; t < 20; ++t) CHECK_FALSE(quaternionic_map_check(random_int_matrix(rng, 4, 4, 3), h, h));
    CHECK_THROWS_AS(quaternionic_map_check(QMat(4, 8), h, h), ShapeError);
}

TEST_CASE("rotated representatives define the same structure") {
    HypercomplexTriple h = HypercomplexTriple::standard(2);
    QMat r = rotation_from_quaternion(2, 1, 0, -1);
    HypercomplexTriple hr = h.rotated(r);
    CHECK(same_structure(h, hr));
    auto t = quaternionic_map_check(QMat::identity(8), h, hr);
    REQUIRE(t);
    CHECK(*t == r.transpose());
    CHECK(same_structure(h, HypercomplexTriple(h.I(), QMat(-h.J()))));
    // The right action spans a different subalgebra of End(H).
    HypercomplexTriple h1 = HypercomplexTriple::quaternions();
    CHECK_FALSE(same_structure(h1, HypercomplexTriple(right_mult(0, 1, 0, 0), right_mult(0, 0, 1, 0))));
}

TEST_CASE("pairs and duals") {
    PairUE d = dual_pair(pair_h_h());
    CHECK(d.u.is_zero());
    CHECK(dual_pair(pair_r_h()).u.dim() == 3);
    SeededRng rng(9);
    for (int t = 0; t < 10; ++t) {
        PairUE p{HypercomplexTriple::standard(2), QSub::span(random_int_matrix(rng, 8, rng.uniform(0, 8)))};
        PairUE dd = dual_pair(dual_pair(p));
        CHECK(dd.u == p.u);
        CHECK(dd.e == p.e);
    }
    PairUE s = direct_sum_pairs(pair_h_h(), pair_r_h());
    CHECK(s.dim() == 8);
    CHECK(s.u.dim() == 5);
}

TEST_CASE("pair_morphisms") {
    auto endo = pair_morphisms(pair_h_h(), pair_h_h());
    // Quaternionic endomorphisms of H are right multiplications: dimension 4.
    CHECK(endo.size() == 4);
    QMat flat(16, endo.size());
    for (std::size_t k = 0; k < endo.size(); ++k)
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) flat(c * 4 + r, k) = endo[k](r, c);
    QMat id(16, 1);
    for (std::size_t r = 0; r < 4; ++r) id(r * 4 + r, 0) = 1;
    CHECK(QSub::span(flat).contains(id));

    PairUE empty{HypercomplexTriple(), QSub(0)};
    CHECK(pair_morphisms(pair_h_h(), empty).empty());
    // Maps preserving the real line: right multiplication by reals.
    CHECK(pair_morphisms(pair_r_h(), pair_r_h()).size() == 1);
    CHECK(pair_morphisms(pair_h_h(), pair_zero_h()).empty());

    // Twisted by a rotation: left multiplications by the matching unit quaternion appear.
    QMat rot = rotation_from_quaternion(1, 2, -1, 3);
    auto tw = pair_morphisms(pair_h_h(), pair_h_h(), rot);
    CHECK(tw.size() == 4);
    for (const auto& t : tw) {
        auto back = quaternionic_map_check(t, HypercomplexTriple::quaternions(), HypercomplexTriple::quaternions());
        REQUIRE(back);
        CHECK(*back == rot);
    }
}
