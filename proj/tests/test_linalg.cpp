#include "doctest.h"
#include "gqla/subspace.hpp"
#include "test_support.hpp"

using namespace gqla;

namespace {

QMat col(std::initializer_list<Rational> v) {
    QMat m(v.size(), 1);
    std::size_t i = 0;
    for (const auto& x : v) m(i++, 0) = x;
    return m;
}

QSub random_subspace(SeededRng& rng, std::size_t n, std::size_t gens) {
    return QSub::span(test::random_qmat(rng, n, gens, 2));
}

BilinearForm<Rational> hyperbolic(std::size_t n) {
    QMat g(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) g(i, n + i) = g(n + i, i) = make_rational(1, 2);
    return BilinearForm<Rational>(g);
}

}  // namespace

TEST_CASE("rank, kernel, solve") {
    CHECK(rank(QMat::identity(5)) == 5);
    CHECK(kernel(QMat{{1, 1}}) == QSub::span(col({1, -1})));
    auto s = solve(QMat{{2}}, QMat{{3}});
    REQUIRE(s);
    CHECK(s->particular == QMat{{make_rational(3, 2)}});
    CHECK(s->kernel.is_zero());
    CHECK_FALSE(solve(QMat{{1, 1}, {1, 1}}, col({1, 2})));
    CHECK_THROWS_AS(solve(QMat{{1}}, QMat(2, 1)), ShapeError);
}

TEST_CASE("inverse and determinant") {
    SeededRng rng(5);
    for (int t = 0; t < 30; ++t) {
        QMat a = test::random_qmat(rng, 4, 4);
        auto inv = inverse(a);
        if (determinant(a) == 0) {
            CHECK_FALSE(inv);
        } else {
            REQUIRE(inv);
            CHECK(a * *inv == QMat::identity(4));
        }
    }
}

TEST_CASE("intersect, sum, complement_in examples") {
    QSub e12 = QSub::coordinate(3, 0, 2), e23 = QSub::coordinate(3, 1, 2);
    CHECK(intersect(e12, e23) == QSub::coordinate(3, 1, 1));
    CHECK(complement_in(QSub::coordinate(2, 0, 1), QSub::whole(2)) == QSub::coordinate(2, 1, 1));
    CHECK(sum(e12, QSub(3)) == e12);
    CHECK_THROWS(complement_in(e12, e23));
    CHECK_THROWS_AS(sum(e12, QSub(2)), ShapeError);
}

TEST_CASE("Grassmann identity and complements on random subspaces") {
    SeededRng rng(17);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 2 + rng.uniform(0, 5);
        QSub s = random_subspace(rng, n, rng.uniform(0, n)), u = random_subspace(rng, n, rng.uniform(0, n));
        CHECK(intersect(s, u).dim() + sum(s, u).dim() == s.dim() + u.dim());
        QSub t_ = sum(s, u);
        QSub c = complement_in(s, t_);
        CHECK(intersect(c, s).is_zero());
        CHECK(sum(c, s) == t_);
    }
}

TEST_CASE("orthogonal complements for the hyperbolic pairing") {
    const std::size_t n = 3;
    auto q = hyperbolic(n);
    QSub vs = QSub::coordinate(2 * n, n, n), v = QSub::coordinate(2 * n, 0, n);
    CHECK(orthogonal_complement(vs, q) == vs);
    CHECK(is_isotropic(vs, q));
    CHECK(is_isotropic(v, q));
    CHECK_FALSE(is_nondegenerate_on(v, q));
    CHECK(is_nondegenerate_on(QSub::whole(2 * n), q));

    // Graph of b is isotropic iff b is skew.
    QMat skew{{0, 1, 2}, {-1, 0, 3}, {-2, -3, 0}}, symm{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
    CHECK(is_isotropic(QSub::span(vstack(QMat::identity(n), skew)), q));
    CHECK_FALSE(is_isotropic(QSub::span(vstack(QMat::identity(n), symm)), q));

    SeededRng rng(23);
    for (int t = 0; t < 40; ++t) {
        QSub s = random_subspace(rng, 2 * n, rng.uniform(0, 2 * n));
        QSub perp = orthogonal_complement(s, q);
        CHECK(s.dim() + perp.dim() == 2 * n);
        CHECK(orthogonal_complement(perp, q) == s);
    }
    CHECK_THROWS(BilinearForm<Rational>(QMat{{0, 1}, {0, 0}}));
}

TEST_CASE("gaussian subspaces") {
    const Gaussian i = Gaussian::i();
    GMat m{{Gaussian(1), i}, {-i, Gaussian(1)}};
    GSub k = kernel(m);
    REQUIRE(k.dim() == 1);
    CHECK((m * k.basis()).is_zero());
}
