#include "doctest.h"
#include "gqla/random.hpp"
#include "gqla/sheaf.hpp"
#include "kronecker_oracle.hpp"

using namespace gqla;

namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

SheafInvariants combine(const std::vector<SheafInvariants>& parts) {
    SheafInvariants out;
    for (const auto& p : parts) {
        out.minus.insert(out.minus.end(), p.minus.begin(), p.minus.end());
        out.plus.insert(out.plus.end(), p.plus.begin(), p.plus.end());
        out.torsion.insert(out.torsion.end(), p.torsion.begin(), p.torsion.end());
    }
    out.minus = sorted(out.minus);
    out.plus = sorted(out.plus);
    return out;
}

int bookkeeping(const SheafInvariants& s) {
    int t = 0;
    for (int x : s.minus) t += x;
    for (int x : s.plus) t -= x;
    return t - s.total_torsion_length();
}

/// Rotated copy of a pair: same subspace, rotated representative triple.
PairUE rotated(const PairUE& p, const QMat& r) { return {p.e.rotated(r), p.u}; }

}  // namespace

TEST_CASE("chart points and antipode") {
    CHECK(antipode(ChartPoint::at(Gaussian(0))) == ChartPoint::infinity());
    CHECK(antipode(ChartPoint::infinity()) == ChartPoint::at(Gaussian(0)));
    CHECK(antipode(ChartPoint::at(Gaussian::i())) == ChartPoint::at(-Gaussian::i()));
    SeededRng rng(1);
    for (int t = 0; t < 30; ++t) {
        ChartPoint p = ChartPoint::at(test::random_gaussian(rng));
        CHECK(antipode(antipode(p)) == p);
        CHECK(parse_chart_point(to_string(p)) == p);
    }
    CHECK(parse_chart_point("inf").infinite);
    CHECK(parse_chart_point("-1/2i") == ChartPoint::at(Gaussian(0, make_rational(-1, 2))));
}

TEST_CASE("pencil shapes") {
    CHECK(pencil_of_pair(pair_h_h()).rows() == 0);
    CHECK(pencil_of_pair(pair_h_h()).cols() == 2);
    Pencil z = pencil_of_pair(pair_zero_h());
    CHECK(z.rows() == 4);
    CHECK(z.cols() == 2);
    SeededRng rng(2);
    CHECK(test::sampled_normal_rank(rng, z.a, z.b) == 2);
    CHECK(pencil_of_pair(pair_imh_h()).rows() == 1);
}

TEST_CASE("kronecker examples") {
    Pencil lam{GMat{{0}}, GMat{{Gaussian(1)}}};
    KroneckerInvariants k = kronecker(lam);
    REQUIRE(k.finite.size() == 1);
    CHECK(k.finite[0].root == Gaussian(0));
    CHECK(k.finite[0].degrees == std::vector<int>{1});
    CHECK(k.column_indices.empty());
    CHECK(k.row_indices.empty());

    Pencil empty{GMat(0, 2), GMat(0, 2)};
    CHECK(kronecker(empty).column_indices == std::vector<int>{0, 0});

    SeededRng rng(3);
    for (int t = 0; t < 5; ++t) {
        Pencil g{test::random_gmat(rng, 3, 2), test::random_gmat(rng, 3, 2)};
        KroneckerInvariants kg = kronecker(g);
        CHECK(kg.row_indices == std::vector<int>{2});
        CHECK(kg.column_indices.empty());
        CHECK(kg.regular_degree() == 0);
        CHECK(test::staircase_indices(GMat(g.a.transpose()), GMat(g.b.transpose())) == std::vector<int>{2});
    }
}

TEST_CASE("kronecker against constructed canonical forms and the staircase oracle") {
    SeededRng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        test::PencilBuilder pb;
        std::size_t budget = 8;
        while (true) {
            int kind = static_cast<int>(rng.uniform(0, 3));
            int size = static_cast<int>(rng.uniform(0, 2));
            std::size_t need = static_cast<std::size_t>(size + 1);
            if (pb.a.rows() + need > budget || pb.a.cols() + need > budget) break;
            if (kind == 0) pb.add_l(size);
            if (kind == 1) pb.add_lt(size);
            if (kind == 2) pb.add_jordan(Gaussian(Rational(rng.uniform(-2, 2)), Rational(rng.uniform(-1, 1))), size + 1);
            if (kind == 3) pb.add_infinite(size + 1);
            if (rng.uniform(0, 4) == 0) break;
        }
        if (pb.a.rows() == 0 && pb.a.cols() == 0) continue;
        GMat p = test::random_invertible_gmat(rng, pb.a.rows()), q = test::random_invertible_gmat(rng, pb.a.cols());
        Pencil pen{p * pb.a * q, p * pb.b * q};
        KroneckerInvariants k = kronecker(pen);
        CHECK(k.column_indices == sorted(pb.eps));
        CHECK(k.row_indices == sorted(pb.eta));
        CHECK(k.infinite == sorted(pb.infinite));
        CHECK(k.column_indices == test::staircase_indices(pen.a, pen.b));
        CHECK(k.row_indices == test::staircase_indices(GMat(pen.a.transpose()), GMat(pen.b.transpose())));
        int jordan_total = 0;
        for (const auto& [root, size] : pb.jordan) jordan_total += size;
        int finite_total = 0;
        for (const auto& f : k.finite)
            for (int d : f.degrees) finite_total += d;
        CHECK(finite_total == jordan_total);
        // Minimal kernel basis really is a kernel basis with the reported degrees.
        PolyMatrix prod = pen.matrix() * k.kernel_basis;
        for (std::size_t r = 0; r < prod.rows(); ++r)
            for (std::size_t c = 0; c < prod.cols(); ++c) CHECK(prod(r, c).is_zero());
        CHECK(column_degrees(k.kernel_basis) == k.column_indices);
    }
}

TEST_CASE("kronecker with irrational divisors keeps them symbolic") {
    // Companion matrix of x^2 + 2.
    Pencil p{GMat{{0, Gaussian(2)}, {Gaussian(-1), 0}}, GMat::identity(2)};
    KroneckerInvariants k = kronecker(p);
    CHECK(k.finite.empty());
    REQUIRE(k.symbolic.size() == 1);
    CHECK(k.symbolic[0].poly.degree() == 2);
    CHECK(k.symbolic[0].powers == std::vector<int>{1});
    SheafInvariants s = sheaf_from_kronecker(k);
    CHECK(s.total_torsion_length() == 2);
}

TEST_CASE("sheaf goldens") {
    SheafInvariants hh = sheaf_of_pair(pair_h_h());
    CHECK(hh.minus == std::vector<int>{-1, -1});
    CHECK(hh.plus.empty());
    CHECK_FALSE(hh.has_torsion());
    SheafInvariants imh = sheaf_of_pair(pair_imh_h());
    CHECK(imh.minus == std::vector<int>{-2});
    CHECK(imh.plus.empty());
    SheafInvariants zero = sheaf_of_pair(pair_zero_h());
    CHECK(zero.minus.empty());
    CHECK(zero.plus == std::vector<int>{1, 1});
    SheafInvariants r = sheaf_of_pair(pair_r_h());
    CHECK(r.minus.empty());
    CHECK(r.plus == std::vector<int>{2});
    for (const auto& s : {hh, imh, zero, r}) CHECK(bookkeeping(s) == -2);
}

TEST_CASE("CR and co-CR") {
    CHECK(is_cr(pair_h_h()));
    CHECK(is_cr(pair_imh_h()));
    CHECK_FALSE(is_cr(pair_r_h()));
    CHECK(is_co_cr(pair_r_h()));
    CHECK(is_co_cr(pair_zero_h()));
    SeededRng rng(6);
    for (int t = 0; t < 15; ++t) {
        PairUE p{HypercomplexTriple::standard(2), QSub::span(random_int_matrix(rng, 8, rng.uniform(0, 8)))};
        CHECK(is_cr(p) == is_co_cr(dual_pair(p)));
        CHECK(bookkeeping(sheaf_of_pair(p)) == -4);
    }
}

TEST_CASE("products of pairs") {
    PairUE p = product_pairs(pair_h_h(), pair_r_h());
    CHECK(p.dim() == 8);
    SheafInvariants s = sheaf_of_pair(p);
    CHECK(s.minus == std::vector<int>{-1, -1});
    CHECK(s.plus == std::vector<int>{2});
    CHECK_FALSE(s.has_torsion());
}

TEST_CASE("admissible_from_lambda") {
    HypercomplexTriple h = HypercomplexTriple::standard(2);
    SpherePoint z = admissible_from_lambda(h, ChartPoint::at(Gaussian(0)));
    CHECK((z.a == 1 && z.b == 0 && z.c == 0));
    SpherePoint inf = admissible_from_lambda(h, ChartPoint::infinity());
    CHECK((inf.a == -1 && inf.b == 0 && inf.c == 0));
    SeededRng rng(7);
    for (int t = 0; t < 20; ++t) {
        Gaussian lam = t == 0 ? Gaussian(1) : test::random_gaussian(rng);
        SpherePoint p = admissible_from_lambda(h, ChartPoint::at(lam));
        CHECK(on_unit_sphere(p));
        // Eigen-equation check.
        GMat v = antiholomorphic_basis(h);
        GMat f = v + to_gaussian(h.J()) * v * lam;
        CHECK(to_gaussian(admissible(h, p)) * f == f * (-Gaussian::i()));
        // Closed form of the chart.
        Rational n2 = lam.norm(), den = 1 + n2;
        CHECK(p.a == (1 - n2) / den);
        CHECK(p.b == 2 * lam.im() / den);
        CHECK(p.c == -2 * lam.re() / den);
    }
}

TEST_CASE("representative independence of the sheaf") {
    SeededRng rng(8);
    QMat rot = rotation_from_quaternion(1, 2, 2, -1);
    for (int t = 0; t < 10; ++t) {
        PairUE p{HypercomplexTriple::standard(2), QSub::span(random_int_matrix(rng, 8, rng.uniform(0, 8)))};
        SheafInvariants a = sheaf_of_pair(p), b = sheaf_of_pair(rotated(p, rot));
        CHECK(a.minus == b.minus);
        CHECK(a.plus == b.plus);
        CHECK(a.total_torsion_length() == b.total_torsion_length());
    }
}

TEST_CASE("decompose_pair") {
    PairUE cr = pair_imh_h();
    PairDecomposition d = decompose_pair(cr);
    CHECK(d.e_minus == QSub::whole(4));
    CHECK(d.tor.space.is_zero());
    CHECK(d.pos.space.is_zero());

    PairDecomposition r = decompose_pair(pair_r_h());
    CHECK(r.e_minus.is_zero());
    CHECK(r.e_minus_torsion.is_zero());
    CHECK(r.pos.space == QSub::whole(4));

    PairUE prod = product_pairs(pair_imh_h(), pair_r_h());
    PairDecomposition pd = decompose_pair(prod);
    CHECK(sheaf_of_pair(pd.neg.pair) == sheaf_of_pair(pair_imh_h()));
    CHECK(sheaf_of_pair(pd.pos.pair) == sheaf_of_pair(pair_r_h()));
    CHECK(pd.tor.space.is_zero());

    SeededRng rng(10);
    QMat rot = rotation_from_quaternion(2, -1, 1, 1);
    for (int t = 0; t < 10; ++t) {
        PairUE p{HypercomplexTriple::standard(3), QSub::span(random_int_matrix(rng, 12, rng.uniform(1, 11)))};
        PairDecomposition dp = decompose_pair(p);
        SheafInvariants whole = sheaf_of_pair(p);
        SheafInvariants neg = sheaf_of_pair(dp.neg.pair), tor = sheaf_of_pair(dp.tor.pair),
                        pos = sheaf_of_pair(dp.pos.pair);
        CHECK(neg.plus.empty());
        CHECK_FALSE(neg.has_torsion());
        CHECK(tor.minus.empty());
        CHECK(tor.plus.empty());
        CHECK(pos.minus.empty());
        CHECK_FALSE(pos.has_torsion());
        SheafInvariants sum = combine({neg, tor, pos});
        CHECK(sum.minus == whole.minus);
        CHECK(sum.plus == whole.plus);
        CHECK(sum.total_torsion_length() == whole.total_torsion_length());
        CHECK(dp.neg.space.dim() + dp.tor.space.dim() + dp.pos.space.dim() == 12);
        CHECK(intersect(p.u, dp.e_minus_torsion).dim() + intersect(p.u, dp.pos.space).dim() == p.u.dim());
        PairDecomposition dr = decompose_pair(rotated(p, rot));
        CHECK(dr.e_minus == dp.e_minus);
        CHECK(dr.e_minus_torsion == dp.e_minus_torsion);
    }
}
