#include "doctest.h"
#include "gqla/genq.hpp"
#include "gqla/random.hpp"

#include <chrono>

using namespace gqla;

namespace {

QMat r4_form() { return holomorphic_symplectic_real(1, 1, 0); }

std::vector<std::size_t> sorted_dims(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("complex-symplectic input on R^4") {
    QMat j = standard_complex(2), w = r4_form();
    CHECK(w(0, 2) == 1);
    CHECK(w(1, 3) == -1);
    CHECK(is_complex_symplectic_pair(j, w));
    GQReport rep;
    GQStructure g = from_complex_symplectic(j, w, &rep);
    CHECK(check_gq(g).valid);
    REQUIRE(rep.third_generator_sign.has_value());
    CHECK(*rep.third_generator_sign == -1);
    CHECK(g.gen(0) == from_complex(j).matrix());
    CHECK(g.gen(1) == from_symplectic(w).matrix());
}

TEST_CASE("Kahler-type input is rejected") {
    QMat j = standard_complex(2);
    CHECK_THROWS_AS(from_complex_symplectic(j, standard_symplectic(2)), InvalidStructure);
    CHECK_THROWS_AS(from_complex_symplectic(standard_complex(1), standard_symplectic(1)), InvalidStructure);
    SeededRng rng(5);
    for (int t = 0; t < 10; ++t) {
        auto [jk, wk] = random_kahler_type(rng, 2 + static_cast<std::size_t>(t % 3));
        CHECK_FALSE(is_complex_symplectic_pair(jk, wk));
        CHECK_THROWS_AS(from_complex_symplectic(jk, wk), InvalidStructure);
    }
}

TEST_CASE("random complex-symplectic inputs are valid") {
    SeededRng rng(6);
    for (int t = 0; t < 10; ++t) {
        auto [j, w] = random_complex_symplectic(rng, 1 + static_cast<std::size_t>(t % 2));
        GQStructure g = from_complex_symplectic(j, w);
        CHECK(check_gq(g).valid);
    }
}

TEST_CASE("check_gq rejects commuting generators") {
    QMat j = from_complex(standard_complex(1)).matrix();
    GQStructure g(j, j, j * j);
    GQReport r = check_gq(g);
    CHECK_FALSE(r.valid);
    CHECK(r.failure.find("anticommute") != std::string::npos);
}

TEST_CASE("classical structure from an isomorphism") {
    HypercomplexTriple e = HypercomplexTriple::standard(1);
    GQStructure g = from_co_cr(e, QMat::identity(4), QMat::identity(4));
    CHECK(check_gq(g).valid);
    for (std::size_t a = 0; a < 3; ++a) CHECK(g.gen(a) == block_diag(e.gen(a), QMat(-e.gen(a).transpose())));
    SheafInvariants s = sheaf_of_pair(g.pair());
    CHECK(s.minus == std::vector<int>{-1, -1});
    CHECK(s.plus == std::vector<int>{1, 1});
    CHECK_FALSE(s.has_torsion());
}

TEST_CASE("changing the section is a B-field transform") {
    PairUE p = pair_imh_h();
    QMat iota = p.u.basis();
    QMat rho = iota.transpose();
    QMat s0 = solve_particular(rho, QMat::identity(3)).value();
    QMat kb = null_space(rho);
    QMat s1 = s0 + kb * QMat{{1, -2, 3}};
    GQStructure g0 = from_cr(p.e, iota, s0), g1 = from_cr(p.e, iota, s1);
    CHECK(check_gq(g0).valid);
    CHECK(check_gq(g1).valid);
    CHECK(g0.n() == 4);
    CHECK_FALSE(g0 == g1);
    // Both have the same sheaf and are related by a B-field together with a GL transform.
    CHECK(sheaf_of_pair(g0.pair()) == sheaf_of_pair(g1.pair()));
    Certificate c0 = classify(g0), c1 = classify(g1);
    CHECK(verify_certificate(g0, c0));
    CHECK(verify_certificate(g1, c1));
}

TEST_CASE("frames and chart points") {
    SeededRng rng(9);
    HypercomplexTriple e = HypercomplexTriple::standard(1);
    for (int t = 0; t < 20; ++t) {
        QMat r = rotation_from_quaternion(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), 1);
        SpherePoint p{r(0, 0), r(1, 0), r(2, 0)};
        QMat f = frame_for(p);
        CHECK(is_rotation(f));
        CHECK(f(0, 0) == p.a);
        ChartPoint l = lambda_from_admissible(p);
        SpherePoint back = admissible_from_lambda(e, l);
        CHECK(back.a == p.a);
        CHECK(back.b == p.b);
        CHECK(back.c == p.c);
    }
    CHECK(lambda_from_admissible({-1, 0, 0}).infinite);
    CHECK(is_rotation(frame_for({-1, 0, 0})));
}

TEST_CASE("product of two torsion structures is rejected") {
    GQStructure g = from_complex_symplectic(standard_complex(2), r4_form());
    CHECK_THROWS_AS(product_gq(g, g), std::invalid_argument);
    GQStructure c = from_co_cr(HypercomplexTriple::standard(1), QMat::identity(4), QMat::identity(4));
    CHECK(product_gq(g, c).n() == 8);
}

TEST_CASE("classify the R^4 complex-symplectic structure") {
    GQStructure g = from_complex_symplectic(standard_complex(2), r4_form());
    Certificate c = classify(g);
    CHECK_FALSE(c.partial);
    CHECK_FALSE(c.cr.has_value());
    REQUIRE(c.cs.size() == 1);
    CHECK(c.cs[0].dim() == 4);
    CHECK(to_string(c.cs[0].support[0]) == "0");
    CHECK(to_string(c.cs[0].support[1]) == "inf");
    REQUIRE(c.invariants.torsion.size() == 2);
    for (const auto& t : c.invariants.torsion) CHECK(t.lengths == std::vector<int>{1, 1});
    CHECK(verify_certificate(g, c));

    // Negating the form is a rotation of the sphere, so it still verifies for a single factor.
    Certificate neg = c;
    neg.cs[0].w = -neg.cs[0].w;
    CHECK(verify_certificate(g, neg));
    Certificate bad = c;
    bad.cs[0].w = bad.cs[0].w * Rational(2);
    CHECK_FALSE(verify_certificate(g, bad));
}

TEST_CASE("classify scrambled composites") {
    SeededRng rng(21);
    std::vector<CompositeSpec> specs = {{4, {}}, {0, {4, 4}}, {4, {4}}, {8, {4, 8}}};
    for (const auto& spec : specs) {
        CompositeTruth t = random_composite(rng, spec);
        REQUIRE(check_gq(t.g).valid);
        auto t0 = std::chrono::steady_clock::now();
        Certificate c = classify(t.g, {7});
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        MESSAGE("n=" << t.g.n() << " classify " << secs << " s");
        CHECK(sorted_dims(c.factor_dims()) == sorted_dims(t.factor_dims));
        CHECK(verify_certificate(t.g, c));
        std::vector<std::array<ChartPoint, 2>> got;
        for (const auto& f : c.cs) got.push_back(f.support);
        CHECK(got.size() == t.supports.size());
        Certificate perm = c;
        std::reverse(perm.cs.begin(), perm.cs.end());
        CHECK(verify_certificate(t.g, perm));
        if (c.cs.size() >= 2 || (c.cr && !c.cs.empty())) {
            Certificate bad = c;
            bad.cs.back().w = -bad.cs.back().w;
            CHECK_FALSE(verify_certificate(t.g, bad));
        }
    }
}

TEST_CASE("irrational torsion gives a partial certificate") {
    GQStructure g = irrational_torsion_example();
    GQReport r = check_gq(g);
    CHECK_MESSAGE(r.valid, r.failure);
    Certificate c = classify(g);
    CHECK(c.partial);
    // Both quadratic factors share their powers, so they stay together in the coprime base.
    CHECK(c.field_extension_required == std::vector<std::string>{"x^4 + x^2 + 1"});
    CHECK(c.invariants.total_torsion_length() == 8);
    CHECK_FALSE(verify_certificate(g, c));
}
