#include "gc_support.hpp"
#include "gqla/genc.hpp"
#include "gqla/genq.hpp"
#include "gqla/sheaf.hpp"
#include "kronecker_oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace gqla;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
    std::printf("criterion %d %s: %s (%s)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

/// First failure message wins; later ones are counted.
struct Tally {
    int checked = 0, bad = 0;
    std::string first;
    void check(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (bad++ == 0) first = what;
    }
    std::string summary() const {
        std::ostringstream s;
        s << (checked - bad) << "/" << checked << " checks";
        if (bad) s << ", first failure: " << first;
        return s.str();
    }
};

template <class T>
std::vector<T> sorted(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// ---------------------------------------------------------------------------

Outcome sheaf_goldens() {
    struct Golden {
        const char* name;
        PairUE pair;
        std::vector<int> minus, plus;
    };
    std::vector<Golden> cases = {{"(H,H)", pair_h_h(), {-1, -1}, {}},
                                 {"(ImH,H)", pair_imh_h(), {-2}, {}},
                                 {"(0,H)", pair_zero_h(), {}, {1, 1}},
                                 {"(R,H)", pair_r_h(), {}, {2}}};
    Outcome o;
    std::ostringstream d;
    for (const auto& c : cases) {
        auto t0 = Clock::now();
        SheafInvariants s = sheaf_of_pair(c.pair);
        double secs = seconds_since(t0);
        bool ok = s.minus == c.minus && s.plus == c.plus && s.torsion.empty() && secs < 1.0;
        o.pass = o.pass && ok;
        d << c.name << (ok ? " ok " : " WRONG ") << secs << "s; ";
    }
    o.detail = d.str();
    return o;
}

Outcome gc_splitting() {
    SeededRng rng(1001);
    Tally t;
    auto t0 = Clock::now();
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t half = static_cast<std::size_t>(rng.uniform(1, 6));  // n = 2 * half <= 12
        std::size_t mc = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(half)));
        GCStructure s = test::random_scrambled_product(rng, mc, half - mc);
        GCSplitting sp = split_gc(s);
        const std::string tag = "trial " + std::to_string(trial);
        t.check(verify_splitting(s, sp), tag + ": reconstruction");
        t.check(type_of(s).k == mc, tag + ": type_of");
        t.check(sp.complex_part.rows() == 2 * mc, tag + ": complex part size");
        t.check(sp.symplectic_part.rows() == 2 * (half - mc), tag + ": symplectic part size");
    }
    double secs = seconds_since(t0);
    Outcome o{t.bad == 0 && secs < 60.0, t.summary()};
    o.detail += ", " + std::to_string(secs) + " s";
    return o;
}

struct RoundTrip {
    CompositeTruth truth;
    Certificate cert;
    SheafInvariants fresh;
};

/// Point -> lengths for the ground truth of a composite.
std::map<std::string, std::vector<int>> truth_torsion(const CompositeTruth& t) {
    std::map<std::string, std::vector<int>> out;
    for (std::size_t k = 0; k < t.supports.size(); ++k)
        for (const auto& p : t.supports[k]) out[to_string(p)] = sorted(t.lengths[k]);
    return out;
}

std::map<std::string, std::vector<int>> computed_torsion(const SheafInvariants& s) {
    std::map<std::string, std::vector<int>> out;
    for (const auto& e : s.torsion) out[e.support_string()] = sorted(e.lengths);
    return out;
}

std::set<std::pair<std::string, std::string>> support_pairs(std::vector<std::array<ChartPoint, 2>> v) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto& p : v) {
        if (chart_less(p[1], p[0])) std::swap(p[0], p[1]);
        out.insert({to_string(p[0]), to_string(p[1])});
    }
    return out;
}

std::vector<RoundTrip> round_trips;

Outcome classification() {
    SeededRng rng(2024);
    Tally t;
    auto t0 = Clock::now();
    for (int trial = 0; trial < 100; ++trial) {
        CompositeSpec spec;
        spec.cr_dim = rng.uniform(0, 1) ? 8 : 4;
        std::size_t total = spec.cr_dim;
        const long count = rng.uniform(0, 3);
        for (long i = 0; i < count; ++i) {
            std::size_t d = rng.uniform(0, 1) ? 8 : 4;
            if (total + d > 24) d = 4;
            if (total + d > 24) break;
            spec.cs_dims.push_back(d);
            total += d;
        }
        const std::string tag = "trial " + std::to_string(trial);
        RoundTrip r;
        r.truth = random_composite(rng, spec);
        try {
            r.cert = classify(r.truth.g, {static_cast<std::uint64_t>(trial)});
        } catch (const std::exception& e) {
            t.check(false, tag + ": classify threw " + e.what());
            continue;
        }
        r.fresh = sheaf_of_pair(r.truth.g.pair());
        t.check(!r.cert.partial, tag + ": partial");
        t.check(sorted(r.cert.factor_dims()) == sorted(r.truth.factor_dims), tag + ": factor dims");
        std::vector<std::array<ChartPoint, 2>> got;
        for (const auto& f : r.cert.cs) got.push_back(f.support);
        t.check(support_pairs(got) == support_pairs(r.truth.supports), tag + ": support pairs");
        t.check(computed_torsion(r.fresh) == truth_torsion(r.truth), tag + ": torsion lengths");
        t.check(r.cert.invariants == r.fresh, tag + ": certificate invariants");
        t.check(verify_certificate_report(r.truth.g, r.cert, r.fresh).ok, tag + ": verify_certificate");
        round_trips.push_back(std::move(r));
    }
    double secs = seconds_since(t0);
    Outcome o{t.bad == 0 && round_trips.size() == 100 && secs < 600.0, t.summary()};
    o.detail += ", " + std::to_string(secs) + " s";
    return o;
}

Outcome duality() {
    Tally t;
    for (std::size_t i = 0; i < round_trips.size(); ++i) {
        const SheafInvariants& s = round_trips[i].fresh;
        std::vector<int> neg;
        for (int x : s.plus) neg.push_back(-x);
        const std::string tag = "structure " + std::to_string(i);
        t.check(sorted(neg) == sorted(s.minus), tag + ": minus != -plus");
        for (const auto& e : s.torsion) {
            if (!e.point) {
                t.check(false, tag + ": symbolic support");
                continue;
            }
            ChartPoint a = antipode(*e.point);
            bool found = false;
            for (const auto& f : s.torsion) found = found || (f.point && *f.point == a && sorted(f.lengths) == sorted(e.lengths));
            t.check(found, tag + ": antipode of " + to_string(*e.point));
        }
    }
    return {t.bad == 0 && !round_trips.empty(), t.summary() + " over " + std::to_string(round_trips.size()) + " structures"};
}

Outcome zero_morphisms() {
    Tally t;
    SeededRng rng(55);
    std::size_t pairs = 0;
    for (const auto& r : round_trips) {
        for (const auto& f : r.cert.cs) {
            if (pairs == 20) break;
            PairUE p = f.structure().pair();
            SheafInvariants s = sheaf_of_pair(p);
            const std::string tag = "pair " + std::to_string(pairs);
            t.check(s.minus.empty() && s.plus.empty() && s.has_torsion(), tag + ": not a torsion pair");
            std::vector<QMat> rotations = {QMat::identity(3)};
            for (int k = 0; k < 2; ++k)
                rotations.push_back(rotation_from_quaternion(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), 1));
            for (const auto& rot : rotations) {
                t.check(pair_morphisms(p, pair_r_h(), rot).empty(), tag + ": nonzero morphism to (R,H)");
                t.check(pair_morphisms(p, pair_zero_h(), rot).empty(), tag + ": nonzero morphism to (0,H)");
            }
            ++pairs;
        }
    }
    return {t.bad == 0 && pairs == 20, t.summary() + " over " + std::to_string(pairs) + " torsion pairs"};
}

Outcome complex_symplectic_gate() {
    SeededRng rng(66);
    Tally t;
    for (int trial = 0; trial < 50; ++trial) {
        auto [j, w] = random_complex_symplectic(rng, 1 + static_cast<std::size_t>(trial % 2));
        const std::string tag = "valid " + std::to_string(trial);
        t.check(QMat(j.transpose() * w * j) == -w, tag + ": oracle says (1,1) part is nonzero");
        t.check(is_complex_symplectic_pair(j, w), tag + ": predicate");
        try {
            GQStructure g = from_complex_symplectic(j, w);
            const auto& x = g.gens();
            t.check(check_gq(g).valid, tag + ": check_gq");
            t.check(QMat(x[0] * x[1]) == -QMat(x[1] * x[0]), tag + ": I, J do not anticommute");
        } catch (const std::exception& e) {
            t.check(false, tag + ": rejected: " + e.what());
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto [j, w] = random_kahler_type(rng, 1 + static_cast<std::size_t>(trial % 4));
        const std::string tag = "invalid " + std::to_string(trial);
        t.check(QMat(j.transpose() * w * j) != -w, tag + ": oracle says (1,1) part vanishes");
        t.check(!is_complex_symplectic_pair(j, w), tag + ": predicate");
        bool threw = false;
        try {
            from_complex_symplectic(j, w);
        } catch (const InvalidStructure&) {
            threw = true;
        }
        t.check(threw, tag + ": accepted");
    }
    return {t.bad == 0, t.summary()};
}

/// Constant subbundles that are not closed: (d_a + s dx_b, d_b + t dx_a) with s + t != 0 pair
/// nontrivially, and [x_a u, v] picks up <u, v> dx_a outside the span.
GSub non_involutive_control(SeededRng& rng, std::size_t n) {
    const std::size_t a = 0, b = 1;
    GMat basis(2 * n, 2);
    basis(a, 0) = Gaussian(1);
    basis(n + b, 0) = Gaussian(Rational(rng.uniform(1, 3)));
    basis(b, 1) = Gaussian(1);
    basis(n + a, 1) = Gaussian(Rational(rng.uniform(1, 3)));
    // Linear coordinate changes and constant B-fields preserve the bracket.
    QMat psi = bfield_matrix(BField(random_skew(rng, n))) * gl_matrix(random_invertible(rng, n));
    GMat psi_c(2 * n, 2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j) psi_c(i, j) = Gaussian(psi(i, j));
    return GSub::span(GMat(psi_c * basis));
}

Outcome integrability() {
    SeededRng rng(77);
    Tally t;
    auto t0 = Clock::now();
    for (int trial = 0; trial < 50; ++trial) {
        GCStructure s;
        switch (trial % 3) {
            case 0: s = from_complex(random_complex_structure(rng, 1 + trial % 2)); break;
            case 1: s = from_symplectic(random_symplectic(rng, 1 + trial % 2)); break;
            default: s = test::random_scrambled_product(rng, trial % 2, 1 - trial % 2); break;
        }
        t.check(eigenbundle_closed(s, 2), "structure " + std::to_string(trial) + " reported non-involutive");
    }
    for (int trial = 0; trial < 10; ++trial) {
        GSub l = non_involutive_control(rng, 2 + static_cast<std::size_t>(trial % 2));
        t.check(!subbundle_closed(l, 2), "control " + std::to_string(trial) + " reported closed");
    }
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        PolySection a = test::random_section(rng, n, 2), b = test::random_section(rng, n, 2), c = test::random_section(rng, n, 1);
        Gaussian k = test::random_gaussian(rng);
        t.check(courant_bracket(a, b) == PolySection::zero(n) - courant_bracket(b, a), "antisymmetry");
        PolySection lin = a * k;
        lin += c;
        PolySection rhs = courant_bracket(a, b) * k;
        rhs += courant_bracket(c, b);
        t.check(courant_bracket(lin, b) == rhs, "linearity in the first slot");
        PolySection lin2 = b * k;
        lin2 += c;
        PolySection rhs2 = courant_bracket(a, b) * k;
        rhs2 += courant_bracket(a, c);
        t.check(courant_bracket(a, lin2) == rhs2, "linearity in the second slot");
    }
    double secs = seconds_since(t0);
    Outcome o{t.bad == 0 && secs < 60.0, t.summary()};
    o.detail += ", " + std::to_string(secs) + " s";
    return o;
}

Outcome kronecker_oracle() {
    SeededRng rng(88);
    Tally t;
    for (int trial = 0; trial < 100; ++trial) {
        Pencil pen;
        std::optional<test::PencilBuilder> built;
        if (trial % 2 == 0) {
            test::PencilBuilder pb;
            while (true) {
                int kind = static_cast<int>(rng.uniform(0, 3));
                int size = static_cast<int>(rng.uniform(0, 2));
                std::size_t need = static_cast<std::size_t>(size + 1);
                if (pb.a.rows() + need > 8 || pb.a.cols() + need > 8) break;
                if (kind == 0) pb.add_l(size);
                if (kind == 1) pb.add_lt(size);
                if (kind == 2) pb.add_jordan(Gaussian(Rational(rng.uniform(-2, 2)), Rational(rng.uniform(-1, 1))), size + 1);
                if (kind == 3) pb.add_infinite(size + 1);
                if (rng.uniform(0, 4) == 0) break;
            }
            if (pb.a.rows() == 0 || pb.a.cols() == 0) pb.add_jordan(Gaussian(1), 1);
            GMat p = test::random_invertible_gmat(rng, pb.a.rows()), q = test::random_invertible_gmat(rng, pb.a.cols());
            pen = {p * pb.a * q, p * pb.b * q};
            built = pb;
        } else {
            // Dense pencils of random shape, rank-deficient about half the time.
            std::size_t r = rng.uniform(1, 8), c = rng.uniform(1, 8);
            std::size_t k = rng.uniform(0, 1) ? std::min(r, c) : rng.uniform(1, std::min(r, c));
            pen = {GMat(test::random_gmat(rng, r, k, 2) * test::random_gmat(rng, k, c, 2)),
                   GMat(test::random_gmat(rng, r, k, 2) * test::random_gmat(rng, k, c, 2))};
        }
        const std::string tag = "pencil " + std::to_string(trial) + " (" + std::to_string(pen.rows()) + "x" +
                                std::to_string(pen.cols()) + ")";
        KroneckerInvariants k = kronecker(pen);
        t.check(k.column_indices == test::staircase_indices(pen.a, pen.b), tag + ": column indices");
        t.check(k.row_indices == test::staircase_indices(GMat(pen.a.transpose()), GMat(pen.b.transpose())), tag + ": row indices");
        t.check(k.normal_rank == test::sampled_normal_rank(rng, pen.a, pen.b), tag + ": normal rank");
        KroneckerInvariants s = kronecker_smith(pen);
        t.check(k.infinite == s.infinite, tag + ": infinite divisors");
        bool same_finite = k.finite.size() == s.finite.size();
        for (std::size_t i = 0; same_finite && i < k.finite.size(); ++i)
            same_finite = k.finite[i].root == s.finite[i].root && k.finite[i].degrees == s.finite[i].degrees;
        t.check(same_finite, tag + ": finite divisors");
        bool same_symbolic = k.symbolic.size() == s.symbolic.size();
        for (std::size_t i = 0; same_symbolic && i < k.symbolic.size(); ++i)
            same_symbolic = k.symbolic[i].poly == s.symbolic[i].poly && k.symbolic[i].powers == s.symbolic[i].powers;
        t.check(same_symbolic, tag + ": symbolic divisors");
        if (built) {
            t.check(k.column_indices == sorted(built->eps), tag + ": constructed column indices");
            t.check(k.row_indices == sorted(built->eta), tag + ": constructed row indices");
            t.check(k.infinite == sorted(built->infinite), tag + ": constructed infinite divisors");
        }
    }
    return {t.bad == 0, t.summary()};
}

}  // namespace

int main() {
    report(1, "sheaf goldens", sheaf_goldens());
    report(2, "split_gc on 200 scrambled products", gc_splitting());
    report(3, "classify 100 scrambled composites", classification());
    report(4, "minus = -plus and antipodal torsion", duality());
    report(5, "zero morphisms from torsion pairs", zero_morphisms());
    report(6, "complex-symplectic gate", complex_symplectic_gate());
    report(7, "flat Courant integrability", integrability());
    report(8, "kronecker against the staircase oracle", kronecker_oracle());
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
