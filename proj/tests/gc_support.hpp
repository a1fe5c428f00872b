#pragma once

#include "gqla/genc.hpp"
#include "gqla/random.hpp"
#include "test_support.hpp"

namespace gqla::test {

inline GCStructure random_scrambled_product(SeededRng& rng, std::size_t mc, std::size_t ms, BField* b_out = nullptr) {
    GCStructure p = product_gc(from_complex(random_complex_structure(rng, mc)),
                               from_symplectic(random_symplectic(rng, ms)));
    const std::size_t n = 2 * (mc + ms);
    BField b(random_skew(rng, n));
    if (b_out) *b_out = b;
    return bfield_transform(gl_transform(p, random_invertible(rng, n)), b);
}

inline PolySection random_section(SeededRng& rng, std::size_t n, int deg) {
    PolySection s = PolySection::zero(n);
    for (const auto& e : MPoly::monomials_up_to(n, deg)) {
        if (rng.uniform(0, 2) == 0) continue;
        s += PolySection::monomial_times(e, test::random_gmat(rng, 2 * n, 1, 2));
    }
    return s;
}

}  // namespace gqla::test
