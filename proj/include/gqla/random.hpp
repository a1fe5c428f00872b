#pragma once

#include "gqla/matrix.hpp"

namespace gqla {

/// Small-integer seeded generators for test inputs and scrambles.

inline QMat random_int_matrix(SeededRng& rng, std::size_t r, std::size_t c, long bound = 2) {
    QMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(rng.uniform(-bound, bound));
    return m;
}

inline QMat random_skew(SeededRng& rng, std::size_t n, long bound = 2) {
    QMat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            b(i, j) = Rational(rng.uniform(-bound, bound));
            b(j, i) = -b(i, j);
        }
    return b;
}

/// Unit lower times unit upper triangular, so always invertible with small entries.
inline QMat random_invertible(SeededRng& rng, std::size_t n, long bound = 1) {
    QMat l = QMat::identity(n), u = QMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = Rational(rng.uniform(-bound, bound));
            u(j, i) = Rational(rng.uniform(-bound, bound));
        }
    QMat p(n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform(0, static_cast<long>(i) - 1)]);
    for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1;
    return p * l * u;
}

/// Standard complex structure on R^{2m}: e_{2k} -> e_{2k+1} -> -e_{2k}.
inline QMat standard_complex(std::size_t m) {
    QMat j(2 * m, 2 * m);
    for (std::size_t k = 0; k < m; ++k) {
        j(2 * k + 1, 2 * k) = 1;
        j(2 * k, 2 * k + 1) = -1;
    }
    return j;
}

/// Standard symplectic form on R^{2m} with omega(e_{2k}, e_{2k+1}) = 1.
inline QMat standard_symplectic(std::size_t m) { return -standard_complex(m); }

inline QMat random_complex_structure(SeededRng& rng, std::size_t m) {
    QMat p = random_invertible(rng, 2 * m);
    return p * standard_complex(m) * inverse_or_throw(p);
}

inline QMat random_symplectic(SeededRng& rng, std::size_t m) {
    QMat p = random_invertible(rng, 2 * m);
    return p.transpose() * standard_symplectic(m) * p;
}

}  // namespace gqla
