#pragma once

#include "gqla/sheaf.hpp"
#include "test_support.hpp"

#include <algorithm>

namespace gqla::test {

inline GMat random_invertible_gmat(SeededRng& rng, std::size_t n) {
    GMat l = GMat::identity(n), u = GMat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = Gaussian(Rational(rng.uniform(-1, 1)), Rational(rng.uniform(-1, 1)));
            u(j, i) = Gaussian(Rational(rng.uniform(-1, 1)), Rational(rng.uniform(-1, 1)));
        }
    return l * u;
}

/// Kronecker blocks with known invariants, assembled block-diagonally.
struct PencilBuilder {
    GMat a, b;
    std::vector<int> eps, eta;
    std::vector<std::pair<Gaussian, int>> jordan;
    std::vector<int> infinite;

    void append(const GMat& ba, const GMat& bb) {
        a = block_diag(a, ba);
        b = block_diag(b, bb);
    }
    void add_l(int e) {
        GMat ba(e, e + 1), bb(e, e + 1);
        for (int i = 0; i < e; ++i) {
            ba(i, i) = Gaussian(1);
            bb(i, i + 1) = Gaussian(1);
        }
        append(ba, bb);
        eps.push_back(e);
    }
    void add_lt(int h) {
        GMat ba(h + 1, h), bb(h + 1, h);
        for (int i = 0; i < h; ++i) {
            ba(i, i) = Gaussian(1);
            bb(i + 1, i) = Gaussian(1);
        }
        append(ba, bb);
        eta.push_back(h);
    }
    void add_jordan(const Gaussian& root, int k) {
        GMat ba(k, k), bb = GMat::identity(k);
        for (int i = 0; i < k; ++i) {
            ba(i, i) = -root;
            if (i + 1 < k) ba(i, i + 1) = Gaussian(-1);
        }
        append(ba, bb);
        jordan.emplace_back(root, k);
    }
    void add_infinite(int k) {
        GMat ba = GMat::identity(k), bb(k, k);
        for (int i = 0; i + 1 < k; ++i) bb(i, i + 1) = Gaussian(1);
        append(ba, bb);
        infinite.push_back(k);
    }
};

/// Kernel dimension of the striped Toeplitz matrix of polynomial kernel vectors of degree <= d.
inline std::size_t toeplitz_kernel_dim(const GMat& a, const GMat& b, std::size_t d) {
    const std::size_t m = a.rows(), r = a.cols();
    GMat t(m * (d + 2), r * (d + 1));
    for (std::size_t j = 0; j <= d; ++j) {
        t.set_block(j * m, j * r, a);
        t.set_block((j + 1) * m, j * r, b);
    }
    return t.cols() - rank(t);
}

/// Minimal indices from the kernel-dimension staircase.
inline std::vector<int> staircase_indices(const GMat& a, const GMat& b) {
    std::vector<int> out;
    if (a.cols() == 0) return out;
    if (a.rows() == 0) return std::vector<int>(a.cols(), 0);
    std::size_t prev_n = 0, prev_c = 0;
    for (std::size_t d = 0; d <= a.rows() + 1; ++d) {
        std::size_t n = toeplitz_kernel_dim(a, b, d);
        std::size_t c = n - prev_n;  // #{eps <= d}
        for (std::size_t k = prev_c; k < c; ++k) out.push_back(static_cast<int>(d));
        prev_n = n;
        prev_c = c;
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t sampled_normal_rank(SeededRng& rng, const GMat& a, const GMat& b) {
    std::size_t best = 0;
    for (int k = 0; k < 20; ++k) best = std::max(best, rank(GMat(a + b * random_gaussian(rng, 50))));
    return best;
}

}  // namespace gqla::test
