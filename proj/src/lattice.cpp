#include "gqla/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace gqla {

namespace {

using Real = long double;

Real to_real(const mpz_class& z) {
    const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (bits <= 62) return static_cast<Real>(z.get_si());
    mpz_class t;
    mpz_tdiv_q_2exp(t.get_mpz_t(), z.get_mpz_t(), bits - 62);
    return std::ldexp(static_cast<Real>(t.get_si()), static_cast<int>(bits - 62));
}

mpz_class to_integer(Real x) {
    if (std::fabs(x) < 4.0e18L) return mpz_class(static_cast<long>(x));
    int e = 0;
    Real m = std::frexp(x, &e);
    mpz_class z(static_cast<long>(std::ldexp(m, 62)));
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 62));
    return z;
}

mpz_class dot(const IntVector& a, const IntVector& b) {
    mpz_class s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    return s;
}

}  // namespace

void lll_reduce(std::vector<IntVector>& b) {
    const std::size_t d = b.size();
    if (d < 2) return;
    const Real delta = 0.99L, eta = 0.51L;
    // Exact Gram matrix, full and symmetric.
    std::vector<std::vector<mpz_class>> g(d, std::vector<mpz_class>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = dot(b[i], b[j]);
    std::vector<std::vector<Real>> r(d, std::vector<Real>(d, 0)), mu(d, std::vector<Real>(d, 0));
    std::vector<Real> s(d, 0);
    auto cholesky_row = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            Real t = to_real(g[k][j]);
            for (std::size_t l = 0; l < j; ++l) t -= mu[j][l] * r[k][l];
            r[k][j] = t;
            mu[k][j] = t / r[j][j];
        }
        Real t = to_real(g[k][k]);
        s[0] = t;
        for (std::size_t j = 0; j < k; ++j) {
            t -= mu[k][j] * r[k][j];
            s[j + 1] = t;
        }
        r[k][k] = t;
    };
    // b_k -= x b_j, keeping the Gram matrix exact.
    auto subtract = [&](std::size_t k, std::size_t j, const mpz_class& x) {
        for (std::size_t i = 0; i < b[k].size(); ++i)
            if (sgn(b[j][i]) != 0) mpz_submul(b[k][i].get_mpz_t(), x.get_mpz_t(), b[j][i].get_mpz_t());
        mpz_class gkk = g[k][k] - 2 * x * g[k][j] + x * x * g[j][j];
        for (std::size_t i = 0; i < d; ++i) {
            if (i == k) continue;
            g[k][i] -= x * g[j][i];
            g[i][k] = g[k][i];
        }
        g[k][k] = gkk;
    };
    r[0][0] = to_real(g[0][0]);
    std::size_t k = 1;
    std::size_t guard = 0;
    const std::size_t max_steps = 200000 + 2000 * d * d;
    while (k < d) {
        if (++guard > max_steps) return;
        for (int pass = 0; pass < 200; ++pass) {
            cholesky_row(k);
            bool reduced = true;
            for (std::size_t j = 0; j < k; ++j)
                if (std::fabs(mu[k][j]) > eta) reduced = false;
            if (reduced) break;
            for (std::size_t j = k; j-- > 0;) {
                Real x = std::round(mu[k][j]);
                if (x == 0) continue;
                subtract(k, j, to_integer(x));
                for (std::size_t l = 0; l < j; ++l) mu[k][l] -= x * mu[j][l];
                mu[k][j] -= x;
            }
        }
        if (delta * r[k - 1][k - 1] <= s[k - 1]) {
            ++k;
            continue;
        }
        std::swap(b[k], b[k - 1]);
        std::swap(g[k], g[k - 1]);
        for (auto& row : g) std::swap(row[k], row[k - 1]);
        if (k == 1) r[0][0] = to_real(g[0][0]);
        k = k > 1 ? k - 1 : 1;
        if (k == 1) r[0][0] = to_real(g[0][0]);
    }
}

QMat reduced_basis(const QSub& s) {
    const std::size_t n = s.ambient(), k = s.dim();
    if (k == 0) return QMat(n, 0);
    if (k == n) return QMat::identity(n);
    QMat ann = null_space(QMat(s.basis().transpose()));
    const std::size_t m = ann.cols();
    std::vector<IntVector> tails(m, IntVector(n));
    for (std::size_t c = 0; c < m; ++c) {
        mpz_class l = 1, g = 0;
        for (std::size_t i = 0; i < n; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), ann(i, c).get_den_mpz_t());
        for (std::size_t i = 0; i < n; ++i) {
            tails[c][i] = l / ann(i, c).get_den() * ann(i, c).get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), tails[c][i].get_mpz_t());
        }
        for (auto& x : tails[c]) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    std::vector<IntVector> heads(n, IntVector(n));
    for (std::size_t i = 0; i < n; ++i) heads[i][i] = 1;
    for (std::size_t shift = 2 * n + 32;; shift *= 2) {
        std::vector<IntVector> rows(n, IntVector(n + m));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) rows[i][j] = heads[i][j];
            for (std::size_t c = 0; c < m; ++c) {
                mpz_class v = dot(heads[i], tails[c]);
                mpz_mul_2exp(rows[i][n + c].get_mpz_t(), v.get_mpz_t(), shift);
            }
        }
        lll_reduce(rows);
        std::vector<std::size_t> zero;
        for (std::size_t i = 0; i < n; ++i) {
            bool z = true;
            for (std::size_t c = 0; c < m && z; ++c) z = sgn(rows[i][n + c]) == 0;
            if (z) zero.push_back(i);
            for (std::size_t j = 0; j < n; ++j) heads[i][j] = rows[i][j];
        }
        if (zero.size() == k) {
            QMat out(n, k);
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t i = 0; i < n; ++i) out(i, c) = Rational(heads[zero[c]][i]);
            return out;
        }
        if (shift > (1u << 20)) throw std::runtime_error("reduced_basis: embedding did not separate the kernel");
    }
}

QSub reduced(const QSub& s) { return QSub::with_basis(reduced_basis(s)); }

}  // namespace gqla
