#include "gqla/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace gqla {

Poly Poly::monomial(int degree, Gaussian c) {
    if (c.is_zero()) return {};
    std::vector<Gaussian> v(static_cast<std::size_t>(degree) + 1, Gaussian(0));
    v.back() = std::move(c);
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    Poly p(*this);
    if (leading() == Gaussian(1)) return p;
    Gaussian inv = leading().inverse();
    for (auto& c : p.coeffs_) c *= inv;
    return p;
}

Gaussian Poly::eval(const Gaussian& x) const {
    Gaussian acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Gaussian> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Gaussian(static_cast<long>(k));
    return Poly(std::move(d));
}

Poly Poly::conj() const {
    Poly p(*this);
    for (auto& c : p.coeffs_) c = c.conj();
    return p;
}

Poly Poly::reversed() const {
    std::vector<Gaussian> r(coeffs_.rbegin(), coeffs_.rend());
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    Poly p(*this);
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Gaussian(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Gaussian(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Gaussian& s) {
    if (s.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Gaussian> r(a.coeffs_.size() + b.coeffs_.size() - 1, Gaussian(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<Gaussian> rem = coeffs_;
    const std::size_t dn = d.coeffs_.size();
    std::vector<Gaussian> q(rem.size() - dn + 1, Gaussian(0));
    Gaussian inv = d.leading().inverse();
    for (std::size_t k = q.size(); k-- > 0;) {
        Gaussian c = rem[k + dn - 1] * inv;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= c * d.coeffs_[j];
        q[k] = std::move(c);
    }
    rem.resize(dn - 1);
    return {Poly(std::move(q)), Poly(std::move(rem))};
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Gaussian& c = p.coeffs()[k];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = (c == Gaussian(1)) && k > 0;
        std::string cs = to_string(c);
        if (!c.is_real() && sgn(c.re()) != 0) cs = "(" + cs + ")";
        if (!unit) os << cs;
        if (k > 0) os << (unit ? "" : "*") << "x" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return os.str();
}

Poly gcd_poly(const Poly& p, const Poly& q) {
    Poly a = p, b = q;
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<std::pair<int, Poly>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<int, Poly>> out;
    if (p.degree() <= 0) return out;
    // Yun's algorithm (characteristic zero).
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly a = gcd_poly(f, fp);
    Poly b = f.divmod(a).first;
    Poly c = fp.divmod(a).first;
    Poly d = c - b.derivative();
    for (int k = 1; b.degree() > 0; ++k) {
        Poly g = gcd_poly(b, d);
        if (g.degree() > 0) out.emplace_back(k, g);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Root search over Gaussian integers.

namespace {

using Int = mpz_class;

struct GaussInt {
    Int re, im;
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
};

GaussInt gmul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Int gnorm(const GaussInt& a) { return a.re * a.re + a.im * a.im; }

/// Exact quotient a / b if b divides a.
std::optional<GaussInt> gdiv_exact(const GaussInt& a, const GaussInt& b) {
    Int n = gnorm(b);
    Int re = a.re * b.re + a.im * b.im;
    Int im = a.im * b.re - a.re * b.im;
    if (re % n != 0 || im % n != 0) return std::nullopt;
    return GaussInt{re / n, im / n};
}

Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) {
            Int r = v * v + c;
            return Int(r % n);
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Int diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_int(Int n, std::vector<Int>& primes) {
    if (n <= 1) return;
    for (unsigned long p = 2; p < 1000; ++p) {
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
        primes.push_back(n);
        return;
    }
    Int d = pollard_rho(n);
    factor_int(d, primes);
    factor_int(Int(n / d), primes);
}

/// A Gaussian prime above the rational prime p (p = 2 or p = 1 mod 4).
GaussInt split_prime(const Int& p) {
    if (p == 2) return {1, 1};
    // sqrt(-1) mod p from a quadratic non-residue, then Cornacchia.
    Int e = (p - 1) / 4;
    Int t;
    for (unsigned long a = 2;; ++a) {
        Int base(a);
        mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        Int sq = t * t % p;
        if (sq == p - 1) break;
    }
    Int a = p, b = t;
    Int limit;
    mpz_sqrt(limit.get_mpz_t(), p.get_mpz_t());
    while (b > limit) {
        Int r = a % b;
        a = b;
        b = r;
    }
    Int rest = p - b * b;
    Int c;
    mpz_sqrt(c.get_mpz_t(), rest.get_mpz_t());
    return {b, c};
}

std::vector<GaussInt> gaussian_divisors(const GaussInt& z) {
    std::vector<Int> rational_primes;
    factor_int(gnorm(z), rational_primes);
    std::sort(rational_primes.begin(), rational_primes.end());
    rational_primes.erase(std::unique(rational_primes.begin(), rational_primes.end()), rational_primes.end());

    std::vector<std::pair<GaussInt, int>> factors;
    GaussInt rest = z;
    for (const auto& p : rational_primes) {
        std::vector<GaussInt> candidates;
        if (p % 4 == 3) {
            candidates.push_back({p, 0});
        } else {
            GaussInt pi = split_prime(p);
            candidates.push_back(pi);
            GaussInt pibar{pi.re, -pi.im};
            if (p != 2) candidates.push_back(pibar);
        }
        for (const auto& pi : candidates) {
            int e = 0;
            while (auto q = gdiv_exact(rest, pi)) {
                rest = *q;
                ++e;
            }
            if (e > 0) factors.emplace_back(pi, e);
        }
    }
    std::vector<GaussInt> divs{{1, 0}};
    for (const auto& [pi, e] : factors) {
        std::vector<GaussInt> next;
        for (const auto& d : divs) {
            GaussInt acc = d;
            next.push_back(acc);
            for (int k = 0; k < e; ++k) {
                acc = gmul(acc, pi);
                next.push_back(acc);
            }
        }
        divs = std::move(next);
    }
    return divs;
}

Rational to_q(const Int& v) { return Rational(v); }

}  // namespace

namespace {

/// Approximate roots by simultaneous (Aberth) iteration; only used to propose candidates.
std::vector<std::complex<long double>> approximate_roots(const Poly& p) {
    using C = std::complex<long double>;
    const int n = p.degree();
    std::vector<C> c;
    for (const auto& z : p.coeffs()) c.emplace_back(z.re().get_d(), z.im().get_d());
    std::vector<C> r(static_cast<std::size_t>(n));
    long double radius = 0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k] / c[n]));
    radius = 1 + radius;
    for (int k = 0; k < n; ++k) r[k] = std::polar(radius * 0.5L, 0.4L + 2.0L * 3.14159265358979323846L * k / n);
    auto eval = [&](const C& x, C& dv) {
        C v = c[n];
        dv = 0;
        for (int k = n - 1; k >= 0; --k) {
            dv = dv * x + v;
            v = v * x + c[k];
        }
        return v;
    };
    for (int it = 0; it < 500; ++it) {
        long double moved = 0;
        for (int k = 0; k < n; ++k) {
            C dv;
            C v = eval(r[k], dv);
            if (v == C(0)) continue;
            C ratio = v / dv;
            C sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += C(1) / (r[k] - r[j]);
            C step = ratio / (C(1) - ratio * sum);
            r[k] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-30L) break;
    }
    return r;
}

/// Continued-fraction convergents of x with denominators below 10^12.
std::vector<Rational> convergents(long double x) {
    std::vector<Rational> out;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    long double y = x;
    for (int it = 0; it < 40; ++it) {
        long double a = std::floor(y);
        if (std::fabs(a) > 1e15L) break;
        Int ai(static_cast<long>(a));
        Int h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > Int("1000000000000")) break;
        out.emplace_back(Rational(h2, k2));
        out.back().canonicalize();
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        long double frac = y - a;
        if (frac < 1e-18L) break;
        y = 1 / frac;
    }
    return out;
}

}  // namespace

RootExtraction linear_factor_roots(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("linear_factor_roots: zero polynomial");
    RootExtraction out;
    Poly rest = p.monic();

    auto record = [&](const Gaussian& r) {
        int m = 0;
        while (rest.degree() > 0 && rest.eval(r).is_zero()) {
            rest = rest.divmod(Poly::linear(r)).first;
            ++m;
        }
        if (m > 0) out.roots.push_back({r, m});
    };
    record(Gaussian(0));

    // Numerical candidates, each confirmed exactly, shrink the polynomial before
    // the exhaustive divisor search.
    if (rest.degree() > 2) {
        Poly sqfree(Gaussian(1));
        for (const auto& [k, f] : squarefree_decomposition(rest)) sqfree = sqfree * f;
        if (sqfree.degree() > 0) {
            for (const auto& z : approximate_roots(sqfree.monic())) {
                auto re = convergents(z.real()), im = convergents(z.imag());
                for (std::size_t a = 0; a < std::max(re.size(), im.size()); ++a) {
                    Gaussian cand(re.empty() ? Rational(0) : re[std::min(a, re.size() - 1)],
                                  im.empty() ? Rational(0) : im[std::min(a, im.size() - 1)]);
                    if (rest.degree() > 0 && rest.eval(cand).is_zero()) {
                        record(cand);
                        break;
                    }
                }
            }
        }
    }

    while (rest.degree() > 0) {
        // Scale to Gaussian-integer coefficients.
        Int den = 1;
        for (const auto& c : rest.coeffs()) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den_mpz_t());
        }
        auto as_int = [&](const Gaussian& c) {
            Rational re = c.re() * to_q(den), im = c.im() * to_q(den);
            return GaussInt{re.get_num(), im.get_num()};
        };
        GaussInt lead = as_int(rest.leading());
        GaussInt constant = as_int(rest.coeffs().front());
        auto num_divs = gaussian_divisors(constant);
        auto den_divs = gaussian_divisors(lead);
        const GaussInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        bool found = false;
        for (const auto& w : den_divs) {
            Gaussian winv = Gaussian(to_q(w.re), to_q(w.im)).inverse();
            for (const auto& u : num_divs) {
                for (const auto& unit : units) {
                    GaussInt uu = gmul(u, unit);
                    Gaussian cand = Gaussian(to_q(uu.re), to_q(uu.im)) * winv;
                    if (rest.eval(cand).is_zero()) {
                        record(cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    out.remainder = rest;
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootMultiplicity& a, const RootMultiplicity& b) { return lex_less(a.root, b.root); });
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial matrices.

PolyMatrix PolyMatrix::identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly(Gaussian(1));
    return m;
}

PolyMatrix PolyMatrix::pencil(const GMat& a, const GMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("pencil shape mismatch");
    PolyMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly(std::vector<Gaussian>{a(i, j), b(i, j)});
    return m;
}

PolyMatrix PolyMatrix::constant(const GMat& a) {
    PolyMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly(a(i, j));
    return m;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("poly matrix product shape mismatch");
    PolyMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

bool PolyMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

int PolyMatrix::max_degree() const {
    int d = Poly::kZeroDegree;
    for (const auto& p : data_) d = std::max(d, p.degree());
    return d;
}

GMat PolyMatrix::coefficient(int k) const {
    GMat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).coeff(k);
    return m;
}

GMat PolyMatrix::eval(const Gaussian& x) const {
    GMat m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(x);
    return m;
}

PolyMatrix PolyMatrix::cols_range(std::size_t first, std::size_t count) const {
    PolyMatrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
}

PolyMatrix PolyMatrix::rows_range(std::size_t first, std::size_t count) const {
    PolyMatrix m(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
    return m;
}

// ---------------------------------------------------------------------------
// Smith normal form.

namespace {

class SmithEngine {
public:
    SmithEngine(const PolyMatrix& m, bool track) : a_(m), track_(track) {
        if (track_) {
            u_ = PolyMatrix::identity(m.rows());
            uinv_ = PolyMatrix::identity(m.rows());
            v_ = PolyMatrix::identity(m.cols());
            vinv_ = PolyMatrix::identity(m.cols());
        }
    }

    SmithForm run() {
        const std::size_t n = std::min(a_.rows(), a_.cols());
        std::vector<Poly> factors;
        for (std::size_t k = 0; k < n; ++k) {
            if (!move_min_to(k, k, true)) break;
            for (;;) {
                clear_cross(k);
                auto bad = find_non_divisible(k);
                if (!bad) break;
                // Bring the offending row into row k and re-clear.
                add_row(k, *bad, Poly(Gaussian(1)));
            }
            const Gaussian lc = a_(k, k).leading();
            if (!(lc == Gaussian(1))) scale_row(k, lc.inverse());
            factors.push_back(a_(k, k));
        }
        SmithForm out;
        out.invariant_factors = std::move(factors);
        if (track_) {
            out.left = std::move(u_);
            out.right = std::move(v_);
            out.left_inverse = std::move(uinv_);
            out.right_inverse = std::move(vinv_);
        }
        return out;
    }

private:
    /// Moves a least-degree nonzero entry of the trailing block (or of row/column k
    /// only, when `whole` is false) to (k, k). Returns false if the region is zero.
    bool move_min_to(std::size_t k, std::size_t /*unused*/, bool whole) {
        int best = -1;
        std::size_t bi = 0, bj = 0;
        auto consider = [&](std::size_t i, std::size_t j) {
            const Poly& p = a_(i, j);
            if (p.is_zero()) return;
            if (best < 0 || p.degree() < best) {
                best = p.degree();
                bi = i;
                bj = j;
            }
        };
        if (whole) {
            for (std::size_t i = k; i < a_.rows() && best != 0; ++i)
                for (std::size_t j = k; j < a_.cols() && best != 0; ++j) consider(i, j);
        } else {
            consider(k, k);
            for (std::size_t i = k + 1; i < a_.rows(); ++i) consider(i, k);
            for (std::size_t j = k + 1; j < a_.cols(); ++j) consider(k, j);
        }
        if (best < 0) return false;
        if (bi != k) swap_rows(bi, k);
        if (bj != k) swap_cols(bj, k);
        return true;
    }

    void clear_cross(std::size_t k) {
        for (;;) {
            bool dirty = false;
            for (std::size_t i = k + 1; i < a_.rows(); ++i) {
                if (a_(i, k).is_zero()) continue;
                auto [q, r] = a_(i, k).divmod(a_(k, k));
                add_row(i, k, -q);
                if (!r.is_zero()) dirty = true;
            }
            for (std::size_t j = k + 1; j < a_.cols(); ++j) {
                if (a_(k, j).is_zero()) continue;
                auto [q, r] = a_(k, j).divmod(a_(k, k));
                add_col(j, k, -q);
                if (!r.is_zero()) dirty = true;
            }
            if (!dirty) return;
            move_min_to(k, k, false);
        }
    }

    std::optional<std::size_t> find_non_divisible(std::size_t k) const {
        if (a_(k, k).degree() == 0) return std::nullopt;
        for (std::size_t i = k + 1; i < a_.rows(); ++i)
            for (std::size_t j = k + 1; j < a_.cols(); ++j)
                if (!a_(i, j).is_zero() && !a_(i, j).divisible_by(a_(k, k))) return i;
        return std::nullopt;
    }

    static void axpy_row(PolyMatrix& m, std::size_t dst, std::size_t src, const Poly& f) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(src, j).is_zero()) m(dst, j) += f * m(src, j);
    }
    static void axpy_col(PolyMatrix& m, std::size_t dst, std::size_t src, const Poly& f) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!m(i, src).is_zero()) m(i, dst) += m(i, src) * f;
    }

    // row_dst += f * row_src
    void add_row(std::size_t dst, std::size_t src, const Poly& f) {
        if (f.is_zero()) return;
        axpy_row(a_, dst, src, f);
        if (track_) {
            axpy_row(u_, dst, src, f);
            axpy_col(uinv_, src, dst, -f);
        }
    }
    // col_dst += f * col_src
    void add_col(std::size_t dst, std::size_t src, const Poly& f) {
        if (f.is_zero()) return;
        axpy_col(a_, dst, src, f);
        if (track_) {
            axpy_col(v_, dst, src, f);
            axpy_row(vinv_, src, dst, -f);
        }
    }
    void swap_rows(std::size_t i, std::size_t j) {
        swap_rows_of(a_, i, j);
        if (track_) {
            swap_rows_of(u_, i, j);
            swap_cols_of(uinv_, i, j);
        }
    }
    void swap_cols(std::size_t i, std::size_t j) {
        swap_cols_of(a_, i, j);
        if (track_) {
            swap_cols_of(v_, i, j);
            swap_rows_of(vinv_, i, j);
        }
    }
    void scale_row(std::size_t k, const Gaussian& s) {
        for (std::size_t j = 0; j < a_.cols(); ++j) a_(k, j) *= s;
        if (track_) {
            for (std::size_t j = 0; j < u_.cols(); ++j) u_(k, j) *= s;
            Gaussian inv = s.inverse();
            for (std::size_t i = 0; i < uinv_.rows(); ++i) uinv_(i, k) *= inv;
        }
    }
    static void swap_rows_of(PolyMatrix& m, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
    }
    static void swap_cols_of(PolyMatrix& m, std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
    }

    PolyMatrix a_;
    bool track_;
    PolyMatrix u_, uinv_, v_, vinv_;
};

}  // namespace

SmithForm smith_form(const PolyMatrix& m, SmithTransforms track) {
    return SmithEngine(m, track == SmithTransforms::kTrack).run();
}

}  // namespace gqla
