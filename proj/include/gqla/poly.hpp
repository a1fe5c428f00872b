#pragma once

#include "gqla/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gqla {

/// Univariate polynomial over Q(i), coefficients lowest degree first.
/// The zero polynomial has no coefficients and degree kZeroDegree.
class Poly {
public:
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    Poly(Gaussian c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit Poly(std::vector<Gaussian> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// The monomial lambda.
    static Poly x() { return Poly(std::vector<Gaussian>{Gaussian(0), Gaussian(1)}); }
    /// (lambda - r)
    static Poly linear(const Gaussian& r) { return Poly(std::vector<Gaussian>{-r, Gaussian(1)}); }
    static Poly monomial(int degree, Gaussian c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Gaussian>& coeffs() const { return coeffs_; }
    Gaussian coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Gaussian(0);
    }
    const Gaussian& leading() const { return coeffs_.back(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == Gaussian(1); }

    Poly monic() const;
    Gaussian eval(const Gaussian& x) const;
    Poly derivative() const;
    /// Coefficient-wise conjugation.
    Poly conj() const;
    /// lambda^deg * p(1/lambda).
    Poly reversed() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Gaussian& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Gaussian& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    bool divisible_by(const Poly& d) const { return divmod(d).second.is_zero(); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<Gaussian> coeffs_;
};

std::string to_string(const Poly& p);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd_poly(const Poly& p, const Poly& q);

/// Square-free decomposition: p = c * prod_k f_k^k with f_k square-free and
/// pairwise coprime. Returns the (k, f_k) with deg f_k > 0.
std::vector<std::pair<int, Poly>> squarefree_decomposition(const Poly& p);

struct RootMultiplicity {
    Gaussian root;
    int multiplicity = 0;
};

struct RootExtraction {
    std::vector<RootMultiplicity> roots;
    /// Monic, with no roots in Q(i).
    Poly remainder;
};

/// All roots of p lying in Q(i), found by a rational-root search over the
/// Gaussian integers. Throws on the zero polynomial.
RootExtraction linear_factor_roots(const Poly& p);

/// Rectangular matrix of polynomials.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static PolyMatrix identity(std::size_t n);
    /// The pencil a + lambda*b.
    static PolyMatrix pencil(const GMat& a, const GMat& b);
    static PolyMatrix constant(const GMat& a);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    PolyMatrix transpose() const;
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    bool is_diagonal() const;
    int max_degree() const;
    /// Coefficient matrix of lambda^k.
    GMat coefficient(int k) const;
    GMat eval(const Gaussian& x) const;
    PolyMatrix cols_range(std::size_t first, std::size_t count) const;
    PolyMatrix rows_range(std::size_t first, std::size_t count) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Poly> data_;
};

struct SmithForm {
    /// Nonzero monic invariant factors d_1 | d_2 | ... ; their count is the normal rank.
    std::vector<Poly> invariant_factors;
    /// Unimodular transforms with left * M * right = diag(invariant_factors, 0).
    PolyMatrix left;
    PolyMatrix right;
    /// Inverses of the transforms, kept when requested.
    PolyMatrix left_inverse;
    PolyMatrix right_inverse;
};

enum class SmithTransforms { kNone, kTrack };

/// Smith normal form by elimination with least-degree pivoting.
SmithForm smith_form(const PolyMatrix& m, SmithTransforms track = SmithTransforms::kTrack);

}  // namespace gqla
