#pragma once

#include "gqla/subspace.hpp"

#include <map>
#include <optional>
#include <vector>

namespace gqla {

/// Coordinates on V x V* are ordered (V-block, V*-block); the canonical pairing
/// is <(X,a),(Y,b)> = (a(Y) + b(X)) / 2.
inline constexpr const char* kConvention = "V-first/half-pairing";

class InvalidStructure : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gram matrix 1/2 [[0, I], [I, 0]] on V x V*, dim V = n.
BilinearForm<Rational> canonical_pairing(std::size_t n);

/// The subspace V* = {(0, a)} of V x V*.
QSub dual_part(std::size_t n);
/// The subspace V = {(X, 0)} of V x V*.
QSub primal_part(std::size_t n);

/// Two-form on V, seen as the skew map V -> V*.
class BField {
public:
    BField() = default;
    explicit BField(QMat b);
    static BField zero(std::size_t n) { return BField(QMat(n, n)); }
    const QMat& matrix() const { return b_; }
    std::size_t dim() const { return b_.rows(); }
    friend BField operator+(const BField& x, const BField& y) { return BField(x.b_ + y.b_); }
    BField operator-() const { return BField(-b_); }
    friend bool operator==(const BField& x, const BField& y) { return x.b_ == y.b_; }

private:
    QMat b_;
};

/// E_b = [[I, 0], [b, I]], i.e. (X, a) -> (X, b X + a).
QMat bfield_matrix(const BField& b);
/// blockdiag(A, A^{-T}); throws if A is singular.
QMat gl_matrix(const QMat& a);

/// Orthogonal complex structure on V x V*.
class GCStructure {
public:
    GCStructure() = default;
    /// Validates J^2 = -1 and J^T Q J = Q; throws InvalidStructure otherwise.
    explicit GCStructure(QMat m);
    /// Skips validation; callers guarantee the invariants.
    static GCStructure trusted(QMat m);

    std::size_t n() const { return m_.rows() / 2; }
    const QMat& matrix() const { return m_; }
    friend bool operator==(const GCStructure& a, const GCStructure& b) { return a.m_ == b.m_; }

private:
    QMat m_;
};

/// Reason a matrix fails to be a generalized complex structure, if any.
std::optional<std::string> gc_defect(const QMat& m);

/// Psi M Psi^{-1}.
QMat conjugate(const QMat& m, const QMat& psi);
QMat conjugate(const QMat& m, const QMat& psi, const QMat& psi_inv);

GCStructure bfield_transform(const GCStructure& s, const BField& b);
GCStructure gl_transform(const GCStructure& s, const QMat& a);

/// Graph {(X, b X)} of a two-form.
QSub graph_of(const BField& b);
/// The unique skew b whose graph is W. Throws unless W is an isotropic complement of V*.
BField bfield_from_isotropic_complement(const QSub& w, std::size_t n);

GCStructure from_complex(const QMat& j);
GCStructure from_symplectic(const QMat& w);
GCStructure product_gc(const GCStructure& s1, const GCStructure& s2);

/// Block permutation sending (V1 x V1*) x (V2 x V2*) to (V1 x V2) x (V1 x V2)*.
QMat product_permutation(std::size_t n1, std::size_t n2);
/// Direct product of two structures on V1 x V1* and V2 x V2* (any matrices of those shapes).
QMat product_matrix(const QMat& m1, const QMat& m2);

struct GCType {
    std::size_t k = 0;
    friend bool operator==(const GCType&, const GCType&) = default;
};

/// k = dim(V* cap J V*) / 2.
GCType type_of(const GCStructure& s);

/// S = E_b C_A product_gc(from_complex(complex_part), from_symplectic(symplectic_part)) C_A^{-1} E_{-b}.
struct GCSplitting {
    BField b;
    QMat a;
    QMat complex_part;
    QMat symplectic_part;
};

GCSplitting split_gc(const GCStructure& s);
/// Exact reconstruction check for a splitting.
bool verify_splitting(const GCStructure& s, const GCSplitting& sp);

/// Subspace L of W with L (+) D = W, L isotropic and op(L) in L for every op.
/// D must be isotropic, contained in W and invariant under every op; every op
/// must preserve W. L is sought as the graph of a map C -> D over a greedy
/// complement C. With a constraint, C is grown from `seed_dir` (which must meet
/// D trivially) and the correction on `seed_dir` is confined to `target`.
struct ComplementConstraint {
    QSub seed_dir;
    QSub target;
};

std::optional<QSub> invariant_isotropic_complement(const QSub& w, const QSub& d, const std::vector<QMat>& ops,
                                                   const BilinearForm<Rational>& q,
                                                   const std::optional<ComplementConstraint>& constraint = {});

/// Invariant isotropic complement of the maximal isotropic, J-invariant D in the
/// nondegenerate J-invariant block W. Throws on violated preconditions.
QSub find_invariant_isotropic_complement(const GCStructure& s, const QSub& w, const QSub& d);

// ---------------------------------------------------------------------------
// Courant bracket on polynomial sections of flat space.

/// Polynomial in n variables over Q(i); keys are exponent vectors.
class MPoly {
public:
    using Exponent = std::vector<int>;

    MPoly() = default;
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}
    static MPoly constant(std::size_t nvars, const Gaussian& c);
    static MPoly monomial(const Exponent& e, const Gaussian& c);
    /// All monomials of total degree <= d.
    static std::vector<Exponent> monomials_up_to(std::size_t nvars, int d);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Gaussian>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    MPoly partial(std::size_t var) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Gaussian& s);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Gaussian& s) { return a *= s; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

private:
    void add_term(const Exponent& e, const Gaussian& c);
    std::size_t nvars_ = 0;
    std::map<Exponent, Gaussian> terms_;
};

/// Section (X, alpha) of T R^n (+) T* R^n with polynomial coefficients.
struct PolySection {
    std::vector<MPoly> vec;
    std::vector<MPoly> form;

    static PolySection zero(std::size_t n);
    /// m(x) * c for a constant vector c in V x V* coordinates.
    static PolySection monomial_times(const MPoly::Exponent& e, const GMat& c);
    std::size_t dim() const { return vec.size(); }
    int degree() const;
    PolySection& operator+=(const PolySection& o);
    PolySection operator*(const Gaussian& s) const;
    friend bool operator==(const PolySection&, const PolySection&) = default;
};

PolySection operator-(const PolySection& a, const PolySection& b);

/// [(X,a);(Y,b)] = ([X,Y]; L_X b - L_Y a - d(i_X b - i_Y a)/2).
PolySection courant_bracket(const PolySection& s, const PolySection& t);

/// Whether sections of the constant subbundle `l` of degree <= d are closed under the bracket.
bool subbundle_closed(const GSub& l, int degree_bound);
/// The +i eigenbundle of S, over Q(i).
GSub plus_i_eigenbundle(const GCStructure& s);
bool eigenbundle_closed(const GCStructure& s, int degree_bound);

}  // namespace gqla
