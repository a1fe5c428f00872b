#pragma once

#include "gqla/poly.hpp"
#include "gqla/quat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gqla {

/// Point of the chart C u {inf} on CP^1.
struct ChartPoint {
    bool infinite = false;
    Gaussian value;

    static ChartPoint at(Gaussian v) { return {false, std::move(v)}; }
    static ChartPoint infinity() { return {true, Gaussian(0)}; }
    friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

std::string to_string(const ChartPoint& p);
/// "inf" or a Gaussian rational such as "1/2-3i".
ChartPoint parse_chart_point(const std::string& s);
/// Finite points in lexicographic order of (re, im), then infinity.
bool chart_less(const ChartPoint& a, const ChartPoint& b);

/// lambda -> -1 / conj(lambda), exchanging 0 and inf.
ChartPoint antipode(const ChartPoint& p);

/// The pencil A + lambda B.
struct Pencil {
    GMat a;
    GMat b;
    std::size_t rows() const { return a.rows(); }
    std::size_t cols() const { return a.cols(); }
    PolyMatrix matrix() const { return PolyMatrix::pencil(a, b); }
};

/// Elementary divisors (lambda - root)^d at one point.
struct PointDivisors {
    Gaussian root;
    std::vector<int> degrees;
};

/// Powers f^k of a square-free f with no roots in Q(i); kept symbolically.
struct SymbolicDivisors {
    Poly poly;
    std::vector<int> powers;
};

struct KroneckerInvariants {
    std::vector<int> column_indices;
    std::vector<int> row_indices;
    std::vector<PointDivisors> finite;
    std::vector<SymbolicDivisors> symbolic;
    std::vector<int> infinite;
    std::size_t normal_rank = 0;
    /// Minimal polynomial basis of the right kernel; column j has degree column_indices[j].
    PolyMatrix kernel_basis;

    int regular_degree() const;
};

/// Lowers column degrees until the leading column coefficient matrix has full rank.
PolyMatrix column_reduce(PolyMatrix m);
/// Column degrees of a polynomial matrix.
std::vector<int> column_degrees(const PolyMatrix& m);

/// Kronecker invariants from constant-matrix ranks: Toeplitz kernels for the minimal
/// indices, local Toeplitz ranks for the elementary divisors.
KroneckerInvariants kronecker(const Pencil& p);
/// The same invariants from a Smith form with tracked transforms; slower, used as a cross-check.
KroneckerInvariants kronecker_smith(const Pencil& p);

/// Torsion at one support: a chart point, or the roots of an irreducible-over-Q(i) factor.
struct TorsionEntry {
    std::optional<ChartPoint> point;
    Poly poly;
    std::vector<int> lengths;

    std::string support_string() const;
    /// Sum of lengths, times deg poly for symbolic supports.
    int total_length() const;
    friend bool operator==(const TorsionEntry& a, const TorsionEntry& b) {
        return a.point == b.point && a.poly == b.poly && a.lengths == b.lengths;
    }
};

struct SheafInvariants {
    std::vector<int> minus;  ///< ascending
    std::vector<int> plus;   ///< ascending
    std::vector<TorsionEntry> torsion;

    bool has_torsion() const { return !torsion.empty(); }
    int total_torsion_length() const;
    friend bool operator==(const SheafInvariants&, const SheafInvariants&) = default;
};

/// Basis of the -i eigenspace of I on E (x) C.
GMat antiholomorphic_basis(const HypercomplexTriple& t);

Pencil pencil_of_pair(const PairUE& p);
SheafInvariants sheaf_from_kronecker(const KroneckerInvariants& k);
SheafInvariants sheaf_of_pair(const PairUE& p);

/// The admissible structure whose -i eigenspace is {v + lambda J v : I v = -i v}.
SpherePoint admissible_from_lambda(const HypercomplexTriple& t, const ChartPoint& lambda);

bool is_cr(const PairUE& p);
bool is_co_cr(const PairUE& p);

/// Blockwise product; throws unless one factor's sheaf is torsion-free.
PairUE product_pairs(const PairUE& a, const PairUE& b);

/// Quaternionic span of a set of real vectors.
QSub quaternionic_span(const HypercomplexTriple& t, const QMat& vectors);
bool is_quaternionic(const HypercomplexTriple& t, const QSub& s);

/// Sub-pair (U cap S, S) of a quaternionic subspace S, in a basis of S.
struct SubPair {
    QSub space;   ///< quaternionic subspace S of E
    QMat basis;   ///< adapted basis of S, columns
    PairUE pair;  ///< (U cap S, S) in that basis
};

SubPair restrict_pair(const PairUE& p, const QSub& s);

/// (U, E) = (U_-, E_-) x (U_t, E_t) x (V, F).
struct PairDecomposition {
    QSub e_minus;         ///< canonical
    QSub e_minus_torsion; ///< canonical E_- (+) E_t
    SubPair neg;
    SubPair tor;
    SubPair pos;
};

/// E_- spanned by the coefficients of the kernel sections of the pencil.
QSub negative_part(const PairUE& p);
/// Same, from the invariants of pencil_of_pair(p).
QSub negative_part(const PairUE& p, const KroneckerInvariants& k);

/// Vectors w_j whose quaternionic spans complete the quaternionic S to the quaternionic T.
QMat quaternionic_complement_generators(const HypercomplexTriple& t, const QSub& s, const QSub& big);
/// Columns (w, Iw, Jw, Kw) for each column w.
QMat quaternionic_frame(const HypercomplexTriple& t, const QMat& gens);

/// Quaternionic complement C of S in T with U cap T = (U cap S) (+) (U cap C), via an
/// H-linear projection T -> S mapping U cap T into U cap S. Throws if none exists.
QSub adapted_complement(const HypercomplexTriple& t, const QSub& u, const QSub& s, const QSub& big);

PairDecomposition decompose_pair(const PairUE& p);

}  // namespace gqla
