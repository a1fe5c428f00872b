#pragma once

#include "gqla/subspace.hpp"

#include <array>
#include <optional>
#include <vector>

namespace gqla {

class InvalidQuaternionic : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Linear hypercomplex structure: I^2 = J^2 = -1, IJ = -JI, K = IJ.
class HypercomplexTriple {
public:
    HypercomplexTriple() = default;
    /// Validates; K is derived.
    HypercomplexTriple(QMat i, QMat j);

    std::size_t dim() const { return i_.rows(); }
    const QMat& I() const { return i_; }
    const QMat& J() const { return j_; }
    const QMat& K() const { return k_; }
    /// Generator by index 0, 1, 2.
    const QMat& gen(std::size_t a) const;

    /// The triple (sum_b R(b,0) X_b, sum_b R(b,1) X_b, sum_b R(b,2) X_b) for R in SO(3).
    HypercomplexTriple rotated(const QMat& r) const;

    /// Left multiplication by i, j on H = R^4 with basis (1, i, j, k).
    static HypercomplexTriple quaternions();
    /// Direct sum of m copies of quaternions().
    static HypercomplexTriple standard(std::size_t m);
    /// E* with generators (-I^T, -J^T, -K^T).
    HypercomplexTriple dual() const;
    /// Blockwise direct sum.
    friend HypercomplexTriple direct_sum(const HypercomplexTriple& a, const HypercomplexTriple& b);
    /// Transport along an isomorphism p: E -> E', i.e. X' = p X p^{-1}.
    HypercomplexTriple conjugated(const QMat& p) const;

    friend bool operator==(const HypercomplexTriple& a, const HypercomplexTriple& b) {
        return a.i_ == b.i_ && a.j_ == b.j_;
    }

private:
    QMat i_, j_, k_;
};

/// Points of S^2 with rational coordinates.
struct SpherePoint {
    Rational a, b, c;
};

bool on_unit_sphere(const SpherePoint& p);

/// aI + bJ + cK; throws unless a^2 + b^2 + c^2 = 1.
QMat admissible(const HypercomplexTriple& t, const SpherePoint& p);

/// The rotation T with t X_a = T(X_a) t for all generators, if one exists.
/// Returns the identity for t = 0. The 3x3 result has columns T(I), T(J), T(K)
/// in the generator coordinates of `target`, and is exactly in SO(3).
std::optional<QMat> quaternionic_map_check(const QMat& t, const HypercomplexTriple& source,
                                           const HypercomplexTriple& target);

/// Whether two triples define the same quaternionic structure.
bool same_structure(const HypercomplexTriple& a, const HypercomplexTriple& b);

/// Pair (U, E): a real subspace U of the quaternionic vector space E.
struct PairUE {
    HypercomplexTriple e;
    QSub u;

    std::size_t dim() const { return e.dim(); }
};

PairUE make_pair_checked(HypercomplexTriple e, QSub u);

/// (H, H), (Im H, H), (R, H), (0, H).
PairUE pair_h_h();
PairUE pair_imh_h();
PairUE pair_r_h();
PairUE pair_zero_h();

/// (annihilator of U, E*).
PairUE dual_pair(const PairUE& p);
/// Blockwise product without the torsion precondition.
PairUE direct_sum_pairs(const PairUE& a, const PairUE& b);

/// Basis of {t : E1 -> E2 : t X_a = T(X_a) t, t(U1) in U2}. The sphere
/// identification T defaults to matching generators.
std::vector<QMat> pair_morphisms(const PairUE& p1, const PairUE& p2, const std::optional<QMat>& rotation = {});

/// The rotation v -> u v u^{-1} of Im H for the nonzero quaternion u = w + xi + yj + zk.
QMat rotation_from_quaternion(const Rational& w, const Rational& x, const Rational& y, const Rational& z);

bool is_rotation(const QMat& r);

}  // namespace gqla
