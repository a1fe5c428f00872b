#pragma once

#include "gqla/genc.hpp"
#include "gqla/sheaf.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gqla {

/// Triple of orthogonal complex structures on V x V* generating a quaternionic structure.
class GQStructure {
public:
    GQStructure() = default;
    /// No validation; see check_gq.
    GQStructure(QMat i, QMat j, QMat k) : gens_{std::move(i), std::move(j), std::move(k)} {}
    /// K = IJ.
    static GQStructure from_pair(QMat i, QMat j);

    std::size_t n() const { return gens_[0].rows() / 2; }
    const QMat& gen(std::size_t a) const { return gens_.at(a); }
    const std::array<QMat, 3>& gens() const { return gens_; }
    /// sum_b r(b, a) gen_b for a = 0, 1, 2.
    GQStructure rotated(const QMat& r) const;
    /// aI + bJ + cK.
    QMat admissible(const SpherePoint& p) const;
    HypercomplexTriple triple() const { return HypercomplexTriple(gens_[0], gens_[1]); }
    /// The pair (V*, V x V*).
    PairUE pair() const { return {triple(), dual_part(n())}; }
    friend bool operator==(const GQStructure&, const GQStructure&) = default;

private:
    std::array<QMat, 3> gens_;
};

struct GQReport {
    bool valid = true;
    std::string failure;
    /// For complex-symplectic input: +1 if the third generator is the structure of the
    /// form omega J, -1 if it is that of -omega J.
    std::optional<int> third_generator_sign;
};

GQReport check_gq(const GQStructure& g);

/// w(J., J.) = -w, i.e. the (1,1) part of w vanishes.
bool is_complex_symplectic_pair(const QMat& j, const QMat& w);
/// Generators (J_J, J_w, J_J J_w); throws InvalidStructure unless w^(1,1) = 0.
GQStructure from_complex_symplectic(const QMat& j, const QMat& w, GQReport* report = nullptr);

/// V = U x (ker rho)*, the structure transported from E x E* through the section.
/// Columns of the model: (U, (ker rho)*), then (U*, ker rho); ker rho carries its
/// canonical echelon basis.
GQStructure from_co_cr(const HypercomplexTriple& e, const QMat& rho, const QMat& section);
/// The isometry V x V* -> E x E* used by from_co_cr.
QMat co_cr_frame(const QMat& rho, const QMat& section);
/// Dual construction: from_co_cr on (E*, iota^T). `section` maps U* -> E* with
/// iota^T section = 1; when omitted, a least-index section is chosen.
GQStructure from_cr(const HypercomplexTriple& e, const QMat& iota, const std::optional<QMat>& section = {});

/// Blockwise product of generators, without any precondition.
GQStructure direct_sum_gq(const GQStructure& a, const GQStructure& b);
/// Blockwise product; throws unless one factor's pair sheaf is torsion-free.
GQStructure product_gq(const GQStructure& a, const GQStructure& b);
/// Conjugation of every generator by E_b C_A.
GQStructure scramble(const GQStructure& g, const BField& b, const QMat& a);
/// Random b and A from the seed.
GQStructure scramble_seeded(const GQStructure& g, std::uint64_t seed, BField* b_out = nullptr, QMat* a_out = nullptr);

// ---------------------------------------------------------------------------
// Classification.

/// Rotation with first column p: the frame (p, q, p x q) of a rational unit vector p.
QMat frame_for(const SpherePoint& p);
/// Chart point of a sphere point (inverse of admissible_from_lambda).
ChartPoint lambda_from_admissible(const SpherePoint& p);

struct CSFactor {
    QMat j;
    QMat w;
    /// Columns: the sphere points of the complex-type axis, the symplectic axis and their product.
    QMat frame;
    /// Support pair in the chart anchored at the first generator.
    std::array<ChartPoint, 2> support;

    std::size_t dim() const { return j.rows(); }
    /// Generators in the global frame: gen_a = sum_b frame(a, b) canonical_b.
    GQStructure structure() const;
};

struct CRQFactor {
    HypercomplexTriple e;
    QMat iota;
    QMat section;

    std::size_t dim() const { return e.dim(); }
    GQStructure structure() const { return from_cr(e, iota, section); }
};

struct Certificate {
    bool partial = false;
    /// Symbolic torsion supports that would need a field extension.
    std::vector<std::string> field_extension_required;
    BField b;
    QMat a;
    std::optional<CRQFactor> cr;
    std::vector<CSFactor> cs;
    SheafInvariants invariants;
    std::uint64_t seed = 0;

    std::vector<std::size_t> factor_dims() const;
};

struct ClassifyOptions {
    std::uint64_t seed = 0;
    int max_retries = 32;
};

/// Thrown when a step of the classification fails an internal consistency check.
class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Certificate classify(const GQStructure& g, const ClassifyOptions& opts = {});

/// The product of the certificate's factors in canonical order, before b and A.
GQStructure rebuild_model(const Certificate& c);

struct VerifyReport {
    bool ok = false;
    std::string reason;
    /// Coefficients of each input generator in the rebuilt ones.
    QMat rotation;
};

VerifyReport verify_certificate_report(const GQStructure& g, const Certificate& c,
                                       const std::optional<SheafInvariants>& fresh = {});
bool verify_certificate(const GQStructure& g, const Certificate& c);

/// Canonical factor order: CS factors by first support point.
void sort_factors(Certificate& c);

// ---------------------------------------------------------------------------
// Generators of test structures.

/// Re of a multiple of dz1 ^ dz2 ^ ... on C^{2m} in real coordinates (x1, y1, x2, y2, ...).
QMat holomorphic_symplectic_real(std::size_t m, const Rational& re, const Rational& im);

struct CompositeSpec {
    std::size_t cr_dim = 4;                ///< 0, 4 or 8
    std::vector<std::size_t> cs_dims;      ///< each 4 or 8
};

struct CompositeTruth {
    GQStructure g;
    std::vector<std::size_t> factor_dims;  ///< CR first, then CS in construction order
    /// One entry per CS factor: support pair and lengths at each point.
    std::vector<std::array<ChartPoint, 2>> supports;
    std::vector<std::vector<int>> lengths;
};

/// Random CR pair (U, E) with dim E = d.
PairUE random_cr_pair(SeededRng& rng, std::size_t d);
/// Random complex-symplectic input of real dimension 4m.
std::pair<QMat, QMat> random_complex_symplectic(SeededRng& rng, std::size_t m);
/// Random complex structure on R^{2m} with a Kahler-type form (nonzero (1,1) part).
std::pair<QMat, QMat> random_kahler_type(SeededRng& rng, std::size_t m);

/// CR factor times complex-symplectic factors with distinct support pairs, scrambled.
CompositeTruth random_composite(SeededRng& rng, const CompositeSpec& spec, bool scrambled = true);

/// Product of two complex-symplectic factors whose supports are the roots of
/// lambda^2 + lambda + 1 and lambda^2 - lambda + 1, with rational generators.
GQStructure irrational_torsion_example();

}  // namespace gqla
