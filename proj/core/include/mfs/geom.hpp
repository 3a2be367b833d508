#pragma once

#include "mfs/formal.hpp"
#include "mfs/mfa.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mfs {

/// Even-cohomology model of a smooth projective variety: graded cup-product
/// algebra on a basis φ_0 = 1, φ_1..φ_p (the degree-2 nef classes),
/// φ_{p+1}..φ_s, with the intersection functional and c_1(X).
struct CohomologyModel {
    FiniteAlgebra cup;   // graded; |φ_α| stored in complex (half) degrees
    Vec integrals;       // ∫_X φ_α
    Vec c1_x;            // coordinates of c_1(X)
    std::size_t dim_x = 0;

    std::size_t dim() const { return cup.dim(); }
    int degree(std::size_t a) const { return (*cup.grading())[a]; }
    /// Number of degree-2 basis classes (they must sit at indices 1..p).
    std::size_t num_divisors() const;
    Rat integral(const Vec& x) const;
    /// Poincaré pairing matrix ∫ φ_α ∪ φ_β.
    Mat pairing() const;
    /// Dual basis φ^α with ∫ φ^α ∪ φ_β = δ_αβ, as columns.
    Mat dual_basis() const;
    /// basis ordering, φ_0 = 1 as unit, degree-2 block contiguous, top-degree
    /// integral structure, nondegenerate pairing
    void validate() const;
};

/// Chern data of a concave bundle of rank r.
struct BundleData {
    std::size_t rank = 0;
    std::vector<Vec> chern; // c_1, ..., c_r

    /// each c_i of pure degree i and nilpotent under cup
    void validate(const CohomologyModel& c) const;
};

/// Cohomology-valued Laurent polynomial in λ, held coordinatewise.
using CohomLaurent = std::vector<LaurentPoly>;

/// Twisted genus-zero correlator record: curve class d ≠ 0, an insertion
/// multiset, and the correlator value in K[λ].
struct GWRecord {
    std::vector<unsigned> degree;        // length p, not all zero
    std::vector<std::size_t> insertions; // basis indices, stored sorted
    LaurentPoly value;
};

struct GWDataset {
    std::vector<GWRecord> records;
    std::vector<unsigned> max_degree; // componentwise truncation bound

    /// symmetry (no conflicting duplicates), index ranges, d bounds, and
    /// λ-homogeneity forced by the degree axiom
    void validate(const CohomologyModel& c, const BundleData& b) const;
};

/// Twisted quantum product assembled against a correlator dataset.
struct TwistedProductModel {
    LocalizedFormalFrobenius structure;
    /// structure frame a corresponds to basis class frame_basis[a]
    std::vector<std::size_t> frame_basis;
    std::string provenance;
};

/// 1/e_{S1}(V) as a finite λ-Laurent expansion; the geometric series
/// terminates by nilpotency of the Chern classes.
CohomLaurent equivariant_euler_inverse(const CohomologyModel& c, const BundleData& b);

/// g^λ(φ_α, φ_β) = ∫ φ_α ∪ φ_β ∪ 1/e_{S1}(V), on the basis φ_0..φ_s.
/// Verifies the exponent pattern η_{αβ} λ^{|φ_α|+|φ_β|-dim X-r}.
LocalizedMetric localized_metric_geom(const CohomologyModel& c, const BundleData& b);

/// Euler weights ξ with c_1(X) + c_1(V) = Σ ξ_i φ_i; errors if the sum is
/// not supported on the degree-2 basis.
Vec euler_weights(const CohomologyModel& c, const BundleData& b);

/// Solve eq. g^λ(x ∗ y, z) = classical term + Σ_d q^d correlator sums for the
/// structure constants of ∗, truncated at total order T.  Errors on λ-poles.
TwistedProductModel build_twisted_product(const CohomologyModel& c, const BundleData& b,
                                          const GWDataset& gw, unsigned order = 4);

/// I_0 = H·c_r(V), I_k = I_0 + p_r(Ker N^k) with the companion matrix built
/// from -c_i(V), and the stated intersection metrics.
NondegenerateFiltration classical_limit_filtration(const CohomologyModel& c, const BundleData& b);

/// Φ_cl = (1/3!) ∫ τ∪τ∪τ as a cubic in the coordinates t_0..t_s.
Series<Rat> compute_phi_cl(const CohomologyModel& c, unsigned order = 4);

} // namespace mfs
