#pragma once

#include "mfs/algebra.hpp"
#include "mfs/algpoly.hpp"
#include "mfs/filtration.hpp"
#include "mfs/laurent_matrix.hpp"
#include "mfs/report.hpp"
#include "mfs/smith.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace mfs {

/// Localized K[λ]-metric represented on a declared K[λ]-basis of H^λ.
struct LocalizedMetric {
    LaurentMatrix matrix;
    std::size_t ambient_dim() const { return matrix.size; }
    /// symmetric + unimodular over K[λ, λ^{-1}]
    void validate() const;
};

/// Adapted bases x_i, y_i with g^λ(x_i, y_j) = λ^{-κ_i} δ_{ij} and
/// κ_1 >= ... >= κ_s.
struct FiltrationProfile {
    std::vector<int> kappas;
    std::vector<std::vector<LaurentPoly>> basis_x; // basis_x[i] = coordinates of x_i
    std::vector<std::vector<LaurentPoly>> basis_y;
};

struct MixedFrobeniusAlgebra {
    FiniteAlgebra algebra;
    NondegenerateFiltration filtration;
    std::optional<std::map<int, Rat>> charges;
};

/// Frobenius algebra with chosen nilpotents n_1, ..., n_r.
struct NilpotentData {
    FiniteAlgebra base;
    Mat metric;                 // invariant metric g on the basis of `base`
    std::vector<Vec> nilpotents; // n_1, ..., n_r

    std::size_t rank() const { return nilpotents.size(); }
    void validate() const; // metric symmetric/nondegenerate/invariant, n_i nilpotent
    /// n = λ^r + n_1 λ^{r-1} + ... + n_r as an element of A[λ].
    AlgebraPoly monic_poly() const;
    /// The r·s x r·s companion operator N on A^{⊕r} (first column -n_1..-n_r,
    /// superdiagonal identity blocks).
    Mat companion_matrix() const;
};

/// Extracts the κ-profile of a localized metric via the Smith normal form of
/// λ^{k_0} G.  Errors on non-unimodular input, citing the determinant.
FiltrationProfile normalize_metric(const LocalizedMetric& g);

/// The induced filtration I_k = span{π(x_i) : κ_i <= k} with the residue
/// metrics g_k(x̄, ȳ) = Res_{λ=0} λ^{k-1} g^λ(x, y).
NondegenerateFiltration filtration_from_profile(const FiltrationProfile& p, const LocalizedMetric& g);

/// Property check for well-definedness of the residue metrics: random
/// λ-multiples added to the lifts must not change any g_k value.
bool residue_metric_well_defined_check(const LocalizedMetric& g, int k, unsigned trials,
                                       std::uint64_t seed = 1);

/// Axiom-by-axiom verification of the mixed-Frobenius-algebra definition.
Report check_mfa(const MixedFrobeniusAlgebra& m);

/// Repackages a nilradical-power chain as a filtration: the piece at index k
/// is chain[k+1]/chain[k] with its orthonormal graded metric.
NondegenerateFiltration filtration_from_existence(const FrobeniusFiltrationResult& r);

/// K[λ]-algebra structure on H^λ: structure constants polynomial in λ.
struct LambdaAlgebra {
    std::size_t dim = 0;
    /// c[i][j][k]: coefficient of basis k in e_i * e_j
    std::vector<std::vector<std::vector<LaurentPoly>>> c;
    Vec unit; // constant coordinates

    std::vector<LaurentPoly> mul(const std::vector<LaurentPoly>& x,
                                 const std::vector<LaurentPoly>& y) const;
    void validate() const; // commutative, associative, unital over K[λ]
    /// Induced algebra on H = H^λ/λH^λ.
    FiniteAlgebra at_zero(const std::vector<std::string>& names) const;
};

/// The λ -> 0 construction: extract the filtration and induced product from a
/// ∗-invariant localized metric.  Errors name the violating basis triple.
MixedFrobeniusAlgebra mfa_from_invariant_localized_metric(const LambdaAlgebra& alg,
                                                          const LocalizedMetric& g);

/// g^λ(x, y) = g(x·y, n^{-1}), expanded by nilpotency; represented on the
/// A-basis of A[λ].
LocalizedMetric nilpotent_localized_metric(const NilpotentData& d);

/// λ-independent product of A extended to A[λ], for the generic pipeline.
LambdaAlgebra constant_lambda_algebra(const FiniteAlgebra& a);

/// Closed-form filtration of the nilpotent construction:
/// I_0 = A·n_r, I_k = I_0 + p_r(Ker N^k), with the companion-matrix metrics.
NondegenerateFiltration nilpotent_filtration_direct(const NilpotentData& d);

} // namespace mfs
