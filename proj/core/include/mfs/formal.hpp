#pragma once

#include "mfs/mfa.hpp"
#include "mfs/series.hpp"

#include <map>
#include <vector>

namespace mfs {

/// Formal Saito structure in the flat logarithmic frame
/// (d/dt_1, ..., d/dt_n, q_1 d/dq_1, ..., q_m d/dq_m).  The Euler field is
/// stored through its frame coefficients E^a, which are affine-linear in t
/// and q-independent (this encodes grad grad E = 0).
struct FormalSaito {
    std::size_t nt = 0, nq = 0;
    unsigned order = 4;
    /// c[a][b][g]: coefficient of frame g in X_a ∘ X_b
    std::vector<std::vector<std::vector<Series<Rat>>>> c;
    Vec unit; // constant frame coordinates of e
    Mat euler_linear; // euler_linear(a, b) = coefficient of t_b in E^a
    Vec euler_const;  // constant part of E^a

    std::size_t dim() const { return nt + nq; }
    /// M(g, d) = X_g E^d (a constant matrix).
    Mat frame_euler_derivatives() const;
    Series<Rat> euler_component(std::size_t a) const;
    Series<Rat> apply_euler(const Series<Rat>& f) const;
};

struct FormalMFS {
    FormalSaito saito;
    NondegenerateFiltration filtration; // on the constant frame span
    std::map<int, Rat> charges;
};

/// Localized formal Frobenius structure over K[λ]: λ-polynomial structure
/// constants, the same Euler-field shape, a constant localized metric, and
/// the charge D.
struct LocalizedFormalFrobenius {
    std::size_t nt = 0, nq = 0;
    unsigned order = 4;
    std::vector<std::vector<std::vector<Series<LaurentPoly>>>> c;
    Vec unit;
    Mat euler_linear;
    Vec euler_const;
    LocalizedMetric metric;
    Rat charge;

    std::size_t dim() const { return nt + nq; }
    Mat frame_euler_derivatives() const;
};

/// Axiom checks for the formal Saito definition; derivative-consuming axioms
/// are certified to order T-1 and the report records the order.
Report check_formal_saito(const FormalSaito& s);

/// Full formal-MFS check: Saito axioms plus ideal condition, metric
/// invariance, [E,-]-stability of the filters, and the charge equation.
Report check_formal_mfs(const FormalMFS& m);

/// Conditions (i)-(iv) of the localized formal Frobenius definition,
/// including the E^λ = E + λ d/dλ homogeneity equations.
Report check_localized_formal_frobenius(const LocalizedFormalFrobenius& f);

/// λ -> 0 limit: structure constants evaluated at λ = 0, filtration and
/// graded metrics extracted from the localized metric, charges D_k = D - k.
/// Errors if a structure constant has a λ-pole.
FormalMFS limit_mfs(const LocalizedFormalFrobenius& f);

/// Potential vector field G with X_a X_b G^g = C_ab^g, computed by sequential
/// integration; q-directions may produce log q symbols.  Throws if the
/// structure constants are not integrable.
std::vector<LogSeries> potential_vector_field(const FormalSaito& s);

/// The constant-coefficient formal MFS attached to a graded mixed Frobenius
/// algebra, with E = sum (1 - |e_a|) t_a d/dt_a.  Requires a graded filtration
/// compatible with the declared charges.
FormalMFS mfs_from_graded_mfa(const MixedFrobeniusAlgebra& m, const std::map<int, Rat>& charges,
                              unsigned order = 4);

} // namespace mfs
