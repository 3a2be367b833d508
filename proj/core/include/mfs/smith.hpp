#pragma once

#include "mfs/laurent_matrix.hpp"

#include <vector>

namespace mfs {

/// U * M * V = diag(e_1, ..., e_s) over Q[λ], with U, V products of
/// elementary transformations (det a nonzero rational), e_i monic and
/// e_i | e_{i+1}.  Zero diagonal entries (rank deficiency) sort last.
struct SmithDecomposition {
    LaurentMatrix left;               // U
    std::vector<LaurentPoly> diag;    // e_1, ..., e_s
    LaurentMatrix right;              // V
    int shift = 0;                    // k_0 bookkeeping for callers that cleared λ-poles
    bool rank_deficient = false;

    LaurentMatrix diag_matrix() const {
        LaurentMatrix d(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
        return d;
    }
};

/// Smith normal form of a square matrix with polynomial entries
/// (no negative λ-powers; clear them first and record the shift).
SmithDecomposition smith_normal_form(const LaurentMatrix& m);

/// Exact certification: U*M*V == diag, det(U), det(V) nonzero rationals,
/// divisibility chain.  Throws with a description on failure.
void certify_smith(const LaurentMatrix& m, const SmithDecomposition& d);

} // namespace mfs
