#pragma once

#include "mfs/linalg.hpp"

#include <vector>

namespace mfs {

/// One graded quotient I_k/I_{k-1}: an index k where the filtration jumps,
/// representatives spanning the quotient, and the Gram matrix of the metric
/// in that representative basis.
struct GradedPiece {
    int k = 0;
    std::vector<Vec> reps;
    Mat gram;
};

/// Exhaustive increasing filtration of Q^dim with metrics on the graded
/// quotients.  Only jump indices are stored; pieces are ordered by k.
struct NondegenerateFiltration {
    std::size_t dim = 0;
    std::vector<GradedPiece> pieces;

    /// I_k as a subspace (union of all pieces with index <= k).
    Subspace filter_at(int k) const;
    int min_jump() const;
    int max_jump() const;
    /// Sum over pieces of the quotient dimensions.
    std::size_t total_rank() const;

    /// Quotient coordinates of v in the representative basis of the piece
    /// with index k, modulo I_{k-1}; v must lie in I_k.
    Vec project_to_piece(std::size_t piece_index, const Vec& v) const;
};

/// Structural equality: same jump subspaces and, after expressing one
/// representative basis through the other modulo the previous filter, the
/// same graded metrics.
bool filtrations_equal(const NondegenerateFiltration& x, const NondegenerateFiltration& y);

} // namespace mfs
