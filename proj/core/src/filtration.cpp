#include "mfs/filtration.hpp"

#include "mfs/rational.hpp"

namespace mfs {

Subspace NondegenerateFiltration::filter_at(int k) const {
    std::vector<Vec> vs;
    for (const auto& p : pieces)
        if (p.k <= k) vs.insert(vs.end(), p.reps.begin(), p.reps.end());
    return Subspace(dim, vs);
}

int NondegenerateFiltration::min_jump() const {
    if (pieces.empty()) throw Error("filtration: no pieces");
    return pieces.front().k;
}

int NondegenerateFiltration::max_jump() const {
    if (pieces.empty()) throw Error("filtration: no pieces");
    return pieces.back().k;
}

std::size_t NondegenerateFiltration::total_rank() const {
    std::size_t n = 0;
    for (const auto& p : pieces) n += p.reps.size();
    return n;
}

Vec NondegenerateFiltration::project_to_piece(std::size_t piece_index, const Vec& v) const {
    const auto& piece = pieces[piece_index];
    Subspace below = filter_at(piece.k - 1);
    std::size_t m = piece.reps.size();
    Mat sys(dim, m + below.dim());
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < dim; ++r) sys(r, c) = piece.reps[c][r];
    auto bb = below.basis_vectors();
    for (std::size_t c = 0; c < bb.size(); ++c)
        for (std::size_t r = 0; r < dim; ++r) sys(r, m + c) = bb[c][r];
    auto sol = solve(sys, v);
    if (!sol) throw Error("project_to_piece: vector not in the filter");
    return Vec(sol->begin(), sol->begin() + static_cast<long>(m));
}

bool filtrations_equal(const NondegenerateFiltration& x, const NondegenerateFiltration& y) {
    if (x.dim != y.dim || x.pieces.size() != y.pieces.size()) return false;
    for (std::size_t i = 0; i < x.pieces.size(); ++i) {
        const auto& px = x.pieces[i];
        const auto& py = y.pieces[i];
        if (px.k != py.k || px.reps.size() != py.reps.size()) return false;
        if (!(x.filter_at(px.k) == y.filter_at(py.k))) return false;
        // transport x's representatives into y's basis modulo the previous filter
        std::size_t m = px.reps.size();
        Mat change(m, m);
        for (std::size_t r = 0; r < m; ++r) {
            Vec coords = y.project_to_piece(i, px.reps[r]);
            for (std::size_t c = 0; c < m; ++c) change(r, c) = coords[c];
        }
        Mat transported = change * py.gram * change.transposed();
        if (!(transported == px.gram)) return false;
    }
    return true;
}

} // namespace mfs
