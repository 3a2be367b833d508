#pragma once

#include "mfs/laurent.hpp"
#include "mfs/linalg.hpp"

#include <vector>

namespace mfs {

/// Square matrix with Laurent-polynomial entries.
struct LaurentMatrix {
    std::size_t size = 0;
    std::vector<LaurentPoly> entries;

    LaurentMatrix() = default;
    explicit LaurentMatrix(std::size_t s) : size(s), entries(s * s) {}

    static LaurentMatrix identity(std::size_t s) {
        LaurentMatrix m(s);
        for (std::size_t i = 0; i < s; ++i) m(i, i) = LaurentPoly(Rat(1));
        return m;
    }
    static LaurentMatrix from_rational(const Mat& m);

    LaurentPoly& operator()(std::size_t i, std::size_t j) { return entries[i * size + j]; }
    const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return entries[i * size + j]; }

    bool operator==(const LaurentMatrix& o) const { return size == o.size && entries == o.entries; }

    bool is_symmetric() const;
    /// Least exponent appearing in any entry (0 for the zero matrix).
    int min_exponent() const;
    /// Entrywise multiplication by λ^e.
    LaurentMatrix shifted(int e) const;
    /// Entrywise evaluation at λ = 0; throws on a pole.
    Mat at_zero() const;

    LaurentMatrix transposed() const;
};

LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y);

/// Exact determinant (expansion over column subsets; fine at desk scale).
LaurentPoly laurent_det(const LaurentMatrix& m);

/// True iff det(M) is a nonzero rational times a power of λ.
bool is_unimodular_laurent(const LaurentMatrix& m);

/// Inverse of a matrix that is unimodular over K[λ, λ^{-1}]; entries stay
/// Laurent.  Throws if the determinant is not a unit.
LaurentMatrix laurent_inverse(const LaurentMatrix& m);

/// x^T M y for Laurent coordinate vectors.
LaurentPoly laurent_bilinear(const std::vector<LaurentPoly>& x, const LaurentMatrix& m,
                             const std::vector<LaurentPoly>& y);

} // namespace mfs
