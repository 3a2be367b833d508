#pragma once

#include "mfs/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mfs {

/// Finite-dimensional commutative unital algebra over Q, given by rational
/// structure constants e_i * e_j = sum_k c[i][j][k] e_k.  Commutativity,
/// associativity and the unit axiom are checked on construction; graded
/// input additionally requires c_{ij}^k = 0 unless |e_k| = |e_i| + |e_j|.
class FiniteAlgebra {
public:
    FiniteAlgebra(std::vector<std::string> basis_names,
                  std::vector<Mat> mult_table, // mult_table[i](k, j): coefficient of e_k in e_i*e_j
                  Vec unit,
                  std::optional<std::vector<int>> grading = std::nullopt);

    static FiniteAlgebra truncated_polynomial(std::size_t n); // Q[x]/(x^n), basis 1, x, ..., x^{n-1}
    static FiniteAlgebra direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    const Vec& unit() const { return unit_; }
    const std::optional<std::vector<int>>& grading() const { return grading_; }

    /// Structure constant c_{ij}^k.
    const Rat& c(std::size_t i, std::size_t j, std::size_t k) const { return mult_[i](k, j); }
    /// Matrix of multiplication by a (acting on coordinate columns).
    Mat mult_matrix(const Vec& a) const;
    Vec mul(const Vec& x, const Vec& y) const;
    Vec power(const Vec& x, unsigned k) const;
    bool is_nilpotent(const Vec& x) const;

    /// Change of basis: new basis vectors are the columns of p (coordinates
    /// in the old basis).  Structure constants are transported.
    FiniteAlgebra with_basis(const Mat& p, std::vector<std::string> new_names) const;

private:
    std::size_t dim_;
    std::vector<std::string> names_;
    std::vector<Mat> mult_;
    Vec unit_;
    std::optional<std::vector<int>> grading_;
};

/// Subspace of an algebra closed under multiplication by every basis element.
struct IdealSubspace {
    Subspace space;
    bool is_ideal(const FiniteAlgebra& a) const;
};

/// Symmetric bilinear form given by its Gram matrix on a stated basis.
struct BilinearForm {
    Mat matrix;
    bool is_symmetric() const { return matrix == matrix.transposed(); }
    bool is_nondegenerate() const { return det(matrix) != 0; }
};

/// Nilpotent elements of A, computed as the kernel of the trace form
/// (x, y) -> tr(mult by x*y); valid in characteristic zero.
IdealSubspace nilradical(const FiniteAlgebra& a);

/// Span of k-fold products of elements of I; I^0 = A.
IdealSubspace ideal_power(const FiniteAlgebra& a, const IdealSubspace& i, unsigned k);

/// Kernel of multiplication by a^k.
Subspace annihilator(const FiniteAlgebra& a, const Vec& elem, unsigned k);

struct FrobeniusFiltrationResult {
    /// chain[0] = 0 ⊆ chain[1] ⊆ ... ⊆ chain[l] = A, chain[j] = N^{l-j}
    std::vector<Subspace> chain;
    /// For each step j >= 1: representatives of chain[j]/chain[j-1] and the
    /// orthonormal metric in that basis (an identity Gram matrix).
    std::vector<std::vector<Vec>> graded_reps;
    std::vector<BilinearForm> metrics;
};

/// Constructive existence of a Frobenius filtration: nilradical powers with
/// orthonormal metrics on bases of 1-dimensional simple summands.  Requires
/// the algebra to be split over Q; otherwise throws naming the offending
/// graded quotient.
FrobeniusFiltrationResult frobenius_filtration_existence(const FiniteAlgebra& a);

} // namespace mfs
