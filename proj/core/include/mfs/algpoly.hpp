#pragma once

#include "mfs/algebra.hpp"
#include "mfs/laurent.hpp"

#include <utility>
#include <vector>

namespace mfs {

/// Polynomial in λ with coefficients in a finite-dimensional algebra,
/// stored as ascending coordinate vectors.  Elements of A[λ].
class AlgebraPoly {
public:
    AlgebraPoly() = default;
    AlgebraPoly(const FiniteAlgebra* a, std::vector<Vec> coeffs)
        : alg_(a), coeffs_(std::move(coeffs)) {
        trim();
    }
    static AlgebraPoly constant(const FiniteAlgebra& a, const Vec& v) {
        return AlgebraPoly(&a, {v});
    }
    /// λ^e with unit coefficient.
    static AlgebraPoly lambda_power(const FiniteAlgebra& a, unsigned e);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    const FiniteAlgebra& algebra() const { return *alg_; }
    Vec coeff(std::size_t e) const;
    const std::vector<Vec>& coeffs() const { return coeffs_; }

    bool is_monic() const; // leading coefficient equals the unit

    AlgebraPoly operator-() const;
    friend AlgebraPoly operator+(const AlgebraPoly& x, const AlgebraPoly& y);
    friend AlgebraPoly operator-(const AlgebraPoly& x, const AlgebraPoly& y);
    friend AlgebraPoly operator*(const AlgebraPoly& x, const AlgebraPoly& y);
    bool operator==(const AlgebraPoly& o) const { return coeffs_ == o.coeffs_; }

    AlgebraPoly shifted(unsigned e) const; // multiply by λ^e

private:
    void trim();
    const FiniteAlgebra* alg_ = nullptr;
    std::vector<Vec> coeffs_;
};

/// Unique division x = n*q + r with deg r < deg n; n must be monic.
std::pair<AlgebraPoly, AlgebraPoly> divide_by_monic(const AlgebraPoly& x, const AlgebraPoly& n);

} // namespace mfs
