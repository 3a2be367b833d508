#pragma once

#include "mfs/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mfs {

/// Laurent polynomial in one variable (written λ throughout) with exact
/// rational coefficients.  Stored dense from min_exponent up; leading and
/// trailing stored coefficients are nonzero unless the polynomial is zero.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rat& c) { // NOLINT: implicit by design, scalars embed
        if (c != 0) coeffs_ = {c};
    }
    LaurentPoly(int min_exp, std::vector<Rat> coeffs) : min_(min_exp), coeffs_(std::move(coeffs)) {
        normalize();
    }

    /// c * λ^e
    static LaurentPoly monomial(const Rat& c, int e) {
        if (c == 0) return {};
        return LaurentPoly(e, {c});
    }
    static LaurentPoly lambda(int e = 1) { return monomial(Rat(1), e); }

    bool is_zero() const { return coeffs_.empty(); }
    int min_exponent() const { return min_; }
    int degree() const { return min_ + static_cast<int>(coeffs_.size()) - 1; } // undefined for zero
    bool is_polynomial() const { return coeffs_.empty() || min_ >= 0; }
    bool is_monomial() const { return coeffs_.size() == 1; }
    bool is_constant() const { return coeffs_.empty() || (min_ == 0 && coeffs_.size() == 1); }

    Rat coeff(int e) const {
        int i = e - min_;
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rat(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }
    Rat leading_coeff() const { return coeffs_.empty() ? Rat(0) : coeffs_.back(); }
    Rat constant_term() const { return coeff(0); }

    /// All stored terms as (exponent, coefficient), exponents increasing.
    std::vector<std::pair<int, Rat>> terms() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    bool operator==(const LaurentPoly& o) const { return min_ == o.min_ && coeffs_ == o.coeffs_; }

    /// Multiplication by λ^e.
    LaurentPoly shifted(int e) const {
        LaurentPoly r = *this;
        if (!r.coeffs_.empty()) r.min_ += e;
        return r;
    }

    std::string str(const std::string& var = "L") const;

private:
    void normalize();

    int min_ = 0;
    std::vector<Rat> coeffs_;
};

/// Coefficient of λ^{-1}; linear, vanishes on polynomials.
inline Rat residue_at_zero(const LaurentPoly& f) { return f.coeff(-1); }

/// Polynomial division over Q[λ]: f = q*g + r with deg r < deg g.
/// Both inputs must be genuine polynomials (no negative exponents).
std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& f, const LaurentPoly& g);

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b); // monic gcd

} // namespace mfs
