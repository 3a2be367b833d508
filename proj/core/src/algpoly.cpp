#include "mfs/algpoly.hpp"

namespace mfs {

void AlgebraPoly::trim() {
    while (!coeffs_.empty() && is_zero_vec(coeffs_.back())) coeffs_.pop_back();
}

AlgebraPoly AlgebraPoly::lambda_power(const FiniteAlgebra& a, unsigned e) {
    std::vector<Vec> cs(e + 1, Vec(a.dim(), Rat(0)));
    cs[e] = a.unit();
    return AlgebraPoly(&a, std::move(cs));
}

Vec AlgebraPoly::coeff(std::size_t e) const {
    if (e >= coeffs_.size()) return Vec(alg_ ? alg_->dim() : 0, Rat(0));
    return coeffs_[e];
}

bool AlgebraPoly::is_monic() const {
    return !coeffs_.empty() && coeffs_.back() == alg_->unit();
}

AlgebraPoly AlgebraPoly::operator-() const {
    AlgebraPoly r = *this;
    for (auto& c : r.coeffs_)
        for (auto& q : c) q = -q;
    return r;
}

AlgebraPoly operator+(const AlgebraPoly& x, const AlgebraPoly& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    std::vector<Vec> cs(std::max(x.coeffs_.size(), y.coeffs_.size()),
                        Vec(x.alg_->dim(), Rat(0)));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) cs[i] = vec_add(cs[i], x.coeffs_[i]);
    for (std::size_t i = 0; i < y.coeffs_.size(); ++i) cs[i] = vec_add(cs[i], y.coeffs_[i]);
    return AlgebraPoly(x.alg_, std::move(cs));
}

AlgebraPoly operator-(const AlgebraPoly& x, const AlgebraPoly& y) { return x + (-y); }

AlgebraPoly operator*(const AlgebraPoly& x, const AlgebraPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    const FiniteAlgebra& a = *x.alg_;
    std::vector<Vec> cs(x.coeffs_.size() + y.coeffs_.size() - 1, Vec(a.dim(), Rat(0)));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        if (is_zero_vec(x.coeffs_[i])) continue;
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
            if (is_zero_vec(y.coeffs_[j])) continue;
            cs[i + j] = vec_add(cs[i + j], a.mul(x.coeffs_[i], y.coeffs_[j]));
        }
    }
    return AlgebraPoly(x.alg_, std::move(cs));
}

AlgebraPoly AlgebraPoly::shifted(unsigned e) const {
    if (is_zero() || e == 0) return *this;
    std::vector<Vec> cs(coeffs_.size() + e, Vec(alg_->dim(), Rat(0)));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) cs[i + e] = coeffs_[i];
    return AlgebraPoly(alg_, std::move(cs));
}

std::pair<AlgebraPoly, AlgebraPoly> divide_by_monic(const AlgebraPoly& x, const AlgebraPoly& n) {
    if (n.is_zero() || !n.is_monic()) throw Error("divide_by_monic: divisor must be monic");
    const FiniteAlgebra& a = n.algebra();
    int r = n.degree();
    AlgebraPoly q, rem = x;
    while (!rem.is_zero() && rem.degree() >= r) {
        unsigned shift = static_cast<unsigned>(rem.degree() - r);
        AlgebraPoly t = AlgebraPoly::constant(a, rem.coeff(static_cast<std::size_t>(rem.degree())))
                            .shifted(shift);
        q = q + t;
        rem = rem - t * n;
    }
    return {q, rem};
}

} // namespace mfs
