#include "mfs/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace mfs {

void LaurentPoly::normalize() {
    std::size_t lo = 0;
    while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
    std::size_t hi = coeffs_.size();
    while (hi > lo && coeffs_[hi - 1] == 0) --hi;
    if (lo == hi) {
        coeffs_.clear();
        min_ = 0;
        return;
    }
    if (lo > 0 || hi < coeffs_.size()) {
        coeffs_ = std::vector<Rat>(coeffs_.begin() + static_cast<long>(lo),
                                   coeffs_.begin() + static_cast<long>(hi));
        min_ += static_cast<int>(lo);
    }
}

std::vector<std::pair<int, Rat>> LaurentPoly::terms() const {
    std::vector<std::pair<int, Rat>> ts;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) ts.emplace_back(min_ + static_cast<int>(i), coeffs_[i]);
    return ts;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(min_, o.min_);
    int hi = std::max(degree(), o.degree());
    std::vector<Rat> c(static_cast<std::size_t>(hi - lo + 1), Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        c[static_cast<std::size_t>(min_ - lo) + i] = coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        c[static_cast<std::size_t>(o.min_ - lo) + i] += o.coeffs_[i];
    min_ = lo;
    coeffs_ = std::move(c);
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<Rat> c(x.coeffs_.size() + y.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        if (x.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j)
            c[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    return LaurentPoly(x.min_ + y.min_, std::move(c));
}

std::string LaurentPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms()) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat ac = abs(c);
        if (ac != 1 || e == 0) os << ac.get_str();
        if (e != 0) {
            if (ac != 1) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& f, const LaurentPoly& g) {
    if (!f.is_polynomial() || !g.is_polynomial()) throw Error("poly_divmod: inputs must be polynomial");
    if (g.is_zero()) throw Error("poly_divmod: division by zero");
    LaurentPoly q, r = f;
    Rat lc = g.leading_coeff();
    int dg = g.degree();
    while (!r.is_zero() && r.degree() >= dg) {
        LaurentPoly t = LaurentPoly::monomial(r.leading_coeff() / lc, r.degree() - dg);
        q += t;
        r -= t * g;
    }
    return {q, r};
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        Rat inv = 1 / a.leading_coeff();
        a = a * LaurentPoly(inv);
    }
    return a;
}

} // namespace mfs
