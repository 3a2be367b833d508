#include "mfs/laurent_matrix.hpp"

#include <algorithm>

namespace mfs {

LaurentMatrix LaurentMatrix::from_rational(const Mat& m) {
    if (m.rows != m.cols) throw Error("LaurentMatrix: non-square input");
    LaurentMatrix r(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = LaurentPoly(m(i, j));
    return r;
}

bool LaurentMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j)
            if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
}

int LaurentMatrix::min_exponent() const {
    int e = 0;
    for (const auto& p : entries)
        if (!p.is_zero()) e = std::min(e, p.min_exponent());
    return e;
}

LaurentMatrix LaurentMatrix::shifted(int e) const {
    LaurentMatrix r(size);
    for (std::size_t i = 0; i < entries.size(); ++i) r.entries[i] = entries[i].shifted(e);
    return r;
}

Mat LaurentMatrix::at_zero() const {
    Mat m(size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const auto& p = (*this)(i, j);
            if (!p.is_zero() && p.min_exponent() < 0)
                throw Error("at_zero: entry has a pole at lambda = 0");
            m(i, j) = p.constant_term();
        }
    return m;
}

LaurentMatrix LaurentMatrix::transposed() const {
    LaurentMatrix r(size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) r(j, i) = (*this)(i, j);
    return r;
}

LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y) {
    if (x.size != y.size) throw Error("laurent matrix product: size mismatch");
    LaurentMatrix r(x.size);
    for (std::size_t i = 0; i < x.size; ++i)
        for (std::size_t k = 0; k < x.size; ++k) {
            if (x(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < x.size; ++j) {
                if (y(k, j).is_zero()) continue;
                r(i, j) += x(i, k) * y(k, j);
            }
        }
    return r;
}

namespace {

// Determinant of the submatrix on rows [row..size) and the column set
// encoded in `cols` (bitmask), by first-row expansion with memoization.
LaurentPoly det_rec(const LaurentMatrix& m, std::size_t row, unsigned cols,
                    std::vector<std::pair<bool, LaurentPoly>>& memo) {
    if (row == m.size) return LaurentPoly(Rat(1));
    auto& slot = memo[cols];
    if (slot.first) return slot.second;
    LaurentPoly d;
    int sign = 1;
    for (std::size_t j = 0; j < m.size; ++j) {
        if (!(cols & (1u << j))) continue;
        if (!m(row, j).is_zero()) {
            LaurentPoly sub = det_rec(m, row + 1, cols & ~(1u << j), memo);
            LaurentPoly term = m(row, j) * sub;
            d += (sign > 0) ? term : -term;
        }
        sign = -sign;
    }
    slot = {true, d};
    return d;
}

} // namespace

LaurentPoly laurent_det(const LaurentMatrix& m) {
    if (m.size == 0) return LaurentPoly(Rat(1));
    if (m.size > 20) throw Error("laurent_det: matrix too large");
    std::vector<std::pair<bool, LaurentPoly>> memo(1u << m.size);
    return det_rec(m, 0, (1u << m.size) - 1, memo);
}

bool is_unimodular_laurent(const LaurentMatrix& m) {
    return laurent_det(m).is_monomial();
}

LaurentMatrix laurent_inverse(const LaurentMatrix& m) {
    LaurentPoly d = laurent_det(m);
    if (!d.is_monomial())
        throw Error("laurent_inverse: determinant " + d.str() + " is not a unit");
    Rat c = d.leading_coeff();
    int e = d.min_exponent();
    LaurentMatrix inv(m.size);
    // adjugate / det
    for (std::size_t i = 0; i < m.size; ++i)
        for (std::size_t j = 0; j < m.size; ++j) {
            LaurentMatrix minor(m.size - 1);
            for (std::size_t a = 0, ai = 0; a < m.size; ++a) {
                if (a == j) continue;
                for (std::size_t b = 0, bj = 0; b < m.size; ++b) {
                    if (b == i) continue;
                    minor(ai, bj) = m(a, b);
                    ++bj;
                }
                ++ai;
            }
            LaurentPoly cof = laurent_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv(i, j) = (cof * LaurentPoly(1 / c)).shifted(-e);
        }
    return inv;
}

LaurentPoly laurent_bilinear(const std::vector<LaurentPoly>& x, const LaurentMatrix& m,
                             const std::vector<LaurentPoly>& y) {
    if (x.size() != m.size || y.size() != m.size) throw Error("laurent_bilinear: size mismatch");
    LaurentPoly s;
    for (std::size_t i = 0; i < m.size; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.size; ++j) {
            if (y[j].is_zero() || m(i, j).is_zero()) continue;
            s += x[i] * m(i, j) * y[j];
        }
    }
    return s;
}

} // namespace mfs
