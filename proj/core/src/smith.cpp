#include "mfs/smith.hpp"

#include <limits>

namespace mfs {

namespace {

void swap_rows(LaurentMatrix& d, LaurentMatrix& u, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d.size; ++j) {
        std::swap(d(a, j), d(b, j));
        std::swap(u(a, j), u(b, j));
    }
}

void swap_cols(LaurentMatrix& d, LaurentMatrix& v, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d.size; ++i) {
        std::swap(d(i, a), d(i, b));
        std::swap(v(i, a), v(i, b));
    }
}

// row_a -= q * row_b
void row_op(LaurentMatrix& d, LaurentMatrix& u, std::size_t a, std::size_t b, const LaurentPoly& q) {
    if (q.is_zero()) return;
    for (std::size_t j = 0; j < d.size; ++j) {
        d(a, j) -= q * d(b, j);
        u(a, j) -= q * u(b, j);
    }
}

// col_a -= q * col_b
void col_op(LaurentMatrix& d, LaurentMatrix& v, std::size_t a, std::size_t b, const LaurentPoly& q) {
    if (q.is_zero()) return;
    for (std::size_t i = 0; i < d.size; ++i) {
        d(i, a) -= q * d(i, b);
        v(i, a) -= q * v(i, b);
    }
}

// Scale a row (or column) of the work matrix together with its transform so
// that all rational coefficients become coprime integers.  A plain elementary
// scaling, but it stops the coefficient explosion of repeated division.
void normalize_content(std::vector<LaurentPoly*> entries) {
    mpz_class g = 0, l = 1;
    for (const LaurentPoly* p : entries)
        for (const auto& [e, c] : p->terms()) {
            g = gcd(g, c.get_num());
            l = lcm(l, c.get_den());
        }
    if (g == 0) return;
    Rat scale(l, g);
    scale.canonicalize();
    if (scale == 1) return;
    LaurentPoly sp(scale);
    for (LaurentPoly* p : entries) *p *= sp;
}

} // namespace

SmithDecomposition smith_normal_form(const LaurentMatrix& m) {
    const std::size_t s = m.size;
    for (const auto& p : m.entries)
        if (!p.is_polynomial()) throw Error("smith_normal_form: entry with negative λ-power");

    LaurentMatrix d = m;
    LaurentMatrix u = LaurentMatrix::identity(s);
    LaurentMatrix v = LaurentMatrix::identity(s);

    auto normalize_row = [&](std::size_t i) {
        std::vector<LaurentPoly*> row;
        for (std::size_t j = 0; j < s; ++j) {
            row.push_back(&d(i, j));
            row.push_back(&u(i, j));
        }
        normalize_content(std::move(row));
    };
    auto normalize_col = [&](std::size_t j) {
        std::vector<LaurentPoly*> col;
        for (std::size_t i = 0; i < s; ++i) {
            col.push_back(&d(i, j));
            col.push_back(&v(i, j));
        }
        normalize_content(std::move(col));
    };

    // phase 1: diagonalize, smallest-degree pivots first
    auto diagonalize = [&] {
        for (std::size_t t = 0; t < s; ++t) {
            for (;;) {
                // pivot: minimal-degree nonzero entry of the trailing block,
                // first in row-major order on ties (deterministic)
                std::size_t pi = s, pj = s;
                int best = std::numeric_limits<int>::max();
                for (std::size_t i = t; i < s; ++i)
                    for (std::size_t j = t; j < s; ++j)
                        if (!d(i, j).is_zero() && d(i, j).degree() < best) {
                            best = d(i, j).degree();
                            pi = i;
                            pj = j;
                        }
                if (pi == s) return; // trailing block is zero
                swap_rows(d, u, t, pi);
                swap_cols(d, v, t, pj);

                // pseudo-division scaling: with the target row or column
                // premultiplied by lc(pivot)^(delta+1) the quotient has
                // integer coefficients, which keeps the rational arithmetic
                // free of gcd churn
                auto pseudo_factor = [&](const LaurentPoly& a) {
                    LaurentPoly f(Rat(1));
                    Rat lc = d(t, t).leading_coeff();
                    if (lc != 1)
                        for (int k = a.degree() - d(t, t).degree(); k >= 0; --k)
                            f *= LaurentPoly(lc);
                    return f;
                };
                bool clean = true;
                for (std::size_t i = t + 1; i < s; ++i) {
                    if (d(i, t).is_zero()) continue;
                    LaurentPoly f = pseudo_factor(d(i, t));
                    for (std::size_t j = 0; j < s; ++j) {
                        d(i, j) *= f;
                        u(i, j) *= f;
                    }
                    auto [q, r] = poly_divmod(d(i, t), d(t, t));
                    row_op(d, u, i, t, q);
                    normalize_row(i);
                    if (!r.is_zero()) clean = false;
                }
                for (std::size_t j = t + 1; j < s; ++j) {
                    if (d(t, j).is_zero()) continue;
                    LaurentPoly f = pseudo_factor(d(t, j));
                    for (std::size_t i = 0; i < s; ++i) {
                        d(i, j) *= f;
                        v(i, j) *= f;
                    }
                    auto [q, r] = poly_divmod(d(t, j), d(t, t));
                    col_op(d, v, j, t, q);
                    normalize_col(j);
                    if (!r.is_zero()) clean = false;
                }
                normalize_row(t);
                normalize_col(t);
                if (clean) break; // remainders become new, smaller pivots
            }
        }
    };
    diagonalize();

    // phase 2: repair the divisibility chain on the diagonal; each coupling
    // re-enters the (now cheap) diagonalization with one off-diagonal entry
    for (;;) {
        bool consistent = true;
        for (std::size_t i = 0; i + 1 < s && consistent; ++i) {
            if (d(i, i).is_zero()) continue;
            for (std::size_t j = i + 1; j < s && consistent; ++j) {
                if (d(j, j).is_zero()) continue;
                auto [q, r] = poly_divmod(d(j, j), d(i, i));
                (void)q;
                if (!r.is_zero()) {
                    row_op(d, u, i, j, LaurentPoly(Rat(-1))); // row_i += row_j
                    consistent = false;
                }
            }
        }
        if (consistent) break;
        diagonalize();
    }

    SmithDecomposition out;
    out.left = u;
    out.right = v;
    out.diag.resize(s);
    for (std::size_t t = 0; t < s; ++t) {
        LaurentPoly e = d(t, t);
        if (e.is_zero()) {
            out.rank_deficient = true;
        } else if (e.leading_coeff() != 1) {
            Rat inv = 1 / e.leading_coeff();
            for (std::size_t j = 0; j < s; ++j) out.left(t, j) *= LaurentPoly(inv);
            e *= LaurentPoly(inv);
        }
        out.diag[t] = e;
    }
    return out;
}

void certify_smith(const LaurentMatrix& m, const SmithDecomposition& d) {
    LaurentMatrix prod = d.left * m * d.right;
    if (!(prod == d.diag_matrix())) throw Error("smith certification: U*M*V != diag");
    LaurentPoly du = laurent_det(d.left), dv = laurent_det(d.right);
    if (!du.is_constant() || du.is_zero() || !dv.is_constant() || dv.is_zero())
        throw Error("smith certification: transformation determinant is not a nonzero rational");
    for (std::size_t i = 0; i + 1 < d.diag.size(); ++i) {
        if (d.diag[i].is_zero()) {
            if (!d.diag[i + 1].is_zero())
                throw Error("smith certification: zero diagonal entry precedes a nonzero one");
            continue;
        }
        if (d.diag[i + 1].is_zero()) continue;
        auto [q, r] = poly_divmod(d.diag[i + 1], d.diag[i]);
        (void)q;
        if (!r.is_zero()) throw Error("smith certification: divisibility chain broken");
    }
}

} // namespace mfs
