#include "mfs/mfa.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace mfs {

void LocalizedMetric::validate() const {
    if (!matrix.is_symmetric()) throw Error("localized metric: matrix not symmetric");
    LaurentPoly d = laurent_det(matrix);
    if (!d.is_monomial())
        throw Error("localized metric: determinant " + d.str() +
                    " is not a unit of K[λ, λ^{-1}]");
}

FiltrationProfile normalize_metric(const LocalizedMetric& g) {
    g.validate();
    const std::size_t s = g.ambient_dim();
    int k0 = -g.matrix.min_exponent();
    if (k0 < 0) k0 = 0;
    LaurentMatrix m = g.matrix.shifted(k0);
    SmithDecomposition snf = smith_normal_form(m);
    certify_smith(m, snf);
    if (snf.rank_deficient) throw Error("normalize_metric: metric is degenerate"); // unreachable after validate

    FiltrationProfile p;
    p.kappas.resize(s);
    p.basis_x.resize(s);
    p.basis_y.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
        const LaurentPoly& e = snf.diag[i];
        if (!e.is_monomial())
            throw Error("normalize_metric: elementary divisor " + e.str() + " is not a monomial");
        p.kappas[i] = k0 - e.degree();
        p.basis_x[i].resize(s);
        p.basis_y[i].resize(s);
        for (std::size_t j = 0; j < s; ++j) {
            p.basis_x[i][j] = snf.left(i, j);   // x_i = i-th row of U
            p.basis_y[i][j] = snf.right(j, i);  // y_i = i-th column of V
        }
    }
    // Smith ordering e_i | e_{i+1} gives κ non-increasing already
    for (std::size_t i = 0; i + 1 < s; ++i)
        if (p.kappas[i] < p.kappas[i + 1]) throw Error("normalize_metric: κ ordering broken");
    return p;
}

NondegenerateFiltration filtration_from_profile(const FiltrationProfile& p,
                                                const LocalizedMetric& g) {
    const std::size_t s = g.ambient_dim();
    NondegenerateFiltration f;
    f.dim = s;

    std::vector<Vec> pix(s, Vec(s, Rat(0)));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) pix[i][j] = p.basis_x[i][j].constant_term();

    std::vector<int> jumps = p.kappas;
    std::sort(jumps.begin(), jumps.end());
    jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());

    for (int k : jumps) {
        GradedPiece piece;
        piece.k = k;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < s; ++i)
            if (p.kappas[i] == k) idx.push_back(i);
        for (auto i : idx) piece.reps.push_back(pix[i]);
        piece.gram = Mat(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) {
                LaurentPoly v = laurent_bilinear(p.basis_x[idx[a]], g.matrix, p.basis_x[idx[b]]);
                piece.gram(a, b) = residue_at_zero(v.shifted(k - 1));
            }
        if (det(piece.gram) == 0)
            throw Error("filtration_from_profile: residue metric degenerate"); // excluded by the κ-pairing
        f.pieces.push_back(std::move(piece));
    }
    return f;
}

bool residue_metric_well_defined_check(const LocalizedMetric& g, int k, unsigned trials,
                                       std::uint64_t seed) {
    FiltrationProfile p = normalize_metric(g);
    const std::size_t s = g.ambient_dim();
    std::vector<std::size_t> in_k, in_km1;
    for (std::size_t i = 0; i < s; ++i) {
        if (p.kappas[i] <= k) in_k.push_back(i);
        if (p.kappas[i] <= k - 1) in_km1.push_back(i);
    }

    auto value = [&](const std::vector<LaurentPoly>& x, const std::vector<LaurentPoly>& y) {
        return residue_at_zero(laurent_bilinear(x, g.matrix, y).shifted(k - 1));
    };

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, 2);

    // random element of I_k^λ
    auto random_ik = [&](int kk) {
        std::vector<LaurentPoly> z(s);
        for (std::size_t i = 0; i < s; ++i) {
            int extra = std::max(p.kappas[i] - kk, 0);
            int d = deg(rng);
            std::vector<Rat> cs(static_cast<std::size_t>(d) + 1);
            for (auto& c : cs) c = coef(rng);
            LaurentPoly q(extra, std::move(cs));
            for (std::size_t j = 0; j < s; ++j) z[j] += q * p.basis_x[i][j];
        }
        return z;
    };

    for (auto i : in_k)
        for (auto j : in_k) {
            Rat base = value(p.basis_x[i], p.basis_x[j]);
            for (unsigned t = 0; t < trials; ++t) {
                auto zi = random_ik(k);
                auto zj = random_ik(k);
                std::vector<LaurentPoly> xi = p.basis_x[i], xj = p.basis_x[j];
                for (std::size_t c = 0; c < s; ++c) {
                    xi[c] += zi[c].shifted(1); // lift changed by λ * I_k^λ
                    xj[c] += zj[c].shifted(1);
                }
                if (value(xi, xj) != base) return false;
            }
        }

    // one argument in I_{k-1}^λ forces value zero
    for (auto i : in_km1)
        for (auto j : in_k)
            if (value(p.basis_x[i], p.basis_x[j]) != 0) return false;
    for (unsigned t = 0; t < trials; ++t) {
        auto z = random_ik(k - 1);
        for (auto j : in_k)
            if (value(z, p.basis_x[j]) != 0) return false;
    }
    return true;
}

Report check_mfa(const MixedFrobeniusAlgebra& m) {
    Report rep;
    const std::size_t n = m.algebra.dim();
    const auto& f = m.filtration;

    bool exhaustive = !f.pieces.empty() && f.dim == n && f.total_rank() == n &&
                      f.filter_at(f.max_jump()) == Subspace::full(n);
    rep.add("filtration.exhaustive", exhaustive,
            exhaustive ? "" : "filters do not exhaust the algebra");

    for (std::size_t pi = 0; pi < f.pieces.size(); ++pi) {
        int k = f.pieces[pi].k;
        std::string at = "[k=" + std::to_string(k) + "]";
        Subspace ik = f.filter_at(k);
        bool ideal = IdealSubspace{ik}.is_ideal(m.algebra);
        rep.add("filtration.ideal" + at, ideal, ideal ? "" : "I_k not closed under multiplication");

        const auto& piece = f.pieces[pi];
        bool sym = piece.gram == piece.gram.transposed();
        rep.add("metric.symmetric" + at, sym);
        bool nondeg = det(piece.gram) != 0;
        rep.add("metric.nondegenerate" + at, nondeg);

        bool invariant = true;
        std::string where;
        if (ideal) {
            const std::size_t mdim = piece.reps.size();
            for (std::size_t a = 0; a < n && invariant; ++a) {
                Vec ea(n, Rat(0));
                ea[a] = 1;
                for (std::size_t x = 0; x < mdim && invariant; ++x) {
                    Vec ax = f.project_to_piece(pi, m.algebra.mul(ea, piece.reps[x]));
                    for (std::size_t y = 0; y < mdim && invariant; ++y) {
                        Vec ay = f.project_to_piece(pi, m.algebra.mul(ea, piece.reps[y]));
                        Rat lhs(0), rhs(0);
                        for (std::size_t c = 0; c < mdim; ++c) {
                            lhs += ax[c] * piece.gram(c, y);
                            rhs += piece.gram(x, c) * ay[c];
                        }
                        if (lhs != rhs) {
                            invariant = false;
                            std::ostringstream os;
                            os << "g_k(e_" << a << "·x_" << x << ", x_" << y << ") != g_k(x_" << x
                               << ", e_" << a << "·x_" << y << ")";
                            where = os.str();
                        }
                    }
                }
            }
        } else {
            invariant = false;
            where = "skipped: filter is not an ideal";
        }
        rep.add("metric.invariant" + at, invariant, where);

        if (m.charges && m.algebra.grading()) {
            auto it = m.charges->find(k);
            bool charged = it != m.charges->end();
            std::string why = charged ? "" : "no charge declared for this jump";
            if (charged) {
                const auto& grading = *m.algebra.grading();
                auto degree_of = [&](const Vec& v) -> std::optional<int> {
                    std::optional<int> d;
                    for (std::size_t i = 0; i < n; ++i)
                        if (v[i] != 0) {
                            if (d && *d != grading[i]) return std::nullopt;
                            d = grading[i];
                        }
                    return d ? d : std::optional<int>(0);
                };
                for (std::size_t x = 0; x < piece.reps.size() && charged; ++x)
                    for (std::size_t y = 0; y < piece.reps.size() && charged; ++y) {
                        if (piece.gram(x, y) == 0) continue;
                        auto dx = degree_of(piece.reps[x]);
                        auto dy = degree_of(piece.reps[y]);
                        if (!dx || !dy) {
                            charged = false;
                            why = "representative is not homogeneous";
                        } else if (Rat(*dx + *dy) != it->second) {
                            charged = false;
                            std::ostringstream os;
                            os << "g_k(x_" << x << ", x_" << y << ") != 0 but |x|+|y| = "
                               << (*dx + *dy) << " != D_k";
                            why = os.str();
                        }
                    }
            }
            rep.add("metric.charge" + at, charged, why);
        }
    }
    return rep;
}

std::vector<LaurentPoly> LambdaAlgebra::mul(const std::vector<LaurentPoly>& x,
                                            const std::vector<LaurentPoly>& y) const {
    std::vector<LaurentPoly> r(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (y[j].is_zero()) continue;
            LaurentPoly f = x[i] * y[j];
            for (std::size_t k = 0; k < dim; ++k)
                if (!c[i][j][k].is_zero()) r[k] += f * c[i][j][k];
        }
    }
    return r;
}

void LambdaAlgebra::validate() const {
    if (c.size() != dim || unit.size() != dim) throw Error("lambda algebra: bad dimensions");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                if (!c[i][j][k].is_polynomial())
                    throw Error("lambda algebra: structure constant with λ-pole");
                if (!(c[i][j][k] == c[j][i][k])) throw Error("lambda algebra: not commutative");
            }
    auto basis = [&](std::size_t i) {
        std::vector<LaurentPoly> v(dim);
        v[i] = LaurentPoly(Rat(1));
        return v;
    };
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                auto lhs = mul(mul(basis(i), basis(j)), basis(k));
                auto rhs = mul(basis(i), mul(basis(j), basis(k)));
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "lambda algebra: not associative at (" << i << "," << j << "," << k << ")";
                    throw Error(os.str());
                }
            }
    std::vector<LaurentPoly> e(dim);
    for (std::size_t i = 0; i < dim; ++i) e[i] = LaurentPoly(unit[i]);
    for (std::size_t i = 0; i < dim; ++i) {
        auto p = mul(e, basis(i));
        if (p != basis(i)) throw Error("lambda algebra: stated unit is not a unit");
    }
}

FiniteAlgebra LambdaAlgebra::at_zero(const std::vector<std::string>& names) const {
    std::vector<Mat> mult(dim, Mat(dim, dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) mult[i](k, j) = c[i][j][k].constant_term();
    return FiniteAlgebra(names, std::move(mult), unit);
}

MixedFrobeniusAlgebra mfa_from_invariant_localized_metric(const LambdaAlgebra& alg,
                                                          const LocalizedMetric& g) {
    alg.validate();
    g.validate();
    if (alg.dim != g.ambient_dim()) throw Error("dimension mismatch between algebra and metric");

    for (std::size_t i = 0; i < alg.dim; ++i)
        for (std::size_t j = 0; j < alg.dim; ++j)
            for (std::size_t k = 0; k < alg.dim; ++k) {
                LaurentPoly lhs, rhs;
                for (std::size_t d = 0; d < alg.dim; ++d) {
                    lhs += alg.c[i][j][d] * g.matrix(d, k); // g(e_i*e_j, e_k)
                    rhs += alg.c[j][k][d] * g.matrix(i, d); // g(e_i, e_j*e_k)
                }
                if (!(lhs == rhs)) {
                    std::ostringstream os;
                    os << "metric is not ∗-invariant at basis triple (" << i << "," << j << ","
                       << k << ")";
                    throw Error(os.str());
                }
            }

    std::vector<std::string> names;
    for (std::size_t i = 0; i < alg.dim; ++i) names.push_back("e" + std::to_string(i));
    FiniteAlgebra induced = alg.at_zero(names);
    FiltrationProfile prof = normalize_metric(g);
    NondegenerateFiltration filt = filtration_from_profile(prof, g);
    return MixedFrobeniusAlgebra{std::move(induced), std::move(filt), std::nullopt};
}

void NilpotentData::validate() const {
    std::size_t n = base.dim();
    if (metric.rows != n || metric.cols != n) throw Error("nilpotent data: metric size mismatch");
    if (!(metric == metric.transposed())) throw Error("nilpotent data: metric not symmetric");
    if (det(metric) == 0) throw Error("nilpotent data: metric degenerate");
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei(n, Rat(0));
        ei[i] = 1;
        Mat l = base.mult_matrix(ei);
        if (!(l.transposed() * metric == metric * l))
            throw Error("nilpotent data: metric not invariant under multiplication");
    }
    if (nilpotents.empty()) throw Error("nilpotent data: need at least one nilpotent");
    for (std::size_t i = 0; i < nilpotents.size(); ++i)
        if (!base.is_nilpotent(nilpotents[i]))
            throw Error("nilpotent data: element n_" + std::to_string(i + 1) + " is not nilpotent");
}

AlgebraPoly NilpotentData::monic_poly() const {
    std::size_t r = nilpotents.size();
    std::vector<Vec> cs(r + 1, Vec(base.dim(), Rat(0)));
    cs[r] = base.unit();
    for (std::size_t i = 0; i < r; ++i) cs[r - 1 - i] = nilpotents[i]; // n_{i+1} λ^{r-1-i}
    return AlgebraPoly(&base, std::move(cs));
}

Mat NilpotentData::companion_matrix() const {
    std::size_t s = base.dim(), r = nilpotents.size();
    Mat n(r * s, r * s);
    for (std::size_t i = 0; i < r; ++i) {
        Mat block = base.mult_matrix(nilpotents[i]);
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b) n(i * s + a, b) = -block(a, b);
        if (i + 1 < r)
            for (std::size_t a = 0; a < s; ++a) n(i * s + a, (i + 1) * s + a) = 1;
    }
    return n;
}

LocalizedMetric nilpotent_localized_metric(const NilpotentData& d) {
    d.validate();
    const FiniteAlgebra& a = d.base;
    const std::size_t s = a.dim();
    const int r = static_cast<int>(d.rank());

    // u = λ^r - n = -(n_1 λ^{r-1} + ... + n_r); powers terminate by nilpotency
    AlgebraPoly u = AlgebraPoly::lambda_power(a, static_cast<unsigned>(r)) - d.monic_poly();
    std::vector<AlgebraPoly> upow = {AlgebraPoly::constant(a, a.unit())};
    while (!upow.back().is_zero()) {
        if (upow.size() > 4 * s * static_cast<std::size_t>(r) + 4)
            throw Error("nilpotent metric: series does not terminate"); // unreachable
        upow.push_back(upow.back() * u);
    }

    auto pair_with = [&](const Vec& x, const Vec& y) {
        // g(x, y) through the metric matrix
        Rat v(0);
        for (std::size_t i = 0; i < s; ++i)
            if (x[i] != 0)
                for (std::size_t j = 0; j < s; ++j)
                    if (y[j] != 0) v += x[i] * d.metric(i, j) * y[j];
        return v;
    };

    LocalizedMetric g;
    g.matrix = LaurentMatrix(s);
    for (std::size_t i = 0; i < s; ++i) {
        Vec ei(s, Rat(0));
        ei[i] = 1;
        for (std::size_t j = i; j < s; ++j) {
            Vec ej(s, Rat(0));
            ej[j] = 1;
            Vec prod = a.mul(ei, ej);
            LaurentPoly entry;
            for (std::size_t jj = 0; jj + 1 < upow.size(); ++jj) {
                const AlgebraPoly& p = upow[jj];
                for (int m = 0; m <= p.degree(); ++m) {
                    Rat v = pair_with(prod, p.coeff(static_cast<std::size_t>(m)));
                    if (v != 0)
                        entry += LaurentPoly::monomial(v, m - (static_cast<int>(jj) + 1) * r);
                }
            }
            g.matrix(i, j) = entry;
            g.matrix(j, i) = entry;
        }
    }
    g.validate();
    return g;
}

LambdaAlgebra constant_lambda_algebra(const FiniteAlgebra& a) {
    LambdaAlgebra l;
    l.dim = a.dim();
    l.unit = a.unit();
    l.c.assign(l.dim, std::vector<std::vector<LaurentPoly>>(l.dim, std::vector<LaurentPoly>(l.dim)));
    for (std::size_t i = 0; i < l.dim; ++i)
        for (std::size_t j = 0; j < l.dim; ++j)
            for (std::size_t k = 0; k < l.dim; ++k) l.c[i][j][k] = LaurentPoly(a.c(i, j, k));
    return l;
}

NondegenerateFiltration nilpotent_filtration_direct(const NilpotentData& d) {
    d.validate();
    const FiniteAlgebra& a = d.base;
    const std::size_t s = a.dim(), r = d.rank();
    const Vec& nr = d.nilpotents.back();
    Mat big_n = d.companion_matrix();

    auto pair_with = [&](const Vec& x, const Vec& y) {
        Rat v(0);
        for (std::size_t i = 0; i < s; ++i)
            if (x[i] != 0)
                for (std::size_t j = 0; j < s; ++j)
                    if (y[j] != 0) v += x[i] * d.metric(i, j) * y[j];
        return v;
    };

    NondegenerateFiltration f;
    f.dim = s;

    // I_0 = A·n_r with g_0(x·n_r, y·n_r) = g(x·y, n_r)
    Mat lnr = a.mult_matrix(nr);
    std::vector<Vec> i0_reps, i0_pre;
    {
        Subspace span(s);
        for (std::size_t t = 0; t < s; ++t) {
            Vec et(s, Rat(0));
            et[t] = 1;
            Vec v = lnr * et;
            if (!is_zero_vec(v) && !span.contains(v)) {
                i0_reps.push_back(v);
                i0_pre.push_back(et);
                span = Subspace::sum(span, Subspace(s, {v}));
            }
        }
    }
    if (!i0_reps.empty()) {
        GradedPiece p0;
        p0.k = 0;
        p0.reps = i0_reps;
        p0.gram = Mat(i0_reps.size(), i0_reps.size());
        for (std::size_t x = 0; x < i0_reps.size(); ++x)
            for (std::size_t y = 0; y < i0_reps.size(); ++y)
                p0.gram(x, y) = pair_with(a.mul(i0_pre[x], i0_pre[y]), nr);
        f.pieces.push_back(std::move(p0));
    }
    Subspace prev = Subspace(s, i0_reps); // I_0

    // lift y in J_k to Ker N^k with p_r(lift) = y
    auto kernel_lift = [&](const Mat& nk, const Vec& y) {
        Mat sys(r * s + s, r * s);
        for (std::size_t i = 0; i < r * s; ++i)
            for (std::size_t j = 0; j < r * s; ++j) sys(i, j) = nk(i, j);
        for (std::size_t i = 0; i < s; ++i) sys(r * s + i, (r - 1) * s + i) = 1;
        Vec rhs(r * s + s, Rat(0));
        for (std::size_t i = 0; i < s; ++i) rhs[r * s + i] = y[i];
        auto sol = solve(sys, rhs);
        if (!sol) throw Error("nilpotent filtration: no kernel lift"); // contradicts y ∈ J_k
        return *sol;
    };

    Mat nk = Mat::identity(r * s);
    Mat nkm1 = nk; // N^{k-1}
    for (int k = 1; prev.dim() < s; ++k) {
        if (k > static_cast<int>(r * s) + 1)
            throw Error("nilpotent filtration: companion matrix is not nilpotent");
        nkm1 = nk;
        nk = big_n * nk;

        // J_k = p_r(Ker N^k)
        std::vector<Vec> jk;
        for (const auto& kv : kernel_basis(nk))
            jk.push_back(Vec(kv.begin() + static_cast<long>((r - 1) * s), kv.end()));
        Subspace ik = Subspace::sum(prev, Subspace(s, jk));
        if (ik.dim() == prev.dim()) continue;

        GradedPiece piece;
        piece.k = k;
        Subspace cur = prev;
        for (const auto& y : jk)
            if (!cur.contains(y)) {
                piece.reps.push_back(y);
                cur = Subspace::sum(cur, Subspace(s, {y}));
            }
        std::size_t m = piece.reps.size();
        piece.gram = Mat(m, m);
        for (std::size_t yy = 0; yy < m; ++yy) {
            Vec lift = kernel_lift(nk, piece.reps[yy]);
            Vec nlift = nkm1 * lift;
            Vec p1(nlift.begin(), nlift.begin() + static_cast<long>(s));
            for (std::size_t xx = 0; xx < m; ++xx)
                piece.gram(xx, yy) = pair_with(piece.reps[xx], p1);
        }
        f.pieces.push_back(std::move(piece));
        prev = ik;
    }
    return f;
}

NondegenerateFiltration filtration_from_existence(const FrobeniusFiltrationResult& r) {
    NondegenerateFiltration f;
    if (r.chain.empty()) return f;
    f.dim = r.chain.back().dim();
    for (std::size_t j = 1; j < r.chain.size(); ++j) {
        GradedPiece piece;
        piece.k = static_cast<int>(j) - 1;
        piece.reps = r.graded_reps[j - 1];
        piece.gram = r.metrics[j - 1].matrix;
        f.pieces.push_back(std::move(piece));
    }
    return f;
}

} // namespace mfs
