#include "mfs/formal.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <type_traits>

namespace mfs {

namespace {

Mat frame_derivs(std::size_t nt, std::size_t dim, const Mat& lin) {
    // M(g, d) = X_g E^d; q-frame derivations kill the t-linear coefficients
    Mat m(dim, dim);
    for (std::size_t g = 0; g < nt; ++g)
        for (std::size_t d = 0; d < dim; ++d) m(g, d) = lin(d, g);
    return m;
}

template <class C>
Series<C> euler_apply(const Series<C>& f, const Mat& lin, const Vec& cst, std::size_t nt,
                      std::size_t nq, unsigned order) {
    Series<C> r(nt, nq, order);
    std::size_t dim = nt + nq;
    for (std::size_t a = 0; a < dim; ++a) {
        Series<C> d = f.derive(a);
        if (d.is_zero()) continue;
        if (cst[a] != 0) r += d.scaled(C(cst[a]));
        for (std::size_t b = 0; b < nt; ++b)
            if (lin(a, b) != 0)
                r += (Series<C>::variable(nt, nq, order, b) * d).scaled(C(lin(a, b)));
    }
    return r;
}

Series<LaurentPoly> lambda_ddlambda(const Series<LaurentPoly>& f) {
    Series<LaurentPoly> r(f.nt, f.nq, f.order);
    for (const auto& [e, c] : f.terms) {
        LaurentPoly v;
        for (const auto& [exp, coef] : c.terms()) v += LaurentPoly::monomial(Rat(exp) * coef, exp);
        if (!v.is_zero()) r.terms[e] = v;
    }
    return r;
}

LaurentPoly lambda_ddlambda(const LaurentPoly& c) {
    LaurentPoly v;
    for (const auto& [exp, coef] : c.terms()) v += LaurentPoly::monomial(Rat(exp) * coef, exp);
    return v;
}

template <class C>
std::string first_mismatch(const Series<C>& got, const Series<C>& want, unsigned order,
                           std::size_t nt) {
    auto diffs = got.differing_exponents(want, order);
    if (diffs.empty()) return "";
    return "first differing coefficient at " + expo_str(diffs.front(), nt);
}

// Shared Saito-type axiom sweep; when `lambda_euler` is set, the Euler axiom
// uses E^λ = E + λ d/dλ (only meaningful for Laurent coefficients).
template <class C>
void saito_axioms(Report& rep, const std::string& prefix,
                  const std::vector<std::vector<std::vector<Series<C>>>>& c, const Vec& unit,
                  std::size_t nt, std::size_t nq, unsigned order, const Mat& lin, const Vec& cst,
                  bool lambda_euler) {
    const std::size_t s = nt + nq;
    const Series<C> zero(nt, nq, order);
    const unsigned om1 = order == 0 ? 0 : order - 1;

    {
        bool ok = true;
        std::string detail;
        for (std::size_t a = 0; a < s && ok; ++a)
            for (std::size_t b = 0; b < a && ok; ++b)
                for (std::size_t g = 0; g < s && ok; ++g)
                    if (!c[a][b][g].equal_to_order(c[b][a][g], order)) {
                        ok = false;
                        std::ostringstream os;
                        os << "C[" << a << "][" << b << "]^" << g << " != C[" << b << "][" << a
                           << "]^" << g;
                        detail = os.str();
                    }
        rep.add(prefix + ".commutative", ok, detail, static_cast<int>(order));
    }
    {
        bool ok = true;
        std::string detail;
        for (std::size_t b = 0; b < s && ok; ++b)
            for (std::size_t g = 0; g < s && ok; ++g) {
                Series<C> v(nt, nq, order);
                for (std::size_t a = 0; a < s; ++a)
                    if (unit[a] != 0) v += c[a][b][g].scaled(C(unit[a]));
                Series<C> want =
                    Series<C>::constant(nt, nq, order, C(b == g ? Rat(1) : Rat(0)));
                if (!v.equal_to_order(want, order)) {
                    ok = false;
                    detail = "e ∘ X_" + std::to_string(b) + " misses X_" + std::to_string(g);
                }
            }
        rep.add(prefix + ".unit", ok, detail, static_cast<int>(order));
    }
    {
        bool ok = true;
        std::string detail;
        for (std::size_t a = 0; a < s && ok; ++a)
            for (std::size_t b = 0; b < s && ok; ++b)
                for (std::size_t g = 0; g < s && ok; ++g)
                    for (std::size_t d = 0; d < s && ok; ++d) {
                        Series<C> lhs(nt, nq, order), rhs(nt, nq, order);
                        for (std::size_t e = 0; e < s; ++e) {
                            lhs += c[a][b][e] * c[e][g][d];
                            rhs += c[b][g][e] * c[a][e][d];
                        }
                        if (!lhs.equal_to_order(rhs, order)) {
                            ok = false;
                            std::ostringstream os;
                            os << "associativity fails at (" << a << "," << b << "," << g << ")^"
                               << d;
                            detail = os.str();
                        }
                    }
        rep.add(prefix + ".associative", ok, detail, static_cast<int>(order));
    }
    {
        bool ok = true;
        std::string detail;
        for (std::size_t a = 0; a < s && ok; ++a)
            for (std::size_t b = 0; b < a && ok; ++b)
                for (std::size_t g = 0; g < s && ok; ++g)
                    for (std::size_t d = 0; d < s && ok; ++d) {
                        Series<C> lhs = c[b][g][d].derive(a);
                        Series<C> rhs = c[a][g][d].derive(b);
                        if (!lhs.equal_to_order(rhs, om1)) {
                            ok = false;
                            std::ostringstream os;
                            os << "X_" << a << " C[" << b << "][" << g << "]^" << d << " != X_" << b
                               << " C[" << a << "][" << g << "]^" << d << "; "
                               << first_mismatch(lhs, rhs, om1, nt);
                            detail = os.str();
                        }
                    }
        rep.add(prefix + ".potentiality", ok, detail, static_cast<int>(order) - 1);
    }
    {
        Mat m = frame_derivs(nt, s, lin);
        bool ok = true;
        std::string detail;
        for (std::size_t a = 0; a < s && ok; ++a)
            for (std::size_t b = 0; b < s && ok; ++b)
                for (std::size_t d = 0; d < s && ok; ++d) {
                    Series<C> t = euler_apply(c[a][b][d], lin, cst, nt, nq, order);
                    if (lambda_euler) {
                        if constexpr (std::is_same_v<C, LaurentPoly>) t += lambda_ddlambda(c[a][b][d]);
                    }
                    for (std::size_t g = 0; g < s; ++g) {
                        if (m(g, d) != 0) t -= c[a][b][g].scaled(C(m(g, d)));
                        if (m(b, g) != 0) t += c[a][g][d].scaled(C(m(b, g)));
                        if (m(a, g) != 0) t += c[g][b][d].scaled(C(m(a, g)));
                    }
                    t -= c[a][b][d];
                    if (!t.equal_to_order(Series<C>(nt, nq, order), om1)) {
                        ok = false;
                        std::ostringstream os;
                        os << "Euler equation fails on C[" << a << "][" << b << "]^" << d;
                        detail = os.str();
                    }
                }
        rep.add(prefix + ".euler", ok, detail, static_cast<int>(order) - 1);
    }
}

std::set<Expo> exponents_of(const std::vector<Series<Rat>>& v) {
    std::set<Expo> e;
    for (const auto& s : v)
        for (const auto& [ex, c] : s.terms) e.insert(ex);
    return e;
}

} // namespace

Mat FormalSaito::frame_euler_derivatives() const { return frame_derivs(nt, dim(), euler_linear); }
Mat LocalizedFormalFrobenius::frame_euler_derivatives() const {
    return frame_derivs(nt, dim(), euler_linear);
}

Series<Rat> FormalSaito::euler_component(std::size_t a) const {
    Series<Rat> e = Series<Rat>::constant(nt, nq, order, euler_const[a]);
    for (std::size_t b = 0; b < nt; ++b)
        if (euler_linear(a, b) != 0)
            e += Series<Rat>::variable(nt, nq, order, b).scaled(euler_linear(a, b));
    return e;
}

Series<Rat> FormalSaito::apply_euler(const Series<Rat>& f) const {
    return euler_apply(f, euler_linear, euler_const, nt, nq, order);
}

Report check_formal_saito(const FormalSaito& s) {
    Report rep;
    saito_axioms(rep, "saito", s.c, s.unit, s.nt, s.nq, s.order, s.euler_linear, s.euler_const,
                 false);
    return rep;
}

Report check_formal_mfs(const FormalMFS& m) {
    Report rep = check_formal_saito(m.saito);
    const FormalSaito& s = m.saito;
    const std::size_t n = s.dim();
    const auto& f = m.filtration;
    if (f.dim != n) {
        rep.add("mfs.dimensions", false, "filtration ambient dimension mismatch");
        return rep;
    }
    Mat med = s.frame_euler_derivatives();

    // x ∘ v for frame x = X_a and a constant vector v
    auto frame_mul = [&](std::size_t a, const Vec& v) {
        std::vector<Series<Rat>> w(n, Series<Rat>(s.nt, s.nq, s.order));
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t b = 0; b < n; ++b)
                if (v[b] != 0) w[g] += s.c[a][b][g].scaled(v[b]);
        return w;
    };

    for (std::size_t pi = 0; pi < f.pieces.size(); ++pi) {
        const auto& piece = f.pieces[pi];
        std::string at = "[k=" + std::to_string(piece.k) + "]";
        Subspace ik = f.filter_at(piece.k);

        bool ideal = true;
        std::string detail;
        for (std::size_t a = 0; a < n && ideal; ++a)
            for (const auto& v : ik.basis_vectors()) {
                auto w = frame_mul(a, v);
                for (const auto& e : exponents_of(w)) {
                    Vec coeffs(n);
                    for (std::size_t g = 0; g < n; ++g) coeffs[g] = w[g].coeff(e);
                    if (!ik.contains(coeffs)) {
                        ideal = false;
                        detail = "X_" + std::to_string(a) +
                                 " ∘ I_k leaves the filter at coefficient " + expo_str(e, s.nt);
                        break;
                    }
                }
                if (!ideal) break;
            }
        rep.add("mfs.ideal" + at, ideal, detail, static_cast<int>(s.order));

        // series-valued quotient pairing g_k(proj(w), rep_z)
        auto pair_series = [&](const std::vector<Series<Rat>>& w, std::size_t zidx) {
            Series<Rat> out(s.nt, s.nq, s.order);
            for (const auto& e : exponents_of(w)) {
                Vec coeffs(n);
                for (std::size_t g = 0; g < n; ++g) coeffs[g] = w[g].coeff(e);
                Vec q = f.project_to_piece(pi, coeffs);
                Rat val(0);
                for (std::size_t cc = 0; cc < q.size(); ++cc) val += q[cc] * piece.gram(cc, zidx);
                Series<Rat> mono(s.nt, s.nq, s.order);
                mono.set(e, val);
                out += mono;
            }
            return out;
        };

        bool inv = true;
        std::string inv_detail;
        if (ideal) {
            for (std::size_t a = 0; a < n && inv; ++a)
                for (std::size_t y = 0; y < piece.reps.size() && inv; ++y)
                    for (std::size_t z = 0; z < piece.reps.size() && inv; ++z) {
                        Series<Rat> lhs = pair_series(frame_mul(a, piece.reps[y]), z);
                        // g_k(y, x ∘ z) with the symmetric gram
                        Series<Rat> rhs = pair_series(frame_mul(a, piece.reps[z]), y);
                        if (!lhs.equal_to_order(rhs, s.order)) {
                            inv = false;
                            std::ostringstream os;
                            os << "g_k(X_" << a << " ∘ y_" << y << ", y_" << z << ") != g_k(y_" << y
                               << ", X_" << a << " ∘ y_" << z << ")";
                            inv_detail = os.str();
                        }
                    }
        } else {
            inv = false;
            inv_detail = "skipped: filter is not an ideal";
        }
        rep.add("mfs.invariant" + at, inv, inv_detail, static_cast<int>(s.order));

        bool stable = true;
        for (const auto& v : ik.basis_vectors()) {
            Vec ev(n, Rat(0));
            for (std::size_t d = 0; d < n; ++d)
                for (std::size_t g = 0; g < n; ++g) ev[d] -= v[g] * med(g, d);
            if (!ik.contains(ev)) stable = false;
        }
        rep.add("mfs.euler_preserves" + at, stable,
                stable ? "" : "[E, -] does not preserve the filter");

        auto it = m.charges.find(piece.k);
        bool charged = it != m.charges.end();
        std::string ch_detail = charged ? "" : "no charge declared for this jump";
        if (charged && stable) {
            auto bracket = [&](const Vec& v) {
                Vec ev(n, Rat(0));
                for (std::size_t d = 0; d < n; ++d)
                    for (std::size_t g = 0; g < n; ++g) ev[d] -= v[g] * med(g, d);
                return ev;
            };
            for (std::size_t x = 0; x < piece.reps.size() && charged; ++x)
                for (std::size_t y = 0; y < piece.reps.size() && charged; ++y) {
                    Vec px = f.project_to_piece(pi, bracket(piece.reps[x]));
                    Vec py = f.project_to_piece(pi, bracket(piece.reps[y]));
                    Rat lhs(0);
                    for (std::size_t cc = 0; cc < px.size(); ++cc) {
                        lhs -= px[cc] * piece.gram(cc, y);
                        lhs -= piece.gram(x, cc) * py[cc];
                    }
                    Rat rhs = (Rat(2) - it->second) * piece.gram(x, y);
                    if (lhs != rhs) {
                        charged = false;
                        std::ostringstream os;
                        os << "charge equation fails on (y_" << x << ", y_" << y << ")";
                        ch_detail = os.str();
                    }
                }
        } else if (charged) {
            charged = false;
            ch_detail = "skipped: filter not [E, -]-stable";
        }
        rep.add("mfs.charge" + at, charged, ch_detail);
    }
    return rep;
}

Report check_localized_formal_frobenius(const LocalizedFormalFrobenius& f) {
    Report rep;
    const std::size_t n = f.dim();
    {
        bool ok = f.metric.ambient_dim() == n;
        std::string detail = ok ? "" : "metric dimension mismatch";
        if (ok) {
            try {
                f.metric.validate();
            } catch (const Error& e) {
                ok = false;
                detail = e.what();
            }
        }
        rep.add("locfrob.metric", ok, detail);
    }
    saito_axioms(rep, "locfrob", f.c, f.unit, f.nt, f.nq, f.order, f.euler_linear, f.euler_const,
                 true);

    {
        bool ok = true;
        std::string detail;
        const auto& g = f.metric.matrix;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b)
                for (std::size_t z = 0; z < n && ok; ++z) {
                    Series<LaurentPoly> lhs(f.nt, f.nq, f.order), rhs(f.nt, f.nq, f.order);
                    for (std::size_t d = 0; d < n; ++d) {
                        lhs += f.c[a][b][d].scaled(g(d, z)); // g(x*y, z)
                        rhs += f.c[b][z][d].scaled(g(a, d)); // g(x, y*z)
                    }
                    if (!lhs.equal_to_order(rhs, f.order)) {
                        ok = false;
                        std::ostringstream os;
                        os << "g^λ(X_" << a << " ∗ X_" << b << ", X_" << z << ") != g^λ(X_" << a
                           << ", X_" << b << " ∗ X_" << z << ")";
                        detail = os.str();
                    }
                }
        rep.add("locfrob.invariance", ok, detail, static_cast<int>(f.order));
    }
    {
        Mat m = f.frame_euler_derivatives();
        const auto& g = f.metric.matrix;
        bool ok = true;
        std::string detail;
        for (std::size_t a = 0; a < n && ok; ++a)
            for (std::size_t b = 0; b < n && ok; ++b) {
                LaurentPoly lhs = lambda_ddlambda(g(a, b));
                for (std::size_t d = 0; d < n; ++d) {
                    lhs += LaurentPoly(m(a, d)) * g(d, b);
                    lhs += LaurentPoly(m(b, d)) * g(a, d);
                }
                LaurentPoly rhs = LaurentPoly(Rat(2) - f.charge) * g(a, b);
                if (!(lhs == rhs)) {
                    ok = false;
                    std::ostringstream os;
                    os << "E^λ-homogeneity fails on g^λ(X_" << a << ", X_" << b << ")";
                    detail = os.str();
                }
            }
        rep.add("locfrob.homogeneity", ok, detail);
    }
    return rep;
}

FormalMFS limit_mfs(const LocalizedFormalFrobenius& f) {
    const std::size_t n = f.dim();
    FormalMFS out;
    out.saito.nt = f.nt;
    out.saito.nq = f.nq;
    out.saito.order = f.order;
    out.saito.unit = f.unit;
    out.saito.euler_linear = f.euler_linear;
    out.saito.euler_const = f.euler_const;
    out.saito.c.assign(
        n, std::vector<std::vector<Series<Rat>>>(n, std::vector<Series<Rat>>(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g) {
                try {
                    out.saito.c[a][b][g] = at_lambda_zero(f.c[a][b][g]);
                } catch (const Error& e) {
                    std::ostringstream os;
                    os << "limit_mfs: structure constant C[" << a << "][" << b << "]^" << g << ": "
                       << e.what();
                    throw Error(os.str());
                }
            }
    out.filtration = filtration_from_profile(normalize_metric(f.metric), f.metric);
    for (const auto& piece : out.filtration.pieces)
        out.charges[piece.k] = f.charge - Rat(piece.k);
    return out;
}

// ---------------------------------------------------------------------------
// potential vector field
// ---------------------------------------------------------------------------

namespace {

// Antiderivative for frame direction v: inverts d/dt_v or q_v d/dq_v,
// producing log q monomials for q-degree-zero coefficients.
LogSeries antiderive(const LogSeries& x, std::size_t v) {
    LogSeries r(x.nt, x.nq, x.order);
    for (const auto& [l, s] : x.parts) {
        if (v < x.nt) {
            Series<Rat> out(x.nt, x.nq, x.order);
            for (const auto& [e, c] : s.terms) {
                if (total_degree(e) + 1 > x.order) continue;
                Expo e2 = e;
                e2[v] += 1;
                out.terms[e2] = c / Rat(static_cast<int>(e2[v]));
            }
            r.add(l, out);
        } else {
            std::size_t i = v - x.nt;
            Series<Rat> same(x.nt, x.nq, x.order);
            Series<Rat> logged(x.nt, x.nq, x.order);
            for (const auto& [e, c] : s.terms) {
                if (e[v] != 0)
                    same.terms[e] = c / Rat(static_cast<int>(e[v]));
                else
                    logged.terms[e] = c / Rat(static_cast<int>(l[i]) + 1);
            }
            r.add(l, same);
            if (!logged.is_zero()) {
                Expo l2 = l;
                l2[i] += 1;
                r.add(l2, logged);
            }
        }
    }
    return r;
}

// V with X_b V = f[b], assuming the family is closed
// (X_a f[b] = X_b f[a]); throws otherwise.
LogSeries integrate_family(std::vector<LogSeries> f, unsigned check_order) {
    const std::size_t nvar = f.size();
    if (nvar == 0) throw Error("integrate_family: empty family");
    LogSeries v(f[0].nt, f[0].nq, f[0].order);
    for (std::size_t d = 0; d < nvar; ++d) {
        LogSeries h = antiderive(f[d], d);
        v += h;
        for (std::size_t b = 0; b < nvar; ++b) f[b] -= h.derive(b);
    }
    LogSeries zero(v.nt, v.nq, v.order);
    for (std::size_t b = 0; b < nvar; ++b)
        if (!f[b].equal_to_order(zero, check_order))
            throw Error("potential: structure constants are not integrable in direction " +
                        std::to_string(b));
    return v;
}

} // namespace

std::vector<LogSeries> potential_vector_field(const FormalSaito& s) {
    const std::size_t n = s.dim();
    const unsigned check = s.order == 0 ? 0 : s.order - 1;
    std::vector<LogSeries> out;
    for (std::size_t g = 0; g < n; ++g) {
        // first antiderivatives V_a with X_b V_a = C_ba^g
        std::vector<LogSeries> v;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<LogSeries> fam;
            for (std::size_t b = 0; b < n; ++b) {
                LogSeries l(s.nt, s.nq, s.order);
                l.add(Expo(s.nq, 0), s.c[b][a][g]);
                fam.push_back(std::move(l));
            }
            v.push_back(integrate_family(std::move(fam), check));
        }
        out.push_back(integrate_family(std::move(v), check));
    }

    // self-check: X_a X_b G^g reproduces the structure constants
    if (s.order >= 2) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t g = 0; g < n; ++g) {
                    LogSeries got = out[g].derive(b).derive(a);
                    LogSeries want(s.nt, s.nq, s.order);
                    want.add(Expo(s.nq, 0), s.c[a][b][g]);
                    if (!got.equal_to_order(want, s.order - 2))
                        throw Error("potential: second-derivative verification failed");
                }
    }
    return out;
}

FormalMFS mfs_from_graded_mfa(const MixedFrobeniusAlgebra& m, const std::map<int, Rat>& charges,
                              unsigned order) {
    const std::size_t n = m.algebra.dim();
    // ungraded algebras fall back to the trivial grading, all in degree 0
    const std::vector<int> grading =
        m.algebra.grading() ? *m.algebra.grading() : std::vector<int>(n, 0);

    FormalSaito s;
    s.nt = n;
    s.nq = 0;
    s.order = order;
    s.unit = m.algebra.unit();
    s.euler_linear = Mat(n, n);
    for (std::size_t a = 0; a < n; ++a) s.euler_linear(a, a) = Rat(1 - grading[a]);
    s.euler_const = Vec(n, Rat(0));
    s.c.assign(n, std::vector<std::vector<Series<Rat>>>(n, std::vector<Series<Rat>>(n)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g)
                s.c[a][b][g] = Series<Rat>::constant(n, 0, order, m.algebra.c(a, b, g));

    // the filtration must be graded: homogeneous components of filter
    // elements stay in the filter
    auto component = [&](const Vec& v, int d) {
        Vec w(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            if (grading[i] == d) w[i] = v[i];
        return w;
    };
    std::set<int> degrees(grading.begin(), grading.end());
    for (const auto& piece : m.filtration.pieces) {
        Subspace ik = m.filtration.filter_at(piece.k);
        for (const auto& v : ik.basis_vectors())
            for (int d : degrees)
                if (!ik.contains(component(v, d)))
                    throw Error("mfs_from_graded_mfa: filtration is not graded at k = " +
                                std::to_string(piece.k));
    }

    // homogeneous representatives for each graded piece, with the metric
    // transported through the original representatives
    NondegenerateFiltration nf;
    nf.dim = n;
    for (std::size_t pi = 0; pi < m.filtration.pieces.size(); ++pi) {
        const auto& piece = m.filtration.pieces[pi];
        auto it = charges.find(piece.k);
        if (it == charges.end())
            throw Error("mfs_from_graded_mfa: no charge declared for jump k = " +
                        std::to_string(piece.k));
        GradedPiece np;
        np.k = piece.k;
        Subspace cur = m.filtration.filter_at(piece.k - 1);
        std::vector<int> rep_degree;
        for (const auto& v : piece.reps)
            for (int d : degrees) {
                Vec w = component(v, d);
                if (!is_zero_vec(w) && !cur.contains(w)) {
                    np.reps.push_back(w);
                    rep_degree.push_back(d);
                    cur = Subspace::sum(cur, Subspace(n, {w}));
                }
            }
        if (np.reps.size() != piece.reps.size())
            throw Error("mfs_from_graded_mfa: could not choose homogeneous representatives");
        std::size_t sz = np.reps.size();
        Mat change(sz, sz);
        for (std::size_t r = 0; r < sz; ++r) {
            Vec coords = m.filtration.project_to_piece(pi, np.reps[r]);
            for (std::size_t cc = 0; cc < sz; ++cc) change(r, cc) = coords[cc];
        }
        np.gram = change * piece.gram * change.transposed();
        for (std::size_t x = 0; x < sz; ++x)
            for (std::size_t y = 0; y < sz; ++y)
                if (np.gram(x, y) != 0 && Rat(rep_degree[x] + rep_degree[y]) != it->second)
                    throw Error(
                        "mfs_from_graded_mfa: declared charge does not match the grading at k = " +
                        std::to_string(piece.k));
        nf.pieces.push_back(std::move(np));
    }
    return FormalMFS{std::move(s), std::move(nf), charges};
}

} // namespace mfs
