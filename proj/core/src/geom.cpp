#include "mfs/geom.hpp"

#include "mfs/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mfs {

namespace {

// Product of cohomology-valued Laurent coefficients through the cup table.
CohomLaurent cl_mul(const FiniteAlgebra& a, const CohomLaurent& x, const CohomLaurent& y) {
    std::size_t n = a.dim();
    CohomLaurent r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero()) continue;
            LaurentPoly prod = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (a.c(i, j, k) != 0) r[k] += prod * LaurentPoly(a.c(i, j, k));
        }
    }
    return r;
}

bool cl_is_zero(const CohomLaurent& x) {
    return std::all_of(x.begin(), x.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

Rat factorial(unsigned n) {
    Rat r(1);
    for (unsigned i = 2; i <= n; ++i) r *= Rat(static_cast<int>(i));
    return r;
}

std::string record_str(const GWRecord& r) {
    std::ostringstream os;
    os << "d=(";
    for (std::size_t i = 0; i < r.degree.size(); ++i) os << (i ? "," : "") << r.degree[i];
    os << "), insertions=(";
    for (std::size_t i = 0; i < r.insertions.size(); ++i)
        os << (i ? "," : "") << r.insertions[i];
    os << ")";
    return os.str();
}

} // namespace

std::size_t CohomologyModel::num_divisors() const {
    std::size_t p = 0;
    while (p + 1 < dim() && degree(p + 1) == 1) ++p;
    return p;
}

Rat CohomologyModel::integral(const Vec& x) const {
    Rat r(0);
    for (std::size_t a = 0; a < dim(); ++a) r += x[a] * integrals[a];
    return r;
}

Mat CohomologyModel::pairing() const {
    std::size_t n = dim();
    Mat m(n, n);
    Vec ea(n, Rat(0)), eb(n, Rat(0));
    for (std::size_t a = 0; a < n; ++a) {
        ea.assign(n, Rat(0));
        ea[a] = 1;
        for (std::size_t b = 0; b < n; ++b) {
            eb.assign(n, Rat(0));
            eb[b] = 1;
            m(a, b) = integral(cup.mul(ea, eb));
        }
    }
    return m;
}

Mat CohomologyModel::dual_basis() const {
    auto inv = inverse(pairing());
    if (!inv) throw Error("cohomology model: degenerate intersection pairing");
    return *inv;
}

void CohomologyModel::validate() const {
    std::size_t n = dim();
    if (!cup.grading()) throw Error("cohomology model: basis degrees are required");
    if (integrals.size() != n || c1_x.size() != n)
        throw Error("cohomology model: coordinate vector length mismatch");
    if (degree(0) != 0) throw Error("cohomology model: φ_0 must have degree 0");
    Vec unit(n, Rat(0));
    unit[0] = 1;
    if (cup.unit() != unit) throw Error("cohomology model: φ_0 must be the unit class");
    std::size_t p = num_divisors();
    for (std::size_t a = 1; a < n; ++a) {
        if (a <= p && degree(a) != 1)
            throw Error("cohomology model: degree-2 classes must be contiguous after φ_0");
        if (a > p && degree(a) < 2)
            throw Error("cohomology model: basis must be ordered by degree block");
        if (degree(a) > static_cast<int>(dim_x))
            throw Error("cohomology model: basis degree exceeds the dimension");
    }
    for (std::size_t a = 0; a < n; ++a)
        if (integrals[a] != 0 && degree(a) != static_cast<int>(dim_x))
            throw Error("cohomology model: the integral vanishes below the top degree");
    for (std::size_t a = 0; a < n; ++a)
        if (c1_x[a] != 0 && degree(a) != 1)
            throw Error("cohomology model: c_1(X) must have degree 2");
    if (det(pairing()) == 0) throw Error("cohomology model: degenerate intersection pairing");
}

void BundleData::validate(const CohomologyModel& c) const {
    if (rank == 0) throw Error("bundle data: rank must be positive");
    if (chern.size() != rank) throw Error("bundle data: expected one Chern class per rank");
    for (std::size_t i = 0; i < rank; ++i) {
        if (chern[i].size() != c.dim())
            throw Error("bundle data: Chern class coordinate length mismatch");
        for (std::size_t a = 0; a < c.dim(); ++a)
            if (chern[i][a] != 0 && c.degree(a) != static_cast<int>(i) + 1)
                throw Error("bundle data: c_" + std::to_string(i + 1) +
                            " is not of pure degree " + std::to_string(2 * (i + 1)));
        if (!c.cup.is_nilpotent(chern[i]))
            throw Error("bundle data: c_" + std::to_string(i + 1) + " is not nilpotent");
    }
}

void GWDataset::validate(const CohomologyModel& c, const BundleData& b) const {
    std::size_t p = c.num_divisors();
    if (max_degree.size() != p) throw Error("correlator dataset: max_degree must have one bound per divisor class");
    Vec xi = euler_weights(c, b);
    std::map<std::pair<std::vector<unsigned>, std::vector<std::size_t>>, LaurentPoly> seen;
    for (std::size_t ri = 0; ri < records.size(); ++ri) {
        const GWRecord& r = records[ri];
        std::string at = "correlator record " + std::to_string(ri + 1) + " (" + record_str(r) + "): ";
        if (r.degree.size() != p) throw Error(at + "degree vector must have one entry per divisor class");
        bool zero = true;
        for (std::size_t i = 0; i < p; ++i) {
            if (r.degree[i] > max_degree[i]) throw Error(at + "degree exceeds max_degree");
            if (r.degree[i] != 0) zero = false;
        }
        if (zero) throw Error(at + "the d = 0 sector is implicit and may not appear in the dataset");
        if (r.insertions.size() < 3) throw Error(at + "at least three insertions are required");
        std::size_t low = 0;
        for (std::size_t idx : r.insertions) {
            if (idx >= c.dim()) throw Error(at + "insertion index out of range");
            if (idx <= p) ++low;
        }
        if (low > 3)
            throw Error(at + "at most three insertions may lie below the degree-4 sector");
        std::vector<std::size_t> key = r.insertions;
        std::sort(key.begin(), key.end());
        auto [it, fresh] = seen.emplace(std::make_pair(r.degree, key), r.value);
        if (!fresh && !(it->second == r.value))
            throw Error(at + "conflicts with an earlier permutation of the same record");

        // degree axiom: the value is a λ-monomial of the forced exponent
        Rat dexp = -Rat(static_cast<int>(c.dim_x + b.rank));
        dexp -= Rat(static_cast<int>(r.insertions.size()) - 3);
        for (std::size_t idx : r.insertions) dexp += Rat(c.degree(idx));
        for (std::size_t i = 0; i < p; ++i) dexp -= xi[i] * Rat(static_cast<int>(r.degree[i]));
        if (r.value.is_zero()) continue;
        Rat got(r.value.degree());
        if (!r.value.is_monomial() || got != dexp || r.value.min_exponent() < 0)
            throw Error(at + "value violates the degree axiom: expected a single λ power of degree " +
                        to_string(dexp));
    }
}

CohomLaurent equivariant_euler_inverse(const CohomologyModel& c, const BundleData& b) {
    std::size_t n = c.dim();
    // e = λ^r (1 + u), u = Σ_i c_i λ^{-i}; invert by the finite geometric series
    CohomLaurent u(n);
    for (std::size_t i = 0; i < b.rank; ++i)
        for (std::size_t a = 0; a < n; ++a)
            u[a] += LaurentPoly::monomial(b.chern[i][a], -static_cast<int>(i) - 1);
    CohomLaurent inv(n), pow(n);
    inv[0] = LaurentPoly(Rat(1));
    pow[0] = LaurentPoly(Rat(1));
    Rat sign(-1);
    for (std::size_t guard = 0; !cl_is_zero(pow); ++guard) {
        if (guard > n * b.rank + 1)
            throw Error("equivariant Euler inverse: geometric series does not terminate");
        pow = cl_mul(c.cup, pow, u);
        for (std::size_t a = 0; a < n; ++a) inv[a] += pow[a] * LaurentPoly(sign);
        sign = -sign;
    }
    for (std::size_t a = 0; a < n; ++a) inv[a] = inv[a].shifted(-static_cast<int>(b.rank));
    return inv;
}

LocalizedMetric localized_metric_geom(const CohomologyModel& c, const BundleData& b) {
    c.validate();
    b.validate(c);
    std::size_t n = c.dim();
    CohomLaurent einv = equivariant_euler_inverse(c, b);
    LocalizedMetric g{LaurentMatrix(n)};
    Vec ea(n, Rat(0)), eb(n, Rat(0));
    for (std::size_t a = 0; a < n; ++a) {
        ea.assign(n, Rat(0));
        ea[a] = 1;
        for (std::size_t bb = 0; bb < n; ++bb) {
            eb.assign(n, Rat(0));
            eb[bb] = 1;
            Vec prod = c.cup.mul(ea, eb);
            CohomLaurent cl(n);
            for (std::size_t k = 0; k < n; ++k) cl[k] = LaurentPoly(prod[k]);
            CohomLaurent full = cl_mul(c.cup, cl, einv);
            LaurentPoly entry;
            for (std::size_t k = 0; k < n; ++k)
                if (c.integrals[k] != 0) entry += full[k] * LaurentPoly(c.integrals[k]);
            int want = c.degree(a) + c.degree(bb) - static_cast<int>(c.dim_x + b.rank);
            if (!entry.is_zero() && (!entry.is_monomial() || entry.degree() != want))
                throw Error("localized metric: entry (" + std::to_string(a) + ", " +
                            std::to_string(bb) + ") violates the homogeneity pattern");
            g.matrix(a, bb) = entry;
        }
    }
    g.validate();
    return g;
}

Vec euler_weights(const CohomologyModel& c, const BundleData& b) {
    if (b.chern.empty()) throw Error("euler field: bundle data without Chern classes");
    std::size_t p = c.num_divisors();
    Vec v = c.c1_x;
    for (std::size_t a = 0; a < c.dim(); ++a) v[a] += b.chern[0][a];
    for (std::size_t a = 0; a < c.dim(); ++a)
        if (v[a] != 0 && (a < 1 || a > p))
            throw Error("euler field: c_1(X) + c_1(V) is not supported on the degree-2 classes");
    Vec xi(p);
    for (std::size_t i = 0; i < p; ++i) xi[i] = v[i + 1];
    return xi;
}

TwistedProductModel build_twisted_product(const CohomologyModel& c, const BundleData& b,
                                          const GWDataset& gw, unsigned order) {
    c.validate();
    b.validate(c);
    gw.validate(c, b);
    const std::size_t n = c.dim();
    const std::size_t p = c.num_divisors();
    const std::size_t nt = n - p;
    Vec xi = euler_weights(c, b);

    // frame order: t-directions (φ_0, φ_{p+1}..φ_s), then q-directions (φ_1..φ_p)
    std::vector<std::size_t> frame_basis;
    frame_basis.push_back(0);
    for (std::size_t a = p + 1; a < n; ++a) frame_basis.push_back(a);
    for (std::size_t i = 1; i <= p; ++i) frame_basis.push_back(i);
    std::vector<std::size_t> basis_frame(n);
    for (std::size_t f = 0; f < n; ++f) basis_frame[frame_basis[f]] = f;

    LocalizedMetric g = localized_metric_geom(c, b);
    LaurentMatrix ginv = laurent_inverse(g.matrix);

    std::map<std::pair<std::vector<unsigned>, std::vector<std::size_t>>, LaurentPoly> table;
    for (const GWRecord& r : gw.records) {
        std::vector<std::size_t> key = r.insertions;
        std::sort(key.begin(), key.end());
        table[{r.degree, key}] = r.value;
    }

    TwistedProductModel out;
    LocalizedFormalFrobenius& f = out.structure;
    f.nt = nt;
    f.nq = p;
    f.order = order;
    f.unit = Vec(n, Rat(0));
    f.unit[0] = 1;
    f.euler_linear = Mat(n, n);
    for (std::size_t a = 0; a < nt; ++a)
        f.euler_linear(a, a) = Rat(1 - c.degree(frame_basis[a]));
    f.euler_const = Vec(n, Rat(0));
    for (std::size_t i = 0; i < p; ++i) f.euler_const[nt + i] = xi[i];
    f.charge = Rat(static_cast<int>(c.dim_x + b.rank));
    f.metric.matrix = LaurentMatrix(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb)
            f.metric.matrix(a, bb) = g.matrix(frame_basis[a], frame_basis[bb]);
    f.c.assign(n, std::vector<std::vector<Series<LaurentPoly>>>(
                      n, std::vector<Series<LaurentPoly>>(n, Series<LaurentPoly>(nt, p, order))));

    Vec ea(n, Rat(0)), eb(n, Rat(0));
    for (std::size_t fa = 0; fa < n; ++fa)
        for (std::size_t fb = fa; fb < n; ++fb) {
            std::size_t al = frame_basis[fa], be = frame_basis[fb];
            // right-hand sides g^λ(φ_α ∗ φ_β, φ_γ) as series over basis γ
            std::vector<Series<LaurentPoly>> rhs(n, Series<LaurentPoly>(nt, p, order));
            ea.assign(n, Rat(0));
            ea[al] = 1;
            eb.assign(n, Rat(0));
            eb[be] = 1;
            Vec cupab = c.cup.mul(ea, eb);
            for (std::size_t ga = 0; ga < n; ++ga) {
                LaurentPoly cl;
                for (std::size_t k = 0; k < n; ++k)
                    if (cupab[k] != 0) cl += g.matrix(k, ga) * LaurentPoly(cupab[k]);
                Expo zero(n, 0);
                rhs[ga].set(zero, cl);
            }
            for (const GWRecord& r : gw.records) {
                // remove the three distinguished slots from the multiset
                std::vector<std::size_t> rest = r.insertions;
                std::sort(rest.begin(), rest.end());
                bool usable = true;
                for (std::size_t idx : {al, be}) {
                    auto it = std::find(rest.begin(), rest.end(), idx);
                    if (it == rest.end()) {
                        usable = false;
                        break;
                    }
                    rest.erase(it);
                }
                if (!usable) continue;
                for (std::size_t ga = 0; ga < n; ++ga) {
                    std::vector<std::size_t> mu = rest;
                    auto it = std::find(mu.begin(), mu.end(), ga);
                    if (it == mu.end()) continue;
                    mu.erase(it);
                    if (std::any_of(mu.begin(), mu.end(),
                                    [&](std::size_t idx) { return idx <= p; }))
                        continue;
                    unsigned total = static_cast<unsigned>(mu.size());
                    for (unsigned di : r.degree) total += di;
                    if (total > order) continue;
                    Expo e(n, 0);
                    Rat denom(1);
                    unsigned run = 1;
                    for (std::size_t j = 0; j < mu.size(); ++j) {
                        e[basis_frame[mu[j]]] += 1;
                        run = (j > 0 && mu[j] == mu[j - 1]) ? run + 1 : 1;
                        denom *= Rat(static_cast<int>(run));
                    }
                    for (std::size_t i = 0; i < p; ++i) e[nt + i] = r.degree[i];
                    Series<LaurentPoly> term(nt, p, order);
                    term.set(e, r.value * LaurentPoly(Rat(1) / denom));
                    rhs[ga] += term;
                }
            }
            for (std::size_t fd = 0; fd < n; ++fd) {
                std::size_t de = frame_basis[fd];
                Series<LaurentPoly> cc(nt, p, order);
                for (std::size_t ga = 0; ga < n; ++ga)
                    if (!ginv(ga, de).is_zero()) cc += rhs[ga].scaled(ginv(ga, de));
                for (const auto& [e, coeffp] : cc.terms)
                    if (!coeffp.is_polynomial())
                        throw Error("twisted product: structure constant C[" +
                                    std::to_string(fa) + "][" + std::to_string(fb) + "]^" +
                                    std::to_string(fd) + " has a λ-pole at " + expo_str(e, nt));
                f.c[fa][fb][fd] = cc;
                f.c[fb][fa][fd] = std::move(cc);
            }
        }

    // unit slot and ∗-invariance of g^λ
    for (std::size_t fb = 0; fb < n; ++fb)
        for (std::size_t fd = 0; fd < n; ++fd) {
            Series<LaurentPoly> want = Series<LaurentPoly>::constant(
                nt, p, order, LaurentPoly(fb == fd ? Rat(1) : Rat(0)));
            if (!(f.c[0][fb][fd].equal_to_order(want, order)))
                throw Error("twisted product: unit axiom fails on slot " + std::to_string(fb));
        }
    for (std::size_t fa = 0; fa < n; ++fa)
        for (std::size_t fb = 0; fb < n; ++fb)
            for (std::size_t fz = 0; fz < n; ++fz) {
                Series<LaurentPoly> lhs(nt, p, order), rhs2(nt, p, order);
                for (std::size_t fd = 0; fd < n; ++fd) {
                    lhs += f.c[fa][fb][fd].scaled(f.metric.matrix(fd, fz));
                    rhs2 += f.c[fb][fz][fd].scaled(f.metric.matrix(fa, fd));
                }
                if (!lhs.equal_to_order(rhs2, order))
                    throw Error("twisted product: g^λ is not ∗-invariant at (" +
                                std::to_string(fa) + ", " + std::to_string(fb) + ", " +
                                std::to_string(fz) + ")");
            }

    std::ostringstream prov;
    prov << "records=" << gw.records.size() << " max_degree=(";
    for (std::size_t i = 0; i < gw.max_degree.size(); ++i)
        prov << (i ? "," : "") << gw.max_degree[i];
    prov << ") order=" << order;
    out.provenance = prov.str();
    out.frame_basis = frame_basis;
    return out;
}

NondegenerateFiltration classical_limit_filtration(const CohomologyModel& c,
                                                   const BundleData& b) {
    c.validate();
    b.validate(c);
    NilpotentData d{c.cup, c.pairing(), b.chern};
    return nilpotent_filtration_direct(d);
}

Series<Rat> compute_phi_cl(const CohomologyModel& c, unsigned order) {
    std::size_t n = c.dim();
    Series<Rat> phi(n, 0, order);
    Vec ea(n, Rat(0)), eb(n, Rat(0));
    for (std::size_t a = 0; a < n; ++a) {
        ea.assign(n, Rat(0));
        ea[a] = 1;
        for (std::size_t bb = a; bb < n; ++bb) {
            eb.assign(n, Rat(0));
            eb[bb] = 1;
            Vec ab = c.cup.mul(ea, eb);
            for (std::size_t g = a > bb ? a : bb; g < n; ++g) {
                Vec abg = c.cup.mul(ab, [&] {
                    Vec eg(n, Rat(0));
                    eg[g] = 1;
                    return eg;
                }());
                Rat val = c.integral(abg);
                if (val == 0) continue;
                // symmetrized cubic coefficient: Π mult! over the multiset {a, b, g}
                Rat denom(1);
                if (a == bb && bb == g)
                    denom = 6;
                else if (a == bb || bb == g || a == g)
                    denom = 2;
                Expo e(n, 0);
                e[a] += 1;
                e[bb] += 1;
                e[g] += 1;
                Series<Rat> term(n, 0, order);
                term.set(e, val / denom);
                phi += term;
            }
        }
    }
    return phi;
}

} // namespace mfs
