#include "mfs/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace mfs {

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> basis_names, std::vector<Mat> mult_table,
                             Vec unit, std::optional<std::vector<int>> grading)
    : dim_(basis_names.size()), names_(std::move(basis_names)), mult_(std::move(mult_table)),
      unit_(std::move(unit)), grading_(std::move(grading)) {
    if (mult_.size() != dim_ || unit_.size() != dim_)
        throw Error("algebra: inconsistent dimensions");
    for (const auto& m : mult_)
        if (m.rows != dim_ || m.cols != dim_) throw Error("algebra: bad multiplication table");

    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (c(i, j, k) != c(j, i, k)) {
                    std::ostringstream os;
                    os << "algebra: not commutative at (" << i << "," << j << "," << k << ")";
                    throw Error(os.str());
                }

    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec ij = mult_[i].col(j); // e_i * e_j
            for (std::size_t k = 0; k < dim_; ++k) {
                Vec lhs = mult_matrix(ij).col(k);        // (e_i e_j) e_k
                Vec jk = mult_[j].col(k);
                Vec rhs = mult_matrix(jk).col(i);        // e_i (e_j e_k)
                if (lhs != rhs) {
                    std::ostringstream os;
                    os << "algebra: not associative at triple (" << i << "," << j << "," << k << ")";
                    throw Error(os.str());
                }
            }
        }

    Mat lu = mult_matrix(unit_);
    if (!(lu == Mat::identity(dim_))) throw Error("algebra: stated unit is not a unit");

    if (grading_) {
        if (grading_->size() != dim_) throw Error("algebra: grading length mismatch");
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (c(i, j, k) != 0 && (*grading_)[k] != (*grading_)[i] + (*grading_)[j])
                        throw Error("algebra: structure constants violate the grading");
    }
}

FiniteAlgebra FiniteAlgebra::truncated_polynomial(std::size_t n) {
    if (n == 0) throw Error("truncated_polynomial: dimension must be positive");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    std::vector<Mat> mult(n, Mat(n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i + j < n) mult[i](i + j, j) = 1;
    Vec unit(n, Rat(0));
    unit[0] = 1;
    return FiniteAlgebra(std::move(names), std::move(mult), std::move(unit));
}

FiniteAlgebra FiniteAlgebra::direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    std::size_t n = a.dim_ + b.dim_;
    std::vector<std::string> names;
    for (const auto& s : a.names_) names.push_back("l." + s);
    for (const auto& s : b.names_) names.push_back("r." + s);
    std::vector<Mat> mult(n, Mat(n, n));
    for (std::size_t i = 0; i < a.dim_; ++i)
        for (std::size_t j = 0; j < a.dim_; ++j)
            for (std::size_t k = 0; k < a.dim_; ++k) mult[i](k, j) = a.c(i, j, k);
    for (std::size_t i = 0; i < b.dim_; ++i)
        for (std::size_t j = 0; j < b.dim_; ++j)
            for (std::size_t k = 0; k < b.dim_; ++k)
                mult[a.dim_ + i](a.dim_ + k, a.dim_ + j) = b.c(i, j, k);
    Vec unit(n, Rat(0));
    for (std::size_t i = 0; i < a.dim_; ++i) unit[i] = a.unit_[i];
    for (std::size_t i = 0; i < b.dim_; ++i) unit[a.dim_ + i] = b.unit_[i];
    return FiniteAlgebra(std::move(names), std::move(mult), std::move(unit));
}

Mat FiniteAlgebra::mult_matrix(const Vec& a) const {
    Mat m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t k = 0; k < dim_; ++k)
            for (std::size_t j = 0; j < dim_; ++j) m(k, j) += a[i] * mult_[i](k, j);
    }
    return m;
}

Vec FiniteAlgebra::mul(const Vec& x, const Vec& y) const { return mult_matrix(x) * y; }

Vec FiniteAlgebra::power(const Vec& x, unsigned k) const {
    Vec r = unit_;
    for (unsigned i = 0; i < k; ++i) r = mul(r, x);
    return r;
}

bool FiniteAlgebra::is_nilpotent(const Vec& x) const {
    Vec p = x;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (is_zero_vec(p)) return true;
        p = mul(p, x);
    }
    return is_zero_vec(p);
}

FiniteAlgebra FiniteAlgebra::with_basis(const Mat& p, std::vector<std::string> new_names) const {
    auto pinv = inverse(p);
    if (!pinv) throw Error("with_basis: singular change of basis");
    std::vector<Mat> mult(dim_, Mat(dim_, dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        Mat li = mult_matrix(p.col(i));
        Mat m = *pinv * li * p;
        mult[i] = std::move(m);
    }
    Vec unit = *pinv * unit_;
    return FiniteAlgebra(std::move(new_names), std::move(mult), std::move(unit));
}

bool IdealSubspace::is_ideal(const FiniteAlgebra& a) const {
    for (const auto& v : space.basis_vectors())
        for (std::size_t i = 0; i < a.dim(); ++i) {
            Vec e(a.dim(), Rat(0));
            e[i] = 1;
            if (!space.contains(a.mul(e, v))) return false;
        }
    return true;
}

IdealSubspace nilradical(const FiniteAlgebra& a) {
    std::size_t n = a.dim();
    Mat trace_form(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei(n, Rat(0));
        ei[i] = 1;
        for (std::size_t j = 0; j < n; ++j) {
            Vec ej(n, Rat(0));
            ej[j] = 1;
            Mat l = a.mult_matrix(a.mul(ei, ej));
            Rat tr(0);
            for (std::size_t k = 0; k < n; ++k) tr += l(k, k);
            trace_form(i, j) = tr;
        }
    }
    return IdealSubspace{Subspace(n, kernel_basis(trace_form))};
}

IdealSubspace ideal_power(const FiniteAlgebra& a, const IdealSubspace& i, unsigned k) {
    if (k == 0) return IdealSubspace{Subspace::full(a.dim())};
    Subspace cur = i.space;
    for (unsigned step = 1; step < k; ++step) {
        std::vector<Vec> prods;
        for (const auto& x : cur.basis_vectors())
            for (const auto& y : i.space.basis_vectors()) prods.push_back(a.mul(x, y));
        cur = Subspace(a.dim(), prods);
    }
    return IdealSubspace{cur};
}

Subspace annihilator(const FiniteAlgebra& a, const Vec& elem, unsigned k) {
    Mat m = Mat::identity(a.dim());
    Mat l = a.mult_matrix(elem);
    for (unsigned i = 0; i < k; ++i) m = l * m;
    return Subspace(a.dim(), kernel_basis(m));
}

// ---------------------------------------------------------------------------
// existence theorem
// ---------------------------------------------------------------------------

namespace {

// Monic minimal polynomial of a square rational matrix, as ascending
// coefficients c_0 + c_1 x + ... + x^d.
std::vector<Rat> minimal_polynomial(const Mat& m) {
    std::size_t n = m.rows;
    std::vector<Mat> powers = {Mat::identity(n)};
    for (;;) {
        std::size_t d = powers.size();
        // is powers[d-1+1] := m * powers[d-1] a combination of the previous ones?
        Mat next = m * powers.back();
        Mat sys(n * n, d);
        Vec rhs(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            for (std::size_t p = 0; p < d; ++p) sys(i, p) = powers[p].a[i];
            rhs[i] = next.a[i];
        }
        if (auto sol = solve(sys, rhs)) {
            std::vector<Rat> coeffs(d + 1);
            for (std::size_t p = 0; p < d; ++p) coeffs[p] = -(*sol)[p];
            coeffs[d] = 1;
            return coeffs;
        }
        powers.push_back(std::move(next));
    }
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> divs = {1};
    if (n == 0) return divs;
    mpz_class p = 2;
    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class limit("100000000");
    while (p * p <= n) {
        if (p > limit) throw Error("rational root search: coefficient too large to factor");
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) factors.emplace_back(n, 1);
    for (const auto& [f, e] : factors) {
        std::size_t sz = divs.size();
        mpz_class fe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            fe *= f;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * fe);
        }
    }
    return divs;
}

// All rational roots of a polynomial with rational coefficients (ascending).
std::vector<Rat> rational_roots(const std::vector<Rat>& poly) {
    std::vector<Rat> p = poly;
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.size() <= 1) return {};
    std::vector<Rat> roots;
    std::size_t lo = 0;
    while (lo < p.size() && p[lo] == 0) ++lo;
    if (lo > 0) {
        roots.push_back(Rat(0));
        p.erase(p.begin(), p.begin() + static_cast<long>(lo));
    }
    if (p.size() <= 1) return roots;
    mpz_class den(1);
    for (const auto& c : p) den = den * c.get_den() / gcd(den, mpz_class(c.get_den()));
    std::vector<mpz_class> ip;
    for (const auto& c : p) ip.push_back(mpz_class(c.get_num() * (den / c.get_den())));
    auto eval = [&](const Rat& x) {
        Rat v(0);
        for (std::size_t i = ip.size(); i-- > 0;) v = v * x + Rat(ip[i]);
        return v;
    };
    for (const auto& dn : divisors(ip.front()))
        for (const auto& dd : divisors(ip.back()))
            for (int sign : {1, -1}) {
                Rat cand(sign * dn, dd);
                cand.canonicalize();
                if (eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

FrobeniusFiltrationResult frobenius_filtration_existence(const FiniteAlgebra& a) {
    std::size_t n = a.dim();
    IdealSubspace nil = nilradical(a);

    std::vector<Subspace> powers = {Subspace::full(n)}; // N^0, N^1, ...
    for (unsigned k = 1;; ++k) {
        Subspace p = ideal_power(a, nil, k).space;
        powers.push_back(p);
        if (p.dim() == 0) break;
        if (k > n) throw Error("nilradical power chain did not terminate"); // unreachable
    }
    std::size_t l = powers.size() - 1; // N^l = 0

    FrobeniusFiltrationResult out;
    for (std::size_t j = 0; j <= l; ++j) out.chain.push_back(powers[l - j]);

    for (std::size_t j = 1; j <= l; ++j) {
        const Subspace& big = out.chain[j];     // N^{l-j}
        const Subspace& small = out.chain[j - 1]; // N^{l-j+1}

        // representatives of big/small
        std::vector<Vec> reps;
        Subspace cur = small;
        for (const auto& v : big.basis_vectors())
            if (!cur.contains(v)) {
                reps.push_back(v);
                cur = Subspace::sum(cur, Subspace(n, {v}));
            }
        std::size_t m = reps.size();
        if (m == 0) {
            out.graded_reps.emplace_back();
            out.metrics.push_back(BilinearForm{Mat(0, 0)});
            continue;
        }

        // projection big -> quotient coordinates
        auto project = [&](const Vec& w) -> Vec {
            Mat sys(n, m + small.dim());
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t r2 = 0; r2 < n; ++r2) sys(r2, c) = reps[c][r2];
            auto sb = small.basis_vectors();
            for (std::size_t c = 0; c < sb.size(); ++c)
                for (std::size_t r2 = 0; r2 < n; ++r2) sys(r2, m + c) = sb[c][r2];
            auto sol = solve(sys, w);
            if (!sol) throw Error("internal: vector not in filtration step");
            return Vec(sol->begin(), sol->begin() + static_cast<long>(m));
        };

        // action of each basis element on the quotient
        std::vector<Mat> action;
        for (std::size_t i = 0; i < n; ++i) {
            Vec ei(n, Rat(0));
            ei[i] = 1;
            Mat act(m, m);
            for (std::size_t cidx = 0; cidx < m; ++cidx) {
                Vec img = a.mul(ei, reps[cidx]);
                if (!big.contains(img)) throw Error("internal: filtration step is not an ideal");
                Vec coords = project(img);
                for (std::size_t r2 = 0; r2 < m; ++r2) act(r2, cidx) = coords[r2];
            }
            action.push_back(std::move(act));
        }

        // refine into common eigenspaces; all actions commute
        std::vector<std::vector<Vec>> blocks = {std::vector<Vec>()};
        {
            auto& full = blocks[0];
            for (std::size_t i2 = 0; i2 < m; ++i2) {
                Vec v(m, Rat(0));
                v[i2] = 1;
                full.push_back(v);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::vector<Vec>> next;
            for (const auto& block : blocks) {
                std::size_t bd = block.size();
                // restricted operator in the block basis
                Mat bm(m, bd);
                for (std::size_t c2 = 0; c2 < bd; ++c2)
                    for (std::size_t r2 = 0; r2 < m; ++r2) bm(r2, c2) = block[c2][r2];
                Mat restr(bd, bd);
                for (std::size_t c2 = 0; c2 < bd; ++c2) {
                    Vec img = action[i] * block[c2];
                    auto coords = solve(bm, img);
                    if (!coords) throw Error("internal: block not invariant");
                    for (std::size_t r2 = 0; r2 < bd; ++r2) restr(r2, c2) = (*coords)[r2];
                }
                auto mp = minimal_polynomial(restr);
                auto roots = rational_roots(mp);
                if (roots.size() + 1 != mp.size()) {
                    std::ostringstream os;
                    os << "algebra is not split over Q: the quotient N^" << (l - j) << "/N^"
                       << (l - j + 1) << " has a simple summand of dimension > 1";
                    throw Error(os.str());
                }
                for (const auto& root : roots) {
                    Mat shifted = restr;
                    for (std::size_t d2 = 0; d2 < bd; ++d2) shifted(d2, d2) -= root;
                    std::vector<Vec> eig;
                    for (const auto& kv : kernel_basis(shifted)) {
                        Vec v(m, Rat(0));
                        for (std::size_t c2 = 0; c2 < bd; ++c2)
                            if (kv[c2] != 0)
                                for (std::size_t r2 = 0; r2 < m; ++r2) v[r2] += kv[c2] * block[c2][r2];
                        eig.push_back(std::move(v));
                    }
                    if (!eig.empty()) next.push_back(std::move(eig));
                }
            }
            blocks = std::move(next);
        }

        // every block now carries scalar actions; any basis gives
        // 1-dimensional simple summands
        std::vector<Vec> lifted;
        for (const auto& block : blocks)
            for (const auto& v : block) {
                Vec w(n, Rat(0));
                for (std::size_t c2 = 0; c2 < m; ++c2)
                    if (v[c2] != 0)
                        for (std::size_t r2 = 0; r2 < n; ++r2) w[r2] += v[c2] * reps[c2][r2];
                lifted.push_back(std::move(w));
            }
        if (lifted.size() != m) throw Error("internal: eigenspace refinement lost dimensions");
        out.graded_reps.push_back(std::move(lifted));
        out.metrics.push_back(BilinearForm{Mat::identity(m)});
    }
    return out;
}

} // namespace mfs
