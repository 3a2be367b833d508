#pragma once

#include "mfs/laurent.hpp"
#include "mfs/rational.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace mfs {

inline bool coeff_is_zero(const Rat& c) { return c == 0; }
inline bool coeff_is_zero(const LaurentPoly& c) { return c.is_zero(); }

/// Exponent vector: first nt entries are t-exponents, the remaining nq are
/// q-exponents.
using Expo = std::vector<unsigned>;

inline unsigned total_degree(const Expo& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

inline std::string expo_str(const Expo& e, std::size_t nt) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << (i < nt ? "t" : "q") << (i < nt ? i : i - nt);
        if (e[i] > 1) os << "^" << e[i];
    }
    if (first) os << "1";
    return os.str();
}

/// Power series in (t_1..t_nt, q_1..q_nq) truncated at total degree `order`,
/// with coefficients in C (exact rationals or Laurent polynomials in λ).
template <class C>
struct Series {
    std::size_t nt = 0, nq = 0;
    unsigned order = 0;
    std::map<Expo, C> terms; // no zero coefficients stored

    Series() = default;
    Series(std::size_t nt_, std::size_t nq_, unsigned order_) : nt(nt_), nq(nq_), order(order_) {}

    std::size_t nvars() const { return nt + nq; }

    static Series constant(std::size_t nt_, std::size_t nq_, unsigned order_, const C& c) {
        Series s(nt_, nq_, order_);
        if (!coeff_is_zero(c)) s.terms[Expo(nt_ + nq_, 0)] = c;
        return s;
    }
    static Series variable(std::size_t nt_, std::size_t nq_, unsigned order_, std::size_t v) {
        Series s(nt_, nq_, order_);
        if (order_ >= 1) {
            Expo e(nt_ + nq_, 0);
            e[v] = 1;
            s.terms[e] = C(1);
        }
        return s;
    }

    bool is_zero() const { return terms.empty(); }

    C coeff(const Expo& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? C() : it->second;
    }
    C constant_coeff() const { return coeff(Expo(nvars(), 0)); }

    void set(const Expo& e, const C& c) {
        if (coeff_is_zero(c))
            terms.erase(e);
        else if (total_degree(e) <= order)
            terms[e] = c;
    }

    Series& operator+=(const Series& o) {
        for (const auto& [e, c] : o.terms) {
            if (total_degree(e) > order) continue;
            auto it = terms.find(e);
            if (it == terms.end())
                terms[e] = c;
            else {
                it->second += c;
                if (coeff_is_zero(it->second)) terms.erase(it);
            }
        }
        return *this;
    }
    Series& operator-=(const Series& o) {
        for (const auto& [e, c] : o.terms) {
            if (total_degree(e) > order) continue;
            auto it = terms.find(e);
            if (it == terms.end()) {
                terms[e] = C() - c;
            } else {
                it->second -= c;
                if (coeff_is_zero(it->second)) terms.erase(it);
            }
        }
        return *this;
    }
    friend Series operator+(Series x, const Series& y) { return x += y; }
    friend Series operator-(Series x, const Series& y) { return x -= y; }
    Series operator-() const {
        Series r(nt, nq, order);
        for (const auto& [e, c] : terms) r.terms[e] = C() - c;
        return r;
    }

    friend Series operator*(const Series& x, const Series& y) {
        Series r(x.nt, x.nq, x.order);
        for (const auto& [ex, cx] : x.terms) {
            unsigned dx = total_degree(ex);
            for (const auto& [ey, cy] : y.terms) {
                if (dx + total_degree(ey) > r.order) continue;
                Expo e(ex);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += ey[i];
                C prod = cx * cy;
                if (coeff_is_zero(prod)) continue;
                auto it = r.terms.find(e);
                if (it == r.terms.end())
                    r.terms[e] = prod;
                else {
                    it->second += prod;
                    if (coeff_is_zero(it->second)) r.terms.erase(it);
                }
            }
        }
        return r;
    }
    Series scaled(const C& c) const {
        Series r(nt, nq, order);
        if (coeff_is_zero(c)) return r;
        for (const auto& [e, cc] : terms) {
            C v = cc * c;
            if (!coeff_is_zero(v)) r.terms[e] = v;
        }
        return r;
    }

    bool operator==(const Series& o) const { return terms == o.terms; }

    /// Equality of all coefficients of total degree <= d.
    bool equal_to_order(const Series& o, unsigned d) const {
        auto covered = [&](const std::map<Expo, C>& a, const std::map<Expo, C>& b) {
            for (const auto& [e, c] : a) {
                if (total_degree(e) > d) continue;
                auto it = b.find(e);
                if (it == b.end()) {
                    if (!coeff_is_zero(c)) return false;
                } else if (!(it->second == c)) {
                    return false;
                }
            }
            return true;
        };
        return covered(terms, o.terms) && covered(o.terms, terms);
    }
    /// Least total degree of a differing coefficient, or nullopt.
    std::vector<Expo> differing_exponents(const Series& o, unsigned d) const {
        std::vector<Expo> out;
        for (const auto& [e, c] : terms)
            if (total_degree(e) <= d && !(o.coeff(e) == c)) out.push_back(e);
        for (const auto& [e, c] : o.terms)
            if (total_degree(e) <= d && coeff(e) == C() && !coeff_is_zero(c)) out.push_back(e);
        return out;
    }

    /// Frame derivation: v < nt is d/dt_v, otherwise q_{v-nt} d/dq_{v-nt}.
    Series derive(std::size_t v) const {
        Series r(nt, nq, order);
        for (const auto& [e, c] : terms) {
            if (e[v] == 0) continue;
            if (v < nt) {
                Expo e2 = e;
                e2[v] -= 1;
                C val = c * C(static_cast<int>(e[v]));
                auto it = r.terms.find(e2);
                if (it == r.terms.end())
                    r.terms[e2] = val;
                else
                    it->second += val;
            } else {
                r.terms[e] = c * C(static_cast<int>(e[v]));
            }
        }
        return r;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << "(" << coeff_str(c) << ")*" << expo_str(e, nt);
        }
        return os.str();
    }

private:
    static std::string coeff_str(const Rat& c) { return to_string(c); }
    static std::string coeff_str(const LaurentPoly& c) { return c.str(); }
};

inline Series<Rat> at_lambda_zero(const Series<LaurentPoly>& s) {
    Series<Rat> r(s.nt, s.nq, s.order);
    for (const auto& [e, c] : s.terms) {
        if (!c.is_polynomial()) throw Error("series coefficient has a λ-pole at " + expo_str(e, s.nt));
        Rat v = c.constant_term();
        if (v != 0) r.terms[e] = v;
    }
    return r;
}

inline Series<LaurentPoly> lambda_lift(const Series<Rat>& s) {
    Series<LaurentPoly> r(s.nt, s.nq, s.order);
    for (const auto& [e, c] : s.terms) r.terms[e] = LaurentPoly(c);
    return r;
}

/// Polynomial in the symbols L_i = log q_i with Series coefficients.
/// Exponent vectors have length nq.
struct LogSeries {
    std::size_t nt = 0, nq = 0;
    unsigned order = 0;
    std::map<Expo, Series<Rat>> parts; // L-exponent -> coefficient series

    LogSeries() = default;
    LogSeries(std::size_t nt_, std::size_t nq_, unsigned order_)
        : nt(nt_), nq(nq_), order(order_) {}

    bool is_zero() const {
        for (const auto& [l, s] : parts)
            if (!s.is_zero()) return false;
        return true;
    }

    const Series<Rat>& log_free_part() const {
        static const Series<Rat> zero;
        auto it = parts.find(Expo(nq, 0));
        return it == parts.end() ? zero : it->second;
    }

    void add(const Expo& l, const Series<Rat>& s) {
        if (s.is_zero()) return;
        auto it = parts.find(l);
        if (it == parts.end())
            parts[l] = s;
        else {
            it->second += s;
            if (it->second.is_zero()) parts.erase(it);
        }
    }

    LogSeries& operator+=(const LogSeries& o) {
        for (const auto& [l, s] : o.parts) add(l, s);
        return *this;
    }
    LogSeries& operator-=(const LogSeries& o) {
        for (const auto& [l, s] : o.parts) add(l, -s);
        return *this;
    }

    bool operator==(const LogSeries& o) const {
        LogSeries d = *this;
        d -= o;
        return d.parts.empty();
    }

    bool equal_to_order(const LogSeries& o, unsigned d) const {
        LogSeries diff = *this;
        diff -= o;
        Series<Rat> zero;
        for (const auto& [l, s] : diff.parts)
            if (!s.equal_to_order(zero, d)) return false;
        return true;
    }

    /// Frame derivation with the rule q_i d/dq_i L_j = delta_ij.
    LogSeries derive(std::size_t v) const {
        LogSeries r(nt, nq, order);
        for (const auto& [l, s] : parts) {
            r.add(l, s.derive(v));
            if (v >= nt) {
                std::size_t i = v - nt;
                if (l[i] > 0) {
                    Expo l2 = l;
                    l2[i] -= 1;
                    r.add(l2, s.scaled(Rat(static_cast<int>(l[i]))));
                }
            }
        }
        return r;
    }
};

} // namespace mfs
