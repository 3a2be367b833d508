#include "mfs/io.hpp"

#include <istream>
#include <map>
#include <sstream>
#include <vector>

namespace mfs {

namespace {

struct Lines {
    std::istream& in;
    std::string name;
    std::size_t line_no = 0;
    std::vector<std::string> tokens;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(name + ":" + std::to_string(line_no) + ": " + msg);
    }

    /// Next non-empty, non-comment line split into tokens; false at EOF.
    bool next() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            tokens.clear();
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    bool is(const std::string& kw) const { return !tokens.empty() && tokens[0] == kw; }

    void expect_arity(std::size_t n) const {
        if (tokens.size() != n)
            fail("expected " + std::to_string(n - 1) + " value(s) after '" + tokens[0] + "'");
    }

    Rat rat(const std::string& tok) const {
        try {
            Rat r(tok);
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            fail("malformed rational '" + tok + "'");
        }
    }

    long integer(const std::string& tok) const {
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            fail("malformed integer '" + tok + "'");
        }
    }

    std::size_t index(const std::string& tok, std::size_t bound) const {
        long v = integer(tok);
        if (v < 0 || static_cast<std::size_t>(v) >= bound)
            fail("index " + tok + " out of range [0, " + std::to_string(bound) + ")");
        return static_cast<std::size_t>(v);
    }

    /// Flat triple list "e num den ..." starting at token `from`.
    LaurentPoly poly(std::size_t from) const {
        if ((tokens.size() - from) % 3 != 0)
            fail("Laurent coefficients must come as (exponent, numerator, denominator) triples");
        LaurentPoly p;
        long prev = 0;
        bool first = true;
        for (std::size_t i = from; i < tokens.size(); i += 3) {
            long e = integer(tokens[i]);
            if (!first && e <= prev) fail("exponents must be strictly increasing");
            first = false;
            prev = e;
            Rat num = rat(tokens[i + 1]);
            Rat den = rat(tokens[i + 2]);
            if (den == 0) fail("zero denominator");
            p += LaurentPoly::monomial(num / den, static_cast<int>(e));
        }
        return p;
    }

    Vec rat_list(std::size_t from, std::size_t count) const {
        if (tokens.size() - from != count)
            fail("expected " + std::to_string(count) + " coordinates");
        Vec v(count);
        for (std::size_t i = 0; i < count; ++i) v[i] = rat(tokens[from + i]);
        return v;
    }
};

FiniteAlgebra parse_algebra_block(Lines& ls) {
    std::size_t dim = 0;
    std::vector<std::string> names;
    std::optional<Vec> unit;
    std::optional<std::vector<int>> grading;
    std::vector<Mat> mult;
    bool closed = false;
    while (ls.next()) {
        if (ls.is("end")) {
            closed = true;
            break;
        }
        if (ls.is("dim")) {
            ls.expect_arity(2);
            long d = ls.integer(ls.tokens[1]);
            if (d < 1) ls.fail("dimension must be positive");
            dim = static_cast<std::size_t>(d);
            mult.assign(dim, Mat(dim, dim));
            continue;
        }
        if (dim == 0) ls.fail("'dim' must come before other algebra fields");
        if (ls.is("basis")) {
            if (ls.tokens.size() != dim + 1) ls.fail("expected one name per basis element");
            names.assign(ls.tokens.begin() + 1, ls.tokens.end());
        } else if (ls.is("unit")) {
            unit = ls.rat_list(1, dim);
        } else if (ls.is("grading")) {
            if (ls.tokens.size() != dim + 1) ls.fail("expected one degree per basis element");
            grading.emplace();
            for (std::size_t i = 0; i < dim; ++i)
                grading->push_back(static_cast<int>(ls.integer(ls.tokens[i + 1])));
        } else if (ls.is("c")) {
            ls.expect_arity(5);
            std::size_t i = ls.index(ls.tokens[1], dim);
            std::size_t j = ls.index(ls.tokens[2], dim);
            std::size_t k = ls.index(ls.tokens[3], dim);
            mult[i](k, j) = ls.rat(ls.tokens[4]);
        } else {
            ls.fail("unknown algebra field '" + ls.tokens[0] + "'");
        }
    }
    if (!closed) ls.fail("unterminated algebra block");
    if (!unit) ls.fail("algebra block is missing 'unit'");
    if (names.empty())
        for (std::size_t i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i));
    try {
        return FiniteAlgebra(std::move(names), std::move(mult), *unit, std::move(grading));
    } catch (const Error& e) {
        ls.fail(e.what());
    }
}

} // namespace

FiniteAlgebra read_algebra(std::istream& in, const std::string& name) {
    Lines ls{in, name};
    if (!ls.next() || !ls.is("algebra")) ls.fail("expected an 'algebra' block");
    return parse_algebra_block(ls);
}

LocalizedMetric read_metric(std::istream& in, const std::string& name) {
    Lines ls{in, name};
    if (!ls.next() || !ls.is("metric")) ls.fail("expected a 'metric' block");
    std::size_t dim = 0;
    LocalizedMetric g;
    bool closed = false;
    while (ls.next()) {
        if (ls.is("end")) {
            closed = true;
            break;
        }
        if (ls.is("dim")) {
            ls.expect_arity(2);
            long d = ls.integer(ls.tokens[1]);
            if (d < 1) ls.fail("dimension must be positive");
            dim = static_cast<std::size_t>(d);
            g.matrix = LaurentMatrix(dim);
        } else if (ls.is("entry")) {
            if (dim == 0) ls.fail("'dim' must come before entries");
            if (ls.tokens.size() < 3) ls.fail("expected 'entry i j <coefficients>'");
            std::size_t i = ls.index(ls.tokens[1], dim);
            std::size_t j = ls.index(ls.tokens[2], dim);
            g.matrix(i, j) = ls.poly(3);
        } else {
            ls.fail("unknown metric field '" + ls.tokens[0] + "'");
        }
    }
    if (!closed) ls.fail("unterminated metric block");
    if (dim == 0) ls.fail("metric block is missing 'dim'");
    return g;
}

NilpotentData read_nilpotent(std::istream& in, const std::string& name) {
    Lines ls{in, name};
    if (!ls.next() || !ls.is("nilpotent")) ls.fail("expected a 'nilpotent' block");
    if (!ls.next() || !ls.is("algebra")) ls.fail("expected a nested 'algebra' block");
    FiniteAlgebra alg = parse_algebra_block(ls);
    std::size_t dim = alg.dim();
    Mat metric(dim, dim);
    std::vector<Vec> nilpotents;
    bool closed = false;
    while (ls.next()) {
        if (ls.is("end")) {
            closed = true;
            break;
        }
        if (ls.is("g")) {
            ls.expect_arity(4);
            std::size_t i = ls.index(ls.tokens[1], dim);
            std::size_t j = ls.index(ls.tokens[2], dim);
            metric(i, j) = ls.rat(ls.tokens[3]);
        } else if (ls.is("nil")) {
            nilpotents.push_back(ls.rat_list(1, dim));
        } else {
            ls.fail("unknown nilpotent field '" + ls.tokens[0] + "'");
        }
    }
    if (!closed) ls.fail("unterminated nilpotent block");
    if (nilpotents.empty()) ls.fail("at least one 'nil' element is required");
    return NilpotentData{std::move(alg), std::move(metric), std::move(nilpotents)};
}

std::pair<CohomologyModel, BundleData> read_geometry(std::istream& in, const std::string& name) {
    Lines ls{in, name};
    if (!ls.next() || !ls.is("geometry")) ls.fail("expected a 'geometry' block");
    std::size_t dim = 0;
    long dim_x = -1;
    std::optional<std::vector<int>> degrees;
    std::optional<Vec> integrals, c1;
    std::vector<Mat> cup;
    long rank = -1;
    std::vector<Vec> chern;
    bool closed = false;
    while (ls.next()) {
        if (ls.is("end")) {
            closed = true;
            break;
        }
        if (ls.is("dim")) {
            ls.expect_arity(2);
            long d = ls.integer(ls.tokens[1]);
            if (d < 1) ls.fail("basis size must be positive");
            dim = static_cast<std::size_t>(d);
            cup.assign(dim, Mat(dim, dim));
            continue;
        }
        if (ls.is("dim_x")) {
            ls.expect_arity(2);
            dim_x = ls.integer(ls.tokens[1]);
            if (dim_x < 0) ls.fail("dim_x must be nonnegative");
            continue;
        }
        if (dim == 0) ls.fail("'dim' must come before basis data");
        if (ls.is("degrees")) {
            if (ls.tokens.size() != dim + 1) ls.fail("expected one degree per basis class");
            degrees.emplace();
            for (std::size_t i = 0; i < dim; ++i)
                degrees->push_back(static_cast<int>(ls.integer(ls.tokens[i + 1])));
        } else if (ls.is("integral")) {
            integrals = ls.rat_list(1, dim);
        } else if (ls.is("c1")) {
            c1 = ls.rat_list(1, dim);
        } else if (ls.is("cup")) {
            ls.expect_arity(5);
            std::size_t i = ls.index(ls.tokens[1], dim);
            std::size_t j = ls.index(ls.tokens[2], dim);
            std::size_t k = ls.index(ls.tokens[3], dim);
            cup[i](k, j) = ls.rat(ls.tokens[4]);
        } else if (ls.is("rank")) {
            ls.expect_arity(2);
            rank = ls.integer(ls.tokens[1]);
            if (rank < 1) ls.fail("bundle rank must be positive");
        } else if (ls.is("chern")) {
            chern.push_back(ls.rat_list(1, dim));
        } else {
            ls.fail("unknown geometry field '" + ls.tokens[0] + "'");
        }
    }
    if (!closed) ls.fail("unterminated geometry block");
    if (dim_x < 0) ls.fail("geometry block is missing 'dim_x'");
    if (!degrees) ls.fail("geometry block is missing 'degrees'");
    if (!integrals) ls.fail("geometry block is missing 'integral'");
    if (!c1) ls.fail("geometry block is missing 'c1'");
    if (rank < 0) ls.fail("geometry block is missing 'rank'");
    if (chern.size() != static_cast<std::size_t>(rank))
        ls.fail("expected one 'chern' row per unit of rank");
    Vec unit(dim, Rat(0));
    unit[0] = 1;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dim; ++i) names.push_back("phi" + std::to_string(i));
    CohomologyModel c{[&] {
                          try {
                              return FiniteAlgebra(std::move(names), std::move(cup), unit,
                                                   std::move(degrees));
                          } catch (const Error& e) {
                              ls.fail(e.what());
                          }
                      }(),
                      *integrals, *c1, static_cast<std::size_t>(dim_x)};
    BundleData b{static_cast<std::size_t>(rank), std::move(chern)};
    try {
        c.validate();
        b.validate(c);
    } catch (const Error& e) {
        ls.fail(e.what());
    }
    return {std::move(c), std::move(b)};
}

GWDataset read_gw(std::istream& in, const std::string& name) {
    Lines ls{in, name};
    if (!ls.next() || !ls.is("gw")) ls.fail("expected a 'gw' block");
    long divisors = -1;
    long lambda_bound = -1;
    GWDataset gw;
    bool closed = false;
    while (ls.next()) {
        if (ls.is("end")) {
            closed = true;
            break;
        }
        if (ls.is("divisors")) {
            ls.expect_arity(2);
            divisors = ls.integer(ls.tokens[1]);
            if (divisors < 0) ls.fail("divisor count must be nonnegative");
        } else if (ls.is("max_degree")) {
            if (divisors < 0) ls.fail("'divisors' must come before 'max_degree'");
            if (ls.tokens.size() != static_cast<std::size_t>(divisors) + 1)
                ls.fail("expected one bound per divisor class");
            for (long i = 0; i < divisors; ++i) {
                long v = ls.integer(ls.tokens[static_cast<std::size_t>(i) + 1]);
                if (v < 0) ls.fail("degree bounds must be nonnegative");
                gw.max_degree.push_back(static_cast<unsigned>(v));
            }
        } else if (ls.is("lambda_bound")) {
            ls.expect_arity(2);
            lambda_bound = ls.integer(ls.tokens[1]);
            if (lambda_bound < 0) ls.fail("lambda_bound must be nonnegative");
        } else if (ls.is("record")) {
            if (divisors < 0) ls.fail("'divisors' must come before records");
            // record d_1 .. d_p ; i_1 .. i_m ; poly triples
            std::vector<std::size_t> seps;
            for (std::size_t i = 1; i < ls.tokens.size(); ++i)
                if (ls.tokens[i] == ";") seps.push_back(i);
            if (seps.size() != 2) ls.fail("expected 'record <d> ; <insertions> ; <value>'");
            GWRecord r;
            if (seps[0] - 1 != static_cast<std::size_t>(divisors))
                ls.fail("expected one degree entry per divisor class");
            for (std::size_t i = 1; i < seps[0]; ++i) {
                long v = ls.integer(ls.tokens[i]);
                if (v < 0) ls.fail("curve degrees must be nonnegative");
                r.degree.push_back(static_cast<unsigned>(v));
            }
            for (std::size_t i = seps[0] + 1; i < seps[1]; ++i)
                r.insertions.push_back(static_cast<std::size_t>(ls.integer(ls.tokens[i])));
            r.value = ls.poly(seps[1] + 1);
            if (lambda_bound >= 0 && !r.value.is_zero() && r.value.degree() > lambda_bound)
                ls.fail("value exceeds the declared lambda_bound");
            if (!r.value.is_polynomial()) ls.fail("correlator values must be polynomial in λ");
            gw.records.push_back(std::move(r));
        } else {
            ls.fail("unknown gw field '" + ls.tokens[0] + "'");
        }
    }
    if (!closed) ls.fail("unterminated gw block");
    if (divisors < 0) ls.fail("gw block is missing 'divisors'");
    if (gw.max_degree.size() != static_cast<std::size_t>(divisors))
        ls.fail("gw block is missing 'max_degree'");
    return gw;
}

ParsedStructure read_structure(std::istream& in, const std::string& name,
                               unsigned order_override) {
    Lines ls{in, name};
    if (!ls.next() || !ls.is("structure")) ls.fail("expected a 'structure' block");
    bool localized = ls.tokens.size() == 2 && ls.tokens[1] == "localized";
    if (ls.tokens.size() > 1 && !localized) ls.fail("unknown structure variant");

    std::size_t nt = 0, nq = 0;
    bool have_nt = false, have_nq = false;
    unsigned order = 4;
    std::optional<Vec> unit;
    std::map<std::pair<std::size_t, std::size_t>, Rat> euler_lin;
    std::map<std::size_t, Rat> euler_cst;
    struct Term {
        std::size_t a, b, g;
        Expo e;
        LaurentPoly v;
    };
    std::vector<Term> terms;
    LocalizedMetric metric;
    bool have_metric_dim = false;
    std::optional<Rat> charge;
    bool closed = false;

    auto dim = [&] { return nt + nq; };
    while (ls.next()) {
        if (ls.is("end")) {
            closed = true;
            break;
        }
        if (ls.is("nt")) {
            ls.expect_arity(2);
            nt = static_cast<std::size_t>(ls.integer(ls.tokens[1]));
            have_nt = true;
            continue;
        }
        if (ls.is("nq")) {
            ls.expect_arity(2);
            nq = static_cast<std::size_t>(ls.integer(ls.tokens[1]));
            have_nq = true;
            continue;
        }
        if (ls.is("order")) {
            ls.expect_arity(2);
            long v = ls.integer(ls.tokens[1]);
            if (v < 1) ls.fail("order must be positive");
            order = static_cast<unsigned>(v);
            continue;
        }
        if (!have_nt || !have_nq) ls.fail("'nt' and 'nq' must come before other fields");
        if (ls.is("unit")) {
            unit = ls.rat_list(1, dim());
        } else if (ls.is("euler")) {
            ls.expect_arity(4);
            std::size_t a = ls.index(ls.tokens[1], dim());
            std::size_t b = ls.index(ls.tokens[2], nt);
            euler_lin[{a, b}] = ls.rat(ls.tokens[3]);
        } else if (ls.is("euler_const")) {
            ls.expect_arity(3);
            std::size_t a = ls.index(ls.tokens[1], dim());
            euler_cst[a] = ls.rat(ls.tokens[2]);
        } else if (ls.is("term")) {
            if (ls.tokens.size() != 4 + dim() + 3)
                ls.fail("expected 'term a b g <exponents> <lambda-degree> <num> <den>'");
            Term t;
            t.a = ls.index(ls.tokens[1], dim());
            t.b = ls.index(ls.tokens[2], dim());
            t.g = ls.index(ls.tokens[3], dim());
            for (std::size_t i = 0; i < dim(); ++i) {
                long e = ls.integer(ls.tokens[4 + i]);
                if (e < 0) ls.fail("series exponents must be nonnegative");
                t.e.push_back(static_cast<unsigned>(e));
            }
            long le = ls.integer(ls.tokens[4 + dim()]);
            if (!localized && le != 0)
                ls.fail("λ-degrees other than 0 require 'structure localized'");
            Rat num = ls.rat(ls.tokens[5 + dim()]);
            Rat den = ls.rat(ls.tokens[6 + dim()]);
            if (den == 0) ls.fail("zero denominator");
            t.v = LaurentPoly::monomial(num / den, static_cast<int>(le));
            terms.push_back(std::move(t));
        } else if (ls.is("metric")) {
            if (!localized) ls.fail("'metric' requires 'structure localized'");
            if (!have_metric_dim) {
                metric.matrix = LaurentMatrix(dim());
                have_metric_dim = true;
            }
            if (ls.tokens.size() < 3) ls.fail("expected 'metric i j <coefficients>'");
            std::size_t i = ls.index(ls.tokens[1], dim());
            std::size_t j = ls.index(ls.tokens[2], dim());
            metric.matrix(i, j) = ls.poly(3);
        } else if (ls.is("charge")) {
            if (!localized) ls.fail("'charge' requires 'structure localized'");
            ls.expect_arity(2);
            charge = ls.rat(ls.tokens[1]);
        } else {
            ls.fail("unknown structure field '" + ls.tokens[0] + "'");
        }
    }
    if (!closed) ls.fail("unterminated structure block");
    if (!have_nt || !have_nq) ls.fail("structure block is missing 'nt'/'nq'");
    if (dim() == 0) ls.fail("structure has no frame directions");
    if (!unit) ls.fail("structure block is missing 'unit'");
    if (order_override > 0) order = order_override;

    Mat lin(dim(), dim());
    for (const auto& [ab, v] : euler_lin) lin(ab.first, ab.second) = v;
    Vec cst(dim(), Rat(0));
    for (const auto& [a, v] : euler_cst) cst[a] = v;

    ParsedStructure out;
    if (localized) {
        if (!have_metric_dim) ls.fail("localized structure is missing 'metric' entries");
        if (!charge) ls.fail("localized structure is missing 'charge'");
        LocalizedFormalFrobenius f;
        f.nt = nt;
        f.nq = nq;
        f.order = order;
        f.unit = *unit;
        f.euler_linear = std::move(lin);
        f.euler_const = std::move(cst);
        f.metric = std::move(metric);
        f.charge = *charge;
        f.c.assign(dim(), std::vector<std::vector<Series<LaurentPoly>>>(
                              dim(), std::vector<Series<LaurentPoly>>(
                                         dim(), Series<LaurentPoly>(nt, nq, order))));
        for (const auto& t : terms) {
            if (total_degree(t.e) > order) continue;
            Series<LaurentPoly>& s = f.c[t.a][t.b][t.g];
            s.set(t.e, s.coeff(t.e) + t.v);
        }
        out.localized = std::move(f);
    } else {
        FormalSaito s;
        s.nt = nt;
        s.nq = nq;
        s.order = order;
        s.unit = *unit;
        s.euler_linear = std::move(lin);
        s.euler_const = std::move(cst);
        s.c.assign(dim(), std::vector<std::vector<Series<Rat>>>(
                              dim(), std::vector<Series<Rat>>(dim(), Series<Rat>(nt, nq, order))));
        for (const auto& t : terms) {
            if (total_degree(t.e) > order) continue;
            Series<Rat>& sr = s.c[t.a][t.b][t.g];
            sr.set(t.e, sr.coeff(t.e) + t.v.constant_term());
        }
        out.saito = std::move(s);
    }
    return out;
}

std::string write_poly_triples(const LaurentPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) os << " ";
        first = false;
        os << e << " " << c.get_num().get_str() << " " << c.get_den().get_str();
    }
    return os.str();
}

} // namespace mfs
