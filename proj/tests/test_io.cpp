#include "mfs/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace mfs;

namespace {

std::istringstream stream(const std::string& s) { return std::istringstream(s); }

const char* cubic_algebra_text = R"(# Q[x]/(x^3)
algebra
dim 3
basis 1 x x2
unit 1 0 0
c 0 0 0 1
c 0 1 1 1
c 0 2 2 1
c 1 0 1 1
c 1 1 2 1
c 2 0 2 1
end
)";

const char* p2_metric_text = R"(metric
dim 3
entry 0 0 -3 9 1
entry 0 1 -2 3 1
entry 0 2 -1 1 1
entry 1 0 -2 3 1
entry 1 1 -1 1 1
entry 2 0 -1 1 1
end
)";

const char* dual_numbers_nilpotent_text = R"(nilpotent
algebra
dim 2
basis 1 e
unit 1 0
c 0 0 0 1
c 0 1 1 1
c 1 0 1 1
end
g 0 1 1
g 1 0 1
nil 0 1
end
)";

const char* p2_geometry_text = R"(geometry
dim 3
dim_x 2
degrees 0 1 2
integral 0 0 1
c1 0 3 0
cup 0 0 0 1
cup 0 1 1 1
cup 0 2 2 1
cup 1 0 1 1
cup 1 1 2 1
cup 2 0 2 1
rank 1
chern 0 -3 0
end
)";

const char* conifold_gw_text = R"(gw
divisors 1
max_degree 4
lambda_bound 0
record 1 ; 1 1 1 ; 0 1 1
record 2 ; 1 1 1 ; 0 1 1
record 3 ; 1 1 1 ; 0 1 1
record 4 ; 1 1 1 ; 0 1 1
end
)";

const char* saito_structure_text = R"(structure
nt 2
nq 0
order 4
unit 1 0
euler 0 0 1
euler 1 1 2/3
term 0 0 0 0 0 0 1 1
term 0 1 1 0 0 0 1 1
term 1 0 1 0 0 0 1 1
term 1 1 0 0 1 0 1 1
end
)";

const char* localized_structure_text = R"(structure localized
nt 2
nq 0
order 4
unit 1 0
euler 0 0 1
term 0 0 0 0 0 0 1 1
term 0 1 1 0 0 0 1 1
term 1 0 1 0 0 0 1 1
metric 0 0 -2 -1 1
metric 0 1 -1 1 1
metric 1 0 -1 1 1
charge 2
end
)";

} // namespace

TEST_CASE("algebra files parse into working products") {
    auto in = stream(cubic_algebra_text);
    FiniteAlgebra a = read_algebra(in, "alg");
    CHECK(a.dim() == 3);
    Vec x{Rat(0), Rat(1), Rat(0)};
    CHECK(a.mul(x, x) == Vec{Rat(0), Rat(0), Rat(1)});
    CHECK(a.mul(x, a.mul(x, x)) == Vec(3, Rat(0)));
    CHECK(a.unit() == Vec{Rat(1), Rat(0), Rat(0)});
}

TEST_CASE("metric files feed the normalization pipeline") {
    auto in = stream(p2_metric_text);
    LocalizedMetric g = read_metric(in, "met");
    g.validate();
    FiltrationProfile p = normalize_metric(g);
    CHECK(p.kappas == std::vector<int>{3, 0, 0});
}

TEST_CASE("nilpotent files validate and filter") {
    auto in = stream(dual_numbers_nilpotent_text);
    NilpotentData d = read_nilpotent(in, "nil");
    d.validate();
    CHECK(d.rank() == 1);
    auto f = nilpotent_filtration_direct(d);
    REQUIRE(f.pieces.size() == 2);
    CHECK(f.pieces[0].k == 0);
    CHECK(f.pieces[1].k == 2);
}

TEST_CASE("geometry files produce a validated model and bundle") {
    auto in = stream(p2_geometry_text);
    auto [c, b] = read_geometry(in, "geo");
    CHECK(c.dim_x == 2);
    CHECK(c.num_divisors() == 1);
    CHECK(b.rank == 1);
    auto gin = stream(conifold_gw_text);
    GWDataset gw = read_gw(gin, "gw");
    CHECK(gw.records.size() == 4);
    CHECK(gw.max_degree == std::vector<unsigned>{4});
    CHECK(gw.records[2].value == LaurentPoly::monomial(Rat(1), 0));
}

TEST_CASE("structure files load both variants") {
    SUBCASE("plain Saito frame") {
        auto in = stream(saito_structure_text);
        ParsedStructure p = read_structure(in, "st");
        REQUIRE(p.saito);
        CHECK_FALSE(p.localized);
        CHECK(p.saito->order == 4);
        CHECK(check_formal_saito(*p.saito).ok());
        Expo e{0, 1};
        CHECK(p.saito->c[1][1][0].coeff(e) == Rat(1));
    }
    SUBCASE("localized variant with metric and charge") {
        auto in = stream(localized_structure_text);
        ParsedStructure p = read_structure(in, "st");
        REQUIRE(p.localized);
        CHECK(p.localized->charge == Rat(2));
        CHECK(check_localized_formal_frobenius(*p.localized).ok());
    }
    SUBCASE("order override replaces the declared order") {
        auto in = stream(saito_structure_text);
        ParsedStructure p = read_structure(in, "st", 6);
        CHECK(p.saito->order == 6);
    }
}

TEST_CASE("parse errors carry the file name and line number") {
    SUBCASE("malformed rational") {
        auto in = stream("algebra\ndim 2\nunit 1 zz\nend\n");
        CHECK_THROWS_WITH_AS(read_algebra(in, "f"), doctest::Contains("f:3: malformed rational"),
                             Error);
    }
    SUBCASE("non-increasing Laurent exponents") {
        auto in = stream("metric\ndim 1\nentry 0 0 2 1 1 1 1 1\nend\n");
        CHECK_THROWS_WITH_AS(read_metric(in, "f"),
                             doctest::Contains("f:3: exponents must be strictly increasing"),
                             Error);
    }
    SUBCASE("zero denominator") {
        auto in = stream("metric\ndim 1\nentry 0 0 0 1 0\nend\n");
        CHECK_THROWS_WITH_AS(read_metric(in, "f"), doctest::Contains("f:3: zero denominator"),
                             Error);
    }
    SUBCASE("missing unit") {
        auto in = stream("algebra\ndim 1\nc 0 0 0 1\nend\n");
        CHECK_THROWS_WITH_AS(read_algebra(in, "f"), doctest::Contains("missing 'unit'"), Error);
    }
    SUBCASE("unterminated block") {
        auto in = stream("metric\ndim 1\nentry 0 0 0 1 1\n");
        CHECK_THROWS_WITH_AS(read_metric(in, "f"), doctest::Contains("unterminated"), Error);
    }
    SUBCASE("unknown field") {
        auto in = stream("algebra\ndim 1\nunit 1\nbogus 3\nend\n");
        CHECK_THROWS_WITH_AS(read_algebra(in, "f"),
                             doctest::Contains("f:4: unknown algebra field 'bogus'"), Error);
    }
    SUBCASE("index out of range") {
        auto in = stream("algebra\ndim 2\nunit 1 0\nc 0 0 5 1\nend\n");
        CHECK_THROWS_WITH_AS(read_algebra(in, "f"), doctest::Contains("f:4: index 5 out of range"),
                             Error);
    }
    SUBCASE("record separators") {
        auto in = stream("gw\ndivisors 1\nmax_degree 2\nrecord 1 1 1 1 0 1 1\nend\n");
        CHECK_THROWS_WITH_AS(read_gw(in, "f"),
                             doctest::Contains("expected 'record <d> ; <insertions> ; <value>'"),
                             Error);
    }
    SUBCASE("non-localized structure rejects lambda powers") {
        auto in = stream("structure\nnt 1\nnq 0\nunit 1\nterm 0 0 0 0 2 1 1\nend\n");
        CHECK_THROWS_WITH_AS(read_structure(in, "f"),
                             doctest::Contains("require 'structure localized'"), Error);
    }
    SUBCASE("algebra axiom violations surface at the block end") {
        // unit row fails to reproduce the basis
        auto in = stream("algebra\ndim 2\nunit 1 0\nc 0 0 0 1\nend\n");
        CHECK_THROWS_AS(read_algebra(in, "f"), Error);
    }
}

TEST_CASE("polynomial triples round-trip") {
    LaurentPoly p = LaurentPoly::monomial(Rat(9), -3) + LaurentPoly::monomial(Rat(-1, 2), 1);
    std::string s = write_poly_triples(p);
    CHECK(s == "-3 9 1 1 -1 2");
    auto in = stream("metric\ndim 1\nentry 0 0 " + s + "\nend\n");
    LocalizedMetric g = read_metric(in, "rt");
    CHECK(g.matrix(0, 0) == p);
}
