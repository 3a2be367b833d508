#include "mfs/formal.hpp"

#include "mfs/mfa.hpp"

#include <doctest.h>

using namespace mfs;

namespace {

// Q[eps]/(eps^2) with |eps| = 1 and the usual pairing g(1, eps) = 1
FiniteAlgebra dual_numbers_graded() {
    Mat m0 = Mat::identity(2);
    Mat m1(2, 2);
    m1(1, 0) = 1;
    return FiniteAlgebra({"1", "eps"}, {m0, m1}, Vec{1, 0}, std::vector<int>{0, 1});
}

FormalSaito constant_dual_numbers(unsigned order = 4) {
    FormalSaito s;
    s.nt = 2;
    s.nq = 0;
    s.order = order;
    s.unit = Vec{1, 0};
    s.euler_linear = Mat(2, 2);
    s.euler_linear(0, 0) = 1;       // E^0 = t_0
    s.euler_linear(1, 1) = Rat(0);  // |eps| = 1, so 1 - |eps| = 0
    s.euler_const = Vec(2, Rat(0));
    s.c.assign(2, std::vector<std::vector<Series<Rat>>>(2, std::vector<Series<Rat>>(2)));
    FiniteAlgebra a = dual_numbers_graded();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                s.c[i][j][k] = Series<Rat>::constant(2, 0, order, a.c(i, j, k));
    return s;
}

// Rank-2 structure from the potential t_0^2 t_1 / 2 + t_1^3 / 6: the product
// e_1 * e_1 = t_1 e_0 depends on the coordinates.
FormalSaito cubic_potential_saito(unsigned order = 4) {
    FormalSaito s;
    s.nt = 2;
    s.nq = 0;
    s.order = order;
    s.unit = Vec{1, 0};
    s.euler_linear = Mat(2, 2);
    s.euler_linear(0, 0) = 1;
    s.euler_linear(1, 1) = Rat(2, 3);
    s.euler_const = Vec(2, Rat(0));
    s.c.assign(2, std::vector<std::vector<Series<Rat>>>(2, std::vector<Series<Rat>>(2)));
    auto one = Series<Rat>::constant(2, 0, order, 1);
    auto t1 = Series<Rat>::variable(2, 0, order, 1);
    s.c[0][0][0] = one;
    s.c[0][1][1] = one;
    s.c[1][0][1] = one;
    s.c[1][1][0] = t1;
    return s;
}

// Quantum cohomology of P^1 in the frame (d/dt_0, q d/dq): P * P = q
FormalSaito p1_quantum(unsigned order = 4) {
    FormalSaito s;
    s.nt = 1;
    s.nq = 1;
    s.order = order;
    s.unit = Vec{1, 0};
    s.euler_linear = Mat(2, 2);
    s.euler_linear(0, 0) = 1;
    s.euler_const = Vec{Rat(0), Rat(2)};
    s.c.assign(2, std::vector<std::vector<Series<Rat>>>(2, std::vector<Series<Rat>>(2)));
    auto one = Series<Rat>::constant(1, 1, order, 1);
    auto q = Series<Rat>::variable(1, 1, order, 1);
    s.c[0][0][0] = one;
    s.c[0][1][1] = one;
    s.c[1][0][1] = one;
    s.c[1][1][0] = q;
    return s;
}

NilpotentData dual_numbers_nilpotent() {
    Mat g(2, 2);
    g(0, 1) = 1;
    g(1, 0) = 1;
    return NilpotentData{FiniteAlgebra::truncated_polynomial(2), g, {Vec{0, 1}}};
}

LocalizedFormalFrobenius dual_numbers_localized(unsigned order = 4) {
    LocalizedFormalFrobenius f;
    f.nt = 2;
    f.nq = 0;
    f.order = order;
    f.unit = Vec{1, 0};
    f.euler_linear = Mat(2, 2);
    f.euler_linear(0, 0) = 1;
    f.euler_linear(1, 1) = Rat(0);
    f.euler_const = Vec(2, Rat(0));
    f.charge = 2;
    f.metric = nilpotent_localized_metric(dual_numbers_nilpotent());
    f.c.assign(2,
               std::vector<std::vector<Series<LaurentPoly>>>(2, std::vector<Series<LaurentPoly>>(2)));
    FiniteAlgebra a = FiniteAlgebra::truncated_polynomial(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                f.c[i][j][k] =
                    Series<LaurentPoly>::constant(2, 0, order, LaurentPoly(a.c(i, j, k)));
    return f;
}

Expo no_logs() { return Expo{}; }

} // namespace

TEST_CASE("euler field helpers") {
    FormalSaito s = cubic_potential_saito();
    CHECK(s.euler_component(0).str() == "(1)*t0");
    Mat m = s.frame_euler_derivatives();
    CHECK(m(0, 0) == 1);
    CHECK(m(1, 1) == Rat(2, 3));
    CHECK(m(0, 1) == 0);
    auto t0 = Series<Rat>::variable(2, 0, 4, 0);
    auto t1 = Series<Rat>::variable(2, 0, 4, 1);
    // E(t0^2 t1) = (2 + 2/3) t0^2 t1
    Series<Rat> f = t0 * t0 * t1;
    CHECK(s.apply_euler(f) == f.scaled(Rat(8, 3)));
}

TEST_CASE("constant graded structure satisfies the axioms") {
    Report rep = check_formal_saito(constant_dual_numbers());
    CHECK(rep.ok());
    CHECK(rep.find("saito.commutative") != nullptr);
    CHECK(rep.find("saito.potentiality")->certified_order == 3);
}

TEST_CASE("coordinate-dependent structure satisfies the axioms") {
    CHECK(check_formal_saito(cubic_potential_saito()).ok());
    CHECK(check_formal_saito(p1_quantum()).ok());
}

TEST_CASE("broken structures are reported by axiom") {
    FormalSaito s = cubic_potential_saito();
    auto t0 = Series<Rat>::variable(2, 0, s.order, 0);

    SUBCASE("asymmetric perturbation breaks commutativity") {
        s.c[0][1][1] += t0;
        Report rep = check_formal_saito(s);
        CHECK_FALSE(rep.ok());
        CHECK_FALSE(rep.find("saito.commutative")->pass);
    }
    SUBCASE("symmetric non-closed perturbation breaks potentiality") {
        auto t1 = Series<Rat>::variable(2, 0, s.order, 1);
        s.c[0][1][1] += t1;
        s.c[1][0][1] += t1;
        Report rep = check_formal_saito(s);
        CHECK_FALSE(rep.find("saito.potentiality")->pass);
        CHECK(rep.find("saito.potentiality")->detail.find("differing coefficient") !=
              std::string::npos);
    }
    SUBCASE("wrong euler weight breaks only the euler axiom") {
        s.euler_linear(1, 1) = 1;
        Report rep = check_formal_saito(s);
        CHECK(rep.find("saito.commutative")->pass);
        CHECK(rep.find("saito.associative")->pass);
        CHECK(rep.find("saito.potentiality")->pass);
        CHECK_FALSE(rep.find("saito.euler")->pass);
    }
}

TEST_CASE("potential of the constant structure") {
    auto g = potential_vector_field(constant_dual_numbers());
    REQUIRE(g.size() == 2);
    // G^0 = t0^2/2, G^1 = t0 t1
    auto t0 = Series<Rat>::variable(2, 0, 4, 0);
    auto t1 = Series<Rat>::variable(2, 0, 4, 1);
    CHECK(g[0].parts.size() == 1);
    CHECK(g[0].log_free_part() == (t0 * t0).scaled(Rat(1, 2)));
    CHECK(g[1].log_free_part() == t0 * t1);
}

TEST_CASE("potential of the cubic structure") {
    auto g = potential_vector_field(cubic_potential_saito());
    auto t0 = Series<Rat>::variable(2, 0, 4, 0);
    auto t1 = Series<Rat>::variable(2, 0, 4, 1);
    CHECK(g[0].log_free_part() ==
          (t0 * t0).scaled(Rat(1, 2)) + (t1 * t1 * t1).scaled(Rat(1, 6)));
    CHECK(g[1].log_free_part() == t0 * t1);
}

TEST_CASE("potential with a log term for P^1") {
    auto g = potential_vector_field(p1_quantum());
    auto t0 = Series<Rat>::variable(1, 1, 4, 0);
    auto q = Series<Rat>::variable(1, 1, 4, 1);
    CHECK(g[0].parts.size() == 1);
    CHECK(g[0].log_free_part() == (t0 * t0).scaled(Rat(1, 2)) + q);
    // G^1 = t0 log q
    CHECK(g[1].log_free_part().is_zero());
    auto it = g[1].parts.find(Expo{1});
    REQUIRE(it != g[1].parts.end());
    CHECK(it->second == t0);
    // second derivatives reproduce the structure constants
    LogSeries d = g[1].derive(1).derive(0);
    CHECK(d.parts.size() == 1);
    CHECK(d.log_free_part() == Series<Rat>::constant(1, 1, 4, 1));
}

TEST_CASE("non-integrable structure constants are rejected") {
    FormalSaito s = cubic_potential_saito();
    auto t1 = Series<Rat>::variable(2, 0, s.order, 1);
    s.c[0][1][1] += t1;
    s.c[1][0][1] += t1;
    CHECK_THROWS_WITH_AS(potential_vector_field(s), doctest::Contains("not integrable"),
                         Error);
}

TEST_CASE("formal structure attached to a graded algebra") {
    FiniteAlgebra a = dual_numbers_graded();
    NondegenerateFiltration f;
    f.dim = 2;
    GradedPiece piece;
    piece.k = 0;
    piece.reps = {Vec{1, 0}, Vec{0, 1}};
    piece.gram = Mat(2, 2);
    piece.gram(0, 1) = 1;
    piece.gram(1, 0) = 1;
    f.pieces = {piece};
    MixedFrobeniusAlgebra m{a, f, std::nullopt};

    FormalMFS fm = mfs_from_graded_mfa(m, {{0, Rat(1)}});
    CHECK(fm.saito.nt == 2);
    CHECK(fm.saito.euler_linear(1, 1) == 0);
    Report rep = check_formal_mfs(fm);
    CHECK(rep.ok());
    CHECK(rep.find("mfs.ideal[k=0]") != nullptr);
    CHECK(rep.find("mfs.charge[k=0]")->pass);

    SUBCASE("a wrong declared charge is refused") {
        CHECK_THROWS_WITH_AS(mfs_from_graded_mfa(m, {{0, Rat(2)}}),
                             doctest::Contains("does not match the grading"), Error);
    }
    SUBCASE("a wrong charge in the structure fails the charge axiom") {
        fm.charges[0] = 2;
        Report bad = check_formal_mfs(fm);
        CHECK_FALSE(bad.ok());
        CHECK_FALSE(bad.find("mfs.charge[k=0]")->pass);
        CHECK(bad.find("mfs.ideal[k=0]")->pass);
    }
    SUBCASE("a non-ideal filter is detected") {
        fm.filtration.pieces[0].reps = {Vec{1, 0}};
        fm.filtration.pieces[0].gram = Mat::identity(1);
        fm.filtration.pieces.push_back(GradedPiece{1, {Vec{0, 1}}, Mat::identity(1)});
        fm.charges = {{0, Rat(1)}, {1, Rat(1)}};
        Report bad = check_formal_mfs(fm);
        CHECK_FALSE(bad.find("mfs.ideal[k=0]")->pass);
    }
}

TEST_CASE("localized formal frobenius structure") {
    LocalizedFormalFrobenius f = dual_numbers_localized();
    Report rep = check_localized_formal_frobenius(f);
    CHECK(rep.ok());
    CHECK(rep.find("locfrob.homogeneity")->pass);

    SUBCASE("wrong charge fails only the homogeneity equation") {
        f.charge = 3;
        Report bad = check_localized_formal_frobenius(f);
        CHECK(bad.find("locfrob.invariance")->pass);
        CHECK_FALSE(bad.find("locfrob.homogeneity")->pass);
    }
    SUBCASE("euler axiom sees the lambda derivative") {
        // scaling a structure constant by λ changes its E^λ-weight
        f.c[1][1][0] = Series<LaurentPoly>::constant(2, 0, f.order, LaurentPoly::lambda());
        Report bad = check_localized_formal_frobenius(f);
        CHECK_FALSE(bad.find("locfrob.euler")->pass);
    }
}

TEST_CASE("classical limit of the localized structure") {
    LocalizedFormalFrobenius f = dual_numbers_localized();
    FormalMFS m = limit_mfs(f);
    CHECK(m.saito.c[1][1][0].is_zero());
    CHECK(m.charges.at(0) == 2);
    CHECK(m.charges.at(2) == 0);
    CHECK(check_formal_mfs(m).ok());
    // the extracted filtration matches the closed-form nilpotent one
    NondegenerateFiltration direct = nilpotent_filtration_direct(dual_numbers_nilpotent());
    CHECK(filtrations_equal(m.filtration, direct));

    SUBCASE("lambda poles in the product are an error") {
        f.c[1][1][0] =
            Series<LaurentPoly>::constant(2, 0, f.order, LaurentPoly::monomial(1, -1));
        CHECK_THROWS_WITH_AS(limit_mfs(f), doctest::Contains("C[1][1]^0"), Error);
    }
}

TEST_CASE("localized axioms over series coefficients") {
    // t-dependent λ-polynomial deformation: multiply the nilpotent metric
    // example by the cubic potential product
    LocalizedFormalFrobenius f = dual_numbers_localized();
    auto t1 = Series<LaurentPoly>::variable(2, 0, f.order, 1);
    SUBCASE("non-commutative deformation is caught") {
        f.c[0][1][0] += t1;
        CHECK_FALSE(check_localized_formal_frobenius(f).find("locfrob.commutative")->pass);
    }
    SUBCASE("invariance failure names the triple") {
        f.metric.matrix(1, 1) = LaurentPoly(Rat(1));
        f.metric.matrix(0, 0) = LaurentPoly();
        Report bad = check_localized_formal_frobenius(f);
        CHECK_FALSE(bad.find("locfrob.invariance")->pass);
    }
}

TEST_CASE("unit axiom uses the declared unit coordinates") {
    FormalSaito s = constant_dual_numbers();
    s.unit = Vec{0, 1};
    Report rep = check_formal_saito(s);
    CHECK_FALSE(rep.find("saito.unit")->pass);
}

TEST_CASE("log-free potentials have empty log support") {
    auto g = potential_vector_field(constant_dual_numbers());
    for (const auto& part : g)
        for (const auto& [l, series] : part.parts) CHECK(l == no_logs());
}
