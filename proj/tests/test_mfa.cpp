#include "mfs/mfa.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <algorithm>

using namespace mfs;

namespace {

LocalizedMetric metric_local_p2() {
    LocalizedMetric g;
    g.matrix = LaurentMatrix(3);
    g.matrix(0, 0) = LaurentPoly::monomial(9, -3);
    g.matrix(0, 1) = g.matrix(1, 0) = LaurentPoly::monomial(3, -2);
    g.matrix(0, 2) = g.matrix(2, 0) = LaurentPoly::monomial(1, -1);
    g.matrix(1, 1) = LaurentPoly::monomial(1, -1);
    return g;
}

LocalizedMetric diag_metric(const std::vector<int>& kappas) {
    LocalizedMetric g;
    g.matrix = LaurentMatrix(kappas.size());
    for (std::size_t i = 0; i < kappas.size(); ++i)
        g.matrix(i, i) = LaurentPoly::lambda(-kappas[i]);
    return g;
}

std::vector<int> sorted_kappas(const LocalizedMetric& g) {
    auto p = normalize_metric(g);
    auto k = p.kappas;
    std::sort(k.begin(), k.end(), std::greater<>());
    return k;
}

NilpotentData eps2_data() {
    Mat g(2, 2);
    g(0, 1) = g(1, 0) = 1;
    return NilpotentData{FiniteAlgebra::truncated_polynomial(2), g, {Vec{Rat(0), Rat(1)}}};
}

} // namespace

TEST_CASE("localized metric validation") {
    CHECK_NOTHROW(metric_local_p2().validate());

    LocalizedMetric bad;
    bad.matrix = LaurentMatrix::identity(2);
    bad.matrix(1, 1) = LaurentPoly(0, {Rat(1), Rat(1)});
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("unit"), Error);

    LocalizedMetric asym;
    asym.matrix = LaurentMatrix::identity(2);
    asym.matrix(0, 1) = LaurentPoly(Rat(1));
    CHECK_THROWS_WITH_AS(asym.validate(), doctest::Contains("symmetric"), Error);
}

TEST_CASE("normalize_metric") {
    SUBCASE("identity") {
        LocalizedMetric g;
        g.matrix = LaurentMatrix::identity(3);
        auto p = normalize_metric(g);
        CHECK(p.kappas == std::vector<int>{0, 0, 0});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(p.basis_x[i][j] == LaurentPoly(Rat(i == j ? 1 : 0)));
                CHECK(p.basis_y[i][j] == LaurentPoly(Rat(i == j ? 1 : 0)));
            }
    }
    SUBCASE("diagonal negative powers") {
        CHECK(sorted_kappas(diag_metric({2, 2, 0})) == std::vector<int>{2, 2, 0});
    }
    SUBCASE("local P^2 metric") {
        CHECK(sorted_kappas(metric_local_p2()) == std::vector<int>{3, 0, 0});
    }
    SUBCASE("exact pairing identity g(x_i, y_j) = lambda^{-kappa_i} delta_ij") {
        for (const auto& g : {metric_local_p2(), diag_metric({2, -1, 0})}) {
            auto p = normalize_metric(g);
            std::size_t s = g.ambient_dim();
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) {
                    LaurentPoly v = laurent_bilinear(p.basis_x[i], g.matrix, p.basis_y[j]);
                    if (i == j)
                        CHECK(v == LaurentPoly::lambda(-p.kappas[i]));
                    else
                        CHECK(v.is_zero());
                }
        }
    }
    SUBCASE("kappa multiset invariant under unimodular change of basis") {
        gen::Rng rng(17);
        auto base = metric_local_p2();
        auto expect = sorted_kappas(base);
        for (int t = 0; t < 10; ++t) {
            LaurentMatrix p = gen::random_unimodular(rng, 3);
            LocalizedMetric moved;
            moved.matrix = p.transposed() * base.matrix * p;
            CHECK(sorted_kappas(moved) == expect);
        }
    }
    SUBCASE("non-unimodular input cites the determinant") {
        LocalizedMetric bad;
        bad.matrix = LaurentMatrix::identity(2);
        bad.matrix(1, 1) = LaurentPoly(0, {Rat(1), Rat(1)});
        CHECK_THROWS_AS(normalize_metric(bad), Error);
    }
}

TEST_CASE("filtration_from_profile") {
    SUBCASE("identity metric: single jump with identity gram") {
        LocalizedMetric g;
        g.matrix = LaurentMatrix::identity(3);
        auto f = filtration_from_profile(normalize_metric(g), g);
        REQUIRE(f.pieces.size() == 1);
        CHECK(f.pieces[0].k == 0);
        CHECK(f.pieces[0].gram == Mat::identity(3));
        CHECK(f.filter_at(0) == Subspace::full(3));
    }
    SUBCASE("diagonal metric") {
        auto g = diag_metric({2, 2, 0});
        auto f = filtration_from_profile(normalize_metric(g), g);
        REQUIRE(f.pieces.size() == 2);
        CHECK(f.pieces[0].k == 0);
        CHECK(f.pieces[0].gram == Mat::identity(1));
        CHECK(f.pieces[1].k == 2);
        CHECK(f.pieces[1].gram == Mat::identity(2));
        CHECK(f.filter_at(0).contains(Vec{Rat(0), Rat(0), Rat(1)}));
        CHECK(f.filter_at(1).dim() == 1);
    }
    SUBCASE("local P^2 metric: ranks and top metric value") {
        auto g = metric_local_p2();
        auto f = filtration_from_profile(normalize_metric(g), g);
        std::vector<std::size_t> ranks;
        for (int k = -1; k <= 3; ++k) ranks.push_back(f.filter_at(k).dim());
        CHECK(ranks == std::vector<std::size_t>{0, 2, 2, 2, 3});
        REQUIRE(f.pieces.size() == 2);
        CHECK(f.pieces[1].k == 3);
        REQUIRE(f.pieces[1].reps.size() == 1);
        // g_3 on the class of the basis vector 1
        Vec coords = f.project_to_piece(1, Vec{Rat(1), Rat(0), Rat(0)});
        CHECK(coords[0] * f.pieces[1].gram(0, 0) * coords[0] == 9);
        CHECK(f.total_rank() == 3);
    }
}

TEST_CASE("residue metric well-definedness") {
    CHECK(residue_metric_well_defined_check(diag_metric({2, 1, 0}), 1, 10));
    CHECK(residue_metric_well_defined_check(diag_metric({2, 1, 0}), 2, 10));
    CHECK(residue_metric_well_defined_check(metric_local_p2(), 3, 10));
    CHECK(residue_metric_well_defined_check(metric_local_p2(), 0, 10));
}

TEST_CASE("check_mfa") {
    auto a = FiniteAlgebra::truncated_polynomial(2);
    Mat g(2, 2);
    g(0, 1) = g(1, 0) = 1;

    SUBCASE("frobenius algebra as trivial filtration passes") {
        NondegenerateFiltration f;
        f.dim = 2;
        GradedPiece p;
        p.k = 0;
        p.reps = {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}};
        p.gram = g;
        f.pieces = {p};
        auto rep = check_mfa(MixedFrobeniusAlgebra{a, f, std::nullopt});
        CHECK(rep.ok());
    }
    SUBCASE("non-ideal filter fails the ideal axiom") {
        NondegenerateFiltration f;
        f.dim = 2;
        GradedPiece p0;
        p0.k = 0;
        p0.reps = {Vec{Rat(1), Rat(0)}}; // span{1} is not an ideal
        p0.gram = Mat::identity(1);
        GradedPiece p1;
        p1.k = 1;
        p1.reps = {Vec{Rat(0), Rat(1)}};
        p1.gram = Mat::identity(1);
        f.pieces = {p0, p1};
        auto rep = check_mfa(MixedFrobeniusAlgebra{a, f, std::nullopt});
        CHECK(!rep.ok());
        auto* rec = rep.find("filtration.ideal[k=0]");
        REQUIRE(rec != nullptr);
        CHECK(!rec->pass);
    }
    SUBCASE("non-invariant metric fails the invariance axiom") {
        NondegenerateFiltration f;
        f.dim = 2;
        GradedPiece p;
        p.k = 0;
        p.reps = {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}};
        p.gram = Mat::identity(2); // g(x*1, x) = 0 but g(1, x*x) is not compatible
        f.pieces = {p};
        auto rep = check_mfa(MixedFrobeniusAlgebra{a, f, std::nullopt});
        CHECK(!rep.ok());
        auto* rec = rep.find("metric.invariant[k=0]");
        REQUIRE(rec != nullptr);
        CHECK(!rec->pass);
    }
}

TEST_CASE("mfa from invariant localized metric") {
    SUBCASE("lambda-independent product and metric give a trivial filtration") {
        auto a = FiniteAlgebra::truncated_polynomial(2);
        Mat g(2, 2);
        g(0, 1) = g(1, 0) = 1;
        LocalizedMetric lg;
        lg.matrix = LaurentMatrix::from_rational(g);
        auto m = mfa_from_invariant_localized_metric(constant_lambda_algebra(a), lg);
        REQUIRE(m.filtration.pieces.size() == 1);
        CHECK(m.filtration.pieces[0].k == 0);
        CHECK(check_mfa(m).ok());
        CHECK(m.algebra.c(1, 1, 0) == 0); // still Q[x]/(x^2)
    }
    SUBCASE("non-invariant metric names the violating triple") {
        auto a = FiniteAlgebra::truncated_polynomial(2);
        LocalizedMetric lg;
        lg.matrix = LaurentMatrix::identity(2); // not invariant for Q[x]/(x^2)
        CHECK_THROWS_WITH_AS(mfa_from_invariant_localized_metric(constant_lambda_algebra(a), lg),
                             doctest::Contains("invariant"), Error);
    }
}

TEST_CASE("nilpotent localized metric") {
    SUBCASE("r = 1, n = 0: lambda^{-1} g") {
        auto d = eps2_data();
        d.nilpotents = {Vec{Rat(0), Rat(0)}};
        auto g = nilpotent_localized_metric(d);
        CHECK(g.matrix(0, 0).is_zero());
        CHECK(g.matrix(0, 1) == LaurentPoly::lambda(-1));
        CHECK(g.matrix(1, 0) == LaurentPoly::lambda(-1));
        CHECK(g.matrix(1, 1).is_zero());
    }
    SUBCASE("Q[eps]/(eps^2), n = eps: expansion of 1/(lambda + eps)") {
        auto g = nilpotent_localized_metric(eps2_data());
        CHECK(g.matrix(0, 0) == LaurentPoly::monomial(-1, -2));
        CHECK(g.matrix(0, 1) == LaurentPoly::lambda(-1));
        CHECK(g.matrix(1, 1).is_zero());
    }
    SUBCASE("r = 2, n_1 = n_2 = 0: lambda^{-2} g") {
        auto d = eps2_data();
        d.nilpotents = {Vec{Rat(0), Rat(0)}, Vec{Rat(0), Rat(0)}};
        auto g = nilpotent_localized_metric(d);
        CHECK(g.matrix(0, 1) == LaurentPoly::lambda(-2));
        CHECK(g.matrix(0, 0).is_zero());
    }
    SUBCASE("non-nilpotent element rejected") {
        auto d = eps2_data();
        d.nilpotents = {Vec{Rat(1), Rat(0)}};
        CHECK_THROWS_WITH_AS(nilpotent_localized_metric(d), doctest::Contains("nilpotent"), Error);
    }
}

TEST_CASE("nilpotent filtration, closed form") {
    SUBCASE("Q[eps]/(eps^3), r = 1, n = eps") {
        Mat g3(3, 3);
        g3(0, 2) = g3(2, 0) = g3(1, 1) = 1; // coefficient of eps^2
        NilpotentData d{FiniteAlgebra::truncated_polynomial(3), g3, {Vec{Rat(0), Rat(1), Rat(0)}}};
        auto f = nilpotent_filtration_direct(d);

        CHECK(f.filter_at(-1).dim() == 0);
        Subspace i0 = f.filter_at(0);
        CHECK(i0.dim() == 2);
        CHECK(i0.contains(Vec{Rat(0), Rat(1), Rat(0)}));
        CHECK(i0.contains(Vec{Rat(0), Rat(0), Rat(1)}));
        CHECK(f.filter_at(1) == i0);
        CHECK(f.filter_at(2) == i0);
        CHECK(f.filter_at(3) == Subspace::full(3));

        REQUIRE(f.pieces.size() == 2);
        CHECK(f.pieces[0].k == 0);
        // on representatives (eps, eps^2): g_0 = [[0,1],[1,0]]
        Mat expect(2, 2);
        expect(0, 1) = expect(1, 0) = 1;
        Mat transported(2, 2);
        {
            // express the expectation in whatever representative order came out
            std::vector<Vec> want = {Vec{Rat(0), Rat(1), Rat(0)}, Vec{Rat(0), Rat(0), Rat(1)}};
            Mat change(2, 2);
            for (std::size_t r = 0; r < 2; ++r) {
                Vec coords = f.project_to_piece(0, want[r]);
                for (std::size_t c = 0; c < 2; ++c) change(r, c) = coords[c];
            }
            transported = change * f.pieces[0].gram * change.transposed();
        }
        CHECK(transported == expect);

        CHECK(f.pieces[1].k == 3);
        REQUIRE(f.pieces[1].reps.size() == 1);
        Vec coords = f.project_to_piece(1, Vec{Rat(1), Rat(0), Rat(0)});
        CHECK(coords[0] * f.pieces[1].gram(0, 0) * coords[0] == 1); // g_3(1,1) = g(1, eps^2) = 1
    }
    SUBCASE("r = 1 closed form J_k = ker(n^k), g_k = g(x y, (-n)^{k-1})") {
        gen::Rng rng(23);
        for (int t = 0; t < 5; ++t) {
            auto inst = gen::random_split_frobenius(rng);
            NilpotentData d{inst.alg, inst.metric, {gen::random_nilpotent(rng, inst.alg)}};
            auto f = nilpotent_filtration_direct(d);
            const Vec& n1 = d.nilpotents[0];
            Subspace i0(d.base.dim(), {});
            {
                std::vector<Vec> img;
                Mat l = d.base.mult_matrix(n1);
                for (std::size_t i = 0; i < d.base.dim(); ++i) img.push_back(l.col(i));
                i0 = Subspace(d.base.dim(), img);
            }
            for (int k = 0; k <= f.max_jump(); ++k) {
                Subspace expect =
                    k == 0 ? i0 : Subspace::sum(i0, annihilator(d.base, n1, static_cast<unsigned>(k)));
                CHECK(f.filter_at(k) == expect);
            }
        }
    }
    SUBCASE("r = 2, zero nilpotents: I_2 = A with g_2 = g") {
        auto d = eps2_data();
        d.nilpotents = {Vec{Rat(0), Rat(0)}, Vec{Rat(0), Rat(0)}};
        auto f = nilpotent_filtration_direct(d);
        REQUIRE(f.pieces.size() == 1);
        CHECK(f.pieces[0].k == 2);
        CHECK(f.filter_at(1).dim() == 0);
        Mat change(2, 2);
        for (std::size_t r = 0; r < 2; ++r) {
            Vec e(2, Rat(0));
            e[r] = 1;
            Vec coords = f.project_to_piece(0, e);
            for (std::size_t c = 0; c < 2; ++c) change(r, c) = coords[c];
        }
        CHECK(change * f.pieces[0].gram * change.transposed() == d.metric);
    }
}

TEST_CASE("pipeline equivalence: direct nilpotent filtration vs generic extraction") {
    gen::Rng rng(31);
    std::uniform_int_distribution<std::size_t> rd(1, 3);
    int done = 0;
    while (done < 10) {
        auto inst = gen::random_split_frobenius(rng);
        std::size_t r = rd(rng);
        NilpotentData d{inst.alg, inst.metric, {}};
        for (std::size_t i = 0; i < r; ++i) d.nilpotents.push_back(gen::random_nilpotent(rng, inst.alg));

        auto direct = nilpotent_filtration_direct(d);
        auto glam = nilpotent_localized_metric(d);
        auto mfa = mfa_from_invariant_localized_metric(constant_lambda_algebra(inst.alg), glam);
        CHECK(filtrations_equal(direct, mfa.filtration));
        CHECK(check_mfa(mfa).ok());
        CHECK(check_mfa(MixedFrobeniusAlgebra{inst.alg, direct, std::nullopt}).ok());
        ++done;
    }
}
