#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "testutil.hpp"

using namespace gpa;
using testutil::random_homogeneous;

namespace {

// the graded brackets below quantify over homogeneous triples on this chart
ShiftedCtxPtr graded_chart() {
    return ShiftedCotangentContext::make({{"x1", 0}, {"x2", 0}, {"u", 1}, {"v", 2}});
}

std::vector<int> all_gens(const ContextPtr& ctx) {
    std::vector<int> out;
    for (int i = 0; i < ctx->size(); ++i) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("normalization on generators") {
    auto s = ShiftedCotangentContext::make({{"x", 0}, {"y", 0}});
    auto ctx = s->poly_context();
    auto G = [&](const char* n) { return Multivector{s, GradedPoly::generator(ctx, ctx->require(n))}; };
    CHECK(schouten(G("theta_x"), G("x")).value == GradedPoly::one(ctx));
    CHECK(schouten(G("theta_x"), G("y")).value.is_zero());
    CHECK(schouten(G("x"), G("y")).value.is_zero());
    CHECK(schouten(G("theta_x"), G("theta_y")).value.is_zero());
    CHECK(schouten(G("x"), G("theta_x")).value == -GradedPoly::one(ctx));
}

TEST_CASE("schouten axioms on random homogeneous triples") {
    auto s = graded_chart();
    auto ctx = s->poly_context();
    auto gens = all_gens(ctx);
    auto g = testutil::rng(90210);
    int done = 0;
    while (done < 210) {
        int dp = static_cast<int>(g() % 4), dq = static_cast<int>(g() % 4), dr = static_cast<int>(g() % 4);
        GradedPoly P = random_homogeneous(g, ctx, gens, 2, 3, dp);
        GradedPoly Q = random_homogeneous(g, ctx, gens, 2, 3, dq);
        GradedPoly R = random_homogeneous(g, ctx, gens, 2, 3, dr);
        if (P.is_zero() || Q.is_zero() || R.is_zero()) continue;
        Multivector mp{s, P}, mq{s, Q}, mr{s, R};

        // graded antisymmetry: [P,Q] = -(-1)^{(p-1)(q-1)} [Q,P]
        int e = ((dp - 1) % 2 + 2) % 2 * (((dq - 1) % 2 + 2) % 2);
        GradedPoly want = schouten(mq, mp).value;
        want = (e == 1) ? want : -want;
        CHECK(schouten(mp, mq).value == want);

        // graded Jacobi: [P,[Q,R]] = [[P,Q],R] + (-1)^{(p-1)(q-1)} [Q,[P,R]]
        GradedPoly lhs = schouten(mp, schouten(mq, mr)).value;
        GradedPoly t2 = schouten(mq, schouten(mp, mr)).value;
        GradedPoly rhs = schouten(schouten(mp, mq), mr).value + ((e == 1) ? -t2 : t2);
        CHECK(lhs == rhs);

        // graded Leibniz: [P, QR] = [P,Q] R + (-1)^{(p-1) q} Q [P,R]
        GradedPoly leib = schouten(mp, Multivector{s, Q * R}).value;
        GradedPoly second = Q * schouten(mp, mr).value;
        int el = (((dp - 1) % 2 + 2) % 2) * ((dq % 2 + 2) % 2);
        GradedPoly leib_rhs = schouten(mp, mq).value * R + ((el == 1) ? -second : second);
        CHECK(leib == leib_rhs);
        ++done;
    }
}

TEST_CASE("constant bivector is Maurer-Cartan") {
    auto c = corpus::poisson_corpus()[0];
    auto s = corpus::make_sctx(c);
    auto pi = corpus::make_bivector(c, s);
    CHECK(is_maurer_cartan(pi).ok);
}

TEST_CASE("Maurer-Cartan classification over the corpus") {
    for (const auto& c : corpus::poisson_corpus()) {
        auto s = corpus::make_sctx(c);
        auto pi = corpus::make_bivector(c, s);
        auto mc = is_maurer_cartan(pi);
        CAPTURE(c.name);
        CHECK(mc.ok == c.jacobi);
        if (!c.jacobi) CHECK_FALSE(mc.certificate.is_zero());
    }
}

TEST_CASE("the non-Jacobi certificate contains theta_2 theta_3 theta_4") {
    auto cases = corpus::poisson_corpus();
    const auto& c = cases.back();
    REQUIRE(c.name == "nonjacobi4");
    auto s = corpus::make_sctx(c);
    auto ctx = s->poly_context();
    auto mc = is_maurer_cartan(corpus::make_bivector(c, s));
    REQUIRE_FALSE(mc.ok);
    Monomial want{{{ctx->require("theta_x2"), 1},
                   {ctx->require("theta_x3"), 1},
                   {ctx->require("theta_x4"), 1}}};
    CHECK(mc.certificate.value.terms().count(want) == 1);
}

TEST_CASE("induced bracket examples") {
    auto s = ShiftedCotangentContext::make({{"x", 0}, {"y", 0}});
    auto ctx = s->poly_context();
    auto G = [&](const char* n) { return GradedPoly::generator(ctx, ctx->require(n)); };
    Multivector pi{s, G("theta_x") * G("theta_y")};
    CHECK(induced_bracket(pi, G("x"), G("y")) == GradedPoly::one(ctx));
    CHECK(induced_bracket(pi, G("y"), G("x")) == -GradedPoly::one(ctx));
    GradedPoly f = G("x") * G("x") + G("y");
    CHECK(induced_bracket(pi, f, f).is_zero());
    CHECK_THROWS_AS(induced_bracket(pi, G("theta_x"), G("y")), std::invalid_argument);

    auto cases = corpus::poisson_corpus();
    auto sl2 = cases[3];
    auto s2 = corpus::make_sctx(sl2);
    auto ctx2 = s2->poly_context();
    auto G2 = [&](const char* n) { return GradedPoly::generator(ctx2, ctx2->require(n)); };
    auto pi2 = corpus::make_bivector(sl2, s2);
    CHECK(induced_bracket(pi2, G2("x"), G2("y")) == G2("z"));
    CHECK(induced_bracket(pi2, G2("y"), G2("z")) == G2("x"));
    CHECK(induced_bracket(pi2, G2("z"), G2("x")) == G2("y"));
}

TEST_CASE("MC iff the Jacobiator of the induced bracket vanishes") {
    for (const auto& c : corpus::poisson_corpus()) {
        auto s = corpus::make_sctx(c);
        auto ctx = s->poly_context();
        auto pi = corpus::make_bivector(c, s);
        bool jac = true;
        const int n = static_cast<int>(c.gens.size());
        for (int i = 0; i < n && jac; ++i)
            for (int j = i + 1; j < n && jac; ++j)
                for (int k = j + 1; k < n && jac; ++k) {
                    auto f = GradedPoly::generator(ctx, i);
                    auto g = GradedPoly::generator(ctx, j);
                    auto h = GradedPoly::generator(ctx, k);
                    GradedPoly J = induced_bracket(pi, f, induced_bracket(pi, g, h)) +
                                   induced_bracket(pi, g, induced_bracket(pi, h, f)) +
                                   induced_bracket(pi, h, induced_bracket(pi, f, g));
                    jac = J.is_zero();
                }
        CAPTURE(c.name);
        CHECK(is_maurer_cartan(pi).ok == jac);
        CHECK(jac == c.jacobi);
    }
}

TEST_CASE("degree-2 precondition") {
    auto s = ShiftedCotangentContext::make({{"x", 0}});
    auto ctx = s->poly_context();
    CHECK_THROWS_AS(is_maurer_cartan(Multivector{s, GradedPoly::generator(ctx, 0)}),
                    std::invalid_argument);
    CHECK(is_maurer_cartan(Multivector{s, GradedPoly::zero(ctx)}).ok);
}

TEST_CASE("legendre shift on generators") {
    auto s = ShiftedCotangentContext::make({{"x", 0}, {"y", 0}});
    auto ctx = s->poly_context();
    auto G = [&](const char* n) { return GradedPoly::generator(ctx, ctx->require(n)); };
    auto sh = legendre_shift(Multivector{s, G("y")}, {1});
    const auto& tctx = sh.shifted->poly_context();
    CHECK(sh.value.value == GradedPoly::generator(tctx, tctx->require("theta_y")));
    CHECK(tctx->gen(tctx->require("theta_y")).degree == 0);
    CHECK(tctx->gen(tctx->require("y")).degree == 1);
    // no fiber dependence: the expression survives up to the conjugate sign
    auto sh2 = legendre_shift(Multivector{s, G("x") * G("x")}, {1});
    CHECK(sh2.value.value ==
          GradedPoly::generator(sh2.shifted->poly_context(), 0) *
              GradedPoly::generator(sh2.shifted->poly_context(), 0));
}

TEST_CASE("legendre shift is a bracket anti-isomorphism and an involution") {
    auto s = ShiftedCotangentContext::make({{"x", 0}, {"y", 0}});
    auto ctx = s->poly_context();
    auto gens = all_gens(ctx);
    auto g = testutil::rng(31337);
    int done = 0;
    while (done < 60) {
        GradedPoly P = random_homogeneous(g, ctx, gens, 3, 3, static_cast<int>(g() % 4));
        GradedPoly Q = random_homogeneous(g, ctx, gens, 3, 3, static_cast<int>(g() % 4));
        if (P.is_zero() || Q.is_zero()) continue;
        Multivector mp{s, P}, mq{s, Q};
        auto shp = legendre_shift(mp, {1});
        auto shq = legendre_shift(mq, {1});
        Multivector lhs = schouten(shp.value, Multivector{shp.shifted, shq.value.value});
        auto shbr = legendre_shift(schouten(mp, mq), {1});
        CHECK(lhs.value == -shbr.value.value);

        auto back = legendre_shift(shp.value, {1});
        CHECK(back.value.value == P);
        ++done;
    }
}

TEST_CASE("bivector assembly validates input") {
    auto s = ShiftedCotangentContext::make({{"x", 0}, {"y", 0}});
    auto ctx = s->poly_context();
    auto one = GradedPoly::one(ctx);
    CHECK_THROWS_AS(bivector_from_matrix(s, {{0, 0, one}}), std::invalid_argument);
    CHECK_THROWS_AS(bivector_from_matrix(s, {{0, 1, one}, {1, 0, one}}), std::invalid_argument);
    CHECK_THROWS_AS(bivector_from_matrix(s, {{0, 1, GradedPoly::generator(ctx, ctx->require("theta_x"))}}),
                    std::invalid_argument);
}
