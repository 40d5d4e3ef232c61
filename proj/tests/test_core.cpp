#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpa/parse.hpp"
#include "testutil.hpp"

using namespace gpa;
using testutil::random_poly;

namespace {

ContextPtr mixed_context(int n_even, int n_odd) {
    std::vector<std::pair<std::string, int>> gens;
    for (int i = 0; i < n_even; ++i) gens.emplace_back("x" + std::to_string(i), 0);
    for (int i = 0; i < n_odd; ++i) gens.emplace_back("t" + std::to_string(i), 1);
    return GradedContext::make(gens);
}

std::vector<int> all_gens(const ContextPtr& ctx) {
    std::vector<int> out;
    for (int i = 0; i < ctx->size(); ++i) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("unit law and odd squares") {
    auto ctx = GradedContext::make({{"x", 0}, {"b", 1}, {"c", 1}});
    auto x = GradedPoly::generator(ctx, 0);
    auto b = GradedPoly::generator(ctx, 1);
    auto c = GradedPoly::generator(ctx, 2);
    auto one = GradedPoly::one(ctx);

    CHECK(one * (x + b) == x + b);
    CHECK(b * c == -(c * b));
    CHECK((b * c).str() == "b*c");
    CHECK((x + b) * (x - b) == x * x); // b^2 = 0
    CHECK((b * b).is_zero());
}

TEST_CASE("left derivative basics") {
    auto ctx = GradedContext::make({{"x", 0}, {"y", 0}, {"b", 1}, {"c", 1}});
    auto x = GradedPoly::generator(ctx, 0);
    auto b = GradedPoly::generator(ctx, 2);
    auto c = GradedPoly::generator(ctx, 3);

    CHECK((x * x).left_derivative(0) == x * Rat(2));
    // moving d/dc past the odd prefix b flips the sign
    CHECK((b * c).left_derivative(3) == -b);
    CHECK(GradedPoly::generator(ctx, 1).left_derivative(2).is_zero());
}

TEST_CASE("randomized ring axioms, exact") {
    // associativity, graded commutativity and distributivity over mixed
    // parities; 500+ cases of each
    auto ctx = mixed_context(3, 3);
    auto gens = all_gens(ctx);
    auto g = testutil::rng(20240817);
    for (int it = 0; it < 170; ++it) {
        GradedPoly p = random_poly(g, ctx, gens, 4, 3);
        GradedPoly q = random_poly(g, ctx, gens, 4, 3);
        GradedPoly r = random_poly(g, ctx, gens, 4, 3);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        // supercommutativity on parity parts
        for (int a = 0; a <= 1; ++a)
            for (int bpar = 0; bpar <= 1; ++bpar) {
                GradedPoly pa = p.parity_part(a), qb = q.parity_part(bpar);
                GradedPoly rhs = qb * pa;
                if (a == 1 && bpar == 1) rhs = -rhs;
                CHECK(pa * qb == rhs);
            }
    }
}

TEST_CASE("derivative is a graded derivation and second derivatives supercommute") {
    auto ctx = mixed_context(2, 3);
    auto gens = all_gens(ctx);
    auto g = testutil::rng(77001);
    for (int it = 0; it < 120; ++it) {
        GradedPoly p = random_poly(g, ctx, gens, 3, 3);
        GradedPoly q = random_poly(g, ctx, gens, 3, 3);
        for (int gi : gens) {
            // d(pq) = dp q + (-1)^{|g||p|} p dq, checked on parity parts of p
            GradedPoly lhs = (p * q).left_derivative(gi);
            GradedPoly rhs(ctx);
            for (int par = 0; par <= 1; ++par) {
                GradedPoly pp = p.parity_part(par);
                GradedPoly t = pp * q.left_derivative(gi);
                if (ctx->gen(gi).odd() && par == 1) t = -t;
                rhs += pp.left_derivative(gi) * q + t;
            }
            CHECK(lhs == rhs);
        }
        for (int gi : gens)
            for (int gj : gens) {
                GradedPoly lhs = p.left_derivative(gi).left_derivative(gj);
                GradedPoly rhs = p.left_derivative(gj).left_derivative(gi);
                if (ctx->gen(gi).odd() && ctx->gen(gj).odd()) rhs = -rhs;
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("homogeneous decomposition and eval") {
    auto ctx = GradedContext::make({{"x", 0}, {"b", 1}});
    auto x = GradedPoly::generator(ctx, 0);
    auto b = GradedPoly::generator(ctx, 1);
    CHECK((x + b).homogeneous_part(1) == b);
    CHECK((x + b).homogeneous_part(0) == x);

    auto ctx2 = GradedContext::make({{"x", 0}, {"y", 0}});
    auto xy = GradedPoly::generator(ctx2, 0) * GradedPoly::generator(ctx2, 1);
    CHECK(xy.eval({{1, GradedPoly::zero(ctx2)}}).is_zero());

    // sum of homogeneous parts reassembles
    auto g = testutil::rng(5150);
    auto mctx = mixed_context(2, 2);
    for (int it = 0; it < 50; ++it) {
        GradedPoly p = random_poly(g, mctx, all_gens(mctx), 3, 4);
        GradedPoly sum(mctx);
        if (!p.is_zero())
            for (int d = p.degree_min(); d <= p.degree_max(); ++d) sum += p.homogeneous_part(d);
        CHECK(sum == p);
    }
}

TEST_CASE("eval respects parity") {
    auto ctx = GradedContext::make({{"x", 0}, {"b", 1}, {"c", 1}});
    auto b = GradedPoly::generator(ctx, 1);
    auto c = GradedPoly::generator(ctx, 2);
    auto x = GradedPoly::generator(ctx, 0);
    CHECK(b.eval({{1, c}}) == c);
    CHECK(b.eval({{1, GradedPoly::zero(ctx)}}).is_zero());
    CHECK_THROWS_AS(b.eval({{1, x}}), std::invalid_argument);
    // substituting into a product keeps Koszul signs coherent
    auto p = b * c;
    CHECK(p.eval({{1, c}}).is_zero()); // c*c = 0
}

TEST_CASE("linear Poisson structures vanish at the origin") {
    auto s = ShiftedCotangentContext::make({{"x", 0}, {"y", 0}, {"z", 0}});
    auto ctx = s->poly_context();
    auto G = [&](const char* n) { return GradedPoly::generator(ctx, ctx->require(n)); };
    GradedPoly pi = G("z") * G("theta_x") * G("theta_y") + G("x") * G("theta_y") * G("theta_z") +
                    G("y") * G("theta_z") * G("theta_x");
    std::map<int, Rat> origin{{0, Rat(0)}, {1, Rat(0)}, {2, Rat(0)}};
    CHECK(pi.eval_point(origin).is_zero());
}

TEST_CASE("parse/print round-trips to the identical term map") {
    auto ctx = mixed_context(3, 3);
    auto gens = all_gens(ctx);
    auto g = testutil::rng(424242);
    for (int it = 0; it < 200; ++it) {
        GradedPoly p = random_poly(g, ctx, gens, 4, 4);
        CHECK(parse_expr(p.str(), ctx) == p);
    }
    CHECK(parse_expr("0", ctx).is_zero());
}

TEST_CASE("grammar corners") {
    auto ctx = GradedContext::make({{"x", 0}, {"y", 0}, {"b", 1}});
    CHECK(parse_expr("-3/4", ctx) == GradedPoly(ctx, Rat(-3, 4)));
    CHECK(parse_expr("x^2*y - y", ctx) ==
          GradedPoly::generator(ctx, 0).pow(2) * GradedPoly::generator(ctx, 1) -
              GradedPoly::generator(ctx, 1));
    CHECK(parse_expr("  x *\n y ", ctx) == parse_expr("x*y", ctx));
    // odd monomials in any order canonicalize on parse
    auto ctx2 = GradedContext::make({{"b", 1}, {"c", 1}});
    CHECK(parse_expr("c*b", ctx2) == -parse_expr("b*c", ctx2));

    CHECK_THROWS_AS(parse_expr("b^2", ctx), ParseError);    // odd exponent
    CHECK_THROWS_AS(parse_expr("(x+y)^2", ctx), ParseError); // power of a sum
    CHECK_THROWS_AS(parse_expr("x + ", ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("q", ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("1/0", ctx), ParseError);

    try {
        parse_expr("x +\n  3 * w", ctx);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 7);
    }
}

TEST_CASE("context hygiene") {
    auto a = GradedContext::make({{"x", 0}});
    auto b = GradedContext::make({{"y", 0}});
    CHECK_THROWS_AS(GradedPoly::generator(a, 0) * GradedPoly::generator(b, 0), ContextMismatch);
    CHECK_THROWS_AS(GradedContext::make({{"x", 0}, {"x", 1}}), std::invalid_argument);
    // structurally equal contexts interoperate
    auto a2 = GradedContext::make({{"x", 0}});
    CHECK(GradedPoly::generator(a, 0) + GradedPoly::generator(a2, 0) ==
          GradedPoly::generator(a, 0) * Rat(2));
}
