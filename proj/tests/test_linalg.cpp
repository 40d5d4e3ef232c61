#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gpa/linalg.hpp"

using namespace gpa;

namespace {
QMat random_matrix(std::mt19937_64& g, int rows, int cols) {
    std::uniform_int_distribution<int> d(-4, 4);
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = d(g);
    return m;
}
} // namespace

TEST_CASE("rref picks first-in-order pivots") {
    QMat m(2, 3);
    m.at(0, 1) = 2;
    m.at(1, 1) = 1;
    m.at(1, 2) = 1;
    auto pivots = m.rref();
    REQUIRE(pivots == std::vector<int>{1, 2});
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(0, 2) == 0);
}

TEST_CASE("kernel and image are exact complements in rank") {
    std::mt19937_64 g(1234);
    for (int it = 0; it < 100; ++it) {
        std::uniform_int_distribution<int> dim(1, 6);
        QMat m = random_matrix(g, dim(g), dim(g));
        int r = rank(m);
        auto ker = kernel_basis(m);
        auto img = image_basis(m);
        CHECK(static_cast<int>(ker.size()) == m.cols() - r);
        CHECK(static_cast<int>(img.size()) == r);
        for (const auto& v : ker) {
            auto mv = m.apply(v);
            for (const auto& x : mv) CHECK(x == 0);
        }
    }
}

TEST_CASE("solve round trip and inconsistency detection") {
    std::mt19937_64 g(987);
    for (int it = 0; it < 100; ++it) {
        std::uniform_int_distribution<int> dim(1, 5);
        int rows = dim(g), cols = dim(g);
        QMat m = random_matrix(g, rows, cols);
        std::vector<Rat> x(static_cast<size_t>(cols));
        std::uniform_int_distribution<int> d(-3, 3);
        for (auto& v : x) v = d(g);
        auto b = m.apply(x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
    QMat z(2, 1);
    z.at(0, 0) = 1;
    CHECK_FALSE(solve(z, {Rat(1), Rat(1)}).has_value());
}

TEST_CASE("inverse") {
    QMat w(2, 2);
    w.at(0, 1) = 1;
    w.at(1, 0) = -1;
    auto inv = inverse(w);
    REQUIRE(inv.has_value());
    CHECK(*inv * w == QMat::identity(2));
    QMat sing(2, 2);
    sing.at(0, 0) = 1;
    CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("span utilities") {
    std::vector<std::vector<Rat>> vecs = {{Rat(1), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(1)}};
    auto b = span_basis(vecs, 2);
    CHECK(b.size() == 2);
    CHECK(in_span(b, {Rat(5), Rat(7)}, 2));
    CHECK_FALSE(in_span({{Rat(1), Rat(0)}}, {Rat(0), Rat(1)}, 2));
}
