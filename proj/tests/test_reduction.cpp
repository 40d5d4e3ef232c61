#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gpa/reduction.hpp"

using namespace gpa;

namespace {

QMat std_omega(int half) {
    QMat w(2 * half, 2 * half);
    for (int i = 0; i < half; ++i) {
        w.at(2 * i, 2 * i + 1) = 1;
        w.at(2 * i + 1, 2 * i) = -1;
    }
    return w;
}

std::vector<Rat> e(int n, int i) {
    std::vector<Rat> v(static_cast<size_t>(n), Rat(0));
    v[static_cast<size_t>(i)] = 1;
    return v;
}

Subspace random_subspace(std::mt19937_64& g, int n) {
    std::uniform_int_distribution<int> dims(0, n);
    std::uniform_int_distribution<int> val(-3, 3);
    int k = dims(g);
    std::vector<std::vector<Rat>> vecs;
    for (int j = 0; j < k; ++j) {
        std::vector<Rat> v(static_cast<size_t>(n));
        for (auto& x : v) x = val(g);
        vecs.push_back(std::move(v));
    }
    return Subspace::span(n, std::move(vecs));
}

QMat random_skew(std::mt19937_64& g, int n) {
    std::uniform_int_distribution<int> val(-3, 3);
    QMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m.at(i, j) = val(g);
            m.at(j, i) = -m.at(i, j);
        }
    return m;
}

// independent oracle: tests the defining inclusions/equalities directly on
// basis vectors, one vector at a time
struct BruteReport {
    bool coisotropic, cosymplectic, symplectic;
};

BruteReport brute_classify(const BilinearData& d, const Subspace& w) {
    BruteReport r{true, false, false};
    Subspace ann = annihilator(w);
    std::vector<std::vector<Rat>> orth_vecs;
    for (const auto& a : ann.basis) orth_vecs.push_back(d.sharp().apply(a));
    for (const auto& v : orth_vecs)
        if (!w.contains(v)) r.coisotropic = false;
    // cosymplectic: direct-sum check vector by vector
    std::vector<std::vector<Rat>> all = w.basis;
    for (const auto& v : orth_vecs) all.push_back(v);
    auto total = span_basis(all, d.dim);
    auto orth_span = span_basis(orth_vecs, d.dim);
    bool intersect_trivial = true;
    for (const auto& v : orth_span)
        if (w.contains(v)) {
            bool zero = true;
            for (const auto& x : v) zero = zero && x == 0;
            if (!zero) intersect_trivial = false;
        }
    r.cosymplectic = static_cast<int>(total.size()) == d.dim && intersect_trivial;
    if (d.omega) {
        // nondegeneracy of the restriction by brute kernel scan
        QMat b = w.basis_matrix();
        QMat restr = b.transpose() * (*d.omega) * b;
        r.symplectic = kernel_basis(restr).empty();
    } else {
        r.symplectic = r.cosymplectic;
    }
    return r;
}

} // namespace

TEST_CASE("annihilator and sharp image on the plane") {
    auto d = BilinearData::from_omega(std_omega(1));
    Subspace w = Subspace::span(2, {e(2, 0)});
    Subspace ann = annihilator(w);
    REQUIRE(ann.dim() == 1);
    CHECK(ann.basis[0] == e(2, 1));
    Subspace sh = sharp_image(d, ann);
    REQUIRE(sh.dim() == 1);
    CHECK(sh.contains(e(2, 0)));

    Subspace full = Subspace::span(2, {e(2, 0), e(2, 1)});
    CHECK(annihilator(full).dim() == 0);
    Subspace zero = Subspace::span(2, {});
    CHECK(annihilator(zero).dim() == 2);
}

TEST_CASE("classification examples on standard R^4") {
    // omega(e1,e2) = omega(e3,e4) = 1
    auto d = BilinearData::from_omega(std_omega(2));

    // span(e1, e3) is Lagrangian, hence coisotropic with rank_phi = 0
    auto rep = classify(d, Subspace::span(4, {e(4, 0), e(4, 2)}));
    CHECK(rep.coisotropic);
    CHECK(rep.rank_phi == 0);
    CHECK_FALSE(rep.symplectic);
    CHECK(rep.characteristic.dim() == 2);

    // span(e1, e2) is symplectic and cosymplectic with rank_phi = codim
    auto rep2 = classify(d, Subspace::span(4, {e(4, 0), e(4, 1)}));
    CHECK(rep2.symplectic);
    CHECK(rep2.cosymplectic);
    CHECK(rep2.rank_phi == 2);
    CHECK(rep2.characteristic.dim() == 0);
}

TEST_CASE("zero Poisson structure makes everything coisotropic") {
    QMat z(3, 3);
    auto d = BilinearData::from_pi(z);
    std::mt19937_64 g(5);
    for (int it = 0; it < 20; ++it) {
        auto rep = classify(d, random_subspace(g, 3));
        CHECK(rep.coisotropic);
        CHECK(rep.rank_phi == 0);
    }
}

TEST_CASE("classify agrees with the brute-force oracle on 500 random subspaces") {
    std::mt19937_64 g(20240818);
    std::uniform_int_distribution<int> dims(1, 6);
    int done = 0;
    while (done < 500) {
        int n = dims(g);
        QMat skew = random_skew(g, n);
        BilinearData d = BilinearData::from_pi(skew);
        // half the cases get an invertible omega instead
        auto inv = inverse(skew);
        if (done % 2 == 0 && inv) d = BilinearData::from_both(skew, *inv);
        Subspace w = random_subspace(g, n);
        auto fast = classify(d, w);
        auto slow = brute_classify(d, w);
        CAPTURE(n);
        CHECK(fast.coisotropic == slow.coisotropic);
        CHECK(fast.cosymplectic == slow.cosymplectic);
        CHECK(fast.symplectic == slow.symplectic);
        // flag consistency from the contract
        if (fast.coisotropic) CHECK(fast.rank_phi == 0);
        if (fast.cosymplectic) CHECK(fast.rank_phi == d.dim - w.dim());
        ++done;
    }
}

TEST_CASE("in a symplectic space cosymplectic = symplectic and coisotropic = orthogonal inclusion") {
    std::mt19937_64 g(777);
    for (int it = 0; it < 80; ++it) {
        auto d = BilinearData::from_omega(std_omega(2));
        Subspace w = random_subspace(g, 4);
        auto rep = classify(d, w);
        CHECK(rep.cosymplectic == rep.symplectic);
        // W^perp = sharp(W^0) in the symplectic case
        Subspace orth = sharp_image(d, annihilator(w));
        CHECK(rep.coisotropic == w.contains(orth));
    }
}

TEST_CASE("coisotropic extension: symplectic examples") {
    auto d = BilinearData::from_omega(std_omega(2));
    // W = span(e1): complement of W + W^perp is filled with e2
    Subspace w = Subspace::span(4, {e(4, 0)});
    Subspace wp = coisotropic_extension(d, w);
    REQUIRE(wp.dim() == 2);
    CHECK(wp.contains(e(4, 0)));
    CHECK(wp.contains(e(4, 1)));
    auto rep = classify(d, wp);
    CHECK(rep.symplectic);
    auto [rd, rw] = restrict_to(d, wp, w);
    CHECK(classify(rd, rw).coisotropic);

    // already symplectic: nothing to add
    Subspace sympl = Subspace::span(4, {e(4, 0), e(4, 1)});
    CHECK(coisotropic_extension(d, sympl).dim() == 2);

    // trivial subspace of a symplectic space
    CHECK(coisotropic_extension(d, Subspace::span(4, {})).dim() == 0);
}

TEST_CASE("coisotropic extension: random data, full contract") {
    std::mt19937_64 g(1009);
    std::uniform_int_distribution<int> dims(1, 6);
    for (int it = 0; it < 120; ++it) {
        int n = dims(g);
        BilinearData d = BilinearData::from_pi(random_skew(g, n));
        Subspace w = random_subspace(g, n);
        Subspace wp = coisotropic_extension(d, w);
        CHECK(wp.contains(w));
        auto rep = classify(d, wp);
        CHECK(rep.cosymplectic);
        auto [rd, rw] = restrict_to(d, wp, w);
        CHECK(classify(rd, rw).coisotropic);
    }
}

TEST_CASE("graph coisotropy") {
    // identity map on the same structure: the diagonal is coisotropic
    std::mt19937_64 g(2024);
    for (int it = 0; it < 40; ++it) {
        std::uniform_int_distribution<int> dims(1, 4);
        int n = dims(g);
        QMat p = random_skew(g, n);
        auto rep = graph_coisotropy_check(BilinearData::from_pi(p), BilinearData::from_pi(p),
                                          QMat::identity(n));
        CHECK(rep.coisotropic);
    }
    // zero map to the zero structure
    QMat zero23(2, 3);
    auto rep = graph_coisotropy_check(BilinearData::from_pi(random_skew(g, 3)),
                                      BilinearData::from_pi(QMat(2, 2)), zero23);
    CHECK(rep.coisotropic);

    // a non-Poisson linear map between sl2* points with unequal pi values
    QMat pm(3, 3), pn(3, 3);
    pm.at(0, 1) = 1; pm.at(1, 0) = -1;  // pi at a point with z = 1
    pn.at(0, 1) = 2; pn.at(1, 0) = -2;  // pi at a point with z = 2
    auto bad = graph_coisotropy_check(BilinearData::from_pi(pm), BilinearData::from_pi(pn),
                                      QMat::identity(3));
    CHECK_FALSE(bad.coisotropic);
}

TEST_CASE("pointwise Poisson-compatible maps give coisotropic graphs") {
    // dphi o piM^sharp o dphi^T = piN^sharp ensures coisotropy of the graph
    std::mt19937_64 g(31007);
    int found = 0;
    while (found < 25) {
        QMat pm = random_skew(g, 3);
        std::uniform_int_distribution<int> val(-2, 2);
        QMat dphi(2, 3);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) dphi.at(i, j) = val(g);
        QMat pn = dphi * pm * dphi.transpose();
        bool skew_ok = true;
        for (int i = 0; i < 2 && skew_ok; ++i) skew_ok = pn.at(i, i) == 0;
        if (!skew_ok) continue;
        auto rep = graph_coisotropy_check(BilinearData::from_pi(pm), BilinearData::from_pi(pn), dphi);
        CHECK(rep.coisotropic);
        ++found;
    }
}

TEST_CASE("data validation") {
    QMat notskew(2, 2);
    notskew.at(0, 1) = 1;
    CHECK_THROWS_AS(BilinearData::from_pi(notskew), std::invalid_argument);
    QMat degenerate(2, 2);
    CHECK_THROWS_AS(BilinearData::from_omega(degenerate), std::invalid_argument);
    QMat w = std_omega(1);
    QMat wrong = w;
    wrong.at(0, 1) = 2;
    wrong.at(1, 0) = -2;
    CHECK_THROWS_AS(BilinearData::from_both(w, wrong), std::invalid_argument);
    CHECK_NOTHROW(BilinearData::from_both(w, *inverse(w)));
}
