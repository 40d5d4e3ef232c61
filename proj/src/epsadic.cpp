#include "gpa/epsadic.hpp"

#include <map>

namespace gpa {

EpsSeries EpsOperator::apply1(const GradedPoly& a) const {
    std::vector<GradedPoly> args{a};
    return eval(args);
}

EpsSeries EpsOperator::apply2(const GradedPoly& a, const GradedPoly& b) const {
    std::vector<GradedPoly> args{a, b};
    return eval(args);
}

EpsOperator eps_shift_operator(const EpsOperator& op, int k) {
    EpsOperator out;
    out.arity = op.arity;
    out.eval = [op, k](std::span<const GradedPoly> args) { return op.eval(args).shifted(k); };
    return out;
}

DeformedOps rescale_brackets(const DeformedOps& m) {
    if (!m.mu0.divisible_by_eps(2))
        throw std::invalid_argument("mu_0 is not divisible by eps^2 (curved or ill-formed input)");
    DeformedOps tau;
    tau.eps_order = m.eps_order;
    tau.mu0 = m.mu0.shifted(-2);
    for (size_t i = 0; i < m.mu.size(); ++i) {
        int arity = static_cast<int>(i) + 1;
        tau.mu.push_back(eps_shift_operator(m.mu[i], arity - 2));
    }
    return tau;
}

GradedPoly classical_projection(const EpsSeries& a) { return a.classical(); }

namespace {

// [pi0]-matrix: classes of B-representatives' classical parts in A-classes
QMat projection_matrix(const CochainComplex& cx, const Cohomology& hb, const CochainComplex& cx0,
                       const Cohomology& ha) {
    QMat out(ha.dim, hb.dim);
    for (int j = 0; j < hb.dim; ++j) {
        EpsSeries cls = EpsSeries::constant(hb.representatives[static_cast<size_t>(j)].classical(), 0);
        auto coords = class_coordinates(cx0, ha, cls);
        for (int i = 0; i < ha.dim; ++i) out.at(i, j) = coords[static_cast<size_t>(i)];
    }
    return out;
}

} // namespace

TorsionReport torsion_check(const CochainComplex& cx, int degree) {
    TorsionReport rep;
    rep.degree = degree;
    const int N = cx.truncation().eps_order;

    CochainComplex cx0 = cx.reduced_order(0);
    Cohomology hb = cohomology(cx, degree);
    Cohomology ha = cohomology(cx0, degree);
    rep.dim_B = hb.dim;
    rep.dim_A = ha.dim;

    // surjectivity of the induced classical projection in this degree
    if (ha.dim == 0) {
        rep.surjective = true;
    } else {
        QMat pm = projection_matrix(cx, hb, cx0, ha);
        rep.surjective = rank(pm) == ha.dim;
        if (!rep.surjective) {
            // a class outside the image: reduce the A-representatives by the image span
            auto cols = std::vector<std::vector<Rat>>{};
            for (int j = 0; j < pm.cols(); ++j) cols.push_back(pm.column(j));
            for (int i = 0; i < ha.dim; ++i) {
                std::vector<Rat> e(static_cast<size_t>(ha.dim), Rat(0));
                e[static_cast<size_t>(i)] = 1;
                if (!cols.empty() && in_span(cols, e, ha.dim)) continue;
                rep.missed_class = ha.representatives[static_cast<size_t>(i)].classical();
                break;
            }
            if (!rep.missed_class) rep.missed_class = ha.representatives.front().classical();
        }
    }

    // torsion one degree up: kernel of eps: H^{d+1}(order N-1) -> H^{d+1}(order N)
    if (N == 0) {
        rep.torsion_free = true;
    } else {
        CochainComplex cxm = cx.reduced_order(N - 1);
        Cohomology hbp = cohomology(cx, degree + 1);
        Cohomology hbm = cohomology(cxm, degree + 1);
        bool injective = true;
        std::optional<EpsSeries> witness;
        if (hbm.dim > 0) {
            QMat em(hbp.dim, hbm.dim);
            for (int j = 0; j < hbm.dim; ++j) {
                EpsSeries rep_m = hbm.representatives[static_cast<size_t>(j)];
                std::vector<GradedPoly> coeffs;
                for (int n = 0; n <= N; ++n)
                    coeffs.push_back(n == 0 || n > hbm.representatives[static_cast<size_t>(j)].order() + 1
                                         ? GradedPoly::zero(cx.context())
                                         : rep_m.coeff(n - 1));
                EpsSeries shifted = EpsSeries::from_coeffs(std::move(coeffs));
                auto coords = class_coordinates(cx, hbp, shifted);
                for (int i = 0; i < hbp.dim; ++i) em.at(i, j) = coords[static_cast<size_t>(i)];
            }
            auto ker = kernel_basis(em);
            injective = ker.empty();
            if (!injective) {
                // assemble the torsion witness in the order-(N-1) cohomology
                std::vector<Rat> v = ker.front();
                std::vector<Rat> expanded(static_cast<size_t>(hbm.cocycle_basis.rows()), Rat(0));
                for (int j = 0; j < hbm.dim; ++j)
                    if (v[static_cast<size_t>(j)] != 0)
                        for (int i = 0; i < hbm.cocycle_basis.rows(); ++i)
                            expanded[static_cast<size_t>(i)] += v[static_cast<size_t>(j)] * hbm.cocycle_basis.at(i, j);
                witness = cxm.series_from_coords(degree + 1, expanded);
            }
        }
        rep.torsion_free = injective;
        rep.torsion_witness = witness;
    }

    if (rep.surjective != rep.torsion_free)
        throw std::logic_error("long exact sequence violated: surjectivity and torsion disagree");
    return rep;
}

bool les_rank_identity(const CochainComplex& cx, int degree) {
    const int N = cx.truncation().eps_order;
    if (N == 0) return true;
    CochainComplex cx0 = cx.reduced_order(0);
    CochainComplex cxm = cx.reduced_order(N - 1);
    Cohomology ha = cohomology(cx0, degree);

    auto eps_rank = [&](int deg) {
        Cohomology hb = cohomology(cx, deg);
        Cohomology hm = cohomology(cxm, deg);
        if (hm.dim == 0 || hb.dim == 0) return std::pair<int, int>{0, hm.dim};
        QMat em(hb.dim, hm.dim);
        for (int j = 0; j < hm.dim; ++j) {
            EpsSeries rm = hm.representatives[static_cast<size_t>(j)];
            std::vector<GradedPoly> coeffs;
            coeffs.push_back(GradedPoly::zero(cx.context()));
            for (int n = 1; n <= N; ++n) coeffs.push_back(rm.coeff(n - 1));
            auto coords = class_coordinates(cx, cohomology(cx, deg), EpsSeries::from_coeffs(std::move(coeffs)));
            for (int i = 0; i < hb.dim; ++i) em.at(i, j) = coords[static_cast<size_t>(i)];
        }
        return std::pair<int, int>{rank(em), hm.dim};
    };

    auto [rank_i, dm_i] = eps_rank(degree);
    auto [rank_ip1, dm_ip1] = eps_rank(degree + 1);
    Cohomology hb_i = cohomology(cx, degree);
    int coker_i = hb_i.dim - rank_i;
    int ker_ip1 = dm_ip1 - rank_ip1;
    return ha.dim == coker_i + ker_ip1;
}

LiftOutcome lift_cocycle(const GradedPoly& a0,
                         const std::vector<std::function<GradedPoly(const GradedPoly&)>>& dd,
                         int eps_order, const std::vector<int>& gens, int even_cap) {
    LiftOutcome out;
    const auto& ctx = a0.context();
    if (dd.empty()) throw std::invalid_argument("need at least the classical differential");
    if (!dd[0](a0).is_zero()) throw std::invalid_argument("a0 is not closed");

    int deg = 0;
    if (!a0.is_homogeneous(&deg)) throw std::invalid_argument("a0 must be homogeneous");

    std::vector<Monomial> candidates = enumerate_monomials(ctx, gens, even_cap, deg);
    std::vector<GradedPoly> cand_polys;
    for (const auto& m : candidates) cand_polys.push_back(GradedPoly::term(ctx, m, Rat(1)));

    std::vector<GradedPoly> a{a0};
    for (int n = 1; n <= eps_order; ++n) {
        GradedPoly rhs(ctx);
        for (int r = 1; r <= n; ++r) {
            if (r >= static_cast<int>(dd.size())) continue;
            rhs -= dd[static_cast<size_t>(r)](a[static_cast<size_t>(n - r)]);
        }
        // solve dd0(a_n) = rhs over the candidate monomials
        std::map<Monomial, int> pos;
        std::vector<Monomial> rows;
        auto row_of = [&](const Monomial& m) {
            auto it = pos.find(m);
            if (it != pos.end()) return it->second;
            int id = static_cast<int>(rows.size());
            pos[m] = id;
            rows.push_back(m);
            return id;
        };
        std::vector<std::map<int, Rat>> cols;
        for (const auto& q : cand_polys) {
            std::map<int, Rat> col;
            for (const auto& [m, c] : dd[0](q).terms()) col[row_of(m)] = c;
            cols.push_back(std::move(col));
        }
        for (const auto& [m, c] : rhs.terms()) row_of(m);
        QMat sys(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, v] : cols[j]) sys.at(i, static_cast<int>(j)) = v;
        std::vector<Rat> rhs_v(rows.size(), Rat(0));
        for (const auto& [m, c] : rhs.terms()) rhs_v[static_cast<size_t>(pos[m])] = c;
        auto sol = solve(sys, rhs_v);
        if (!sol) {
            out.ok = false;
            out.obstruction_order = n;
            out.obstruction = rhs;
            return out;
        }
        GradedPoly an(ctx);
        for (size_t j = 0; j < cand_polys.size(); ++j)
            if ((*sol)[j] != 0) an += cand_polys[j] * (*sol)[j];
        a.push_back(an);
    }
    out.ok = true;
    out.lift = EpsSeries::from_coeffs(a);
    // post-hoc: the lift closes and projects back, independent of the solver path
    for (int n = 0; n <= eps_order; ++n) {
        GradedPoly acc(ctx);
        for (int r = 0; r <= n && r < static_cast<int>(dd.size()); ++r)
            acc += dd[static_cast<size_t>(r)](out.lift.coeff(n - r));
        if (!acc.is_zero()) throw std::logic_error("lift does not close");
    }
    if (!(out.lift.classical() == a0)) throw std::logic_error("lift does not project to a0");
    return out;
}

} // namespace gpa
