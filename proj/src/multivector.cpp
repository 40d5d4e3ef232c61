#include "gpa/multivector.hpp"

#include <algorithm>
#include <set>

namespace gpa {

ShiftedCtxPtr ShiftedCotangentContext::make(const std::vector<std::pair<std::string, int>>& base) {
    std::vector<std::pair<std::string, int>> gens = base;
    for (const auto& [name, deg] : base) gens.emplace_back("theta_" + name, 1 - deg);
    auto s = std::make_shared<ShiftedCotangentContext>();
    s->ctx_ = GradedContext::make(gens);
    s->n_ = static_cast<int>(base.size());
    return s;
}

Multivector mvec(const ShiftedCtxPtr& s, GradedPoly v) {
    check_same_context(s->poly_context(), v.context());
    return Multivector{s, std::move(v)};
}

Multivector schouten(const Multivector& P, const Multivector& Q) {
    if (P.sctx != Q.sctx) check_same_context(P.sctx->poly_context(), Q.sctx->poly_context());
    const auto& s = *P.sctx;
    const auto& ctx = s.poly_context();
    GradedPoly out(ctx);

    for (int pp = 0; pp <= 1; ++pp) {
        GradedPoly Pp = P.value.parity_part(pp);
        if (Pp.is_zero()) continue;
        for (int qq = 0; qq <= 1; ++qq) {
            GradedPoly Qq = Q.value.parity_part(qq);
            if (Qq.is_zero()) continue;
            for (int a = 0; a < s.base_count(); ++a) {
                const int xb = s.base_index(a), th = s.conj_index(a);
                const bool d_odd = ctx->gen(xb).odd();
                GradedPoly dtP = Pp.left_derivative(th);
                GradedPoly dxQ = Qq.left_derivative(xb);
                GradedPoly dxP = Pp.left_derivative(xb);
                GradedPoly dtQ = Qq.left_derivative(th);
                if (!d_odd) {
                    // [theta,x] = +1 forces these prefactors together with
                    // graded antisymmetry; see the axiom suite.
                    GradedPoly t1 = dtP * dxQ;
                    if (pp == 0) t1 = -t1;
                    out += t1;
                    out -= dxP * dtQ;
                } else {
                    out += dtP * dxQ;
                    GradedPoly t2 = dxP * dtQ;
                    if (qq == 1) t2 = -t2;
                    out += t2;
                }
            }
        }
    }
    return Multivector{P.sctx, std::move(out)};
}

GradedPoly induced_bracket(const Multivector& pi, const GradedPoly& f, const GradedPoly& g) {
    const auto& s = *pi.sctx;
    check_same_context(s.poly_context(), f.context());
    check_same_context(s.poly_context(), g.context());
    for (const GradedPoly* p : {&f, &g})
        for (const auto& [m, c] : p->terms())
            for (const auto& [gi, e] : m.factors)
                if (s.is_conjugate(gi))
                    throw std::invalid_argument("induced bracket arguments must be theta-free");
    Multivector vf{pi.sctx, f};
    return -(schouten(schouten(vf, pi), Multivector{pi.sctx, g}).value);
}

McCheck is_maurer_cartan(const Multivector& pi) {
    int deg = 0;
    if (!pi.value.is_homogeneous(&deg) || (!pi.value.is_zero() && deg != 2))
        throw std::invalid_argument("Maurer-Cartan candidate must be homogeneous of degree 2");
    Multivector cert = schouten(pi, pi);
    McCheck r;
    r.pi = pi;
    r.certificate = cert;
    r.ok = cert.is_zero();
    return r;
}

Multivector bivector_from_matrix(const ShiftedCtxPtr& s,
                                 const std::vector<std::tuple<int, int, GradedPoly>>& entries) {
    const auto& ctx = s->poly_context();
    GradedPoly acc(ctx);
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j, v] : entries) {
        if (i < 0 || j < 0 || i >= s->base_count() || j >= s->base_count() || i == j)
            throw std::invalid_argument("bivector entries need distinct base generator pairs");
        check_same_context(ctx, v.context());
        auto key = std::minmax(i, j);
        if (!seen.insert(key).second) throw std::invalid_argument("duplicate bivector entry");
        for (const auto& [m, c] : v.terms())
            for (const auto& [gi, e] : m.factors)
                if (s->is_conjugate(gi))
                    throw std::invalid_argument("bivector entries must be theta-free");
        GradedPoly tt = GradedPoly::generator(ctx, s->conj_index(i)) *
                        GradedPoly::generator(ctx, s->conj_index(j));
        acc += v * tt;
    }
    return Multivector{s, acc};
}

LegendreShift legendre_shift(const Multivector& p, const std::vector<int>& fiber_base_indices) {
    const auto& s = *p.sctx;
    std::set<int> fiber(fiber_base_indices.begin(), fiber_base_indices.end());
    for (int a : fiber)
        if (a < 0 || a >= s.base_count())
            throw std::invalid_argument("fiber split names a non-base generator");

    std::vector<std::pair<std::string, int>> base;
    for (int a = 0; a < s.base_count(); ++a) {
        const auto& g = s.poly_context()->gen(a);
        base.emplace_back(g.name, fiber.count(a) ? 1 - g.degree : g.degree);
    }
    ShiftedCtxPtr shifted = ShiftedCotangentContext::make(base);
    const auto& tctx = shifted->poly_context();

    GradedPoly image = p.value.substitute(tctx, [&](int gi) {
        int a = gi < s.base_count() ? gi : gi - s.base_count();
        bool conj = s.is_conjugate(gi);
        if (fiber.count(a)) {
            // fiber pair trades places: y -> theta_y', theta_y -> y'
            int target = conj ? shifted->base_index(a) : shifted->conj_index(a);
            return GradedPoly::generator(tctx, target);
        }
        GradedPoly g = GradedPoly::generator(tctx, gi);
        return conj ? -g : g;
    });
    return LegendreShift{shifted, Multivector{shifted, std::move(image)}};
}

} // namespace gpa
