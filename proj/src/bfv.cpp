#include "gpa/bfv.hpp"

#include <map>

namespace gpa {

BfvContext BfvContext::make(const std::vector<std::string>& x_names,
                            const std::vector<std::string>& y_names,
                            const std::vector<std::tuple<int, int, GradedPoly>>& pi_entries,
                            const ContextPtr& base_ctx_for_entries) {
    if (y_names.empty()) throw std::invalid_argument("need at least one constraint");
    std::vector<std::pair<std::string, int>> base;
    for (const auto& n : x_names) base.emplace_back(n, 0);
    for (const auto& n : y_names) base.emplace_back(n, 0);
    for (const auto& n : y_names) base.emplace_back("b_" + n, -1);
    for (const auto& n : y_names) base.emplace_back("c_" + n, 1);

    BfvContext bc;
    bc.sctx_ = ShiftedCotangentContext::make(base);
    const auto& ctx = bc.sctx_->poly_context();
    const int nx = static_cast<int>(x_names.size());
    const int ny = static_cast<int>(y_names.size());
    for (int i = 0; i < nx; ++i) bc.x_.push_back(i);
    for (int i = 0; i < ny; ++i) bc.y_.push_back(nx + i);
    for (int i = 0; i < ny; ++i) bc.b_.push_back(nx + ny + i);
    for (int i = 0; i < ny; ++i) bc.c_.push_back(nx + 2 * ny + i);

    // base bivector carried over, plus the ghost pairing term; the sign makes
    // pois(b, c) = +1
    std::vector<std::tuple<int, int, GradedPoly>> entries;
    for (const auto& [i, j, v] : pi_entries) {
        GradedPoly lifted = v.substitute(ctx, [&](int gi) {
            const auto& name = base_ctx_for_entries->gen(gi).name;
            return GradedPoly::generator(ctx, ctx->require(name));
        });
        entries.emplace_back(i, j, lifted);
    }
    Multivector pi_base = bivector_from_matrix(bc.sctx_, entries);
    GradedPoly pairing(ctx);
    for (int mu = 0; mu < ny; ++mu)
        pairing -= GradedPoly::generator(ctx, bc.sctx_->conj_index(bc.b_[static_cast<size_t>(mu)])) *
                   GradedPoly::generator(ctx, bc.sctx_->conj_index(bc.c_[static_cast<size_t>(mu)]));
    bc.pi_ext_ = Multivector{bc.sctx_, pi_base.value + pairing};
    return bc;
}

GradedPoly BfvContext::lift_base(const GradedPoly& p) const {
    return p.substitute(ctx(), [&](int gi) {
        return GradedPoly::generator(ctx(), ctx()->require(p.context()->gen(gi).name));
    });
}

GradedPoly BfvContext::pois(const GradedPoly& f, const GradedPoly& g) const {
    return induced_bracket(pi_ext_, f, g);
}

GradedPoly BfvContext::koszul_delta0(const GradedPoly& p) const {
    GradedPoly out(ctx());
    for (int mu = 0; mu < n_constraints(); ++mu)
        out += GradedPoly::generator(ctx(), y(mu)) * p.left_derivative(b(mu));
    return out;
}

GradedPoly BfvContext::homotopy_h(const GradedPoly& p) const {
    GradedPoly out(ctx());
    for (int mu = 0; mu < n_constraints(); ++mu)
        out += GradedPoly::generator(ctx(), b(mu)) * p.left_derivative(y(mu));
    return out;
}

namespace {
int yb_weight(const Monomial& m, const std::vector<int>& ys, const std::vector<int>& bs) {
    int w = 0;
    for (const auto& [gi, e] : m.factors) {
        for (int y : ys)
            if (gi == y) w += e;
        for (int b : bs)
            if (gi == b) w += e;
    }
    return w;
}
} // namespace

GradedPoly BfvContext::homotopy_s(const GradedPoly& p) const {
    // split by the Euler weight E = b d/db + y d/dy and divide exactly
    std::map<int, GradedPoly> by_weight;
    for (const auto& [m, c] : p.terms()) {
        int w = yb_weight(m, y_, b_);
        auto [it, fresh] = by_weight.try_emplace(w, GradedPoly::zero(ctx()));
        it->second += GradedPoly::term(ctx(), m, c);
    }
    GradedPoly out(ctx());
    for (const auto& [w, part] : by_weight) {
        if (w == 0) continue;
        out += homotopy_h(part) * Rat(1, w);
    }
    return out;
}

GradedPoly BfvContext::pr_sector(const GradedPoly& p) const {
    GradedPoly out(ctx());
    for (const auto& [m, c] : p.terms())
        if (yb_weight(m, y_, b_) == 0) out += GradedPoly::term(ctx(), m, c);
    return out;
}

GradedPoly BfvContext::omega0() const {
    GradedPoly out(ctx());
    for (int mu = 0; mu < n_constraints(); ++mu)
        out += GradedPoly::generator(ctx(), y(mu)) * GradedPoly::generator(ctx(), c(mu));
    return out;
}

GradedPoly BfvContext::f0() const {
    GradedPoly o0 = omega0();
    return pois(o0, o0) * Rat(1, 2);
}

std::pair<int, int> BfvContext::ghost_counts(const Monomial& m) const {
    int nb = 0, nc = 0;
    for (const auto& [gi, e] : m.factors) {
        for (int b : b_)
            if (gi == b) nb += e;
        for (int c : c_)
            if (gi == c) nc += e;
    }
    return {nb, nc};
}

std::optional<GradedPoly> BfvContext::delta0_preimage(const GradedPoly& target) const {
    if (target.is_zero()) return GradedPoly::zero(ctx());
    // delta0 adds one y and removes one b, preserving everything else; the
    // candidate basis is finite once the target's even degree is bounded
    int deg = 0;
    if (!target.is_homogeneous(&deg)) {
        // solve each homogeneous piece separately
        GradedPoly acc(ctx());
        int lo = target.degree_min(), hi = target.degree_max();
        for (int d = lo; d <= hi; ++d) {
            GradedPoly part = target.homogeneous_part(d);
            if (part.is_zero()) continue;
            auto pre = delta0_preimage(part);
            if (!pre) return std::nullopt;
            acc += *pre;
        }
        return acc;
    }
    std::vector<int> gens;
    for (int i : x_) gens.push_back(i);
    for (int i : y_) gens.push_back(i);
    for (int i : b_) gens.push_back(i);
    for (int i : c_) gens.push_back(i);
    int cap = 0;
    for (const auto& [m, c] : target.terms())
        cap = std::max(cap, GradedPoly::even_degree(m, *ctx()));
    std::vector<Monomial> candidates = enumerate_monomials(ctx(), gens, cap, deg - 1);

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
    for (const auto& q : candidates) {
        GradedPoly img = koszul_delta0(GradedPoly::term(ctx(), q, Rat(1)));
        std::map<int, Rat> col;
        for (const auto& [m, c] : img.terms()) col[row_of(m)] = c;
        cols.push_back(std::move(col));
    }
    for (const auto& [m, c] : target.terms()) row_of(m);
    std::vector<Rat> rhs(rows.size(), Rat(0));
    for (const auto& [m, c] : target.terms()) rhs[static_cast<size_t>(pos[m])] = c;

    QMat sys(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, v] : cols[j]) sys.at(i, static_cast<int>(j)) = v;
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    GradedPoly pre(ctx());
    for (size_t j = 0; j < candidates.size(); ++j)
        if ((*sol)[j] != 0) pre += GradedPoly::term(ctx(), candidates[j], (*sol)[j]);
    return pre;
}

BfvChargeOutcome bfv_charge(const BfvContext& bc, int max_even_degree) {
    BfvChargeOutcome out;
    GradedPoly f0 = bc.f0();
    out.f0_certificate = f0;
    if (!f0.is_zero() && !bc.delta0_preimage(f0)) {
        out.coisotropic = false;
        return out;
    }
    out.coisotropic = true;

    BfvCharge ch;
    ch.truncation_bound = max_even_degree;
    ch.layers.push_back(bc.omega0());
    GradedPoly R = ch.layers[0];
    const int n = bc.n_constraints();
    for (int k = 0; k <= n + 1; ++k) {
        GradedPoly G = bc.pois(R, R);
        if (G.is_zero()) {
            ch.terminated = true;
            break;
        }
        GradedPoly next = -(bc.homotopy_s(G) * Rat(1, 2));
        if (next.is_zero()) break; // stalled: residual stays nonzero
        if (next.even_degree_max() > max_even_degree) break;
        ch.layers.push_back(next);
        R += next;
    }
    ch.omega = R;
    ch.residual = bc.pois(R, R);
    ch.terminated = ch.residual.is_zero();
    out.charge = std::move(ch);
    return out;
}

GradedPoly bfv_differential(const BfvContext& bc, const BfvCharge& charge, const GradedPoly& p) {
    return bc.pois(charge.omega, p);
}

CochainComplex bfv_complex(const BfvContext& bc, const BfvCharge& charge, int max_even_degree) {
    std::vector<int> gens;
    for (int i = 0; i < bc.n_x(); ++i) gens.push_back(bc.x(i));
    for (int i = 0; i < bc.n_constraints(); ++i) gens.push_back(bc.y(i));
    for (int i = 0; i < bc.n_constraints(); ++i) gens.push_back(bc.b(i));
    for (int i = 0; i < bc.n_constraints(); ++i) gens.push_back(bc.c(i));
    Truncation tr;
    tr.max_even_degree = max_even_degree;
    tr.eps_order = 0;
    tr.degree_min = -bc.n_constraints();
    tr.degree_max = bc.n_constraints();
    return make_operator_complex(bc.ctx(), gens, tr, [&](const GradedPoly& p) {
        return EpsSeries::constant(bfv_differential(bc, charge, p), 0);
    });
}

} // namespace gpa
