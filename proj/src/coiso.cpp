#include "gpa/coiso.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gpa {

CoisoSplitting CoisoSplitting::make(ShiftedCtxPtr sctx, std::vector<int> transverse) {
    CoisoSplitting s;
    s.sctx_ = std::move(sctx);
    std::sort(transverse.begin(), transverse.end());
    std::set<int> tset(transverse.begin(), transverse.end());
    for (int a : tset)
        if (a < 0 || a >= s.sctx_->base_count())
            throw std::invalid_argument("transverse index is not a base generator");
    s.transverse_ = std::move(transverse);
    for (int a = 0; a < s.sctx_->base_count(); ++a)
        if (!tset.count(a)) s.tangential_.push_back(a);
    s.verify_structure();
    return s;
}

bool CoisoSplitting::in_A(const GradedPoly& p) const {
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [gi, e] : m.factors) {
            int a = sctx_->is_conjugate(gi) ? sctx_->pair_of(gi) : gi;
            bool trans = std::binary_search(transverse_.begin(), transverse_.end(), a);
            if (sctx_->is_conjugate(gi) ? !trans : trans) return false;
        }
    }
    return true;
}

GradedPoly CoisoSplitting::project(const GradedPoly& p) const {
    const auto& ctx = sctx_->poly_context();
    std::map<int, GradedPoly> kill;
    for (int a : transverse_) kill.emplace(sctx_->base_index(a), GradedPoly::zero(ctx));
    for (int a : tangential_) kill.emplace(sctx_->conj_index(a), GradedPoly::zero(ctx));
    return p.eval(kill);
}

Multivector CoisoSplitting::include(const GradedPoly& a) const {
    check_same_context(sctx_->poly_context(), a.context());
    if (!in_A(a))
        throw std::invalid_argument("element depends on transverse generators or tangential conjugates");
    return Multivector{sctx_, a};
}

void CoisoSplitting::verify_structure() const {
    const auto& ctx = sctx_->poly_context();
    // Ideal generators of Ker P.
    std::vector<GradedPoly> ker_gens;
    for (int a : transverse_) ker_gens.push_back(GradedPoly::generator(ctx, sctx_->base_index(a)));
    for (int a : tangential_) ker_gens.push_back(GradedPoly::generator(ctx, sctx_->conj_index(a)));
    // Sample closure probes: pairwise brackets of ideal generators, plus the
    // generators multiplied by an A-side conjugate (where the pairing can fire).
    std::vector<GradedPoly> probes = ker_gens;
    for (const auto& g : ker_gens)
        for (int a : transverse_) probes.push_back(g * GradedPoly::generator(ctx, sctx_->conj_index(a)));
    for (const auto& u : probes)
        for (const auto& v : probes) {
            GradedPoly br = schouten(Multivector{sctx_, u}, Multivector{sctx_, v}).value;
            if (!project(br).is_zero())
                throw std::logic_error("Ker P is not closed under the bracket");
        }
    // P o i = id on a few A-elements.
    for (int a : tangential_) {
        GradedPoly g = GradedPoly::generator(ctx, sctx_->base_index(a));
        if (!(project(include(g).value) == g)) throw std::logic_error("P o i != id");
    }
    for (int a : transverse_) {
        GradedPoly g = GradedPoly::generator(ctx, sctx_->conj_index(a));
        if (!(project(include(g).value) == g)) throw std::logic_error("P o i != id");
    }
}

PInfinityStructure::PInfinityStructure(CoisoSplitting splitting, McElement pi, int arity_cap)
    : splitting_(std::move(splitting)), pi_(std::move(pi)), arity_cap_(arity_cap) {
    if (pi_.pi.sctx != splitting_.sctx())
        check_same_context(pi_.pi.sctx->poly_context(), splitting_.sctx()->poly_context());
    if (!pi_.certificate.is_zero())
        throw std::invalid_argument("pi is not Maurer-Cartan");
}

GradedPoly PInfinityStructure::lambda0() const { return splitting_.project(pi_.pi.value); }

GradedPoly PInfinityStructure::lambda(const std::vector<GradedPoly>& args) const {
    if (static_cast<int>(args.size()) > arity_cap_)
        throw std::invalid_argument("arity above configured cap");
    Multivector r = pi_.pi;
    for (const auto& a : args) r = schouten(r, splitting_.include(a));
    return splitting_.project(r.value);
}

CoisotropyCheck check_coisotropic(const PInfinityStructure& s) {
    CoisotropyCheck c;
    c.certificate = s.lambda0();
    c.coisotropic = c.certificate.is_zero();
    return c;
}

int koszul_permutation_sign(const std::vector<int>& perm, const std::vector<int>& parities) {
    // Sign accumulated by bubble-sorting (perm applied to 0..n-1) back to the
    // identity; each adjacent swap of odd-odd elements contributes -1.
    std::vector<int> p = perm;
    int sign = 1;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        for (size_t j = 0; j + 1 < p.size() - i; ++j)
            if (p[j] > p[j + 1]) {
                if (parities[static_cast<size_t>(p[j])] && parities[static_cast<size_t>(p[j + 1])])
                    sign = -sign;
                std::swap(p[j], p[j + 1]);
            }
    return sign;
}

GradedPoly l_infinity_relation(const PInfinityStructure& s, int n,
                               const std::vector<GradedPoly>& args) {
    if (static_cast<int>(args.size()) != n) throw std::invalid_argument("argument count != n");
    const auto& ctx = s.splitting().sctx()->poly_context();
    std::vector<int> shifted(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int d = 0;
        if (!args[static_cast<size_t>(i)].is_homogeneous(&d))
            throw std::invalid_argument("relation arguments must be homogeneous");
        shifted[static_cast<size_t>(i)] = ((d + 1) % 2 + 2) % 2;
    }

    GradedPoly acc(ctx);
    // Sum over (k, n-k) shuffles of lambda_{n-k+1}(lambda_k(...), ...).
    for (int k = 0; k <= n; ++k) {
        std::vector<int> sel(static_cast<size_t>(n), 0);
        std::fill(sel.begin(), sel.begin() + k, 1);
        // enumerate k-subsets in deterministic order
        std::vector<int> idx(static_cast<size_t>(k));
        std::function<void(int, int)> rec = [&](int start, int got) {
            if (got == k) {
                std::vector<int> perm;
                std::set<int> chosen(idx.begin(), idx.end());
                for (int i : idx) perm.push_back(i);
                for (int i = 0; i < n; ++i)
                    if (!chosen.count(i)) perm.push_back(i);
                int sign = koszul_permutation_sign(perm, shifted);
                std::vector<GradedPoly> inner_args;
                for (int i = 0; i < k; ++i) inner_args.push_back(args[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
                GradedPoly inner = s.lambda(inner_args);
                std::vector<GradedPoly> outer_args{inner};
                for (int i = k; i < n; ++i) outer_args.push_back(args[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
                GradedPoly term = s.lambda(outer_args);
                acc += sign > 0 ? term : -term;
                return;
            }
            for (int i = start; i < n; ++i) {
                idx[static_cast<size_t>(got)] = i;
                rec(i + 1, got + 1);
            }
        };
        if (k == 0) {
            // lambda_{n+1}(lambda_0, a_1..a_n); drops out in the flat case
            GradedPoly l0 = s.lambda0();
            if (!l0.is_zero()) {
                std::vector<GradedPoly> outer_args{l0};
                for (const auto& a : args) outer_args.push_back(a);
                acc += s.lambda(outer_args);
            }
        } else {
            rec(0, 0);
        }
    }
    return acc;
}

LInfinityReport l_infinity_check(const PInfinityStructure& s, int max_arity,
                                 const std::vector<GradedPoly>& samples) {
    LInfinityReport rep;
    std::function<void(int, std::vector<GradedPoly>&, size_t)> tuples =
        [&](int n, std::vector<GradedPoly>& cur, size_t start) {
            if (static_cast<int>(cur.size()) == n) {
                GradedPoly v = l_infinity_relation(s, n, cur);
                if (!v.is_zero()) {
                    rep.ok = false;
                    rep.violations.push_back({n, cur, v});
                }
                return;
            }
            for (size_t i = start; i < samples.size(); ++i) {
                cur.push_back(samples[i]);
                tuples(n, cur, i);
                cur.pop_back();
            }
        };
    for (int n = 0; n <= max_arity; ++n) {
        std::vector<GradedPoly> cur;
        tuples(n, cur, 0);
    }
    return rep;
}

} // namespace gpa
