#include "gpa/star.hpp"

#include <algorithm>
#include <sstream>

namespace gpa {

namespace {

GradedPoly apply_midx(const GradedPoly& p, const MIdx& a) {
    GradedPoly out = p;
    for (size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < a[i]; ++k) out = out.left_derivative(static_cast<int>(i));
    return out;
}

int midx_total(const MIdx& a) {
    int t = 0;
    for (int v : a) t += v;
    return t;
}

MIdx midx_add(const MIdx& a, const MIdx& b) {
    MIdx out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Rat binom(int n, int k) {
    Rat r(1);
    for (int i = 0; i < k; ++i) r = r * Rat(n - i) / Rat(i + 1);
    return r;
}

// all splits of a multi-index into `parts` ordered summands, with the
// multinomial coefficient
void midx_splits(const MIdx& a, int parts, std::vector<std::pair<std::vector<MIdx>, Rat>>& out) {
    std::vector<MIdx> cur(static_cast<size_t>(parts), MIdx(a.size(), 0));
    Rat coeff(1);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == a.size()) {
            out.emplace_back(cur, coeff);
            return;
        }
        // distribute a[pos] among the parts
        std::vector<int> take(static_cast<size_t>(parts), 0);
        std::function<void(int, int, Rat)> dist = [&](int part, int left, Rat c) {
            if (part == parts - 1) {
                take[static_cast<size_t>(part)] = left;
                for (int p = 0; p < parts; ++p) cur[static_cast<size_t>(p)][pos] = take[static_cast<size_t>(p)];
                Rat saved = coeff;
                coeff = coeff * c;
                rec(pos + 1);
                coeff = saved;
                return;
            }
            for (int t = 0; t <= left; ++t) {
                take[static_cast<size_t>(part)] = t;
                dist(part + 1, left - t, c * binom(left, t));
            }
        };
        dist(0, a[pos], Rat(1));
    };
    rec(0);
}

} // namespace

void BidiffOperator::add_term(const GradedPoly& coeff, const MIdx& left, const MIdx& right) {
    if (coeff.is_zero()) return;
    if (midx_total(left) == 0 || midx_total(right) == 0)
        throw std::invalid_argument("bidifferential term must differentiate both slots");
    auto key = std::make_pair(left, right);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedPoly BidiffOperator::apply(const GradedPoly& f, const GradedPoly& g) const {
    GradedPoly out(ctx_);
    for (const auto& [key, c] : terms_) out += c * apply_midx(f, key.first) * apply_midx(g, key.second);
    return out;
}

BidiffOperator BidiffOperator::operator+(const BidiffOperator& rhs) const {
    BidiffOperator out = *this;
    for (const auto& [key, c] : rhs.terms_) out.add_term(c, key.first, key.second);
    return out;
}

BidiffOperator BidiffOperator::operator*(const Rat& s) const {
    BidiffOperator out(ctx_);
    if (s == 0) return out;
    for (const auto& [key, c] : terms_) out.terms_[key] = c * s;
    return out;
}

void TridiffOperator::add_term(const GradedPoly& coeff, const MIdx& a, const MIdx& b, const MIdx& c) {
    if (coeff.is_zero()) return;
    std::array<MIdx, 3> key{a, b, c};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GradedPoly TridiffOperator::apply(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const {
    GradedPoly out(ctx_);
    for (const auto& [key, c] : terms_)
        out += c * apply_midx(f, key[0]) * apply_midx(g, key[1]) * apply_midx(h, key[2]);
    return out;
}

TridiffOperator TridiffOperator::operator+(const TridiffOperator& rhs) const {
    TridiffOperator out = *this;
    for (const auto& [key, c] : rhs.terms_) out.add_term(c, key[0], key[1], key[2]);
    return out;
}

TridiffOperator TridiffOperator::operator-(const TridiffOperator& rhs) const {
    return *this + rhs * Rat(-1);
}

TridiffOperator TridiffOperator::operator*(const Rat& s) const {
    TridiffOperator out(ctx_);
    if (s == 0) return out;
    for (const auto& [key, c] : terms_) out.terms_[key] = c * s;
    return out;
}

TridiffOperator hochschild_delta(const BidiffOperator& b) {
    const auto& ctx = b.context();
    const size_t n = static_cast<size_t>(ctx->size());
    TridiffOperator out(ctx);
    MIdx zero(n, 0);
    for (const auto& [key, c] : b.terms()) {
        const auto& [alpha, beta] = key;
        out.add_term(c, zero, alpha, beta); // f B(g,h)
        // -B(fg, h)
        std::vector<std::pair<std::vector<MIdx>, Rat>> splits;
        midx_splits(alpha, 2, splits);
        for (const auto& [parts, mult] : splits) out.add_term(c * (-mult), parts[0], parts[1], beta);
        // +B(f, gh)
        splits.clear();
        midx_splits(beta, 2, splits);
        for (const auto& [parts, mult] : splits) out.add_term(c * mult, alpha, parts[0], parts[1]);
        out.add_term(-c, alpha, beta, zero); // -B(f,g) h
    }
    return out;
}

TridiffOperator compose_left(const BidiffOperator& outer, const BidiffOperator& inner) {
    const auto& ctx = outer.context();
    TridiffOperator out(ctx);
    for (const auto& [okey, oc] : outer.terms()) {
        const auto& [gamma, delta] = okey;
        std::vector<std::pair<std::vector<MIdx>, Rat>> splits;
        midx_splits(gamma, 3, splits);
        for (const auto& [parts, mult] : splits) {
            for (const auto& [ikey, ic] : inner.terms()) {
                GradedPoly dc = apply_midx(ic, parts[0]);
                if (dc.is_zero()) continue;
                out.add_term(oc * dc * mult, midx_add(ikey.first, parts[1]),
                             midx_add(ikey.second, parts[2]), delta);
            }
        }
    }
    return out;
}

TridiffOperator compose_right(const BidiffOperator& outer, const BidiffOperator& inner) {
    const auto& ctx = outer.context();
    TridiffOperator out(ctx);
    for (const auto& [okey, oc] : outer.terms()) {
        const auto& [gamma, delta] = okey;
        std::vector<std::pair<std::vector<MIdx>, Rat>> splits;
        midx_splits(delta, 3, splits);
        for (const auto& [parts, mult] : splits) {
            for (const auto& [ikey, ic] : inner.terms()) {
                GradedPoly dc = apply_midx(ic, parts[0]);
                if (dc.is_zero()) continue;
                out.add_term(oc * dc * mult, gamma, midx_add(ikey.first, parts[1]),
                             midx_add(ikey.second, parts[2]));
            }
        }
    }
    return out;
}

PoissonMatrix PoissonMatrix::make(ContextPtr ctx,
                                  const std::vector<std::tuple<int, int, GradedPoly>>& upper) {
    for (const auto& g : ctx->gens())
        if (g.odd()) throw std::invalid_argument("star products live on even contexts");
    PoissonMatrix pm;
    pm.ctx = ctx;
    const int n = ctx->size();
    pm.entry.assign(static_cast<size_t>(n),
                    std::vector<GradedPoly>(static_cast<size_t>(n), GradedPoly::zero(ctx)));
    for (const auto& [i, j, v] : upper) {
        if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("bad pi entry");
        check_same_context(ctx, v.context());
        pm.entry[static_cast<size_t>(i)][static_cast<size_t>(j)] += v;
        pm.entry[static_cast<size_t>(j)][static_cast<size_t>(i)] -= v;
    }
    return pm;
}

GradedPoly PoissonMatrix::bracket(const GradedPoly& f, const GradedPoly& g) const {
    GradedPoly out(ctx);
    const int n = ctx->size();
    for (int i = 0; i < n; ++i) {
        GradedPoly fi = f.left_derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            const GradedPoly& pij = entry[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (pij.is_zero()) continue;
            out += pij * fi * g.left_derivative(j);
        }
    }
    return out;
}

BidiffOperator PoissonMatrix::bracket_operator() const {
    BidiffOperator op(ctx);
    const int n = ctx->size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const GradedPoly& pij = entry[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (pij.is_zero()) continue;
            MIdx l(static_cast<size_t>(n), 0), r(static_cast<size_t>(n), 0);
            l[static_cast<size_t>(i)] = 1;
            r[static_cast<size_t>(j)] = 1;
            op.add_term(pij, l, r);
        }
    return op;
}

GradedPoly PoissonMatrix::jacobiator(const GradedPoly& f, const GradedPoly& g,
                                     const GradedPoly& h) const {
    return bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
}

bool PoissonMatrix::is_jacobi(int) const {
    const int n = ctx->size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (!jacobiator(GradedPoly::generator(ctx, i), GradedPoly::generator(ctx, j),
                                GradedPoly::generator(ctx, k))
                         .is_zero())
                    return false;
    return true;
}

std::array<BidiffOperator, kStarTemplateCount> star_templates(const PoissonMatrix& pm) {
    const auto& ctx = pm.ctx;
    const int n = ctx->size();
    auto e2 = [&](int i, int k) {
        MIdx m(static_cast<size_t>(n), 0);
        m[static_cast<size_t>(i)] += 1;
        m[static_cast<size_t>(k)] += 1;
        return m;
    };
    auto e1 = [&](int i) {
        MIdx m(static_cast<size_t>(n), 0);
        m[static_cast<size_t>(i)] = 1;
        return m;
    };
    auto w = [&](int i, int j) -> const GradedPoly& { return pm.entry[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
    auto dw = [&](int l, int i, int j) { return w(i, j).left_derivative(l); };

    std::array<BidiffOperator, kStarTemplateCount> T{
        BidiffOperator(ctx), BidiffOperator(ctx), BidiffOperator(ctx),
        BidiffOperator(ctx), BidiffOperator(ctx), BidiffOperator(ctx)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (w(i, j).is_zero()) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    // T0: pi pi (d_i d_k | d_j d_l)
                    GradedPoly c0 = w(i, j) * w(k, l);
                    if (!c0.is_zero()) T[0].add_term(c0, e2(i, k), e2(j, l));
                    // T1: pi d_j pi (d_i d_k | d_l)
                    GradedPoly c1 = w(i, j) * dw(j, k, l);
                    if (!c1.is_zero()) {
                        T[1].add_term(c1, e2(i, k), e1(l));
                        // T3 mirror: (d_k | d_i d_l)
                        T[3].add_term(c1, e1(k), e2(i, l));
                    }
                    // T2: tadpole pi (div pi) (d_i d_l | d_j)
                    GradedPoly c2 = w(i, j) * dw(k, k, l);
                    if (!c2.is_zero()) {
                        T[2].add_term(c2, e2(i, l), e1(j));
                        T[4].add_term(c2, e1(j), e2(i, l));
                    }
                }
        }
    // T5: two-wheel (d_b pi^{ia})(d_a pi^{jb}) (d_i | d_j)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GradedPoly c(ctx);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) c += dw(b, i, a) * dw(a, j, b);
            if (!c.is_zero()) T[5].add_term(c, e1(i), e1(j));
        }
    return T;
}

// canonical template weights; derived once by intersecting the per-pi
// associativity families over the corpus, regenerated by the weight tests
const std::array<Rat, kStarTemplateCount> kCanonicalStarWeights = {
    Rat(1, 2), Rat(1, 3), Rat(0), Rat(-1, 3), Rat(0), Rat(0)};

bool WeightSolution::contains(const std::vector<Rat>& w) const {
    if (!solvable) return false;
    std::vector<Rat> diff(w.size());
    for (size_t i = 0; i < w.size(); ++i) diff[i] = w[i] - particular[i];
    if (kernel.empty()) {
        for (const auto& d : diff)
            if (d != 0) return false;
        return true;
    }
    return in_span(kernel, diff, static_cast<int>(w.size()));
}

WeightSolution derive_order2_weights(const PoissonMatrix& pm) {
    auto b1 = pm.bracket_operator();
    TridiffOperator rhs = compose_left(b1, b1) - compose_right(b1, b1);
    auto T = star_templates(pm);
    std::vector<TridiffOperator> dT;
    for (const auto& t : T) dT.push_back(hochschild_delta(t));

    // rows: (tri multi-index key, monomial) pairs; columns: templates
    std::map<std::pair<std::array<MIdx, 3>, Monomial>, int> row_of;
    auto get_row = [&](const std::array<MIdx, 3>& key, const Monomial& m) {
        auto it = row_of.find({key, m});
        if (it != row_of.end()) return it->second;
        int id = static_cast<int>(row_of.size());
        row_of.emplace(std::make_pair(key, m), id);
        return id;
    };
    std::vector<std::map<int, Rat>> cols(kStarTemplateCount);
    for (int t = 0; t < kStarTemplateCount; ++t)
        for (const auto& [key, c] : dT[static_cast<size_t>(t)].terms())
            for (const auto& [m, v] : c.terms()) cols[static_cast<size_t>(t)][get_row(key, m)] = v;
    std::map<int, Rat> rhs_col;
    for (const auto& [key, c] : rhs.terms())
        for (const auto& [m, v] : c.terms()) rhs_col[get_row(key, m)] = v;

    const int rows = static_cast<int>(row_of.size());
    QMat sys(rows, kStarTemplateCount);
    for (int t = 0; t < kStarTemplateCount; ++t)
        for (const auto& [i, v] : cols[static_cast<size_t>(t)]) sys.at(i, t) = v;
    std::vector<Rat> b(static_cast<size_t>(rows), Rat(0));
    for (const auto& [i, v] : rhs_col) b[static_cast<size_t>(i)] = v;

    WeightSolution sol;
    auto x = solve(sys, b);
    if (!x) return sol;
    sol.solvable = true;
    sol.particular = *x;
    sol.kernel = kernel_basis(sys);
    return sol;
}

StarProduct::StarProduct(PoissonMatrix pi, int order, BidiffOperator b1, BidiffOperator b2)
    : pi_(std::move(pi)), order_(order), b1_(std::move(b1)), b2_(std::move(b2)) {
    if (order_ < 2 || order_ > 3) throw std::invalid_argument("supported star orders: 2 or 3");
    certified_ = associativity_defect().is_zero();
    if (order_ == 3 && !b3_) certified_ = false; // third order needs user data
}

StarProduct StarProduct::with_default_weights(const PoissonMatrix& pi, int order) {
    auto T = star_templates(pi);
    BidiffOperator b2(pi.ctx);
    for (int t = 0; t < kStarTemplateCount; ++t) b2 = b2 + T[static_cast<size_t>(t)] * kCanonicalStarWeights[static_cast<size_t>(t)];
    return StarProduct(pi, order, pi.bracket_operator(), std::move(b2));
}

StarProduct StarProduct::with_derived_weights(const PoissonMatrix& pi, int order) {
    WeightSolution sol = derive_order2_weights(pi);
    if (!sol.solvable)
        throw std::invalid_argument("order-2 associativity system infeasible (ansatz/Jacobi failure)");
    auto T = star_templates(pi);
    BidiffOperator b2(pi.ctx);
    for (int t = 0; t < kStarTemplateCount; ++t)
        b2 = b2 + T[static_cast<size_t>(t)] * sol.particular[static_cast<size_t>(t)];
    return StarProduct(pi, order, pi.bracket_operator(), std::move(b2));
}

void StarProduct::set_b3(BidiffOperator b3) {
    b3_ = std::move(b3);
    // certification of the eps^3 layer
    TridiffOperator defect3 = compose_left(b1_, b2_) + compose_left(b2_, b1_) -
                              compose_right(b1_, b2_) - compose_right(b2_, b1_) -
                              hochschild_delta(*b3_);
    certified_ = associativity_defect().is_zero() && defect3.is_zero();
}

TridiffOperator StarProduct::associativity_defect() const {
    return compose_left(b1_, b1_) - compose_right(b1_, b1_) - hochschild_delta(b2_);
}

EpsSeries StarProduct::star(const EpsSeries& f, const EpsSeries& g) const {
    check_same_context(pi_.ctx, f.context());
    if (f.order() != order_ || g.order() != order_) throw std::invalid_argument("eps order mismatch");
    EpsSeries out(pi_.ctx, order_);
    for (int n = 0; n <= order_; ++n) {
        GradedPoly acc(pi_.ctx);
        for (int k = 0; k <= n; ++k)
            for (int i = 0; i + k <= n; ++i) {
                const GradedPoly& fi = f.coeff(i);
                const GradedPoly& gj = g.coeff(n - k - i);
                if (fi.is_zero() || gj.is_zero()) continue;
                if (k == 0) acc += fi * gj;
                else if (k == 1) acc += b1_.apply(fi, gj);
                else if (k == 2) acc += b2_.apply(fi, gj);
                else if (k == 3 && b3_) acc += b3_->apply(fi, gj);
            }
        out += EpsSeries::constant(acc, order_).shifted(n);
    }
    return out;
}

EpsSeries StarProduct::star(const GradedPoly& f, const GradedPoly& g) const {
    return star(EpsSeries::constant(f, order_), EpsSeries::constant(g, order_));
}

EpsSeries StarProduct::commutator(const EpsSeries& f, const EpsSeries& g) const {
    return star(f, g) - star(g, f);
}

EpsSeries StarProduct::associator(const EpsSeries& f, const EpsSeries& g, const EpsSeries& h) const {
    return star(star(f, g), h) - star(f, star(g, h));
}

EpsSeries StarProduct::associator(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const {
    return associator(EpsSeries::constant(f, order_), EpsSeries::constant(g, order_),
                      EpsSeries::constant(h, order_));
}

// ---- A-infinity ---------------------------------------------------------

AInfinityTruncation AInfinityTruncation::from_star(const StarProduct& s) {
    AInfinityTruncation t;
    t.ctx = s.pi().ctx;
    t.eps_order = s.order();
    t.arity_cap = 3;
    t.mu0 = EpsSeries(t.ctx, t.eps_order);
    const int N = t.eps_order;
    ContextPtr ctx = t.ctx;
    t.mu1 = EpsOperator{1, [ctx, N](std::span<const GradedPoly>) { return EpsSeries(ctx, N); }};
    t.mu2 = EpsOperator{2, [s](std::span<const GradedPoly> a) { return s.star(a[0], a[1]); }};
    t.mu3 = EpsOperator{3, [ctx, N](std::span<const GradedPoly>) { return EpsSeries(ctx, N); }};
    return t;
}

namespace {

int homog_degree(const GradedPoly& p) {
    int d = 0;
    if (!p.is_homogeneous(&d)) throw std::invalid_argument("argument must be homogeneous");
    return d;
}

// suspension sign translating mu_k into the bar-convention b_k
int bar_sign(const std::vector<int>& degs) {
    const int k = static_cast<int>(degs.size());
    long e = 0;
    for (int i = 0; i < k; ++i) e += static_cast<long>(k - 1 - i) * degs[static_cast<size_t>(i)];
    return e % 2 == 0 ? 1 : -1;
}

const EpsOperator& mu_of(const AInfinityTruncation& t, int arity) {
    switch (arity) {
        case 1: return t.mu1;
        case 2: return t.mu2;
        case 3: return t.mu3;
        default: throw std::logic_error("arity out of range");
    }
}

// mu_k on series arguments, extended multilinearly over eps
EpsSeries apply_series(const AInfinityTruncation& t, int arity, const std::vector<EpsSeries>& args) {
    const int N = t.eps_order;
    EpsSeries out(t.ctx, N);
    std::vector<int> pick(static_cast<size_t>(arity), 0);
    std::function<void(int, int)> rec = [&](int slot, int used) {
        if (slot == arity) {
            std::vector<GradedPoly> a;
            for (int i = 0; i < arity; ++i) a.push_back(args[static_cast<size_t>(i)].coeff(pick[static_cast<size_t>(i)]));
            bool zero = false;
            for (const auto& p : a) zero = zero || p.is_zero();
            if (!zero) out += mu_of(t, arity).eval(a).shifted(used);
            return;
        }
        for (int m = 0; m + used <= N; ++m) {
            pick[static_cast<size_t>(slot)] = m;
            rec(slot + 1, used + m);
        }
    };
    rec(0, 0);
    return out;
}

// b_k on series arguments with declared slot degrees
EpsSeries b_eval(const AInfinityTruncation& t, const std::vector<EpsSeries>& args,
                 const std::vector<int>& degs) {
    const int arity = static_cast<int>(args.size());
    if (arity == 0) return t.mu0;
    if (arity > t.arity_cap) return EpsSeries(t.ctx, t.eps_order); // capped: higher operations vanish
    EpsSeries v = apply_series(t, arity, args);
    return bar_sign(degs) > 0 ? v : -v;
}

} // namespace

EpsSeries a_infinity_relation(const AInfinityTruncation& t, int n,
                              const std::vector<GradedPoly>& args) {
    if (static_cast<int>(args.size()) != n) throw std::invalid_argument("argument count != n");
    std::vector<int> degs;
    std::vector<EpsSeries> series;
    for (const auto& a : args) {
        degs.push_back(homog_degree(a));
        series.push_back(EpsSeries::constant(a, t.eps_order));
    }
    EpsSeries acc(t.ctx, t.eps_order);
    for (int r = 0; r <= n; ++r)
        for (int s = 0; n - r - s >= 0; ++s) {
            const int tail = n - r - s;
            // inner b_s on args[r..r+s), outer arity r+1+tail
            if (s > t.arity_cap || r + 1 + tail > t.arity_cap) {
                if (s != 0 || r + 1 + tail > t.arity_cap) continue;
            }
            std::vector<EpsSeries> inner_args(series.begin() + r, series.begin() + r + s);
            std::vector<int> inner_degs(degs.begin() + r, degs.begin() + r + s);
            EpsSeries inner = b_eval(t, inner_args, inner_degs);
            int inner_deg = 2 - s;
            for (int i = r; i < r + s; ++i) inner_deg += degs[static_cast<size_t>(i)];
            std::vector<EpsSeries> outer_args(series.begin(), series.begin() + r);
            std::vector<int> outer_degs(degs.begin(), degs.begin() + r);
            outer_args.push_back(inner);
            outer_degs.push_back(inner_deg);
            for (int i = r + s; i < n; ++i) {
                outer_args.push_back(series[static_cast<size_t>(i)]);
                outer_degs.push_back(degs[static_cast<size_t>(i)]);
            }
            EpsSeries term = b_eval(t, outer_args, outer_degs);
            long prefix = 0;
            for (int i = 0; i < r; ++i) prefix += degs[static_cast<size_t>(i)] + 1;
            acc += prefix % 2 == 0 ? term : -term;
        }
    return acc;
}

AInfinityTruncation gauge_shift(const AInfinityTruncation& t, const EpsSeries& gamma) {
    if (!gamma.divisible_by_eps(1)) throw std::invalid_argument("gamma must be of order eps");
    for (int n = 0; n <= gamma.order(); ++n) {
        const GradedPoly& c = gamma.coeff(n);
        int d = 0;
        if (!c.is_zero() && (!c.is_homogeneous(&d) || d != 1))
            throw std::invalid_argument("gamma must have degree 1");
    }
    AInfinityTruncation out = t;
    auto shifted_mu = [t, gamma](int k) {
        return [t, gamma, k](std::span<const GradedPoly> a) {
            std::vector<EpsSeries> base;
            std::vector<int> degs;
            for (const auto& p : a) {
                base.push_back(EpsSeries::constant(p, t.eps_order));
                degs.push_back(homog_degree(p));
            }
            EpsSeries acc(t.ctx, t.eps_order);
            // distribute j gamma-insertions into the k+1 gaps
            std::vector<int> gaps(static_cast<size_t>(k) + 1, 0);
            std::function<void(int, int)> rec = [&](int gap, int placed) {
                if (gap == k + 1) {
                    std::vector<EpsSeries> tuple;
                    std::vector<int> tdegs;
                    for (int g = 0; g <= k; ++g) {
                        for (int c = 0; c < gaps[static_cast<size_t>(g)]; ++c) {
                            tuple.push_back(gamma);
                            tdegs.push_back(1);
                        }
                        if (g < k) {
                            tuple.push_back(base[static_cast<size_t>(g)]);
                            tdegs.push_back(degs[static_cast<size_t>(g)]);
                        }
                    }
                    EpsSeries v = b_eval(t, tuple, tdegs);
                    int outer = bar_sign(degs);
                    acc += (outer > 0) ? v : -v;
                    return;
                }
                for (int j = 0; placed + j <= t.eps_order && k + placed + j <= t.arity_cap; ++j) {
                    gaps[static_cast<size_t>(gap)] = j;
                    rec(gap + 1, placed + j);
                }
                gaps[static_cast<size_t>(gap)] = 0;
            };
            rec(0, 0);
            return acc;
        };
    };
    // k = 0: twisted curvature
    {
        std::vector<GradedPoly> none;
        auto f = shifted_mu(0);
        out.mu0 = f(std::span<const GradedPoly>(none));
    }
    out.mu1 = EpsOperator{1, shifted_mu(1)};
    out.mu2 = EpsOperator{2, shifted_mu(2)};
    out.mu3 = EpsOperator{3, shifted_mu(3)};
    return out;
}

CurvatureKill kill_curvature(const AInfinityTruncation& t, const std::vector<int>& gens,
                             int even_cap) {
    CurvatureKill out;
    const int N = t.eps_order;
    if (!t.mu0.divisible_by_eps(2))
        throw std::invalid_argument("curvature must be of order eps^2 for a flat classical limit");

    std::vector<Monomial> cand = enumerate_monomials(t.ctx, gens, even_cap, 1);
    std::vector<GradedPoly> cand_polys;
    for (const auto& m : cand) cand_polys.push_back(GradedPoly::term(t.ctx, m, Rat(1)));

    EpsSeries gamma(t.ctx, N);
    for (int order = 2; order <= N; ++order) {
        EpsSeries hatm0 = gauge_shift(t, gamma).mu0;
        GradedPoly residual = hatm0.coeff(order);
        if (residual.is_zero()) continue;
        // affine solve for the gamma coefficient at eps^{order-1}
        std::map<Monomial, int> row;
        auto row_of = [&](const Monomial& m) {
            auto it = row.find(m);
            if (it != row.end()) return it->second;
            int id = static_cast<int>(row.size());
            row.emplace(m, id);
            return id;
        };
        std::vector<std::map<int, Rat>> cols;
        for (const auto& cp : cand_polys) {
            EpsSeries trial = gamma + EpsSeries::constant(cp, N).shifted(order - 1);
            GradedPoly delta = gauge_shift(t, trial).mu0.coeff(order) - residual;
            std::map<int, Rat> col;
            for (const auto& [m, c] : delta.terms()) col[row_of(m)] = c;
            cols.push_back(std::move(col));
        }
        for (const auto& [m, c] : residual.terms()) row_of(m);
        QMat sys(static_cast<int>(row.size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, v] : cols[j]) sys.at(i, static_cast<int>(j)) = v;
        std::vector<Rat> rhs(row.size(), Rat(0));
        for (const auto& [m, c] : residual.terms()) rhs[static_cast<size_t>(row[m])] = -c;
        auto sol = solve(sys, rhs);
        if (!sol) {
            out.ok = false;
            out.obstruction_order = order;
            out.obstruction_class = residual;
            return out;
        }
        GradedPoly g(t.ctx);
        for (size_t j = 0; j < cand_polys.size(); ++j)
            if ((*sol)[j] != 0) g += cand_polys[j] * (*sol)[j];
        gamma += EpsSeries::constant(g, N).shifted(order - 1);
    }
    if (!gauge_shift(t, gamma).mu0.is_zero())
        throw std::logic_error("curvature kill did not close");
    out.ok = true;
    out.gamma = gamma;
    return out;
}

// ---- Casimir pipeline ---------------------------------------------------

bool is_casimir(const PoissonMatrix& pi, const GradedPoly& phi) {
    for (int i = 0; i < pi.ctx->size(); ++i)
        if (!pi.bracket(phi, GradedPoly::generator(pi.ctx, i)).is_zero()) return false;
    return true;
}

namespace {

std::vector<Monomial> even_monomials_upto(const ContextPtr& ctx, int cap) {
    std::vector<int> gens;
    for (int i = 0; i < ctx->size(); ++i) gens.push_back(i);
    std::vector<Monomial> out;
    for (int d = 0; d <= cap; ++d) {
        // all monomials of exact even-degree d (Z-degree 0 contexts only)
        std::vector<Monomial> layer;
        Monomial cur;
        std::function<void(int, int)> rec = [&](int gi, int used) {
            if (gi == ctx->size()) {
                if (used == d) layer.push_back(cur);
                return;
            }
            for (int e = 0; used + e <= d; ++e) {
                if (e > 0) cur.factors.emplace_back(gi, e);
                rec(gi + 1, used + e);
                if (e > 0) cur.factors.pop_back();
            }
        };
        rec(0, 0);
        std::sort(layer.begin(), layer.end());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace

CentralLift central_lift(const StarProduct& s, const GradedPoly& casimir, int even_cap) {
    CentralLift out;
    if (!is_casimir(s.pi(), casimir)) {
        out.reason = "not a Casimir element";
        return out;
    }
    const int N = s.order();
    const auto& ctx = s.pi().ctx;
    std::vector<Monomial> basis = even_monomials_upto(ctx, even_cap);
    std::vector<GradedPoly> probes;
    for (const auto& m : basis) probes.push_back(GradedPoly::term(ctx, m, Rat(1)));

    // unknowns: coefficients of t_n, n = 2..N, over the monomial basis
    std::vector<Monomial> cand = even_monomials_upto(ctx, even_cap);
    const int per_order = static_cast<int>(cand.size());
    const int unknowns = per_order * std::max(0, N - 1);

    EpsSeries t0 = EpsSeries::constant(casimir, N);
    // affine system keyed by (probe, eps order, monomial)
    std::map<std::tuple<int, int, Monomial>, int> row;
    auto row_of = [&](int p, int n, const Monomial& m) {
        auto key = std::make_tuple(p, n, m);
        auto it = row.find(key);
        if (it != row.end()) return it->second;
        int id = static_cast<int>(row.size());
        row.emplace(key, id);
        return id;
    };
    std::vector<std::map<int, Rat>> cols(static_cast<size_t>(unknowns));
    std::map<int, Rat> base_col;
    for (int p = 0; p < static_cast<int>(probes.size()); ++p) {
        EpsSeries c0 = s.commutator(t0, EpsSeries::constant(probes[static_cast<size_t>(p)], N));
        for (int n = 0; n <= N; ++n)
            for (const auto& [m, v] : c0.coeff(n).terms()) base_col[row_of(p, n, m)] = v;
    }
    for (int ord = 2; ord <= N; ++ord)
        for (int j = 0; j < per_order; ++j) {
            EpsSeries tj = EpsSeries::constant(GradedPoly::term(ctx, cand[static_cast<size_t>(j)], Rat(1)), N)
                               .shifted(ord);
            int col_id = (ord - 2) * per_order + j;
            for (int p = 0; p < static_cast<int>(probes.size()); ++p) {
                EpsSeries cj = s.commutator(tj, EpsSeries::constant(probes[static_cast<size_t>(p)], N));
                for (int n = 0; n <= N; ++n)
                    for (const auto& [m, v] : cj.coeff(n).terms())
                        cols[static_cast<size_t>(col_id)][row_of(p, n, m)] = v;
            }
        }
    QMat sys(static_cast<int>(row.size()), unknowns);
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, v] : cols[j]) sys.at(i, static_cast<int>(j)) = v;
    std::vector<Rat> rhs(row.size(), Rat(0));
    for (const auto& [i, v] : base_col) rhs[static_cast<size_t>(i)] = -v;
    auto sol = solve(sys, rhs);
    if (!sol) {
        out.reason = "no central lift within the polynomial degree cap";
        return out;
    }
    EpsSeries t = t0;
    for (int ord = 2; ord <= N; ++ord) {
        GradedPoly tn(ctx);
        for (int j = 0; j < per_order; ++j) {
            const Rat& v = (*sol)[static_cast<size_t>((ord - 2) * per_order + j)];
            if (v != 0) tn += GradedPoly::term(ctx, cand[static_cast<size_t>(j)], v);
        }
        t += EpsSeries::constant(tn, N).shifted(ord);
    }
    // verification sweep, independent of the solver path
    for (const auto& f : probes)
        if (!s.commutator(t, EpsSeries::constant(f, N)).is_zero()) {
            out.reason = "solver produced a non-central lift";
            return out;
        }
    out.ok = true;
    out.lift = t;
    return out;
}

QuotientPresentation casimir_quotient(const StarProduct& s, const std::vector<EpsSeries>& lifts,
                                      int even_cap) {
    QuotientPresentation q;
    std::ostringstream detail;
    const int N = s.order();
    const auto& ctx = s.pi().ctx;
    std::vector<Monomial> mono = even_monomials_upto(ctx, even_cap); // degree-then-lex
    std::map<Monomial, int> mono_pos;
    for (size_t i = 0; i < mono.size(); ++i) mono_pos[mono[i]] = static_cast<int>(i);
    const int M = static_cast<int>(mono.size());
    const int dim = M * (N + 1);

    auto expand = [&](const EpsSeries& v) {
        std::vector<Rat> out(static_cast<size_t>(dim), Rat(0));
        for (int n = 0; n <= N; ++n)
            for (const auto& [m, c] : v.coeff(n).terms()) {
                auto it = mono_pos.find(m);
                if (it == mono_pos.end()) throw std::invalid_argument("element above the degree cap");
                out[static_cast<size_t>(it->second) * (N + 1) + n] = c;
            }
        return out;
    };
    auto collapse = [&](const std::vector<Rat>& v) {
        std::vector<GradedPoly> coeffs(static_cast<size_t>(N) + 1, GradedPoly::zero(ctx));
        for (int i = 0; i < M; ++i)
            for (int n = 0; n <= N; ++n) {
                const Rat& c = v[static_cast<size_t>(i) * (N + 1) + n];
                if (c != 0) coeffs[static_cast<size_t>(n)] += GradedPoly::term(ctx, mono[static_cast<size_t>(i)], c);
            }
        return EpsSeries::from_coeffs(std::move(coeffs));
    };

    // centrality and pairwise commutation of the lifts
    for (const auto& t : lifts) {
        for (const auto& m : mono) {
            GradedPoly f = GradedPoly::term(ctx, m, Rat(1));
            if (!s.commutator(t, EpsSeries::constant(f, N)).is_zero())
                throw std::invalid_argument("lift is not central within the truncation");
        }
        for (const auto& u : lifts)
            if (!(s.star(t, u) - s.star(u, t)).is_zero())
                throw std::invalid_argument("lifts do not commute");
    }

    // ideal span: eps-shifted star products t * m that stay within the cap
    std::vector<std::vector<Rat>> ideal_rows;
    for (const auto& t : lifts) {
        int t_deg = 0;
        for (int n = 0; n <= N; ++n) t_deg = std::max(t_deg, t.coeff(n).is_zero() ? 0 : t.coeff(n).even_degree_max());
        for (const auto& m : mono) {
            if (GradedPoly::even_degree(m, *ctx) + t_deg > even_cap) continue;
            EpsSeries p = s.star(t, EpsSeries::constant(GradedPoly::term(ctx, m, Rat(1)), N));
            bool fits = true;
            for (int n = 0; n <= N && fits; ++n)
                if (!p.coeff(n).is_zero() && p.coeff(n).even_degree_max() > even_cap) fits = false;
            if (!fits) continue;
            for (int k = 0; k <= N; ++k) ideal_rows.push_back(expand(p.shifted(k)));
        }
    }

    // echelonize the ideal and build the reduction map
    QMat ideal(static_cast<int>(ideal_rows.size()), dim);
    for (size_t i = 0; i < ideal_rows.size(); ++i)
        for (int j = 0; j < dim; ++j) ideal.at(static_cast<int>(i), j) = ideal_rows[i][static_cast<size_t>(j)];
    auto pivots = ideal.rref();
    std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;

    auto reduce = [&](std::vector<Rat> v) {
        for (size_t r = 0; r < pivots.size(); ++r) {
            int p = pivots[r];
            const Rat& c = v[static_cast<size_t>(p)];
            if (c == 0) continue;
            Rat f = c;
            for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] -= f * ideal.at(static_cast<int>(r), j);
        }
        return v;
    };

    // basis monomials: all eps-slots free
    bool free_module = true;
    for (int i = 0; i < M; ++i) {
        bool any = false, all = true;
        for (int n = 0; n <= N; ++n) {
            bool piv = is_pivot[static_cast<size_t>(i) * (N + 1) + n];
            any = any || piv;
            all = all && piv;
        }
        if (any && !all) free_module = false;
        if (!any) q.basis.push_back(mono[static_cast<size_t>(i)]);
    }
    if (!free_module) detail << "warning: quotient has eps-torsion within the truncation\n";

    // star table on basis classes where the plain product stays in the window
    q.associative = true;
    q.projection_morphism = true;
    const int B = static_cast<int>(q.basis.size());
    auto deg_of = [&](const Monomial& m) { return GradedPoly::even_degree(m, *ctx); };
    for (int i = 0; i < B; ++i)
        for (int j = 0; j < B; ++j) {
            if (deg_of(q.basis[static_cast<size_t>(i)]) + deg_of(q.basis[static_cast<size_t>(j)]) > even_cap) continue;
            EpsSeries p = s.star(GradedPoly::term(ctx, q.basis[static_cast<size_t>(i)], Rat(1)),
                                 GradedPoly::term(ctx, q.basis[static_cast<size_t>(j)], Rat(1)));
            q.table[{i, j}] = collapse(reduce(expand(p)));
        }

    // associativity of the reduced product on triples inside the window
    for (int i = 0; i < B && q.associative; ++i)
        for (int j = 0; j < B && q.associative; ++j)
            for (int k = 0; k < B && q.associative; ++k) {
                int d = deg_of(q.basis[static_cast<size_t>(i)]) + deg_of(q.basis[static_cast<size_t>(j)]) +
                        deg_of(q.basis[static_cast<size_t>(k)]);
                if (d > even_cap) continue;
                GradedPoly a = GradedPoly::term(ctx, q.basis[static_cast<size_t>(i)], Rat(1));
                GradedPoly b = GradedPoly::term(ctx, q.basis[static_cast<size_t>(j)], Rat(1));
                GradedPoly c = GradedPoly::term(ctx, q.basis[static_cast<size_t>(k)], Rat(1));
                auto left = collapse(reduce(expand(s.star(s.star(a, b), EpsSeries::constant(c, N)))));
                auto right = collapse(reduce(expand(s.star(EpsSeries::constant(a, N), s.star(b, c)))));
                if (!(left == right)) {
                    q.associative = false;
                    detail << "associativity fails on a reduced triple\n";
                }
            }

    // projection is an algebra morphism: reduce(star(m, m')) = reduce(star of reductions)
    for (int i = 0; i < M && q.projection_morphism; ++i)
        for (int j = 0; j < M && q.projection_morphism; ++j) {
            if (deg_of(mono[static_cast<size_t>(i)]) + deg_of(mono[static_cast<size_t>(j)]) > even_cap) continue;
            GradedPoly a = GradedPoly::term(ctx, mono[static_cast<size_t>(i)], Rat(1));
            GradedPoly b = GradedPoly::term(ctx, mono[static_cast<size_t>(j)], Rat(1));
            EpsSeries ra = collapse(reduce(expand(EpsSeries::constant(a, N))));
            EpsSeries rb = collapse(reduce(expand(EpsSeries::constant(b, N))));
            auto direct = reduce(expand(s.star(a, b)));
            EpsSeries via = s.star(ra, rb);
            bool ok_window = true;
            for (int n = 0; n <= N; ++n)
                if (!via.coeff(n).is_zero() && via.coeff(n).even_degree_max() > even_cap) ok_window = false;
            if (!ok_window) continue;
            auto reduced_via = reduce(expand(via));
            if (direct != reduced_via) {
                q.projection_morphism = false;
                detail << "projection fails to be a morphism on a pair\n";
            }
        }

    q.detail = detail.str();
    return q;
}

} // namespace gpa
