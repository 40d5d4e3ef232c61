#include "gpa/poly.hpp"

#include <algorithm>
#include <sstream>

namespace gpa {

int Monomial::exponent_of(int gen_index) const {
    for (const auto& [i, e] : factors)
        if (i == gen_index) return e;
    return 0;
}

int z_degree(const Monomial& m, const GradedContext& ctx) {
    int d = 0;
    for (const auto& [i, e] : m.factors) d += e * ctx.gen(i).degree;
    return d;
}

int parity_of(const Monomial& m, const GradedContext& ctx) {
    return ((z_degree(m, ctx) % 2) + 2) % 2;
}

std::optional<std::pair<Monomial, int>> mul_monomials(const Monomial& a, const Monomial& b,
                                                      const GradedContext& ctx) {
    // Odd factors of b must cross every odd factor of a with a larger index;
    // each odd-odd crossing flips the sign.
    std::vector<int> odd_a;
    for (const auto& [i, e] : a.factors)
        if (ctx.gen(i).odd()) odd_a.push_back(i);

    long swaps = 0;
    for (const auto& [i, e] : b.factors) {
        if (!ctx.gen(i).odd()) continue;
        auto it = std::upper_bound(odd_a.begin(), odd_a.end(), i);
        swaps += static_cast<long>(odd_a.end() - it);
    }

    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    size_t ia = 0, ib = 0;
    while (ia < a.factors.size() || ib < b.factors.size()) {
        if (ib == b.factors.size() || (ia < a.factors.size() && a.factors[ia].first < b.factors[ib].first)) {
            out.factors.push_back(a.factors[ia++]);
        } else if (ia == a.factors.size() || b.factors[ib].first < a.factors[ia].first) {
            out.factors.push_back(b.factors[ib++]);
        } else {
            int gi = a.factors[ia].first;
            if (ctx.gen(gi).odd()) return std::nullopt; // odd square
            out.factors.emplace_back(gi, a.factors[ia].second + b.factors[ib].second);
            ++ia, ++ib;
        }
    }
    return std::make_pair(std::move(out), swaps % 2 == 0 ? 1 : -1);
}

GradedPoly::GradedPoly(ContextPtr ctx, const Rat& constant) : ctx_(std::move(ctx)) {
    if (constant != 0) terms_[Monomial{}] = constant;
}

GradedPoly GradedPoly::generator(ContextPtr ctx, int gen_index) {
    if (gen_index < 0 || gen_index >= ctx->size()) throw std::out_of_range("generator index");
    GradedPoly p(ctx);
    p.terms_[Monomial{{{gen_index, 1}}}] = 1;
    return p;
}

GradedPoly GradedPoly::term(ContextPtr ctx, Monomial m, const Rat& coeff) {
    GradedPoly p(std::move(ctx));
    for (size_t k = 0; k < m.factors.size(); ++k) {
        auto [i, e] = m.factors[k];
        if (i < 0 || i >= p.ctx_->size() || e <= 0) throw std::invalid_argument("bad monomial");
        if (k > 0 && m.factors[k - 1].first >= i) throw std::invalid_argument("monomial not canonical");
        if (p.ctx_->gen(i).odd() && e > 1) return p; // odd square: zero
    }
    if (coeff != 0) p.terms_[std::move(m)] = coeff;
    return p;
}

void GradedPoly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GradedPoly GradedPoly::operator+(const GradedPoly& rhs) const {
    check_same_context(ctx_, rhs.ctx_);
    GradedPoly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
    return out;
}

GradedPoly GradedPoly::operator-(const GradedPoly& rhs) const {
    check_same_context(ctx_, rhs.ctx_);
    GradedPoly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
    return out;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly out(ctx_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

GradedPoly GradedPoly::operator*(const Rat& s) const {
    GradedPoly out(ctx_);
    if (s == 0) return out;
    for (const auto& [m, c] : terms_) {
        Rat cs = c * s;
        out.terms_[m] = cs;
    }
    return out;
}

GradedPoly GradedPoly::operator*(const GradedPoly& rhs) const {
    check_same_context(ctx_, rhs.ctx_);
    GradedPoly out(ctx_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            auto prod = mul_monomials(ma, mb, *ctx_);
            if (!prod) continue;
            Rat c = ca * cb;
            if (prod->second < 0) c = -c;
            out.add_term(prod->first, c);
        }
    }
    return out;
}

bool GradedPoly::operator==(const GradedPoly& rhs) const {
    if (ctx_ != rhs.ctx_ && (!ctx_ || !rhs.ctx_ || !ctx_->same_as(*rhs.ctx_))) return false;
    return terms_ == rhs.terms_;
}

GradedPoly GradedPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    GradedPoly out = GradedPoly::one(ctx_);
    for (int k = 0; k < e; ++k) out = out * *this;
    return out;
}

GradedPoly GradedPoly::left_derivative(int gen_index) const {
    GradedPoly out(ctx_);
    if (gen_index < 0 || gen_index >= ctx_->size()) return out;
    const bool g_odd = ctx_->gen(gen_index).odd();
    for (const auto& [m, c] : terms_) {
        int prefix_parity = 0;
        int pos = -1;
        for (size_t k = 0; k < m.factors.size(); ++k) {
            if (m.factors[k].first == gen_index) { pos = static_cast<int>(k); break; }
            if (m.factors[k].first > gen_index) break;
            if (ctx_->gen(m.factors[k].first).odd()) prefix_parity ^= 1;
        }
        if (pos < 0) continue;
        auto [gi, e] = m.factors[static_cast<size_t>(pos)];
        Rat coeff = c * e;
        if (g_odd && prefix_parity) coeff = -coeff;
        Monomial dm = m;
        if (e == 1)
            dm.factors.erase(dm.factors.begin() + pos);
        else
            dm.factors[static_cast<size_t>(pos)].second = e - 1;
        out.add_term(dm, coeff);
    }
    return out;
}

bool GradedPoly::is_homogeneous(int* degree_out) const {
    if (terms_.empty()) {
        if (degree_out) *degree_out = 0;
        return true;
    }
    int d = z_degree(terms_.begin()->first, *ctx_);
    for (const auto& [m, c] : terms_)
        if (z_degree(m, *ctx_) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

GradedPoly GradedPoly::homogeneous_part(int degree) const {
    GradedPoly out(ctx_);
    for (const auto& [m, c] : terms_)
        if (z_degree(m, *ctx_) == degree) out.terms_[m] = c;
    return out;
}

int GradedPoly::degree_min() const {
    if (terms_.empty()) throw std::logic_error("degree of zero polynomial");
    int d = z_degree(terms_.begin()->first, *ctx_);
    for (const auto& [m, c] : terms_) d = std::min(d, z_degree(m, *ctx_));
    return d;
}

int GradedPoly::degree_max() const {
    if (terms_.empty()) throw std::logic_error("degree of zero polynomial");
    int d = z_degree(terms_.begin()->first, *ctx_);
    for (const auto& [m, c] : terms_) d = std::max(d, z_degree(m, *ctx_));
    return d;
}

GradedPoly GradedPoly::parity_part(int parity) const {
    GradedPoly out(ctx_);
    for (const auto& [m, c] : terms_)
        if (parity_of(m, *ctx_) == parity) out.terms_[m] = c;
    return out;
}

GradedPoly GradedPoly::substitute(const ContextPtr& target,
                                  const std::function<GradedPoly(int)>& image) const {
    GradedPoly out(target);
    for (const auto& [m, c] : terms_) {
        GradedPoly acc(target, c);
        for (const auto& [gi, e] : m.factors) {
            GradedPoly v = image(gi);
            check_same_context(v.context(), target);
            int want = ctx_->gen(gi).odd() ? 1 : 0;
            if (!v.is_zero() && !(v.parity_part(want) == v))
                throw std::invalid_argument("parity-violating substitution for generator " +
                                            ctx_->gen(gi).name);
            acc = acc * v.pow(e);
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return out;
}

GradedPoly GradedPoly::eval(const std::map<int, GradedPoly>& assignment) const {
    return substitute(ctx_, [&](int gi) {
        auto it = assignment.find(gi);
        return it == assignment.end() ? GradedPoly::generator(ctx_, gi) : it->second;
    });
}

GradedPoly GradedPoly::eval_point(const std::map<int, Rat>& point) const {
    std::map<int, GradedPoly> assign;
    for (const auto& [gi, v] : point) assign.emplace(gi, GradedPoly(ctx_, v));
    return eval(assign);
}

int GradedPoly::even_degree(const Monomial& m, const GradedContext& ctx) {
    int d = 0;
    for (const auto& [i, e] : m.factors)
        if (!ctx.gen(i).odd()) d += e;
    return d;
}

int GradedPoly::even_degree_max() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, even_degree(m, *ctx_));
    return d;
}

std::string format_term(const Monomial& m, const Rat& c, const GradedContext& ctx, bool leading) {
    std::ostringstream os;
    Rat a = c;
    if (leading) {
        if (a < 0) { os << "-"; a = -a; }
    } else {
        if (a < 0) { os << " - "; a = -a; }
        else { os << " + "; }
    }
    bool wrote_coeff = false;
    if (a != 1 || m.is_unit()) {
        os << a.str();
        wrote_coeff = true;
    }
    for (const auto& [i, e] : m.factors) {
        if (wrote_coeff) os << "*";
        os << ctx.gen(i).name;
        if (e > 1) os << "^" << e;
        wrote_coeff = true;
    }
    return os.str();
}

std::string GradedPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        os << format_term(m, c, *ctx_, first);
        first = false;
    }
    return os.str();
}

} // namespace gpa
