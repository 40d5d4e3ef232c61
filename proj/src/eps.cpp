#include "gpa/eps.hpp"

#include <sstream>

#include "gpa/parse.hpp"

namespace gpa {

EpsSeries::EpsSeries(ContextPtr ctx, int order) {
    if (order < 0) throw std::invalid_argument("negative eps order");
    c_.assign(static_cast<size_t>(order) + 1, GradedPoly::zero(ctx));
}

EpsSeries EpsSeries::constant(const GradedPoly& a0, int order) {
    EpsSeries s(a0.context(), order);
    s.c_[0] = a0;
    return s;
}

EpsSeries EpsSeries::from_coeffs(std::vector<GradedPoly> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("empty eps series");
    for (const auto& c : coeffs) check_same_context(coeffs.front().context(), c.context());
    EpsSeries s;
    s.c_ = std::move(coeffs);
    return s;
}

bool EpsSeries::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

static void check_orders(const EpsSeries& a, const EpsSeries& b) {
    if (a.order() != b.order()) throw std::invalid_argument("eps order mismatch");
}

EpsSeries EpsSeries::operator+(const EpsSeries& rhs) const {
    check_orders(*this, rhs);
    EpsSeries out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] += rhs.c_[i];
    return out;
}

EpsSeries EpsSeries::operator-(const EpsSeries& rhs) const {
    check_orders(*this, rhs);
    EpsSeries out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] -= rhs.c_[i];
    return out;
}

EpsSeries EpsSeries::operator-() const {
    EpsSeries out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

EpsSeries EpsSeries::operator*(const EpsSeries& rhs) const {
    check_orders(*this, rhs);
    EpsSeries out(context(), order());
    for (int n = 0; n <= order(); ++n) {
        GradedPoly acc(context());
        for (int i = 0; i <= n; ++i) acc += c_[static_cast<size_t>(i)] * rhs.c_[static_cast<size_t>(n - i)];
        out.c_[static_cast<size_t>(n)] = acc;
    }
    return out;
}

EpsSeries EpsSeries::operator*(const Rat& s) const {
    EpsSeries out = *this;
    for (auto& c : out.c_) c = c * s;
    return out;
}

bool EpsSeries::operator==(const EpsSeries& rhs) const {
    return order() == rhs.order() && c_ == rhs.c_;
}

bool EpsSeries::divisible_by_eps(int k) const {
    for (int i = 0; i < k && i <= order(); ++i)
        if (!c_[static_cast<size_t>(i)].is_zero()) return false;
    return true;
}

EpsSeries EpsSeries::shifted(int k) const {
    EpsSeries out(context(), order());
    if (k >= 0) {
        for (int n = 0; n + k <= order(); ++n) out.c_[static_cast<size_t>(n + k)] = c_[static_cast<size_t>(n)];
    } else {
        if (!divisible_by_eps(-k)) throw std::invalid_argument("series not divisible by eps^" + std::to_string(-k));
        for (int n = -k; n <= order(); ++n) out.c_[static_cast<size_t>(n + k)] = c_[static_cast<size_t>(n)];
    }
    return out;
}

std::string EpsSeries::str() const {
    std::ostringstream os;
    bool wrote = false;
    for (int n = 0; n <= order(); ++n) {
        if (c_[static_cast<size_t>(n)].is_zero()) continue;
        if (wrote) os << " + ";
        if (n == 0) os << "(" << c_[0].str() << ")";
        else {
            os << "eps";
            if (n > 1) os << "^" << n;
            os << "*(" << c_[static_cast<size_t>(n)].str() << ")";
        }
        wrote = true;
    }
    if (!wrote) return "0";
    return os.str();
}

EpsSeries parse_eps_series(const std::string& text, const ContextPtr& ctx, int order) {
    std::vector<std::pair<std::string, int>> gens;
    for (const auto& g : ctx->gens()) gens.emplace_back(g.name, g.degree);
    gens.emplace_back("eps", 0);
    auto ext = GradedContext::make(gens);

    GradedPoly p = parse_expr(text, ext);
    const int eps_idx = ext->require("eps");
    EpsSeries out(ctx, order);
    std::vector<GradedPoly> coeffs(static_cast<size_t>(order) + 1, GradedPoly::zero(ctx));
    for (const auto& [m, c] : p.terms()) {
        int k = m.exponent_of(eps_idx);
        if (k > order)
            throw std::invalid_argument("eps power " + std::to_string(k) + " above truncation order " +
                                        std::to_string(order));
        Monomial rest;
        for (const auto& [gi, e] : m.factors)
            if (gi != eps_idx) rest.factors.emplace_back(gi, e);
        coeffs[static_cast<size_t>(k)] += GradedPoly::term(ctx, rest, c);
    }
    return EpsSeries::from_coeffs(std::move(coeffs));
}

} // namespace gpa
