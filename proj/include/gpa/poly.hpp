#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpa/context.hpp"
#include "gpa/rational.hpp"

namespace gpa {

// Canonical-form monomial: factors sorted by generator index, odd generators
// with exponent exactly 1. The Koszul sign of sorting a product is folded
// into the coefficient by GradedPoly::mul.
struct Monomial {
    std::vector<std::pair<int, int>> factors; // (generator index, exponent), index ascending

    bool is_unit() const { return factors.empty(); }
    int exponent_of(int gen_index) const;

    auto operator<=>(const Monomial&) const = default;
};

// Graded-commutative polynomial with exact rational coefficients over a fixed
// generator context. Immutable value semantics: every operation returns a new
// value; no zero coefficients are ever stored.
class GradedPoly {
public:
    GradedPoly() = default;
    explicit GradedPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    GradedPoly(ContextPtr ctx, const Rat& constant);

    static GradedPoly zero(ContextPtr ctx) { return GradedPoly(std::move(ctx)); }
    static GradedPoly one(ContextPtr ctx) { return GradedPoly(std::move(ctx), Rat(1)); }
    static GradedPoly generator(ContextPtr ctx, int gen_index);
    static GradedPoly term(ContextPtr ctx, Monomial m, const Rat& coeff);

    const ContextPtr& context() const { return ctx_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    GradedPoly operator+(const GradedPoly& rhs) const;
    GradedPoly operator-(const GradedPoly& rhs) const;
    GradedPoly operator-() const;
    GradedPoly operator*(const GradedPoly& rhs) const; // graded-commutative product
    GradedPoly operator*(const Rat& s) const;
    GradedPoly& operator+=(const GradedPoly& rhs) { return *this = *this + rhs; }
    GradedPoly& operator-=(const GradedPoly& rhs) { return *this = *this - rhs; }
    bool operator==(const GradedPoly& rhs) const;

    GradedPoly pow(int e) const;

    // graded Leibniz rule from the left: d(pq) = (dp)q + (-1)^{|g||p|} p(dq)
    GradedPoly left_derivative(int gen_index) const;

    // Z-degree bookkeeping
    bool is_homogeneous(int* degree_out = nullptr) const;
    GradedPoly homogeneous_part(int degree) const;
    int degree_min() const; // throws on zero
    int degree_max() const;
    GradedPoly parity_part(int parity) const;

    // Substitution by a ring morphism: each generator index maps to a value in
    // the target context (parity of the image must match, or be zero).
    GradedPoly substitute(const ContextPtr& target,
                          const std::function<GradedPoly(int)>& image) const;

    // Partial evaluation in the same context; unassigned generators are kept.
    GradedPoly eval(const std::map<int, GradedPoly>& assignment) const;
    GradedPoly eval_point(const std::map<int, Rat>& point) const;

    // degree in even generators only (odd exponents are 0/1 and never counted
    // against polynomial truncation caps)
    static int even_degree(const Monomial& m, const GradedContext& ctx);
    int even_degree_max() const;

    std::string str() const; // canonical printable form, stable term order

private:
    void add_term(const Monomial& m, const Rat& c);

    ContextPtr ctx_;
    std::map<Monomial, Rat> terms_;
};

inline GradedPoly operator*(const Rat& s, const GradedPoly& p) { return p * s; }

int z_degree(const Monomial& m, const GradedContext& ctx);
int parity_of(const Monomial& m, const GradedContext& ctx);

// Product of two canonical monomials: nullopt when an odd generator squares
// to zero, otherwise the merged monomial and the Koszul sign (+1/-1) from
// sorting odd factors into declaration order.
std::optional<std::pair<Monomial, int>> mul_monomials(const Monomial& a, const Monomial& b,
                                                      const GradedContext& ctx);

std::string format_term(const Monomial& m, const Rat& c, const GradedContext& ctx, bool leading);

} // namespace gpa
