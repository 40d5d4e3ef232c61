#pragma once

#include <memory>
#include <vector>

#include "gpa/poly.hpp"

namespace gpa {

class ShiftedCotangentContext;
using ShiftedCtxPtr = std::shared_ptr<const ShiftedCotangentContext>;

// Context of a shifted cotangent bundle: base generators x^a of degree d_a
// followed by their conjugates theta_a of degree 1 - d_a. Multivector fields
// are plain polynomials over this context.
class ShiftedCotangentContext {
public:
    // Conjugates are auto-named "theta_<base>".
    static ShiftedCtxPtr make(const std::vector<std::pair<std::string, int>>& base);

    const ContextPtr& poly_context() const { return ctx_; }
    int base_count() const { return n_; }
    int base_index(int a) const { return a; }        // a-th base generator index
    int conj_index(int a) const { return n_ + a; }   // its conjugate
    bool is_conjugate(int gen_index) const { return gen_index >= n_; }
    int pair_of(int gen_index) const { return gen_index >= n_ ? gen_index - n_ : gen_index + n_; }

private:
    ContextPtr ctx_;
    int n_ = 0;
};

struct Multivector {
    ShiftedCtxPtr sctx;
    GradedPoly value;

    bool is_zero() const { return value.is_zero(); }
    Multivector operator+(const Multivector& rhs) const { return {sctx, value + rhs.value}; }
    Multivector operator-(const Multivector& rhs) const { return {sctx, value - rhs.value}; }
    Multivector operator*(const Rat& s) const { return {sctx, value * s}; }
    bool operator==(const Multivector& rhs) const { return value == rhs.value; }
};

Multivector mvec(const ShiftedCtxPtr& s, GradedPoly v);

// The canonical odd Poisson bracket normalized by [theta_a, x^b] = delta_a^b,
// [x,x] = [theta,theta] = 0. Degree -1; graded antisymmetry, Jacobi and
// Leibniz hold exactly (enforced by the axiom test suite, not by a quoted
// sign table).
Multivector schouten(const Multivector& p, const Multivector& q);

// {f,g} of the bivector pi on theta-free arguments, normalized so that
// pi = theta_x theta_y gives {x,y} = 1.
GradedPoly induced_bracket(const Multivector& pi, const GradedPoly& f, const GradedPoly& g);

struct McElement {
    Multivector pi;
    Multivector certificate; // [pi,pi], zero for a Maurer-Cartan element
};

struct McCheck {
    bool ok = false;
    Multivector certificate;
    McElement element() const { return McElement{pi, certificate}; }
    Multivector pi;
};

// pi must be homogeneous of function degree 2.
McCheck is_maurer_cartan(const Multivector& pi);

// Assemble pi = 1/2 pi^{ij} theta_i theta_j from the strict upper-triangle
// entries {(i,j) -> value}; values are polynomials in the base generators.
Multivector bivector_from_matrix(const ShiftedCtxPtr& s,
                                 const std::vector<std::tuple<int, int, GradedPoly>>& entries);

struct LegendreShift {
    ShiftedCtxPtr shifted; // same generator names, degrees flipped on the fiber pairs
    Multivector value;
};

// Degree-shift anti-isomorphism along the designated fiber base generators:
// fiber y (degree d) and theta_y (degree 1-d) trade places (the new base
// generator keeps the name y but has degree 1-d), and every unshifted
// conjugate picks up a sign. schouten(shift P, shift Q) = -shift(schouten(P,Q))
// and the shift is involutive.
LegendreShift legendre_shift(const Multivector& p, const std::vector<int>& fiber_base_indices);

} // namespace gpa
