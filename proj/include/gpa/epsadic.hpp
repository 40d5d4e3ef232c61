#pragma once

#include <functional>
#include <optional>
#include <span>

#include "gpa/cochain.hpp"

namespace gpa {

// k-ary multilinear operator on A with values in A[[eps]] (truncated).
struct EpsOperator {
    int arity = 0;
    std::function<EpsSeries(std::span<const GradedPoly>)> eval;

    EpsSeries operator()(std::span<const GradedPoly> args) const { return eval(args); }
    EpsSeries apply1(const GradedPoly& a) const;
    EpsSeries apply2(const GradedPoly& a, const GradedPoly& b) const;
};

// Multiply an operator's values by eps^k; negative k checks divisibility of
// each value at call time.
EpsOperator eps_shift_operator(const EpsOperator& op, int k);

// A deformation family mu_0..mu_k (mu_0 is a series, not an operator).
struct DeformedOps {
    EpsSeries mu0;
    std::vector<EpsOperator> mu; // mu[i] has arity i+1
    int eps_order = 0;
};

// tau_i = eps^{i-2} mu_i; requires mu_1 divisible by eps and mu_0 by eps^2
// (checked: mu_0 immediately, mu_1 lazily per call).
DeformedOps rescale_brackets(const DeformedOps& m);

GradedPoly classical_projection(const EpsSeries& a);

struct TorsionReport {
    int degree = 0;
    bool surjective = false;   // [pi0]: H^deg(eps-complex) -> H^deg(mod-eps complex)
    bool torsion_free = true;  // eps: H^{deg+1}(order N-1) -> H^{deg+1}(order N) injective
    std::optional<EpsSeries> torsion_witness;  // degree+1 class killed by eps
    std::optional<GradedPoly> missed_class;    // mod-eps class not in the image
    int dim_B = 0, dim_A = 0;
};

// Decides the surjectivity of the classical projection on cohomology and
// eps-torsion-freeness one degree up; the long-exact-sequence equivalence of
// the two is asserted internally.
TorsionReport torsion_check(const CochainComplex& cx, int degree);

// Exact-rank restatement of the long exact sequence at truncation:
// dim H^i(mod eps) = dim coker(eps at i) + dim ker(eps at i+1).
bool les_rank_identity(const CochainComplex& cx, int degree);

struct LiftOutcome {
    bool ok = false;
    EpsSeries lift;
    int obstruction_order = -1;
    GradedPoly obstruction; // dd-closed right-hand side that failed to be exact
};

// Order-by-order lift of a dd-closed classical cocycle against the deformed
// differential sum_r eps^r dd_r; candidates are drawn from the monomials over
// `gens` within the even-degree cap.
LiftOutcome lift_cocycle(const GradedPoly& a0,
                         const std::vector<std::function<GradedPoly(const GradedPoly&)>>& dd,
                         int eps_order, const std::vector<int>& gens, int even_cap);

} // namespace gpa
