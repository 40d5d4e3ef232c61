#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpa/eps.hpp"
#include "gpa/linalg.hpp"

namespace gpa {

// Finite caps making every complex below finite rank. Polynomial degree is
// counted over even generators only (odd exponents are 0/1 anyway).
struct Truncation {
    int max_even_degree = 3;
    int eps_order = 0; // 0 = plain Q complex
    int degree_min = 0;
    int degree_max = 0;
};

// Matrix over Q[eps]/(eps^{N+1}) stored by coefficient.
struct EpsMatrix {
    int rows = 0, cols = 0;
    std::vector<QMat> coeff; // size N+1

    static EpsMatrix zero(int rows, int cols, int order);
    int order() const { return static_cast<int>(coeff.size()) - 1; }
    // expansion over Q with the module Q[eps]/(eps^{N+1}) ~ Q^{N+1}
    QMat expand() const;
    bool convolution_is_zero(const EpsMatrix& then) const; // (then o this) == 0 mod eps^{N+1}
};

// Exact finite-rank presentation of a graded differential at truncation.
// Bases are monomial lists per Z-degree; d_{k+1} o d_k = 0 is checked on
// construction and construction aborts on failure.
class CochainComplex {
public:
    CochainComplex(ContextPtr ctx, Truncation tr, std::vector<std::vector<Monomial>> basis,
                   std::vector<EpsMatrix> d);

    const ContextPtr& context() const { return ctx_; }
    const Truncation& truncation() const { return tr_; }
    int degree_min() const { return tr_.degree_min; }
    int degree_max() const { return tr_.degree_max; }
    const std::vector<Monomial>& basis(int degree) const;
    const EpsMatrix& diff(int degree) const; // degree -> degree+1; zero outside the window

    int rank_at(int degree) const { return static_cast<int>(basis(degree).size()); }

    GradedPoly from_coords(int degree, const std::vector<Rat>& v, int eps_slot = 0) const;
    EpsSeries series_from_coords(int degree, const std::vector<Rat>& expanded) const;
    std::vector<Rat> to_expanded_coords(int degree, const EpsSeries& s) const;

    // Same complex with the eps order lowered to `order` (coefficients dropped).
    CochainComplex reduced_order(int order) const;

private:
    ContextPtr ctx_;
    Truncation tr_;
    std::vector<std::vector<Monomial>> basis_;
    std::vector<EpsMatrix> d_;
    EpsMatrix empty_;
};

struct Cohomology {
    int degree = 0;
    int dim = 0;                          // Q-dimension of H^degree
    std::vector<EpsSeries> representatives;
    // internal coordinates used for class reduction
    QMat cocycle_basis;   // columns: representative expanded coordinates
    QMat boundary_basis;  // columns: spanning set of the image
};

Cohomology cohomology(const CochainComplex& cx, int degree);

// Coordinates of the class of a cocycle in the representative basis of `h`;
// throws if the element is not a cocycle of the right degree.
std::vector<Rat> class_coordinates(const CochainComplex& cx, const Cohomology& h,
                                   const EpsSeries& cocycle);

// All monomials over the listed generators with even-degree <= cap and the
// given Z-degree (deterministic order).
std::vector<Monomial> enumerate_monomials(const ContextPtr& ctx, const std::vector<int>& gens,
                                          int even_cap, int z_degree);

// Builds the truncated complex of a degree-(+1) operator acting on the span
// of the enumerated monomials; throws if the operator leaves the truncation.
CochainComplex make_operator_complex(const ContextPtr& ctx, const std::vector<int>& gens,
                                     Truncation tr,
                                     const std::function<EpsSeries(const GradedPoly&)>& op);

} // namespace gpa
