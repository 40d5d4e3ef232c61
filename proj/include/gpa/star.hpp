#pragma once

#include <array>
#include <optional>
#include <string>

#include "gpa/epsadic.hpp"

namespace gpa {

using MIdx = std::vector<int>; // exponent per generator of the base context

// Finite sum of terms coeff(x) * d^alpha (x) d^beta applied to an ordered
// argument pair. Every stored term has |alpha| > 0 and |beta| > 0, so the
// operator kills constants in each slot.
class BidiffOperator {
public:
    explicit BidiffOperator(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    const ContextPtr& context() const { return ctx_; }
    void add_term(const GradedPoly& coeff, const MIdx& left, const MIdx& right);
    bool is_zero() const { return terms_.empty(); }

    GradedPoly apply(const GradedPoly& f, const GradedPoly& g) const;
    BidiffOperator operator+(const BidiffOperator& rhs) const;
    BidiffOperator operator*(const Rat& s) const;
    bool operator==(const BidiffOperator& rhs) const { return terms_ == rhs.terms_; }

    const std::map<std::pair<MIdx, MIdx>, GradedPoly>& terms() const { return terms_; }

private:
    ContextPtr ctx_;
    std::map<std::pair<MIdx, MIdx>, GradedPoly> terms_;
};

// Tridifferential operator, used to certify associativity at the operator
// level (no sampling).
class TridiffOperator {
public:
    explicit TridiffOperator(ContextPtr ctx) : ctx_(std::move(ctx)) {}
    void add_term(const GradedPoly& coeff, const MIdx& a, const MIdx& b, const MIdx& c);
    bool is_zero() const { return terms_.empty(); }
    GradedPoly apply(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const;
    TridiffOperator operator+(const TridiffOperator& rhs) const;
    TridiffOperator operator-(const TridiffOperator& rhs) const;
    TridiffOperator operator*(const Rat& s) const;
    const std::map<std::array<MIdx, 3>, GradedPoly>& terms() const { return terms_; }

private:
    ContextPtr ctx_;
    std::map<std::array<MIdx, 3>, GradedPoly> terms_;
};

// Hochschild coboundary delta B (f,g,h) = f B(g,h) - B(fg,h) + B(f,gh) - B(f,g) h.
TridiffOperator hochschild_delta(const BidiffOperator& b);
// C(f,g,h) = B(A(f,g), h)
TridiffOperator compose_left(const BidiffOperator& outer, const BidiffOperator& inner);
// C(f,g,h) = B(f, A(g,h))
TridiffOperator compose_right(const BidiffOperator& outer, const BidiffOperator& inner);

// Skew Poisson data on a plain even context.
struct PoissonMatrix {
    ContextPtr ctx;
    std::vector<std::vector<GradedPoly>> entry; // full skew matrix

    static PoissonMatrix make(ContextPtr ctx,
                              const std::vector<std::tuple<int, int, GradedPoly>>& upper);
    GradedPoly bracket(const GradedPoly& f, const GradedPoly& g) const;
    BidiffOperator bracket_operator() const;
    GradedPoly jacobiator(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const;
    bool is_jacobi(int probe_degree = 2) const;
};

// Second-order ansatz templates built from pi and its first derivatives with
// at most two derivatives per argument slot (graph-type contractions).
constexpr int kStarTemplateCount = 6;
std::array<BidiffOperator, kStarTemplateCount> star_templates(const PoissonMatrix& pi);
extern const std::array<Rat, kStarTemplateCount> kCanonicalStarWeights;

struct WeightSolution {
    bool solvable = false;
    std::vector<Rat> particular;             // free coordinates set to zero
    std::vector<std::vector<Rat>> kernel;    // directions of the affine family
    bool contains(const std::vector<Rat>& w) const;
};

// Solves the order-eps^2 associativity constraint for the template weights of
// the given pi, as an exact linear system at the operator level.
WeightSolution derive_order2_weights(const PoissonMatrix& pi);

class StarProduct {
public:
    // recorded canonical weights; certifies associativity unless the Poisson
    // data fails Jacobi, in which case `certified` stays false
    static StarProduct with_default_weights(const PoissonMatrix& pi, int order = 2);
    // weights solved for this pi; throws when the system is infeasible
    static StarProduct with_derived_weights(const PoissonMatrix& pi, int order = 2);

    const PoissonMatrix& pi() const { return pi_; }
    int order() const { return order_; }
    bool certified() const { return certified_; }
    const BidiffOperator& b1() const { return b1_; }
    const BidiffOperator& b2() const { return b2_; }
    void set_b3(BidiffOperator b3); // user-supplied third order, re-certifies

    EpsSeries star(const EpsSeries& f, const EpsSeries& g) const;
    EpsSeries star(const GradedPoly& f, const GradedPoly& g) const;
    EpsSeries commutator(const EpsSeries& f, const EpsSeries& g) const;
    EpsSeries associator(const EpsSeries& f, const EpsSeries& g, const EpsSeries& h) const;
    EpsSeries associator(const GradedPoly& f, const GradedPoly& g, const GradedPoly& h) const;

    // eps^2 coefficient of the associator as an operator; zero iff certified
    TridiffOperator associativity_defect() const;

private:
    StarProduct(PoissonMatrix pi, int order, BidiffOperator b1, BidiffOperator b2);
    PoissonMatrix pi_;
    int order_;
    BidiffOperator b1_, b2_;
    std::optional<BidiffOperator> b3_;
    bool certified_ = false;
};

// ---- A-infinity truncation and gauge shifts ----------------------------

struct AInfinityTruncation {
    ContextPtr ctx;
    int eps_order = 2;
    int arity_cap = 3;
    EpsSeries mu0;
    EpsOperator mu1, mu2, mu3; // mu2 includes the commutative product

    bool flat() const { return mu0.is_zero(); }
    static AInfinityTruncation from_star(const StarProduct& s);
};

// n-th A-infinity relation evaluated on homogeneous arguments (bar-convention
// signs); identically zero for a valid structure.
EpsSeries a_infinity_relation(const AInfinityTruncation& t, int n,
                              const std::vector<GradedPoly>& args);

// Twist by gamma (degree 1, order >= eps): inserts gamma into all slots in
// the bar picture. The classical limit is unchanged and the twisted family
// satisfies the same relations.
AInfinityTruncation gauge_shift(const AInfinityTruncation& t, const EpsSeries& gamma);

struct CurvatureKill {
    bool ok = false;
    EpsSeries gamma;
    int obstruction_order = -1;
    GradedPoly obstruction_class;
};

// Order-by-order solve for gamma with twisted mu0 = 0; candidates for the
// gamma coefficients are degree-1 monomials within the cap.
CurvatureKill kill_curvature(const AInfinityTruncation& t, const std::vector<int>& gens,
                             int even_cap);

// ---- Casimir pipeline ---------------------------------------------------

struct CentralLift {
    bool ok = false;
    EpsSeries lift;
    std::string reason;
};

// t = Phi + O(eps^2) with t star-central against all monomials within the
// cap; the eps^2 coefficient is solved as an exact linear system.
CentralLift central_lift(const StarProduct& s, const GradedPoly& casimir, int even_cap);

bool is_casimir(const PoissonMatrix& pi, const GradedPoly& phi);

struct QuotientPresentation {
    std::vector<Monomial> basis; // degree-then-lex representatives
    // star table on basis classes: coordinates over basis x eps powers
    std::map<std::pair<int, int>, EpsSeries> table; // (i,j) -> class of m_i * m_j
    bool associative = false;
    bool projection_morphism = false;
    std::string detail;
};

QuotientPresentation casimir_quotient(const StarProduct& s, const std::vector<EpsSeries>& lifts,
                                      int even_cap);

} // namespace gpa
