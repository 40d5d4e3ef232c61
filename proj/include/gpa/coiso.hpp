#pragma once

#include <vector>

#include "gpa/multivector.hpp"

namespace gpa {

// Splitting of V(NC) used for derived brackets: the abelian part A is spanned
// by polynomials in the tangential base generators and the conjugates of the
// transverse ones; Ker P is the ideal generated by the transverse generators
// and the tangential conjugates. An empty transverse set gives the splitting
// of a plain graded manifold (A = theta-free functions).
class CoisoSplitting {
public:
    static CoisoSplitting make(ShiftedCtxPtr sctx, std::vector<int> transverse_base_indices);

    const ShiftedCtxPtr& sctx() const { return sctx_; }
    const std::vector<int>& tangential() const { return tangential_; }
    const std::vector<int>& transverse() const { return transverse_; }

    bool in_A(const GradedPoly& p) const;
    GradedPoly project(const GradedPoly& p) const;        // P: kill y and theta_x
    Multivector include(const GradedPoly& a) const;       // i: identity embedding, validated

private:
    void verify_structure() const; // P o i = id, [Ker P, Ker P] inside Ker P on samples

    ShiftedCtxPtr sctx_;
    std::vector<int> tangential_;
    std::vector<int> transverse_;
};

class PInfinityStructure {
public:
    PInfinityStructure(CoisoSplitting splitting, McElement pi, int arity_cap = 4);

    const CoisoSplitting& splitting() const { return splitting_; }
    const McElement& pi() const { return pi_; }
    int arity_cap() const { return arity_cap_; }

    GradedPoly lambda0() const;
    // left-nested iterated bracket, then project
    GradedPoly lambda(const std::vector<GradedPoly>& args) const;
    GradedPoly lambda1(const GradedPoly& a) const { return lambda({a}); }
    GradedPoly lambda2(const GradedPoly& a, const GradedPoly& b) const { return lambda({a, b}); }

private:
    CoisoSplitting splitting_;
    McElement pi_;
    int arity_cap_;
};

struct CoisotropyCheck {
    bool coisotropic = false;
    GradedPoly certificate; // lambda_0
};

CoisotropyCheck check_coisotropic(const PInfinityStructure& s);

// Homotopy Jacobi relation of weight n (symmetric shuffle convention on
// shifted parities); zero for every Maurer-Cartan pi. n = 0,1 cover the
// curved variants through the lambda_0 insertions.
GradedPoly l_infinity_relation(const PInfinityStructure& s, int n,
                               const std::vector<GradedPoly>& args);

struct LInfinityViolation {
    int relation;
    std::vector<GradedPoly> args;
    GradedPoly value;
};

struct LInfinityReport {
    bool ok = true;
    std::vector<LInfinityViolation> violations;
};

// Checks relations up to the given arity on all tuples drawn from the sample
// list (homogeneous elements of A).
LInfinityReport l_infinity_check(const PInfinityStructure& s, int max_arity,
                                 const std::vector<GradedPoly>& samples);

int koszul_permutation_sign(const std::vector<int>& perm, const std::vector<int>& parities);

} // namespace gpa
