#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpa/cochain.hpp"
#include "gpa/multivector.hpp"

namespace gpa {

// Ghost-extended context of a constraint system: tangential coordinates x,
// constraints y, ghost momenta b (odd, degree -1) and ghosts c (odd, degree
// +1), one (b,c) pair per constraint, with the extended Poisson structure
// {b^mu, c_nu} = {c_nu, b^mu} = delta on top of the base bracket.
//
// The paper-facing grading convention here is b -> -1, c -> +1 so that
// D = {Omega, .} raises degree and H_D aligns index-by-index with the Lie
// algebroid cohomology.
class BfvContext {
public:
    // x_names first, then one constraint coordinate per y_name; pi entries are
    // expressions over (x, y) assembled as a bivector on the base.
    static BfvContext make(const std::vector<std::string>& x_names,
                           const std::vector<std::string>& y_names,
                           const std::vector<std::tuple<int, int, GradedPoly>>& pi_entries,
                           const ContextPtr& base_ctx_for_entries);

    const ShiftedCtxPtr& sctx() const { return sctx_; }
    const ContextPtr& ctx() const { return sctx_->poly_context(); }
    int n_x() const { return static_cast<int>(x_.size()); }
    int n_constraints() const { return static_cast<int>(y_.size()); }
    int x(int i) const { return x_[static_cast<size_t>(i)]; }
    int y(int mu) const { return y_[static_cast<size_t>(mu)]; }
    int b(int mu) const { return b_[static_cast<size_t>(mu)]; }
    int c(int mu) const { return c_[static_cast<size_t>(mu)]; }
    const Multivector& pi_extended() const { return pi_ext_; }

    GradedPoly lift_base(const GradedPoly& p) const; // base-context expression into the ghost context

    // extended Poisson bracket on theta-free functions of (x, y, b, c)
    GradedPoly pois(const GradedPoly& f, const GradedPoly& g) const;

    GradedPoly koszul_delta0(const GradedPoly& p) const; // y^mu d/db^mu
    GradedPoly homotopy_h(const GradedPoly& p) const;    // b^mu d/dy^mu
    GradedPoly homotopy_s(const GradedPoly& p) const;    // h/|.| off the (y,b)-free sector
    GradedPoly pr_sector(const GradedPoly& p) const;     // (y,b)-weight-zero part

    GradedPoly omega0() const;
    GradedPoly f0() const; // 1/2 {Omega0, Omega0}

    // decides delta0-exactness of a (y,b,c)-target exactly; returns a preimage
    std::optional<GradedPoly> delta0_preimage(const GradedPoly& target) const;

    std::pair<int, int> ghost_counts(const Monomial& m) const; // (#b, #c)

private:
    ShiftedCtxPtr sctx_;
    std::vector<int> x_, y_, b_, c_;
    Multivector pi_ext_;
};

struct BfvCharge {
    GradedPoly omega;
    std::vector<GradedPoly> layers; // Omega_i
    bool terminated = false;
    int truncation_bound = 0;
    GradedPoly residual; // {Omega, Omega}; zero when terminated
};

struct BfvChargeOutcome {
    bool coisotropic = false;
    GradedPoly f0_certificate; // F0 itself when not coisotropic
    std::optional<BfvCharge> charge;
};

BfvChargeOutcome bfv_charge(const BfvContext& bc, int max_even_degree);

GradedPoly bfv_differential(const BfvContext& bc, const BfvCharge& charge, const GradedPoly& p);

// Complex of D = {Omega, .} on functions of (x, y, b, c) at truncation.
CochainComplex bfv_complex(const BfvContext& bc, const BfvCharge& charge, int max_even_degree);

} // namespace gpa
