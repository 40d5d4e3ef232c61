#include "gpa/schaetz.hpp"

#include <sstream>

namespace gpa {

CochainComplex algebroid_complex(const PInfinityStructure& s, int max_even_degree) {
    const auto& sp = s.splitting();
    const auto& ctx = sp.sctx()->poly_context();
    std::vector<int> gens;
    for (int a : sp.tangential()) gens.push_back(sp.sctx()->base_index(a));
    for (int a : sp.transverse()) gens.push_back(sp.sctx()->conj_index(a));
    Truncation tr;
    tr.max_even_degree = max_even_degree;
    tr.eps_order = 0;
    tr.degree_min = 0;
    tr.degree_max = static_cast<int>(sp.transverse().size());
    return make_operator_complex(ctx, gens, tr, [&s](const GradedPoly& a) {
        return EpsSeries::constant(s.lambda1(a), 0);
    });
}

SchaetzReport schaetz_crosscheck(const BfvContext& bc, const BfvCharge& charge,
                                 const PInfinityStructure& s, int max_even_degree) {
    SchaetzReport rep;
    std::ostringstream detail;

    CochainComplex cd = bfv_complex(bc, charge, max_even_degree);
    CochainComplex ca = algebroid_complex(s, max_even_degree);

    const auto& actx = ca.context();
    const auto& bctx = cd.context();

    rep.dims_equal = true;
    std::map<int, Cohomology> hd, ha;
    for (int k = cd.degree_min(); k <= cd.degree_max(); ++k) {
        hd[k] = cohomology(cd, k);
        int da = 0;
        if (k >= ca.degree_min() && k <= ca.degree_max()) {
            ha[k] = cohomology(ca, k);
            da = ha[k].dim;
        }
        rep.dims.emplace_back(k, hd[k].dim, da);
        if (hd[k].dim != da) rep.dims_equal = false;
        detail << "degree " << k << ": dim H_D = " << hd[k].dim << ", dim H_d = " << da << "\n";
    }

    // classical projection chain-level map: kill constraints and ghost momenta,
    // rename ghosts c_mu into the transverse conjugates theta_{y_mu}
    auto project_down = [&](const GradedPoly& z) {
        return z.substitute(actx, [&](int gi) -> GradedPoly {
            for (int mu = 0; mu < bc.n_constraints(); ++mu) {
                if (gi == bc.y(mu) || gi == bc.b(mu)) return GradedPoly::zero(actx);
                if (gi == bc.c(mu))
                    return GradedPoly::generator(
                        actx, s.splitting().sctx()->conj_index(s.splitting().transverse()[static_cast<size_t>(mu)]));
            }
            const std::string& name = bctx->gen(gi).name;
            return GradedPoly::generator(actx, actx->require(name));
        });
    };

    // bijectivity of the induced map in degree 0, then the bracket tables
    rep.projection_bijective = false;
    rep.brackets_equal = false;
    const Cohomology& h0d = hd[0];
    const Cohomology& h0a = ha[0];
    if (h0d.dim == h0a.dim) {
        QMat pm(h0a.dim, h0d.dim);
        bool all_classes_ok = true;
        for (int j = 0; j < h0d.dim; ++j) {
            GradedPoly down = project_down(h0d.representatives[static_cast<size_t>(j)].classical());
            if (!s.lambda1(down).is_zero()) { all_classes_ok = false; break; }
            auto coords = class_coordinates(ca, h0a, EpsSeries::constant(down, 0));
            for (int i = 0; i < h0a.dim; ++i) pm.at(i, j) = coords[static_cast<size_t>(i)];
        }
        if (all_classes_ok && rank(pm) == h0a.dim) {
            rep.projection_bijective = true;
            // bracket tables on H^0 generators
            rep.brackets_equal = true;
            for (int i = 0; i < h0d.dim && rep.brackets_equal; ++i) {
                for (int j = 0; j < h0d.dim && rep.brackets_equal; ++j) {
                    GradedPoly zi = h0d.representatives[static_cast<size_t>(i)].classical();
                    GradedPoly zj = h0d.representatives[static_cast<size_t>(j)].classical();
                    GradedPoly br_d = bc.pois(zi, zj);
                    GradedPoly lhs = project_down(br_d);
                    GradedPoly rhs = s.lambda2(project_down(zi), project_down(zj));
                    auto lc = class_coordinates(ca, h0a, EpsSeries::constant(lhs, 0));
                    auto rc = class_coordinates(ca, h0a, EpsSeries::constant(rhs, 0));
                    if (lc != rc) {
                        rep.brackets_equal = false;
                        detail << "bracket mismatch on H^0 pair (" << i << "," << j << ")\n";
                    }
                }
            }
        } else {
            detail << "degree-0 projection is not an isomorphism\n";
        }
    }
    rep.detail = detail.str();
    return rep;
}

} // namespace gpa
