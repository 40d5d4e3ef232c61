#pragma once

#include <optional>
#include <vector>

#include "gpa/linalg.hpp"

namespace gpa {

// Pointwise linear data of a Poisson (or symplectic) vector space: at least
// one of omega / pi present, both skew; when both are given they must be
// exact inverses of one another.
struct BilinearData {
    int dim = 0;
    std::optional<QMat> omega;
    std::optional<QMat> pi;

    static BilinearData from_omega(QMat w);
    static BilinearData from_pi(QMat p);
    static BilinearData from_both(QMat w, QMat p);

    // matrix of the sharp map V* -> V (columns = images of e^j)
    QMat sharp() const;
};

struct Subspace {
    int ambient_dim = 0;
    std::vector<std::vector<Rat>> basis; // linearly independent columns

    static Subspace span(int ambient_dim, std::vector<std::vector<Rat>> vectors); // reduces to a basis
    int dim() const { return static_cast<int>(basis.size()); }
    QMat basis_matrix() const { return QMat::from_columns(basis, ambient_dim); }
    bool contains(const std::vector<Rat>& v) const;
    bool contains(const Subspace& other) const;
};

struct SubspaceReport {
    bool symplectic = false;   // omega|_W nondegenerate; mirrors cosymplectic when only pi is given
    bool cosymplectic = false; // W + sharp(W^0) = V directly
    bool coisotropic = false;  // sharp(W^0) inside W
    bool pre_poisson = true;   // trivially constant rank at a single point
    int rank_phi = 0;          // rank of (V -> V/W) o sharp restricted to W^0
    Subspace characteristic;   // W intersect sharp(W^0)
    Subspace ac;               // W^0 intersect sharp^{-1}(W), inside V*
};

Subspace annihilator(const Subspace& w);                      // inside V*
Subspace sharp_image(const BilinearData& data, const Subspace& w0);

SubspaceReport classify(const BilinearData& data, const Subspace& w);

// Smallest deterministic extension W' of W that is symplectic (omega case) or
// cosymplectic (pi case) with W coisotropic inside W'; the complement of
// W + sharp(W^0) is filled with the lexicographically first coordinate vectors.
Subspace coisotropic_extension(const BilinearData& data, const Subspace& w);

// Poisson structure induced on a cosymplectic subspace W' (Dirac reduction):
// returns the pi matrix in the given basis of W'.
QMat induced_poisson_on(const BilinearData& data, const Subspace& wprime);

// Restrict data to W' and express W (a subspace of W') in the W'-basis.
std::pair<BilinearData, Subspace> restrict_to(const BilinearData& data, const Subspace& wprime,
                                              const Subspace& w);

// Classifies graph(dphi) inside (M x N, (-piM) + piN).
SubspaceReport graph_coisotropy_check(const BilinearData& pi_m, const BilinearData& pi_n,
                                      const QMat& dphi);

} // namespace gpa
