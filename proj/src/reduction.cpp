#include "gpa/reduction.hpp"

#include <stdexcept>

namespace gpa {

namespace {
void check_skew(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != -m.at(j, i)) throw std::invalid_argument("matrix not skew");
}
} // namespace

BilinearData BilinearData::from_omega(QMat w) {
    check_skew(w);
    BilinearData d;
    d.dim = w.rows();
    auto inv = inverse(w);
    if (!inv) throw std::invalid_argument("omega is degenerate");
    d.pi = *inv;
    d.omega = std::move(w);
    return d;
}

BilinearData BilinearData::from_pi(QMat p) {
    check_skew(p);
    BilinearData d;
    d.dim = p.rows();
    d.pi = std::move(p);
    return d;
}

BilinearData BilinearData::from_both(QMat w, QMat p) {
    check_skew(w);
    check_skew(p);
    if (w.rows() != p.rows()) throw std::invalid_argument("omega/pi dimension mismatch");
    if (!(p * w == QMat::identity(w.rows())))
        throw std::invalid_argument("pi is not the inverse of omega");
    BilinearData d;
    d.dim = w.rows();
    d.omega = std::move(w);
    d.pi = std::move(p);
    return d;
}

QMat BilinearData::sharp() const {
    if (pi) return *pi;
    throw std::logic_error("no pi matrix");
}

Subspace Subspace::span(int ambient_dim, std::vector<std::vector<Rat>> vectors) {
    Subspace s;
    s.ambient_dim = ambient_dim;
    s.basis = span_basis(vectors, ambient_dim);
    return s;
}

bool Subspace::contains(const std::vector<Rat>& v) const {
    bool zero = true;
    for (const auto& x : v)
        if (x != 0) zero = false;
    if (zero) return true;
    if (basis.empty()) return false;
    return in_span(basis, v, ambient_dim);
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& v : other.basis)
        if (!contains(v)) return false;
    return true;
}

Subspace annihilator(const Subspace& w) {
    // alpha with alpha(b) = 0 for every basis vector b: kernel of B^T
    if (w.basis.empty()) {
        Subspace full;
        full.ambient_dim = w.ambient_dim;
        for (int i = 0; i < w.ambient_dim; ++i) {
            std::vector<Rat> e(static_cast<size_t>(w.ambient_dim), Rat(0));
            e[static_cast<size_t>(i)] = 1;
            full.basis.push_back(std::move(e));
        }
        return full;
    }
    QMat bt = w.basis_matrix().transpose();
    Subspace out;
    out.ambient_dim = w.ambient_dim;
    out.basis = kernel_basis(bt);
    return out;
}

Subspace sharp_image(const BilinearData& data, const Subspace& w0) {
    QMat sh = data.sharp();
    std::vector<std::vector<Rat>> vecs;
    for (const auto& a : w0.basis) vecs.push_back(sh.apply(a));
    return Subspace::span(data.dim, std::move(vecs));
}

SubspaceReport classify(const BilinearData& data, const Subspace& w) {
    if (w.ambient_dim != data.dim) throw std::invalid_argument("subspace/space dimension mismatch");
    SubspaceReport rep;
    Subspace ann = annihilator(w);
    Subspace orth = sharp_image(data, ann); // sharp(W^0), the generalized orthogonal

    rep.coisotropic = w.contains(orth);

    std::vector<std::vector<Rat>> joint = w.basis;
    joint.insert(joint.end(), orth.basis.begin(), orth.basis.end());
    int joint_rank = static_cast<int>(span_basis(joint, data.dim).size());
    rep.cosymplectic = joint_rank == data.dim && w.dim() + orth.dim() == data.dim;
    rep.rank_phi = joint_rank - w.dim();

    if (data.omega) {
        // omega restricted to W nondegenerate
        QMat b = w.basis_matrix();
        QMat restr = b.transpose() * (*data.omega) * b;
        rep.symplectic = rank(restr) == w.dim();
    } else {
        rep.symplectic = rep.cosymplectic;
    }

    // characteristic subspace W cap sharp(W^0)
    {
        std::vector<std::vector<Rat>> inter;
        if (!w.basis.empty() && !orth.basis.empty()) {
            QMat sys(data.dim, w.dim() + orth.dim());
            for (int j = 0; j < w.dim(); ++j) sys.set_column(j, w.basis[static_cast<size_t>(j)]);
            for (int j = 0; j < orth.dim(); ++j)
                for (int i = 0; i < data.dim; ++i)
                    sys.at(i, w.dim() + j) = -orth.basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
            for (const auto& k : kernel_basis(sys)) {
                std::vector<Rat> v(static_cast<size_t>(data.dim), Rat(0));
                for (int j = 0; j < w.dim(); ++j)
                    for (int i = 0; i < data.dim; ++i)
                        v[static_cast<size_t>(i)] += k[static_cast<size_t>(j)] * w.basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
                inter.push_back(std::move(v));
            }
        }
        rep.characteristic = Subspace::span(data.dim, std::move(inter));
    }

    // AC = { alpha in W^0 : sharp(alpha) in W }
    {
        std::vector<std::vector<Rat>> ac;
        if (!ann.basis.empty()) {
            QMat sh = data.sharp();
            QMat sys(data.dim, ann.dim() + w.dim());
            for (int j = 0; j < ann.dim(); ++j)
                sys.set_column(j, sh.apply(ann.basis[static_cast<size_t>(j)]));
            for (int j = 0; j < w.dim(); ++j)
                for (int i = 0; i < data.dim; ++i)
                    sys.at(i, ann.dim() + j) = -w.basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
            for (const auto& k : kernel_basis(sys)) {
                std::vector<Rat> a(static_cast<size_t>(data.dim), Rat(0));
                for (int j = 0; j < ann.dim(); ++j)
                    for (int i = 0; i < data.dim; ++i)
                        a[static_cast<size_t>(i)] += k[static_cast<size_t>(j)] * ann.basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
                ac.push_back(std::move(a));
            }
        }
        rep.ac = Subspace::span(data.dim, std::move(ac));
    }
    return rep;
}

Subspace coisotropic_extension(const BilinearData& data, const Subspace& w) {
    Subspace orth = sharp_image(data, annihilator(w));
    std::vector<std::vector<Rat>> spanning = w.basis;
    spanning.insert(spanning.end(), orth.basis.begin(), orth.basis.end());
    auto cur = span_basis(spanning, data.dim);
    // fill the complement of W + sharp(W^0) with coordinate vectors, first
    // index first
    Subspace out;
    out.ambient_dim = data.dim;
    out.basis = w.basis;
    int have = static_cast<int>(cur.size());
    for (int i = 0; i < data.dim && have < data.dim; ++i) {
        std::vector<Rat> e(static_cast<size_t>(data.dim), Rat(0));
        e[static_cast<size_t>(i)] = 1;
        if (in_span(cur, e, data.dim)) continue;
        cur.push_back(e);
        cur = span_basis(cur, data.dim);
        out.basis.push_back(std::move(e));
        ++have;
    }
    return out;
}

QMat induced_poisson_on(const BilinearData& data, const Subspace& wprime) {
    SubspaceReport rep = classify(data, wprime);
    if (!rep.cosymplectic)
        throw std::invalid_argument("induced Poisson structure needs a cosymplectic subspace");
    const int n = data.dim;
    const int k = wprime.dim();
    Subspace orth = sharp_image(data, annihilator(wprime));
    QMat p(n, n);
    for (int j = 0; j < k; ++j) p.set_column(j, wprime.basis[static_cast<size_t>(j)]);
    for (int j = 0; j < orth.dim(); ++j) p.set_column(k + j, orth.basis[static_cast<size_t>(j)]);
    auto pinv = inverse(p);
    if (!pinv) throw std::logic_error("direct sum decomposition failed");
    // rows of P^{-1} restricted to the W' block give the dual projection
    QMat r(k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = pinv->at(i, j);
    return r * data.sharp() * r.transpose();
}

std::pair<BilinearData, Subspace> restrict_to(const BilinearData& data, const Subspace& wprime,
                                              const Subspace& w) {
    QMat bw = wprime.basis_matrix();
    Subspace w_in;
    w_in.ambient_dim = wprime.dim();
    for (const auto& v : w.basis) {
        auto sol = solve(bw, v);
        if (!sol) throw std::invalid_argument("W is not contained in W'");
        w_in.basis.push_back(*sol);
    }
    if (data.omega && !data.pi) {
        QMat restr = bw.transpose() * (*data.omega) * bw;
        return {BilinearData::from_omega(std::move(restr)), std::move(w_in)};
    }
    return {BilinearData::from_pi(induced_poisson_on(data, wprime)), std::move(w_in)};
}

SubspaceReport graph_coisotropy_check(const BilinearData& pi_m, const BilinearData& pi_n,
                                      const QMat& dphi) {
    const int m = pi_m.dim, n = pi_n.dim;
    if (dphi.rows() != n || dphi.cols() != m)
        throw std::invalid_argument("dphi must map the source to the target");
    QMat prod(m + n, m + n);
    QMat sm = pi_m.sharp(), sn = pi_n.sharp();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) prod.at(i, j) = -sm.at(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod.at(m + i, m + j) = sn.at(i, j);
    std::vector<std::vector<Rat>> graph;
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> v(static_cast<size_t>(m + n), Rat(0));
        v[static_cast<size_t>(j)] = 1;
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(m + i)] = dphi.at(i, j);
        graph.push_back(std::move(v));
    }
    return classify(BilinearData::from_pi(std::move(prod)), Subspace::span(m + n, std::move(graph)));
}

} // namespace gpa
