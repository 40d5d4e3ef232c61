#include "gpa/cochain.hpp"

#include <algorithm>
#include <map>

namespace gpa {

EpsMatrix EpsMatrix::zero(int rows, int cols, int order) {
    EpsMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.coeff.assign(static_cast<size_t>(order) + 1, QMat(rows, cols));
    return m;
}

QMat EpsMatrix::expand() const {
    const int N = order();
    QMat out(rows * (N + 1), cols * (N + 1));
    for (int bo = 0; bo <= N; ++bo)
        for (int bi = 0; bi <= bo; ++bi) {
            const QMat& c = coeff[static_cast<size_t>(bo - bi)];
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    if (c.at(i, j) != 0) out.at(bo * rows + i, bi * cols + j) = c.at(i, j);
        }
    return out;
}

bool EpsMatrix::convolution_is_zero(const EpsMatrix& then) const {
    const int N = order();
    for (int n = 0; n <= N; ++n) {
        QMat acc(then.rows, cols);
        for (int a = 0; a <= n; ++a)
            acc = acc + then.coeff[static_cast<size_t>(a)] * coeff[static_cast<size_t>(n - a)];
        if (!acc.is_zero()) return false;
    }
    return true;
}

CochainComplex::CochainComplex(ContextPtr ctx, Truncation tr, std::vector<std::vector<Monomial>> basis,
                               std::vector<EpsMatrix> d)
    : ctx_(std::move(ctx)), tr_(tr), basis_(std::move(basis)), d_(std::move(d)) {
    const int W = tr_.degree_max - tr_.degree_min + 1;
    if (static_cast<int>(basis_.size()) != W || static_cast<int>(d_.size()) != W - 1)
        throw std::invalid_argument("complex window size mismatch");
    empty_ = EpsMatrix::zero(0, 0, tr_.eps_order);
    for (size_t k = 0; k + 1 < d_.size(); ++k)
        if (!d_[k].convolution_is_zero(d_[k + 1]))
            throw std::logic_error("differential does not square to zero at degree " +
                                   std::to_string(tr_.degree_min + static_cast<int>(k)));
}

const std::vector<Monomial>& CochainComplex::basis(int degree) const {
    static const std::vector<Monomial> none;
    int k = degree - tr_.degree_min;
    if (k < 0 || k >= static_cast<int>(basis_.size())) return none;
    return basis_[static_cast<size_t>(k)];
}

const EpsMatrix& CochainComplex::diff(int degree) const {
    int k = degree - tr_.degree_min;
    if (k < 0 || k >= static_cast<int>(d_.size())) return empty_;
    return d_[static_cast<size_t>(k)];
}

GradedPoly CochainComplex::from_coords(int degree, const std::vector<Rat>& v, int) const {
    const auto& b = basis(degree);
    GradedPoly out(ctx_);
    for (size_t i = 0; i < b.size(); ++i)
        if (v[i] != 0) out += GradedPoly::term(ctx_, b[i], v[i]);
    return out;
}

EpsSeries CochainComplex::series_from_coords(int degree, const std::vector<Rat>& expanded) const {
    const auto& b = basis(degree);
    const int N = tr_.eps_order;
    std::vector<GradedPoly> coeffs;
    for (int n = 0; n <= N; ++n) {
        std::vector<Rat> slice(expanded.begin() + static_cast<long>(n) * static_cast<long>(b.size()),
                               expanded.begin() + static_cast<long>(n + 1) * static_cast<long>(b.size()));
        coeffs.push_back(from_coords(degree, slice));
    }
    return EpsSeries::from_coeffs(std::move(coeffs));
}

std::vector<Rat> CochainComplex::to_expanded_coords(int degree, const EpsSeries& s) const {
    const auto& b = basis(degree);
    const int N = tr_.eps_order;
    if (s.order() != N) throw std::invalid_argument("eps order mismatch");
    std::map<Monomial, size_t> pos;
    for (size_t i = 0; i < b.size(); ++i) pos[b[i]] = i;
    std::vector<Rat> out(b.size() * static_cast<size_t>(N + 1), Rat(0));
    for (int n = 0; n <= N; ++n) {
        for (const auto& [m, c] : s.coeff(n).terms()) {
            auto it = pos.find(m);
            if (it == pos.end()) throw std::invalid_argument("element outside the complex basis");
            out[static_cast<size_t>(n) * b.size() + it->second] = c;
        }
    }
    return out;
}

CochainComplex CochainComplex::reduced_order(int order) const {
    if (order < 0 || order > tr_.eps_order) throw std::invalid_argument("bad reduced order");
    Truncation tr = tr_;
    tr.eps_order = order;
    std::vector<EpsMatrix> d;
    for (const auto& m : d_) {
        EpsMatrix r = EpsMatrix::zero(m.rows, m.cols, order);
        for (int n = 0; n <= order; ++n) r.coeff[static_cast<size_t>(n)] = m.coeff[static_cast<size_t>(n)];
        d.push_back(std::move(r));
    }
    return CochainComplex(ctx_, tr, basis_, std::move(d));
}

namespace {

// the boundary map out of `degree` as an expanded Q-matrix; zero map when the
// neighbouring basis is outside the window
QMat outgoing_map(const CochainComplex& cx, int degree) {
    const int N = cx.truncation().eps_order;
    const int dim = cx.rank_at(degree) * (N + 1);
    const EpsMatrix& d = cx.diff(degree);
    if (d.cols * (N + 1) != dim) return QMat(0, dim);
    return d.expand();
}

} // namespace

Cohomology cohomology(const CochainComplex& cx, int degree) {
    Cohomology h;
    h.degree = degree;
    const int nb = cx.rank_at(degree);
    const int N = cx.truncation().eps_order;
    const int dim = nb * (N + 1);
    h.cocycle_basis = QMat(dim, 0);
    h.boundary_basis = QMat(dim, 0);
    if (nb == 0) return h;

    QMat dout = outgoing_map(cx, degree);
    auto kernel = kernel_basis(dout);

    std::vector<std::vector<Rat>> image;
    if (cx.rank_at(degree - 1) > 0) {
        QMat din = cx.diff(degree - 1).expand();
        if (din.rows() == dim) image = image_basis(din);
    }

    QMat aug(dim, static_cast<int>(image.size() + kernel.size()));
    for (size_t j = 0; j < image.size(); ++j) aug.set_column(static_cast<int>(j), image[j]);
    for (size_t j = 0; j < kernel.size(); ++j)
        aug.set_column(static_cast<int>(image.size() + j), kernel[j]);
    auto pivots = aug.rref();

    h.boundary_basis = QMat::from_columns(image, dim);
    std::vector<std::vector<Rat>> reps;
    for (int p : pivots)
        if (p >= static_cast<int>(image.size())) reps.push_back(kernel[static_cast<size_t>(p) - image.size()]);
    h.dim = static_cast<int>(reps.size());
    h.cocycle_basis = QMat::from_columns(reps, dim);
    for (const auto& r : reps) h.representatives.push_back(cx.series_from_coords(degree, r));
    return h;
}

std::vector<Rat> class_coordinates(const CochainComplex& cx, const Cohomology& h,
                                   const EpsSeries& cocycle) {
    std::vector<Rat> v = cx.to_expanded_coords(h.degree, cocycle);
    QMat dout = outgoing_map(cx, h.degree);
    if (dout.rows() > 0)
        for (const auto& x : dout.apply(v))
            if (x != 0) throw std::invalid_argument("not a cocycle");
    const int dim = static_cast<int>(v.size());
    QMat sys(dim, h.boundary_basis.cols() + h.cocycle_basis.cols());
    for (int j = 0; j < h.boundary_basis.cols(); ++j) sys.set_column(j, h.boundary_basis.column(j));
    for (int j = 0; j < h.cocycle_basis.cols(); ++j)
        sys.set_column(h.boundary_basis.cols() + j, h.cocycle_basis.column(j));
    auto sol = solve(sys, v);
    if (!sol) throw std::logic_error("cocycle not decomposable (corrupt cohomology data)");
    return std::vector<Rat>(sol->begin() + h.boundary_basis.cols(), sol->end());
}

std::vector<Monomial> enumerate_monomials(const ContextPtr& ctx, const std::vector<int>& gens,
                                          int even_cap, int want_degree) {
    std::vector<int> sorted = gens;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(size_t, int)> rec = [&](size_t gi, int even_used) {
        if (gi == sorted.size()) {
            if (z_degree(cur, *ctx) == want_degree) out.push_back(cur);
            return;
        }
        int g = sorted[gi];
        const bool odd = ctx->gen(g).odd();
        int max_e = odd ? 1 : (even_cap - even_used);
        for (int e = 0; e <= max_e; ++e) {
            if (e > 0) cur.factors.emplace_back(g, e);
            rec(gi + 1, even_used + (odd ? 0 : e));
            if (e > 0) cur.factors.pop_back();
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

CochainComplex make_operator_complex(const ContextPtr& ctx, const std::vector<int>& gens,
                                     Truncation tr,
                                     const std::function<EpsSeries(const GradedPoly&)>& op) {
    const int W = tr.degree_max - tr.degree_min + 1;
    if (W <= 0) throw std::invalid_argument("empty degree window");
    std::vector<std::vector<Monomial>> basis;
    for (int d = tr.degree_min; d <= tr.degree_max; ++d)
        basis.push_back(enumerate_monomials(ctx, gens, tr.max_even_degree, d));

    std::vector<EpsMatrix> diffs;
    for (int k = 0; k + 1 < W; ++k) {
        const auto& src = basis[static_cast<size_t>(k)];
        const auto& dst = basis[static_cast<size_t>(k + 1)];
        std::map<Monomial, int> pos;
        for (size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = static_cast<int>(i);
        EpsMatrix m = EpsMatrix::zero(static_cast<int>(dst.size()), static_cast<int>(src.size()), tr.eps_order);
        for (size_t j = 0; j < src.size(); ++j) {
            EpsSeries img = op(GradedPoly::term(ctx, src[j], Rat(1)));
            if (img.order() != tr.eps_order) throw std::invalid_argument("operator eps order mismatch");
            for (int n = 0; n <= tr.eps_order; ++n) {
                for (const auto& [mon, c] : img.coeff(n).terms()) {
                    auto it = pos.find(mon);
                    if (it == pos.end())
                        throw std::invalid_argument("operator leaves the truncated basis (degree " +
                                                    std::to_string(tr.degree_min + k) + ")");
                    m.coeff[static_cast<size_t>(n)].at(it->second, static_cast<int>(j)) = c;
                }
            }
        }
        diffs.push_back(std::move(m));
    }
    for (const auto& mon : basis.back())
        if (!op(GradedPoly::term(ctx, mon, Rat(1))).is_zero())
            throw std::invalid_argument("operator is nonzero out of the top of the window");
    return CochainComplex(ctx, tr, std::move(basis), std::move(diffs));
}

} // namespace gpa
