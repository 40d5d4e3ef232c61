#include "gpa/linalg.hpp"

#include <stdexcept>

namespace gpa {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_columns(const std::vector<std::vector<Rat>>& cols, int rows) {
    QMat m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
        if (static_cast<int>(cols[static_cast<size_t>(j)].size()) != rows)
            throw std::invalid_argument("column length mismatch");
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    return m;
}

QMat QMat::operator*(const QMat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix size mismatch");
    QMat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    return out;
}

QMat QMat::operator+(const QMat& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix size mismatch");
    QMat out = *this;
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

QMat QMat::operator-() const {
    QMat out = *this;
    for (auto& v : out.a_) v = -v;
    return out;
}

QMat QMat::transpose() const {
    QMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool QMat::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

std::vector<Rat> QMat::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector size mismatch");
    std::vector<Rat> out(static_cast<size_t>(rows_), Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
    return out;
}

std::vector<Rat> QMat::column(int j) const {
    std::vector<Rat> out(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) out[static_cast<size_t>(i)] = at(i, j);
    return out;
}

void QMat::set_column(int j, const std::vector<Rat>& v) {
    for (int i = 0; i < rows_; ++i) at(i, j) = v[static_cast<size_t>(i)];
}

std::vector<int> QMat::rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < cols_ && r < rows_; ++j) {
        int p = -1;
        for (int i = r; i < rows_; ++i)
            if (at(i, j) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int k = 0; k < cols_; ++k) std::swap(at(p, k), at(r, k));
        Rat inv = Rat(1) / at(r, j);
        for (int k = j; k < cols_; ++k) at(r, k) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || at(i, j) == 0) continue;
            Rat f = at(i, j);
            for (int k = j; k < cols_; ++k) at(i, k) -= f * at(r, k);
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

int rank(QMat m) { return static_cast<int>(m.rref().size()); }

std::vector<std::vector<Rat>> kernel_basis(QMat m) {
    const int n = m.cols();
    auto pivots = m.rref();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int j : pivots) is_pivot[static_cast<size_t>(j)] = true;
    std::vector<std::vector<Rat>> out;
    for (int j = 0; j < n; ++j) {
        if (is_pivot[static_cast<size_t>(j)]) continue;
        std::vector<Rat> v(static_cast<size_t>(n), Rat(0));
        v[static_cast<size_t>(j)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<size_t>(pivots[r])] = -m.at(static_cast<int>(r), j);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<Rat>> image_basis(const QMat& m) {
    QMat r = m;
    auto pivots = r.rref();
    std::vector<std::vector<Rat>> out;
    for (int j : pivots) out.push_back(m.column(j));
    return out;
}

std::optional<std::vector<Rat>> solve(const QMat& a, const std::vector<Rat>& b) {
    QMat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[static_cast<size_t>(i)];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt; // inconsistent
    std::vector<Rat> x(static_cast<size_t>(a.cols()), Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

std::optional<QMat> inverse(const QMat& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const int n = m.rows();
    QMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = aug.rref();
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
    QMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::vector<std::vector<Rat>> span_basis(const std::vector<std::vector<Rat>>& vecs, int dim) {
    if (vecs.empty()) return {};
    QMat rows(static_cast<int>(vecs.size()), dim);
    for (size_t i = 0; i < vecs.size(); ++i)
        for (int j = 0; j < dim; ++j) rows.at(static_cast<int>(i), j) = vecs[i][static_cast<size_t>(j)];
    auto pivots = rows.rref();
    std::vector<std::vector<Rat>> out;
    for (size_t r = 0; r < pivots.size(); ++r) {
        std::vector<Rat> v(static_cast<size_t>(dim));
        for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] = rows.at(static_cast<int>(r), j);
        out.push_back(std::move(v));
    }
    return out;
}

bool in_span(const std::vector<std::vector<Rat>>& basis, const std::vector<Rat>& v, int dim) {
    QMat cols = QMat::from_columns(basis, dim);
    return solve(cols, v).has_value();
}

std::vector<Rat> reduce_mod_span(const QMat& basis_cols, const std::vector<Rat>& v) {
    // Row-reduce [B | v]; if v is dependent the residual is zero, otherwise
    // return v minus its projection onto the pivot combination.
    auto sol = solve(basis_cols, v);
    if (!sol) return v;
    std::vector<Rat> res = v;
    for (int j = 0; j < basis_cols.cols(); ++j) {
        if ((*sol)[static_cast<size_t>(j)] == 0) continue;
        for (int i = 0; i < basis_cols.rows(); ++i)
            res[static_cast<size_t>(i)] -= (*sol)[static_cast<size_t>(j)] * basis_cols.at(i, j);
    }
    return res;
}

} // namespace gpa
