#pragma once

#include <optional>
#include <vector>

#include "gpa/rational.hpp"

namespace gpa {

// Dense exact matrix over Q. Small sizes only; row reduction picks the first
// nonzero pivot in column order so every derived basis is deterministic.
class QMat {
public:
    QMat() = default;
    QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}

    static QMat identity(int n);
    static QMat from_columns(const std::vector<std::vector<Rat>>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    QMat operator*(const QMat& rhs) const;
    QMat operator+(const QMat& rhs) const;
    QMat operator-() const;
    bool operator==(const QMat& rhs) const = default;
    QMat transpose() const;
    bool is_zero() const;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;
    std::vector<Rat> column(int j) const;
    void set_column(int j, const std::vector<Rat>& v);

    // In-place reduced row echelon form; returns pivot column indices.
    std::vector<int> rref();

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

int rank(QMat m);
std::vector<std::vector<Rat>> kernel_basis(QMat m);
// Column-space basis: the columns of the original matrix at pivot positions.
std::vector<std::vector<Rat>> image_basis(const QMat& m);
std::optional<std::vector<Rat>> solve(const QMat& a, const std::vector<Rat>& b);
std::optional<QMat> inverse(const QMat& m);

// Basis of the span of the given vectors (echelon representatives).
std::vector<std::vector<Rat>> span_basis(const std::vector<std::vector<Rat>>& vecs, int dim);
bool in_span(const std::vector<std::vector<Rat>>& basis, const std::vector<Rat>& v, int dim);

// Reduce v modulo the span of basis columns; zero iff v lies in the span.
std::vector<Rat> reduce_mod_span(const QMat& basis_cols, const std::vector<Rat>& v);

} // namespace gpa
