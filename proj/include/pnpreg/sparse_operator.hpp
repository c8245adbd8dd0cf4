#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pnpreg/vec.hpp"

namespace pnp {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

// Immutable sparse matrix stored in both row-compressed and column-compressed
// form, so forward application, adjoint application and per-row traversal are
// all sequential scans.
class SparseOperator {
  public:
    struct Entry {
        std::size_t index;  // column for row traversal, row for column traversal
        double value;
    };

    SparseOperator() = default;

    // Duplicate (row, col) pairs and out-of-range indices are rejected.
    static SparseOperator from_triplets(std::size_t rows, std::size_t cols,
                                        std::vector<Triplet> triplets);

    static SparseOperator identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    void apply_into(const Vector& x, Vector& out) const;
    void apply_adjoint_into(const Vector& y, Vector& out) const;

    Vector apply(const Vector& x) const;
    Vector apply_adjoint(const Vector& y) const;

    // <A(row), x> for a single row; used by criterion evaluation on row subsets.
    double row_dot(std::size_t row, const Vector& x) const;

    std::size_t row_nnz(std::size_t row) const { return row_ptr_[row + 1] - row_ptr_[row]; }

    std::span<const Entry> row(std::size_t r) const {
        return {row_entries_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    std::span<const Entry> column(std::size_t c) const {
        return {col_entries_.data() + col_ptr_[c], col_ptr_[c + 1] - col_ptr_[c]};
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_;   // rows_+1
    std::vector<Entry> row_entries_;     // (col, value), ascending col within a row
    std::vector<std::size_t> col_ptr_;   // cols_+1
    std::vector<Entry> col_entries_;     // (row, value), ascending row within a column
    std::vector<double> values_;         // kept only for nnz(); cheap

    void build_columns();
};

// New operator keeping only the given rows of A, in the given order.
SparseOperator select_rows(const SparseOperator& A, const std::vector<std::size_t>& rows);

// 2 * A^T (A x - b). The least-squares data term here is ||Ax - b||^2 without
// a 1/2 factor, hence the 2.
Vector grad_ls(const SparseOperator& A, const Vector& x, const Vector& b);

// Estimate of ||A||_2^2 = largest eigenvalue of A^T A, by power iteration on
// A^T A started from a seeded random unit vector. Estimates are nondecreasing
// in the iteration count and never exceed the true value.
double power_iteration_norm_sq(const SparseOperator& A, int iters, std::uint64_t seed);

// Forward-difference gradient of a width x height image as a sparse operator:
// the first width*height rows are horizontal differences, the rest vertical
// (zero rows at the far edges keep the layout rectangular).
SparseOperator gradient_operator(std::size_t width, std::size_t height);

}  // namespace pnp
