#include "pnpreg/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pnpreg/rng.hpp"

namespace pnp {

SparseOperator SparseOperator::from_triplets(std::size_t rows, std::size_t cols,
                                             std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
        if (t.row >= rows || t.col >= cols)
            throw std::invalid_argument("sparse operator: entry index out of range");
        if (!std::isfinite(t.value))
            throw std::invalid_argument("sparse operator: non-finite entry value");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t i = 1; i < triplets.size(); ++i) {
        if (triplets[i].row == triplets[i - 1].row && triplets[i].col == triplets[i - 1].col)
            throw std::invalid_argument("sparse operator: duplicate entry at (" +
                                        std::to_string(triplets[i].row) + ", " +
                                        std::to_string(triplets[i].col) + ")");
    }

    SparseOperator A;
    A.rows_ = rows;
    A.cols_ = cols;
    A.row_ptr_.assign(rows + 1, 0);
    A.row_entries_.reserve(triplets.size());
    A.values_.reserve(triplets.size());
    for (const Triplet& t : triplets) {
        ++A.row_ptr_[t.row + 1];
        A.row_entries_.push_back({t.col, t.value});
        A.values_.push_back(t.value);
    }
    for (std::size_t r = 0; r < rows; ++r) A.row_ptr_[r + 1] += A.row_ptr_[r];
    A.build_columns();
    return A;
}

SparseOperator SparseOperator::identity(std::size_t n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(t));
}

void SparseOperator::build_columns() {
    col_ptr_.assign(cols_ + 1, 0);
    for (const Entry& e : row_entries_) ++col_ptr_[e.index + 1];
    for (std::size_t c = 0; c < cols_; ++c) col_ptr_[c + 1] += col_ptr_[c];
    col_entries_.resize(row_entries_.size());
    std::vector<std::size_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i) {
            const Entry& e = row_entries_[i];
            col_entries_[next[e.index]++] = {r, e.value};
        }
    }
}

void SparseOperator::apply_into(const Vector& x, Vector& out) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: size mismatch");
    out.assign(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i)
            s += row_entries_[i].value * x[row_entries_[i].index];
        out[r] = s;
    }
}

void SparseOperator::apply_adjoint_into(const Vector& y, Vector& out) const {
    if (y.size() != rows_) throw std::invalid_argument("apply_adjoint: size mismatch");
    out.assign(cols_, 0.0);
    for (std::size_t c = 0; c < cols_; ++c) {
        double s = 0.0;
        for (std::size_t i = col_ptr_[c]; i < col_ptr_[c + 1]; ++i)
            s += col_entries_[i].value * y[col_entries_[i].index];
        out[c] = s;
    }
}

Vector SparseOperator::apply(const Vector& x) const {
    Vector out;
    apply_into(x, out);
    return out;
}

Vector SparseOperator::apply_adjoint(const Vector& y) const {
    Vector out;
    apply_adjoint_into(y, out);
    return out;
}

double SparseOperator::row_dot(std::size_t row, const Vector& x) const {
    if (row >= rows_) throw std::invalid_argument("row_dot: row out of range");
    double s = 0.0;
    for (std::size_t i = row_ptr_[row]; i < row_ptr_[row + 1]; ++i)
        s += row_entries_[i].value * x[row_entries_[i].index];
    return s;
}

SparseOperator select_rows(const SparseOperator& A, const std::vector<std::size_t>& rows) {
    std::vector<Triplet> t;
    for (std::size_t out_r = 0; out_r < rows.size(); ++out_r) {
        if (rows[out_r] >= A.rows())
            throw std::invalid_argument("select_rows: row index out of range");
        for (const SparseOperator::Entry& e : A.row(rows[out_r]))
            t.push_back({out_r, e.index, e.value});
    }
    return SparseOperator::from_triplets(rows.size(), A.cols(), std::move(t));
}

Vector grad_ls(const SparseOperator& A, const Vector& x, const Vector& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("grad_ls: data size mismatch");
    Vector r = A.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    Vector g = A.apply_adjoint(r);
    for (double& v : g) v *= 2.0;
    return g;
}

SparseOperator gradient_operator(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0)
        throw std::invalid_argument("gradient_operator: empty image");
    const std::size_t n = width * height;
    std::vector<Triplet> t;
    t.reserve(4 * n);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const std::size_t p = r * width + c;
            if (c + 1 < width) {
                t.push_back({p, p + 1, 1.0});
                t.push_back({p, p, -1.0});
            }
            if (r + 1 < height) {
                t.push_back({n + p, p + width, 1.0});
                t.push_back({n + p, p, -1.0});
            }
        }
    }
    return SparseOperator::from_triplets(2 * n, n, std::move(t));
}

double power_iteration_norm_sq(const SparseOperator& A, int iters, std::uint64_t seed) {
    if (iters < 1) throw std::invalid_argument("power iteration: iters must be >= 1");
    Vector v(A.cols());
    RngEngine eng = make_engine(seed);
    fill_standard_normal(eng, v);
    double nv = norm2(v);
    if (nv == 0.0) {
        v.assign(A.cols(), 1.0);  // cannot happen with a continuous draw; stay safe
        nv = norm2(v);
    }
    for (double& e : v) e /= nv;

    Vector Av, w;
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        A.apply_into(v, Av);
        A.apply_adjoint_into(Av, w);
        lambda = dot(v, w);  // Rayleigh quotient of A^T A at unit v, equals ||Av||^2
        double nw = norm2(w);
        if (nw == 0.0) return 0.0;  // v in the null space: operator norm estimate is 0
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
    }
    return lambda;
}

}  // namespace pnp
