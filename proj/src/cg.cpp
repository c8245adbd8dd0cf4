#include "pnpreg/cg.hpp"

#include <cmath>
#include <stdexcept>

namespace pnp {

namespace {

// out = (A^T A + rho L^T L) p, with L = identity when null.
void normal_apply(const SparseOperator& A, const SparseOperator* L, double rho,
                  const Vector& p, Vector& Ap, Vector& Lp, Vector& scratch, Vector& out) {
    A.apply_into(p, Ap);
    A.apply_adjoint_into(Ap, out);
    if (rho == 0.0) return;
    if (L == nullptr) {
        for (std::size_t i = 0; i < p.size(); ++i) out[i] += rho * p[i];
    } else {
        L->apply_into(p, Lp);
        L->apply_adjoint_into(Lp, scratch);
        for (std::size_t i = 0; i < p.size(); ++i) out[i] += rho * scratch[i];
    }
}

}  // namespace

CgReport cg_solve(const SparseOperator& A, const SparseOperator* L, double rho,
                  const Vector& rhs, int max_iters, double tol, Vector& x,
                  const Vector* x0) {
    if (rhs.size() != A.cols())
        throw std::invalid_argument("cg_solve: rhs size must match operator columns");
    if (L != nullptr && (L->cols() != A.cols()))
        throw std::invalid_argument("cg_solve: L column count must match operator columns");
    if (max_iters < 0 || tol < 0.0 || rho < 0.0)
        throw std::invalid_argument("cg_solve: max_iters, tol and rho must be nonnegative");

    const std::size_t n = A.cols();
    const double rhs_norm = norm2(rhs);

    CgReport report;
    Vector r = rhs, p, Ap, Lp, scratch, Mp;
    if (x0 != nullptr) {
        if (x0->size() != n) throw std::invalid_argument("cg_solve: x0 size mismatch");
        x = *x0;
        normal_apply(A, L, rho, x, Ap, Lp, scratch, Mp);
        for (std::size_t i = 0; i < n; ++i) r[i] -= Mp[i];
    } else {
        x.assign(n, 0.0);
    }

    double rr = norm2_sq(r);
    report.final_residual_norm = std::sqrt(rr);
    if (report.final_residual_norm <= tol * rhs_norm) {
        report.converged = true;
        return report;
    }

    p = r;
    for (int it = 0; it < max_iters; ++it) {
        normal_apply(A, L, rho, p, Ap, Lp, scratch, Mp);
        double curvature = dot(p, Mp);
        if (!(curvature > 0.0)) {
            // Singular or indefinite system (possible when rho = 0 and A is
            // rank-deficient): stop at the current iterate.
            report.final_residual_norm = std::sqrt(rr);
            report.converged = false;
            return report;
        }
        double alpha = rr / curvature;
        axpy(alpha, p, x);
        axpy(-alpha, Mp, r);
        double rr_new = norm2_sq(r);
        report.iterations_used = it + 1;
        report.final_residual_norm = std::sqrt(rr_new);
        if (report.final_residual_norm <= tol * rhs_norm || rr_new == 0.0) {
            report.converged = true;
            return report;
        }
        double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    report.converged = report.final_residual_norm <= tol * rhs_norm;
    return report;
}

}  // namespace pnp
