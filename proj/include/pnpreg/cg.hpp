#pragma once

#include <cstddef>

#include "pnpreg/sparse_operator.hpp"
#include "pnpreg/vec.hpp"

namespace pnp {

struct CgReport {
    int iterations_used = 0;
    double final_residual_norm = 0.0;
    bool converged = false;
};

// Conjugate gradients on the normal-equation system
//     (A^T A + rho * L^T L) x = rhs.
// Stops when ||r|| <= tol * ||rhs|| or after max_iters steps; tol = 0 runs a
// fixed iteration count. Starts from x0 if given, else from zero.
// L may be null, which means L = identity (the rho * x term is formed
// directly, no operator product).
CgReport cg_solve(const SparseOperator& A, const SparseOperator* L, double rho,
                  const Vector& rhs, int max_iters, double tol, Vector& x,
                  const Vector* x0 = nullptr);

}  // namespace pnp
