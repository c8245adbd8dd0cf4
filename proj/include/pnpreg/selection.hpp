#pragma once

#include <cstddef>
#include <vector>

#include "pnpreg/sparse_operator.hpp"
#include "pnpreg/trace.hpp"
#include "pnpreg/vec.hpp"

namespace pnp {

enum class CriterionKind { cross_validation, discrepancy_principle };

// Stopping rule description. `rows` indexes the rows of the full projection
// operator the rule evaluates on (the held-out rows for cross-validation).
struct SelectionCriterion {
    CriterionKind kind = CriterionKind::cross_validation;
    std::vector<std::size_t> rows;
    double eta = 1.1;    // discrepancy-principle multiplier
    double delta = 0.0;  // realized noise magnitude ||b_noisy - b_clean||
};

// Data-term corridor [eps1, eps2] used to recognize runs that keep the
// residual near the noise level instead of descending forever.
struct Corridor {
    double eps1 = 0.0;
    double eps2 = 0.0;
};

// eps1 = (1.0 * delta)^2, eps2 = (1.5 * delta)^2.
Corridor default_corridor(double delta);

// Relative residual ||A_rows x - b|| / ||b|| over criterion.rows of A;
// b holds the values at those rows, in the same order.
double evaluate_criterion(const SelectionCriterion& criterion, const SparseOperator& A,
                          const Vector& b, const Vector& x);

// Iteration number k to stop at. cross_validation: argmin of the recorded
// criterion values (earliest on ties). discrepancy_principle: first k with
// sqrt(discrepancy) <= eta * delta, else the final k.
int select_stop(const IterationTrace& trace, const SelectionCriterion& criterion);

// i3 when every recorded inner product is positive; else i5 when, whenever
// the data term dips to eps2 or below, it does not fall below eps1 at the
// next step; else unclassified.
FamilyLabel classify_family(const IterationTrace& trace, const Corridor& corridor);

struct SemiconvergenceReport {
    bool is_semiconvergent = false;
    std::size_t argmin_index = 0;  // 0-based index into the smoothed sequence
    std::vector<double> smoothed;
};

// Centered moving average of half-width (window-1)/2, then a check that the
// smoothed tail sits at least 5% above the smoothed minimum.
SemiconvergenceReport detect_semiconvergence(const std::vector<double>& values, int window);

}  // namespace pnp
