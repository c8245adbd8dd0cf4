#pragma once

#include <string>
#include <vector>

#include "pnpreg/image.hpp"

namespace pnp {

// Family of the realized iteration, judged from the recorded trace:
// i3  = every step moved along a direction of decrease of the data term,
// i5  = after the descent phase the data term stayed inside a corridor,
// unclassified = neither pattern held.
enum class FamilyLabel { unclassified, i3, i5 };

std::string to_string(FamilyLabel label);

struct IterationRecord {
    int k = 0;  // 1-based
    Image x;    // data-consistency iterate, kept only when store_iterates is on
    Image z;    // reported iterate, kept only when store_iterates is on
    double inner_product = 0.0;    // <direction, -step * gradient at previous iterate>
    double grad_step_norm = 0.0;   // length of the data-consistency move
    double denoise_change = 0.0;   // ||H(input) - input||
    double alpha_used = 1.0;       // attenuation coefficient actually applied
    double discrepancy = 0.0;      // ||A v - b_fit||^2 at the family iterate
    double d_err = 0.0;            // sqrt(discrepancy) / ||b_fit||
    double cv_error = 0.0;         // criterion value at z (NaN without a criterion)
    double mse_vs_truth = 0.0;     // relative error vs truth (NaN without truth)
    double psnr = 0.0;             // NaN without truth
    double ssim = 0.0;             // NaN without truth or for images under 11x11
};

struct IterationTrace {
    std::vector<IterationRecord> records;
    FamilyLabel family_label = FamilyLabel::unclassified;
    Image final_x;
    Image final_z;
    double tau_used = 0.0;          // 0 for solvers that take no explicit step size
    double norm_sq_estimate = 0.0;  // ||A||^2 estimate behind the step bound
    double b_fit_norm = 0.0;
};

}  // namespace pnp
