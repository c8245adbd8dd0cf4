#include "pnpreg/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnp {

std::string to_string(FamilyLabel label) {
    switch (label) {
        case FamilyLabel::i3:
            return "I3";
        case FamilyLabel::i5:
            return "I5";
        case FamilyLabel::unclassified:
            return "unclassified";
    }
    return "unclassified";
}

Corridor default_corridor(double delta) {
    if (delta < 0.0) throw std::invalid_argument("default_corridor: negative delta");
    return {(1.0 * delta) * (1.0 * delta), (1.5 * delta) * (1.5 * delta)};
}

double evaluate_criterion(const SelectionCriterion& criterion, const SparseOperator& A,
                          const Vector& b, const Vector& x) {
    if (criterion.rows.empty())
        throw std::invalid_argument("evaluate_criterion: empty row set");
    if (b.size() != criterion.rows.size())
        throw std::invalid_argument("evaluate_criterion: data size must match row set");
    if (x.size() != A.cols())
        throw std::invalid_argument("evaluate_criterion: image size mismatch");
    double res_sq = 0.0;
    double b_sq = 0.0;
    for (std::size_t i = 0; i < criterion.rows.size(); ++i) {
        const double r = A.row_dot(criterion.rows[i], x) - b[i];
        res_sq += r * r;
        b_sq += b[i] * b[i];
    }
    if (b_sq == 0.0) throw std::invalid_argument("evaluate_criterion: zero reference data");
    return std::sqrt(res_sq / b_sq);
}

int select_stop(const IterationTrace& trace, const SelectionCriterion& criterion) {
    if (trace.records.empty()) throw std::invalid_argument("select_stop: empty trace");
    if (criterion.kind == CriterionKind::cross_validation) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < trace.records.size(); ++i)
            if (trace.records[i].cv_error < trace.records[best].cv_error) best = i;
        if (!std::isfinite(trace.records[best].cv_error))
            throw std::invalid_argument("select_stop: trace has no recorded criterion values");
        return trace.records[best].k;
    }
    const double threshold = criterion.eta * criterion.delta;
    for (const IterationRecord& rec : trace.records)
        if (std::sqrt(rec.discrepancy) <= threshold) return rec.k;
    return trace.records.back().k;
}

FamilyLabel classify_family(const IterationTrace& trace, const Corridor& corridor) {
    if (trace.records.empty()) return FamilyLabel::unclassified;
    if (!(corridor.eps1 <= corridor.eps2))
        throw std::invalid_argument("classify_family: corridor must satisfy eps1 <= eps2");

    bool all_descent = true;
    for (const IterationRecord& rec : trace.records)
        if (!(rec.inner_product > 0.0)) {
            all_descent = false;
            break;
        }
    if (all_descent) return FamilyLabel::i3;

    // Once the data term has come down to the corridor, it may not punch
    // through the floor on the next step.
    for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
        if (trace.records[i].discrepancy <= corridor.eps2 &&
            trace.records[i + 1].discrepancy < corridor.eps1)
            return FamilyLabel::unclassified;
    }
    return FamilyLabel::i5;
}

SemiconvergenceReport detect_semiconvergence(const std::vector<double>& values, int window) {
    if (values.empty()) throw std::invalid_argument("detect_semiconvergence: empty sequence");
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("detect_semiconvergence: window must be odd and positive");

    SemiconvergenceReport report;
    const std::size_t n = values.size();
    const std::size_t half = static_cast<std::size_t>(window - 1) / 2;
    report.smoothed.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        double s = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) s += values[j];
        report.smoothed[i] = s / static_cast<double>(hi - lo + 1);
    }

    report.argmin_index = static_cast<std::size_t>(
        std::min_element(report.smoothed.begin(), report.smoothed.end()) -
        report.smoothed.begin());
    const double m = report.smoothed[report.argmin_index];
    const double tail = report.smoothed.back();
    report.is_semiconvergent = m > 0.0 ? (tail - m) >= 0.05 * m : tail > m;
    return report;
}

}  // namespace pnp
