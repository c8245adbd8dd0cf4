#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "pnpreg/geometry.hpp"
#include "pnpreg/phantom.hpp"
#include "pnpreg/selection.hpp"
#include "pnpreg/sinogram.hpp"
#include "pnpreg/solver.hpp"
#include "test_util.hpp"

using namespace pnp;

namespace {

IterationTrace make_trace(const std::vector<double>& inner,
                          const std::vector<double>& disc,
                          const std::vector<double>& cv = {}) {
    IterationTrace t;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        IterationRecord rec;
        rec.k = static_cast<int>(i + 1);
        rec.inner_product = inner[i];
        rec.discrepancy = disc[i];
        rec.cv_error = i < cv.size() ? cv[i] : 0.0;
        t.records.push_back(rec);
    }
    return t;
}

}  // namespace

TEST_CASE("evaluate_criterion computes the restricted residual ratio") {
    const auto [A, dense] = testutil::random_operator(5, 4, 71);
    const Vector x = testutil::random_vector(4, 72);
    const Vector b = A.apply(x);

    // The data argument holds only the values at the criterion rows,
    // in row-set order, exactly as split_cv/gather produce them.
    SelectionCriterion crit;
    crit.kind = CriterionKind::cross_validation;
    crit.rows = {0, 2, 4};
    const Vector b_sel = gather(b, crit.rows);
    CHECK(evaluate_criterion(crit, A, b_sel, x) <= 1e-14);

    const Vector zero(4, 0.0);
    CHECK(evaluate_criterion(crit, A, b_sel, zero) == doctest::Approx(1.0).epsilon(1e-14));

    // Hand-assembled ratio on selected rows.
    Vector x2 = x;
    x2[0] += 0.5;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < crit.rows.size(); ++i) {
        const double ri = A.row_dot(crit.rows[i], x2) - b_sel[i];
        num += ri * ri;
        den += b_sel[i] * b_sel[i];
    }
    CHECK(evaluate_criterion(crit, A, b_sel, x2) ==
          doctest::Approx(std::sqrt(num / den)).epsilon(1e-13));
}

TEST_CASE("evaluate_criterion rejects degenerate input") {
    const SparseOperator I = SparseOperator::identity(3);
    SelectionCriterion crit;
    crit.rows = {};
    CHECK_THROWS_AS(evaluate_criterion(crit, I, {}, {1, 1, 1}),
                    std::invalid_argument);
    crit.rows = {0};
    // Data length must equal the row count.
    CHECK_THROWS_AS(evaluate_criterion(crit, I, {1, 1, 1}, {1, 1, 1}),
                    std::invalid_argument);
    // All-zero reference data leaves the ratio undefined.
    CHECK_THROWS_AS(evaluate_criterion(crit, I, {0}, {1, 1, 1}),
                    std::invalid_argument);
}

TEST_CASE("select_stop cross-validation picks the earliest argmin") {
    SelectionCriterion cv;
    cv.kind = CriterionKind::cross_validation;

    // Monotone decreasing: the last index wins.
    const IterationTrace down = make_trace({1, 1, 1, 1}, {1, 1, 1, 1}, {4, 3, 2, 1});
    CHECK(select_stop(down, cv) == 4);

    // V-shape with the minimum in the interior.
    std::vector<double> v(100, 0.0);
    for (std::size_t i = 0; i < 100; ++i) {
        const double k = static_cast<double>(i + 1);
        v[i] = (k - 55.0) * (k - 55.0) + 1.0;
    }
    const IterationTrace vshape =
        make_trace(std::vector<double>(100, 1.0), std::vector<double>(100, 1.0), v);
    CHECK(select_stop(vshape, cv) == 55);

    // Ties break toward the smaller index.
    const IterationTrace tie = make_trace({1, 1, 1}, {1, 1, 1}, {2, 1, 1});
    CHECK(select_stop(tie, cv) == 2);
}

TEST_CASE("select_stop discrepancy principle stops at the threshold") {
    SelectionCriterion dp;
    dp.kind = CriterionKind::discrepancy_principle;
    dp.eta = 1.1;
    dp.delta = 2.0;  // threshold (1.1 * 2)^2 = 4.84 on the squared scale

    const IterationTrace t = make_trace({1, 1, 1, 1}, {9.0, 5.0, 4.8, 4.0});
    CHECK(select_stop(t, dp) == 3);

    // Never reached: the final index is reported.
    dp.delta = 0.1;
    CHECK(select_stop(t, dp) == 4);

    // Zero noise level: only an exact fit triggers.
    dp.delta = 0.0;
    const IterationTrace exact = make_trace({1, 1, 1}, {2.0, 0.0, 1.0});
    CHECK(select_stop(exact, dp) == 2);
}

TEST_CASE("discrepancy stopping index is nonincreasing in eta") {
    std::vector<double> disc;
    for (int i = 0; i < 50; ++i) disc.push_back(100.0 * std::exp(-0.2 * i) + 1.0);
    const IterationTrace t = make_trace(std::vector<double>(50, 1.0), disc);
    SelectionCriterion dp;
    dp.kind = CriterionKind::discrepancy_principle;
    dp.delta = 1.2;
    int prev = 50;
    for (double eta = 1.01; eta < 3.0; eta += 0.1) {
        dp.eta = eta;
        const int k = select_stop(t, dp);
        CHECK(k <= prev);
        prev = k;
    }
}

TEST_CASE("classify_family labels descent traces I3") {
    const IterationTrace t = make_trace({1.0, 0.5, 2.0}, {9, 8, 7});
    CHECK(classify_family(t, Corridor{1.0, 4.0}) == FamilyLabel::i3);
}

TEST_CASE("classify_family is scale-invariant in the inner products") {
    const IterationTrace a = make_trace({1.0, 0.5, 2.0}, {9, 8, 7});
    const IterationTrace b = make_trace({1e-9, 0.5e-9, 2e-9}, {9, 8, 7});
    const Corridor c{1.0, 4.0};
    CHECK(classify_family(a, c) == classify_family(b, c));
}

TEST_CASE("classify_family labels corridor traces I5") {
    // A nonpositive inner product rules out I3; the discrepancies enter the
    // corridor and never fall back below eps1 afterwards.
    const IterationTrace t = make_trace({1.0, -0.5, 1.0, -1.0}, {9.0, 3.0, 2.5, 3.5});
    CHECK(classify_family(t, Corridor{2.0, 4.0}) == FamilyLabel::i5);
}

TEST_CASE("classify_family reports unclassified on corridor violations") {
    // Second record sits inside the corridor (<= eps2) but its successor
    // drops below eps1: overfitting past the corridor floor.
    const IterationTrace t = make_trace({1.0, -0.5, 1.0}, {9.0, 3.0, 1.0});
    CHECK(classify_family(t, Corridor{2.0, 4.0}) == FamilyLabel::unclassified);
}

TEST_CASE("classify_family with a collapsed corridor") {
    // eps1 == eps2 leaves no room: once the discrepancy touches the line,
    // the successor must not cross strictly below it.
    const IterationTrace pos = make_trace({1.0, 1.0, 1.0}, {9.0, 3.0, 1.0});
    CHECK(classify_family(pos, Corridor{3.0, 3.0}) == FamilyLabel::i3);
    const IterationTrace cross = make_trace({1.0, -1.0, 1.0}, {9.0, 3.0, 1.0});
    CHECK(classify_family(cross, Corridor{3.0, 3.0}) == FamilyLabel::unclassified);
    const IterationTrace hold = make_trace({1.0, -1.0, 1.0}, {9.0, 3.0, 3.0});
    CHECK(classify_family(hold, Corridor{3.0, 3.0}) == FamilyLabel::i5);
}

TEST_CASE("classify_family validates the corridor ordering") {
    const IterationTrace t = make_trace({1.0}, {1.0});
    CHECK_THROWS_AS(classify_family(t, Corridor{2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("default_corridor squares the noise level") {
    const Corridor c0 = default_corridor(0.0);
    CHECK(c0.eps1 == 0.0);
    CHECK(c0.eps2 == 0.0);
    const Corridor c2 = default_corridor(2.0);
    CHECK(c2.eps1 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(c2.eps2 == doctest::Approx(9.0).epsilon(1e-15));
    double prev = 1e300;
    for (double d : {1.0, 0.1, 0.01, 0.001}) {
        CHECK(default_corridor(d).eps2 < prev);
        prev = default_corridor(d).eps2;
    }
}

TEST_CASE("detect_semiconvergence on canonical shapes") {
    const SemiconvergenceReport a = detect_semiconvergence({3, 2, 1, 2, 3}, 1);
    CHECK(a.is_semiconvergent);
    CHECK(a.argmin_index == 2);

    const SemiconvergenceReport b = detect_semiconvergence({5, 4, 3, 2, 1}, 1);
    CHECK_FALSE(b.is_semiconvergent);
    CHECK(b.argmin_index == 4);
}

TEST_CASE("detect_semiconvergence smooths before judging") {
    // A single downward spike at the end must not mask the upturn.
    std::vector<double> v;
    for (int i = 0; i < 40; ++i) v.push_back(10.0 - i * 0.4);
    for (int i = 0; i < 40; ++i) v.push_back(10.0 - 16.0 + i * 0.3);
    v.back() = 0.1;
    const SemiconvergenceReport rep = detect_semiconvergence(v, 5);
    CHECK(rep.is_semiconvergent);
    CHECK(rep.argmin_index > 30);
    CHECK(rep.argmin_index < 50);
}

TEST_CASE("landweber recovery error on noisy data is semi-convergent") {
    // At 1% noise the recovery-error minimum of this geometry sits near
    // k = 13000 (the noisy LS limit has rel error 1.67 vs the 0.43 dip), so a
    // short run shows only the descent leg. 10% noise moves the turn to
    // k = 184 and the 3000-iteration tail clears the 5% detection threshold.
    Geometry g;
    g.kind = GeometryKind::parallel;
    g.grid_n = 64;
    g.n_angles = 30;
    g.n_rays = 95;
    const SparseOperator A = build_radon(g);
    const Image truth = shepp_logan(64, 0.0, 1.0);
    const Vector b = add_noise(A.apply(truth.data), 0.10, 7).data;

    SolverConfig cfg;
    cfg.max_iters = 3000;
    cfg.tau_safety = 1.0;
    SolverMonitor mon;
    mon.truth = &truth;
    const IterationTrace t = landweber(A, b, cfg, mon);
    std::vector<double> mse;
    for (const IterationRecord& rec : t.records) mse.push_back(rec.mse_vs_truth);
    const SemiconvergenceReport rep = detect_semiconvergence(mse, 5);
    CHECK(rep.is_semiconvergent);
    CHECK(rep.argmin_index > 0);
    CHECK(rep.argmin_index < 1000);

    // The same run truncated to its descent leg must not be flagged.
    std::vector<double> head(mse.begin(), mse.begin() + 120);
    CHECK_FALSE(detect_semiconvergence(head, 5).is_semiconvergent);
}
