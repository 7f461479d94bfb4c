#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rdrag/calibration.hpp"

using namespace rdrag;

namespace {
constexpr double kPi = std::numbers::pi;
const double kDelta2 = -2.0 * kPi * 0.225;

LadderParams canonical() { return duffing_ladder(kDelta2, 4); }
}  // namespace

TEST_CASE("predicted prefactors at T = 15 ns") {
    const PrefactorSet p = predicted_prefactors(canonical(), 15.0);
    CHECK(p.alpha12 > 1.1);
    CHECK(p.alpha12 < 1.3);
    CHECK(p.beta > 0.97);
    CHECK(p.beta < 0.995);
    REQUIRE(p.delta_c.has_value());
    CHECK(*p.delta_c > 0.0);
}

TEST_CASE("nelder-mead improves on the predicted starting point") {
    OptimizeOptions opts;
    opts.max_evals = 500;
    const CalibrationRun run = optimize_prefactors(Family::Drag, canonical(), 12.0, opts);
    CHECK(run.final_infidelity <= run.initial_infidelity);
    CHECK(run.final_infidelity < 5e-6);
    CHECK(run.evaluations <= 3 * 500);
    CHECK_FALSE(run.trace.empty());
}

TEST_CASE("optimizer runs are reproducible for a fixed seed") {
    OptimizeOptions opts;
    opts.max_evals = 120;
    const CalibrationRun a = optimize_prefactors(Family::Drag, canonical(), 13.0, opts);
    const CalibrationRun b = optimize_prefactors(Family::Drag, canonical(), 13.0, opts);
    CHECK(a.final_infidelity == b.final_infidelity);
    CHECK(a.result.beta == b.result.beta);
}

TEST_CASE("analytic sweep: infidelity decreases with gate time") {
    SweepOptions opts;
    opts.mode = PrefactorMode::Analytic;
    const auto points = sweep(Family::Drag, canonical(), {10.0, 14.0}, opts);
    REQUIRE(points.size() == 2);
    CHECK(points[0].feasible);
    CHECK(points[1].feasible);
    CHECK(points[1].result.infidelity < points[0].result.infidelity);
}

TEST_CASE("sweep marks gate times below the feasibility bound") {
    SweepOptions opts;
    opts.mode = PrefactorMode::Analytic;
    const double tmin = tmin_r1d(3, kDelta2);
    const auto points = sweep(Family::R1D, canonical(), {0.8 * tmin, 1.5 * tmin}, opts);
    CHECK_FALSE(points[0].feasible);
    CHECK_FALSE(points[0].error.empty());
    CHECK(points[1].feasible);
}
