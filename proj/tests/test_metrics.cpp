#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "rdrag/metrics.hpp"
#include "rdrag/synthesis.hpp"

using namespace rdrag;

namespace {
constexpr double kPi = std::numbers::pi;
const double kDelta2 = -2.0 * kPi * 0.225;
const std::complex<double> kI{0.0, 1.0};

Eigen::MatrixXcd embed_x(int levels) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(levels, levels);
    u(0, 0) = u(1, 1) = 0.0;
    u(0, 1) = u(1, 0) = 1.0;
    return u;
}
}  // namespace

TEST_CASE("gate fidelity hand values") {
    const int m = 4;
    SUBCASE("exact gate") { CHECK(gate_fidelity(embed_x(m), pauli_x()) == doctest::Approx(1.0)); }
    SUBCASE("global phase invariance") {
        const Eigen::MatrixXcd u = std::exp(kI * 0.71) * embed_x(m);
        CHECK(gate_fidelity(u, pauli_x()) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("uniformly damped block: F = (2 s^2 + 4 s^2) / 6") {
        Eigen::MatrixXcd u = embed_x(m);
        u(0, 1) = u(1, 0) = 0.99;
        CHECK(gate_fidelity(u, pauli_x()) == doctest::Approx(0.9801).epsilon(1e-14));
    }
    SUBCASE("orthogonal gate: only the trace-preservation term survives") {
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);  // identity vs target X
        CHECK(gate_fidelity(u, pauli_x()) == doctest::Approx(2.0 / 6.0).epsilon(1e-14));
    }
}

TEST_CASE("leakage report reads the correct matrix elements") {
    Eigen::MatrixXcd u = embed_x(4);
    u(2, 0) = 0.1;  // |2><0|
    u(3, 1) = 0.2 * kI;
    const LeakageReport rep = leakage_report(u);
    REQUIRE(rep.from0.size() == 2);
    CHECK(rep.from0[0] == doctest::Approx(0.01));
    CHECK(rep.from0[1] == doctest::Approx(0.0));
    CHECK(rep.from1[0] == doctest::Approx(0.0));
    CHECK(rep.from1[1] == doctest::Approx(0.04));
}

TEST_CASE("dissipative fidelity reduces to the unitary one without decay") {
    const LadderParams p = duffing_ladder(kDelta2, 4);
    const ControlWaveform w = synthesize(Family::Drag, p, 9.0, {});
    const Propagator prop = propagate_unitary(p, w);
    const double fu = gate_fidelity(prop.u, pauli_x());
    const double fd = dissipative_fidelity(p, w, pauli_x());
    CHECK(fd == doctest::Approx(fu).epsilon(1e-8));
}

TEST_CASE("gate result packaging") {
    const LadderParams p = duffing_ladder(kDelta2, 4);
    const ControlWaveform w = synthesize(Family::R1D, p, 10.0, {});
    const Propagator prop = propagate_unitary(p, w);
    const GateResult r = make_gate_result(10.0, prop.u, pauli_x());
    CHECK(r.t_ns == 10.0);
    CHECK(r.infidelity == doctest::Approx(1.0 - r.fidelity).epsilon(1e-14));
    CHECK(r.leakage.from0.size() == 2);
}
