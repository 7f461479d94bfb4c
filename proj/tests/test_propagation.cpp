#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "rdrag/metrics.hpp"
#include "rdrag/propagation.hpp"
#include "rdrag/synthesis.hpp"

using namespace rdrag;

namespace {
constexpr double kPi = std::numbers::pi;
const double kDelta2 = -2.0 * kPi * 0.225;
const std::complex<double> kI{0.0, 1.0};

LadderParams canonical() { return duffing_ladder(kDelta2, 4); }

Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}
}  // namespace

TEST_CASE("matrix exponential: eigendecomposition and Pade paths agree") {
    const Eigen::MatrixXcd h = random_hermitian(4, 7);
    const Eigen::MatrixXcd a = expm_hermitian_eig(h, 0.37);
    const Eigen::MatrixXcd b = expm_hermitian_pade(h, 0.37);
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a * a.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("free evolution accumulates the diagonal phases") {
    LadderParams p = canonical();
    const double T = 7.0, dc = 0.11;
    ControlWaveform w;
    w.omega_x = make_constant(0.0, T);
    w.omega_y = make_constant(0.0, T);
    w.delta = make_constant(dc, T);
    w.duration = T;
    const Propagator prop = propagate_unitary(p, w);
    for (int j = 0; j < 4; ++j) {
        const double level = (j >= 1 ? p.delta[j] : 0.0) + j * dc;
        const std::complex<double> expected = std::exp(-kI * level * T);
        CHECK(std::abs(prop.u(j, j) - expected) < 1e-10);
    }
}

TEST_CASE("propagator is unitary and converged") {
    const LadderParams p = canonical();
    const ControlWaveform w = synthesize(Family::Drag, p, 10.0, {});
    const Propagator prop = propagate_unitary(p, w);
    CHECK(prop.converged);
    CHECK((prop.u * prop.u.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("midpoint and commutator-free steppers converge to the same gate") {
    const LadderParams p = canonical();
    const ControlWaveform w = synthesize(Family::Drag, p, 9.0, {});
    PropagationOptions cf4;
    const Propagator a = propagate_unitary(p, w, cf4);
    PropagationOptions mid;
    mid.stepper = Stepper::Midpoint;
    mid.fidelity_tol = 1e-10;
    mid.steps_hint = 1 << 14;
    const Propagator b = propagate_unitary(p, w, mid);
    CHECK(gate_fidelity(a.u, pauli_x()) ==
          doctest::Approx(gate_fidelity(b.u, pauli_x())).epsilon(1e-8));
}

TEST_CASE("fixed-step propagation is deterministic and close to the converged gate") {
    const LadderParams p = canonical();
    const ControlWaveform w = synthesize(Family::Drag, p, 10.0, {});
    const Propagator ref = propagate_unitary(p, w);
    PropagationOptions fixed;
    fixed.fixed_steps = ref.steps;
    const Propagator a = propagate_unitary(p, w, fixed);
    const Propagator b = propagate_unitary(p, w, fixed);
    CHECK((a.u - b.u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.u - ref.u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lindblad: amplitude damping and dephasing rates") {
    LadderParams p = canonical();
    const double T = 40.0, t1 = 500.0, t2 = 300.0;  // ns
    p.gamma = 1.0 / t1;
    p.gamma_phi = 1.0 / t2;
    ControlWaveform w;
    w.omega_x = make_constant(0.0, T);
    w.omega_y = make_constant(0.0, T);
    w.delta = make_constant(0.0, T);
    w.duration = T;

    SUBCASE("population decay of the first excited state") {
        DensityState s;
        s.rho = Eigen::MatrixXcd::Zero(4, 4);
        s.rho(1, 1) = 1.0;
        const DensityState out = propagate_lindblad(p, w, s);
        CHECK(std::real(out.rho(1, 1)) == doctest::Approx(std::exp(-T / t1)).epsilon(1e-8));
        CHECK(std::abs(out.rho.trace() - 1.0) < 1e-9);
    }
    SUBCASE("coherence decay of the equal superposition") {
        DensityState s;
        s.rho = Eigen::MatrixXcd::Zero(4, 4);
        s.rho(0, 0) = s.rho(0, 1) = s.rho(1, 0) = s.rho(1, 1) = 0.5;
        const DensityState out = propagate_lindblad(p, w, s);
        const double expected = 0.5 * std::exp(-(0.5 / t1 + 0.5 / t2) * T);
        CHECK(std::abs(out.rho(0, 1)) == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("closed-system lindblad agrees with the unitary propagator") {
    const LadderParams p = canonical();
    const ControlWaveform w = synthesize(Family::Drag, p, 8.0, {});
    const Propagator u = propagate_unitary(p, w);
    DensityState s;
    s.rho = Eigen::MatrixXcd::Zero(4, 4);
    s.rho(0, 0) = 1.0;
    const DensityState out = propagate_lindblad(p, w, s);
    const Eigen::MatrixXcd expected = u.u * s.rho * u.u.adjoint();
    CHECK((out.rho - expected).cwiseAbs().maxCoeff() < 1e-8);
}
