#include "rdrag/propagation.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "rdrag/errors.hpp"

namespace rdrag {

namespace {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

double projected_x_fidelity(const MatrixXcd& u) {
    const Eigen::Matrix2cd uq = u.topLeftCorner(2, 2);
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    const double t1 = (uq * uq.adjoint()).trace().real();
    const cd t2 = (uq * x).trace();  // X is self-adjoint
    return (t1 + std::norm(t2)) / 6.0;
}

MatrixXcd run_unitary(const LadderParams& params, const ControlWaveform& wave, int n,
                      Stepper stepper) {
    const int m = params.levels;
    const double dt = wave.duration / n;
    MatrixXcd u = MatrixXcd::Identity(m, m);
    if (stepper == Stepper::Midpoint) {
        for (int i = 0; i < n; ++i) {
            const double t_mid = (i + 0.5) * dt;
            u = expm_hermitian_eig(hamiltonian(params, wave, t_mid), dt) * u;
        }
        return u;
    }
    // 4th-order commutator-free scheme: two Gauss nodes, two exponentials.
    const double root3 = std::sqrt(3.0);
    const double c1 = 0.5 - root3 / 6.0, c2 = 0.5 + root3 / 6.0;
    const double a1 = 0.25 + root3 / 6.0, a2 = 0.25 - root3 / 6.0;
    for (int i = 0; i < n; ++i) {
        const double t0 = i * dt;
        const MatrixXcd h1 = hamiltonian(params, wave, t0 + c1 * dt);
        const MatrixXcd h2 = hamiltonian(params, wave, t0 + c2 * dt);
        u = expm_hermitian_eig(a2 * h1 + a1 * h2, dt) *
            (expm_hermitian_eig(a1 * h1 + a2 * h2, dt) * u);
    }
    return u;
}

}  // namespace

Eigen::MatrixXcd expm_hermitian_eig(const Eigen::MatrixXcd& h, double dt) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    Eigen::VectorXcd phases(ev.size());
    for (int k = 0; k < ev.size(); ++k)
        phases(k) = std::exp(cd(0.0, -ev(k) * dt));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd expm_hermitian_pade(const Eigen::MatrixXcd& h, double dt) {
    const MatrixXcd gen = cd(0.0, -dt) * h;
    return gen.exp();
}

Propagator propagate_unitary(const LadderParams& params, const ControlWaveform& wave,
                             const PropagationOptions& opts) {
    params.validate();
    Propagator out;
    if (opts.fixed_steps > 0) {
        out.u = run_unitary(params, wave, opts.fixed_steps, opts.stepper);
        out.steps = opts.fixed_steps;
        out.truncation_estimate = 0.0;
        return out;
    }
    int n = opts.steps_hint;
    MatrixXcd u = run_unitary(params, wave, n, opts.stepper);
    double fid = projected_x_fidelity(u);
    while (true) {
        const int n2 = 2 * n;
        if (n2 > opts.max_steps) {
            std::ostringstream os;
            os << "propagate_unitary: no convergence to " << opts.fidelity_tol
               << " within " << opts.max_steps << " steps";
            throw NumericalError(os.str());
        }
        MatrixXcd u2 = run_unitary(params, wave, n2, opts.stepper);
        const double fid2 = projected_x_fidelity(u2);
        const double change = std::abs(fid2 - fid);
        u = std::move(u2);
        n = n2;
        fid = fid2;
        if (change <= opts.fidelity_tol) {
            out.truncation_estimate = change;
            break;
        }
    }
    const double unitarity =
        (u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (unitarity > 1e-10)
        throw NumericalError("propagate_unitary: unitarity defect above 1e-10");
    out.u = std::move(u);
    out.steps = n;
    return out;
}

namespace {

MatrixXcd run_lindblad(const LadderParams& params, const ControlWaveform& wave,
                       const MatrixXcd& rho0, int n) {
    const int m = params.levels;
    const MatrixXcd a = annihilation(m);
    const MatrixXcd num = a.adjoint() * a;
    const MatrixXcd num2 = num * num;
    const double g = params.gamma, gp = params.gamma_phi;
    const double dt = wave.duration / n;
    const cd mi(0.0, -1.0);

    auto rhs = [&](double t, const MatrixXcd& rho) -> MatrixXcd {
        const MatrixXcd h = hamiltonian(params, wave, t);
        MatrixXcd d = mi * (h * rho - rho * h);
        if (g != 0.0)
            d += g * (a * rho * a.adjoint() - 0.5 * (num * rho + rho * num));
        if (gp != 0.0)
            d += gp * (num * rho * num - 0.5 * (num2 * rho + rho * num2));
        return d;
    };

    MatrixXcd rho = rho0;
    for (int i = 0; i < n; ++i) {
        const double t = i * dt;
        const MatrixXcd k1 = rhs(t, rho);
        const MatrixXcd k2 = rhs(t + dt / 2, rho + (dt / 2) * k1);
        const MatrixXcd k3 = rhs(t + dt / 2, rho + (dt / 2) * k2);
        const MatrixXcd k4 = rhs(t + dt, rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

}  // namespace

DensityState propagate_lindblad(const LadderParams& params, const ControlWaveform& wave,
                                const DensityState& rho0, const LindbladOptions& opts) {
    params.validate();
    const double tr0 = rho0.rho.trace().real();
    int n = opts.steps_hint;
    MatrixXcd rho = run_lindblad(params, wave, rho0.rho, n);
    while (true) {
        const int n2 = 2 * n;
        if (n2 > opts.max_steps)
            throw NumericalError("propagate_lindblad: no convergence within step limit");
        MatrixXcd rho2 = run_lindblad(params, wave, rho0.rho, n2);
        const double change = (rho2 - rho).cwiseAbs().maxCoeff();
        const double drift = std::abs(rho2.trace().real() - tr0);
        rho = std::move(rho2);
        n = n2;
        if (change <= opts.state_tol) {
            if (drift > opts.trace_tol)
                throw NumericalError("propagate_lindblad: trace drift above tolerance");
            break;
        }
    }
    return DensityState{std::move(rho)};
}

}  // namespace rdrag
