#include "rdrag/metrics.hpp"

#include <cmath>

namespace rdrag {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;
using cd = std::complex<double>;

double gate_fidelity(const MatrixXcd& u_full, const Matrix2cd& target) {
    const Matrix2cd uq = u_full.topLeftCorner(2, 2);
    const double t1 = (uq * uq.adjoint()).trace().real();
    const cd t2 = (uq * target.adjoint()).trace();
    return (t1 + std::norm(t2)) / 6.0;
}

Matrix2cd pauli_x() {
    Matrix2cd x;
    x << 0, 1, 1, 0;
    return x;
}

LeakageReport leakage_report(const MatrixXcd& u_full) {
    LeakageReport report;
    for (int j = 2; j < u_full.rows(); ++j) {
        report.from0.push_back(std::norm(u_full(j, 0)));
        report.from1.push_back(std::norm(u_full(j, 1)));
    }
    return report;
}

GateResult make_gate_result(double t_ns, const MatrixXcd& u_full, const Matrix2cd& target) {
    GateResult out;
    out.t_ns = t_ns;
    out.fidelity = gate_fidelity(u_full, target);
    out.infidelity = 1.0 - out.fidelity;
    out.leakage = leakage_report(u_full);
    return out;
}

double dissipative_fidelity(const LadderParams& params, const ControlWaveform& wave,
                            const Matrix2cd& target, const LindbladOptions& opts) {
    const int m = params.levels;
    Eigen::Vector2cd zero(1.0, 0.0), one(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<Eigen::Vector2cd> states = {
        zero, one, s * (zero + one), s * (zero - one),
        s * (zero + cd(0, 1) * one), s * (zero - cd(0, 1) * one)};

    double acc = 0.0;
    for (const auto& psi : states) {
        MatrixXcd rho0 = MatrixXcd::Zero(m, m);
        rho0.topLeftCorner(2, 2) = psi * psi.adjoint();
        const DensityState rho_t = propagate_lindblad(params, wave, {rho0}, opts);
        MatrixXcd ideal = MatrixXcd::Zero(m, m);
        ideal.topLeftCorner(2, 2) = target * (psi * psi.adjoint()) * target.adjoint();
        acc += (ideal * rho_t.rho).trace().real();
    }
    return acc / 6.0;
}

}  // namespace rdrag
