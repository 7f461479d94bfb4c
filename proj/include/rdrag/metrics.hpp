#ifndef RDRAG_METRICS_HPP
#define RDRAG_METRICS_HPP

#include <Eigen/Dense>
#include <vector>

#include "rdrag/propagation.hpp"

namespace rdrag {

// Average gate fidelity of the qubit-projected (generally non-unitary)
// block: F = Tr[Uq Uq^+]/6 + |Tr[Uq target^+]|^2 / 6.
double gate_fidelity(const Eigen::MatrixXcd& u_full, const Eigen::Matrix2cd& target);

Eigen::Matrix2cd pauli_x();

// Per-level populations |U_{j,0}|^2 and |U_{j,1}|^2 for the leakage levels j >= 2.
struct LeakageReport {
    std::vector<double> from0;
    std::vector<double> from1;
};
LeakageReport leakage_report(const Eigen::MatrixXcd& u_full);

struct GateResult {
    double t_ns = 0.0;
    double fidelity = 0.0;
    double infidelity = 0.0;
    LeakageReport leakage;
};

GateResult make_gate_result(double t_ns, const Eigen::MatrixXcd& u_full,
                            const Eigen::Matrix2cd& target);

// State-averaged fidelity under the Lindblad dynamics: six Bloch
// eigenstates propagated and compared against target rho target^+.
double dissipative_fidelity(const LadderParams& params, const ControlWaveform& wave,
                            const Eigen::Matrix2cd& target,
                            const LindbladOptions& opts = {});

}  // namespace rdrag

#endif
