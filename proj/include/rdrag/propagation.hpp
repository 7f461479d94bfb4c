#ifndef RDRAG_PROPAGATION_HPP
#define RDRAG_PROPAGATION_HPP

#include <Eigen/Dense>

#include "rdrag/model.hpp"
#include "rdrag/synthesis_fwd.hpp"

namespace rdrag {

enum class Stepper {
    Midpoint,       // 2nd-order: exp(-i H(t_mid) dt) per step
    CommutatorFree4 // 4th-order two-exponential commutator-free scheme
};

struct Propagator {
    Eigen::MatrixXcd u;
    int steps = 0;
    double truncation_estimate = 0.0;  // fidelity change of the last halving
    bool converged = true;
};

struct PropagationOptions {
    int steps_hint = 256;
    double fidelity_tol = 1e-11;  // doubling stops below this change
    int max_steps = 1 << 22;
    Stepper stepper = Stepper::CommutatorFree4;
    // When >0, run exactly this many steps without the doubling check
    // (used inside optimizer inner loops; results stay deterministic).
    int fixed_steps = 0;
};

// Time-ordered propagator over [0, T]; step count doubles until the
// projected gate fidelity changes by less than fidelity_tol.
Propagator propagate_unitary(const LadderParams& params, const ControlWaveform& wave,
                             const PropagationOptions& opts = {});

struct DensityState {
    Eigen::MatrixXcd rho;
};

struct LindbladOptions {
    int steps_hint = 1024;
    double trace_tol = 1e-9;
    double state_tol = 1e-10;  // max element change between halvings
    int max_steps = 1 << 22;
};

// RK4 integration of rho' = -i[H, rho] + gamma D[a] rho + gamma_phi D[a^+ a] rho.
DensityState propagate_lindblad(const LadderParams& params, const ControlWaveform& wave,
                                const DensityState& rho0,
                                const LindbladOptions& opts = {});

// Hermitian-generator matrix exponential exp(-i * h * dt), via
// eigendecomposition or scaling-and-squaring Pade (both paths exposed so
// tests can cross-check them).
Eigen::MatrixXcd expm_hermitian_eig(const Eigen::MatrixXcd& h, double dt);
Eigen::MatrixXcd expm_hermitian_pade(const Eigen::MatrixXcd& h, double dt);

}  // namespace rdrag

#endif
