#ifndef RDRAG_MODEL_HPP
#define RDRAG_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "rdrag/synthesis_fwd.hpp"

namespace rdrag {

// Physical model of the driven anharmonic ladder: level count, per-level
// anharmonicities, relative drive strengths and decay rates.
// All frequencies angular, rad/ns; decay rates in 1/ns.
struct LadderParams {
    int levels = 4;                 // M >= 3
    std::vector<double> delta;      // delta[j] for j = 1..M-1, delta[1] = 0
    std::vector<double> lambda;     // lambda[j] for j = 1..M-1, lambda[1] = 1
    double gamma = 0.0;             // 1 / T1
    double gamma_phi = 0.0;         // 1 / T2*

    double delta2() const { return delta.size() > 2 ? delta[2] : 0.0; }
    double delta3() const { return delta.size() > 3 ? delta[3] : 0.0; }
    double lambda2() const { return lambda.size() > 2 ? lambda[2] : 0.0; }
    double lambda3() const { return lambda.size() > 3 ? lambda[3] : 0.0; }

    void validate() const;  // throws std::domain_error on violated invariants
};

// Duffing reduction: delta_j = delta2 * j (j - 1) / 2, lambda_j = sqrt(j),
// zero decay rates.
LadderParams duffing_ladder(double delta2, int levels);

// The RWA ladder Hamiltonian at time t: diagonal delta_j + j * delta(t),
// nearest-neighbour couplings lambda_j (Omega_x + i Omega_y) / 2.
Eigen::MatrixXcd hamiltonian(const LadderParams& params, const ControlWaveform& wave,
                             double t);

// Annihilation operator truncated to M levels.
Eigen::MatrixXcd annihilation(int levels);

}  // namespace rdrag

#endif
