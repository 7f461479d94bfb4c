#include "rdrag/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rdrag {

void LadderParams::validate() const {
    if (levels < 3) throw std::domain_error("LadderParams: need at least 3 levels");
    if (static_cast<int>(delta.size()) != levels ||
        static_cast<int>(lambda.size()) != levels)
        throw std::domain_error("LadderParams: delta/lambda lists must have M entries");
    if (delta[1] != 0.0)
        throw std::domain_error("LadderParams: delta_1 must be 0 (resonant drive)");
    if (lambda[1] != 1.0) throw std::domain_error("LadderParams: lambda_1 must be 1");
    if (gamma < 0.0 || gamma_phi < 0.0)
        throw std::domain_error("LadderParams: decay rates must be nonnegative");
}

LadderParams duffing_ladder(double delta2, int levels) {
    if (levels < 3) throw std::domain_error("duffing_ladder: need at least 3 levels");
    LadderParams p;
    p.levels = levels;
    p.delta.assign(levels, 0.0);
    p.lambda.assign(levels, 0.0);
    for (int j = 1; j < levels; ++j) {
        p.delta[j] = delta2 * j * (j - 1) / 2.0;
        p.lambda[j] = std::sqrt(double(j));
    }
    return p;
}

Eigen::MatrixXcd hamiltonian(const LadderParams& params, const ControlWaveform& wave,
                             double t) {
    const int m = params.levels;
    const double wx = (*wave.omega_x)(t);
    const double wy = (*wave.omega_y)(t);
    const double det = (*wave.delta)(t);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    for (int j = 1; j < m; ++j) {
        h(j, j) = params.delta[j] + j * det;
        // sigma^x_{j-1,j} and sigma^y_{j-1,j} = i(|j-1><j| - |j><j-1|)
        // sigma^y has -i in its upper element, so the (j-1, j) entry of the
        // drive is lambda_j (Omega_x - i Omega_y) / 2.
        h(j - 1, j) = params.lambda[j] * std::complex<double>(wx / 2.0, -wy / 2.0);
        h(j, j - 1) = std::conj(h(j - 1, j));
    }
    return h;
}

Eigen::MatrixXcd annihilation(int levels) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(levels, levels);
    for (int j = 1; j < levels; ++j) a(j - 1, j) = std::sqrt(double(j));
    return a;
}

}  // namespace rdrag
