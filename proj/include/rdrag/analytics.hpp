#ifndef RDRAG_ANALYTICS_HPP
#define RDRAG_ANALYTICS_HPP

#include <array>
#include <complex>

#include "rdrag/signal.hpp"

namespace rdrag {

// First-order Magnus elements of the toggling-frame error Hamiltonian.
// theta(t) is the accumulated rotation angle int_0^t omega_x; the qubit
// off-diagonal elements carry half-angle factors, the 1-2 / 0-2 leakage
// phases are approximated as phi_1 = delta2 * t.
struct MagnusElements {
    std::complex<double> z11_minus_z00;  // diagonal phase error
    std::complex<double> z01;            // qubit rotation error
    std::complex<double> z12;
    std::complex<double> z02;
    std::array<std::complex<double>, 3> h12;  // alpha-power decomposition of z12
    std::array<std::complex<double>, 3> h02;  // and of z02
};

MagnusElements magnus_elements(const Signal& omega_x, double delta2, double lambda2,
                               double alpha, double delta_c = 0.0);

enum class DeltaCMode { Integral, ClosedForm };

// Constant detuning zeroing the imaginary part of the qubit rotation error.
// Integral mode evaluates the quadrature expression over the given pulse;
// closed form assumes the Hann shape: 0.712 (lambda2^2 - 4 alpha) pi^2 / (delta2 T^2).
double predict_delta_c(const Signal& omega_x, double alpha, double lambda2,
                       double delta2, DeltaCMode mode = DeltaCMode::Integral);
double delta_c_closed_form(double alpha, double lambda2, double delta2, double T);

enum class BetaMode { Cubic, Linearized };

// Amplitude correction zeroing the real part of the rotation error. Cubic
// mode solves the integrated cubic near beta = 1; linearized mode is the
// closed-form mean-field expression (Hann assumptions).
// omega_x == nullptr uses the pi-normalized Hann pulse of duration T.
double predict_beta(double alpha, double delta_c, double lambda2, double delta2,
                    double T, BetaMode mode = BetaMode::Cubic,
                    const Signal* omega_x = nullptr);

// DRAG prefactor minimizing |Z1[1,2]|^2 + |Z1[0,2]|^2 under the mean-field
// linearization of the alpha powers. delta3 enters only through the
// phi_l = delta_l t approximation and is unused in the leading expression;
// it is kept for interface stability.
double predict_alpha(double lambda2, double delta2, double delta3, double T,
                     const Signal* omega_x = nullptr);

}  // namespace rdrag

#endif
