#ifndef RDRAG_SYNTHESIS_FWD_HPP
#define RDRAG_SYNTHESIS_FWD_HPP

#include <string>

#include "rdrag/signal.hpp"

namespace rdrag {

// The assembled control: in-phase and quadrature drive envelopes plus the
// detuning profile delta(t), entering the Hamiltonian as sum_j j delta |j><j|.
struct ControlWaveform {
    SignalPtr omega_x;
    SignalPtr omega_y;
    SignalPtr delta;
    double duration = 0.0;
    std::string tag;  // hann | drag | r1d | r2d | r2d+superlinear | ...
};

}  // namespace rdrag

#endif
