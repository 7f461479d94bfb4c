#ifndef RDRAG_SYNTHESIS_HPP
#define RDRAG_SYNTHESIS_HPP

#include <cmath>
#include <iosfwd>
#include <optional>

#include "rdrag/envelopes.hpp"
#include "rdrag/model.hpp"
#include "rdrag/synthesis_fwd.hpp"

namespace rdrag {

enum class DetuningMode { TimeDependent, Constant, None };

// Calibration knobs: overall amplitude beta, quadrature ratio alpha12,
// recursion strengths alpha02 / alpha13, constant detuning delta_c.
// Defaults reproduce the analytical pulses. delta_c == nullopt keeps the
// waveform's own detuning profile; a set value replaces it.
struct PrefactorSet {
    double beta = 1.0;
    double alpha12 = 1.0;
    double alpha02 = 1.0;
    double alpha13 = 1.0;
    std::optional<double> delta_c;

    bool is_identity() const {
        return beta == 1.0 && alpha12 == 1.0 && alpha02 == 1.0 && alpha13 == 1.0 &&
               !delta_c.has_value();
    }
};

// Standard DRAG over a base envelope: Omega_y = -alpha * d(Omega_x)/dt / delta2,
// detuning from the Stark formula, a constant, or none.
ControlWaveform synth_drag(SignalPtr base, double delta2, double lambda2, double alpha,
                           DetuningMode mode, double delta_c = 0.0);

// First recursion: Omega_x = sqrt(W^2 + (2 a02 / delta2^2)(Wdot^2 + Wddot W)).
// Requires the trial pulse to satisfy boundary conditions to order 2.
SignalPtr synth_r1d(SignalPtr omega1, double delta2, double alpha02 = 1.0);

// Second recursion: inner step produces Omega_1 from Omega_2 with
// (delta3, alpha13), outer step produces Omega_x with (delta2, alpha02).
struct R2DResult {
    SignalPtr omega1;
    SignalPtr omega_x;
};
R2DResult synth_r2d(SignalPtr omega2, double delta2, double delta3,
                    double alpha13 = 1.0, double alpha02 = 1.0);

// Third-order (superlinear) corrections on the computational subspace:
//   Omega_x' = Omega_x - (4 - lambda2^2) Omega_x^3 / (8 delta2^2)
//   Omega_y' = -d(Omega_x')/dt / delta2 - Adot / delta2^3
//   delta'   = delta - A Omega_x / delta2^3
// With omega1/omega2 present the full auxiliary profile A is used; without
// them the linear-DRAG simplification A = (4 - lambda2^2) Omega_x^3 / (8 delta2^2).
struct SuperlinearResult {
    SignalPtr omega_x;
    SignalPtr omega_y;
    SignalPtr delta;
    SignalPtr aux_a;  // the assembled A(t), for diagnostics
};
SuperlinearResult superlinear_correct(SignalPtr omega_x, SignalPtr omega1,
                                      SignalPtr omega2, double delta2, double delta3,
                                      double lambda2, double lambda3, SignalPtr delta_t);

// Minimum gate times. Closed forms assume a sin^n trial pulse; the
// generalized R2D form holds for alpha02 > alpha13 and otherwise falls back
// to the numeric scan (flagging `used_numeric_fallback`).
double tmin_r1d(int n, double delta2);

struct TminResult {
    double t_min;
    bool used_numeric_fallback = false;
};
TminResult tmin_r2d(int n, double delta2, double delta3, double alpha02 = 1.0,
                    double alpha13 = 1.0);

// Smallest T (bisection to 1e-3 ns) at which every radicand of the pipeline
// is nonnegative on a dense grid. `feasible` must be monotone in T.
double tmin_numeric(const std::function<bool(double)>& feasible_at,
                    double t_lo_hint = 0.5, double t_hi_hint = 40.0);

// Scales both quadratures by beta, the Y channel additionally by alpha12,
// and (when set) replaces the detuning with the constant delta_c.
ControlWaveform apply_prefactors(const ControlWaveform& wave, const PrefactorSet& p);

// ---- family-level assembly ----------------------------------------------

enum class Family { Hann, Drag, R1D, R2D };

struct SynthesisOptions {
    std::optional<Envelope> base;  // default: Hann / Hann / sin^3 / FourierBL
    bool superlinear = false;
    DetuningMode detuning = DetuningMode::TimeDependent;
    double delta_c = 0.0;  // used with DetuningMode::Constant
    double alpha02 = 1.0;
    double alpha13 = 1.0;
    double theta = M_PI;  // target rotation angle of the uncorrected Omega_x
};

// Synthesize a family waveform at gate time T, amplitude-calibrated so the
// (pre-superlinear) Omega_x integrates to theta.
ControlWaveform synthesize(Family family, const LadderParams& params, double T,
                           const SynthesisOptions& opts = {});

Envelope default_base(Family family, double T);
// Default trial-pulse base for calibrated runs (R2D uses sin^4).
Envelope default_base_calibrated(Family family, double T);

// Numeric minimum gate time of a family pipeline (radicand feasibility).
double family_tmin(Family family, const LadderParams& params,
                   const SynthesisOptions& opts = {});

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// CSV columns: t_ns, omega_x, omega_y, delta (rad/ns).
void write_waveform_csv(std::ostream& os, const ControlWaveform& wave, int samples);

}  // namespace rdrag

#endif
