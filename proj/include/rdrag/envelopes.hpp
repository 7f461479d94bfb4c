#ifndef RDRAG_ENVELOPES_HPP
#define RDRAG_ENVELOPES_HPP

#include <optional>
#include <string>
#include <vector>

#include "rdrag/signal.hpp"

namespace rdrag {

enum class EnvelopeKind { Hann, SinPow, FourierBL, FourierAnsatz };

// Descriptor for a base pulse shape. `amplitude` is the scale in rad/ns
// (Omega_0 for Hann/sin^n, Omega_Max for the Fourier shapes), duration in ns.
struct Envelope {
    EnvelopeKind kind = EnvelopeKind::Hann;
    int n = 0;  // sin power, or ansatz n
    int j = 0;  // ansatz j
    double amplitude = 1.0;
    double duration = 1.0;
};

// Materialize the descriptor as an evaluable signal.
SignalPtr make_signal(const Envelope& env);

// int_0^T omega_x dt to relative error <= 1e-10 (step-halving Simpson).
double rotation_angle(const Signal& omega_x);

// Closed-form naive amplitude giving rotation angle theta for the base
// shape alone (used as the root-finding bracket center).
double naive_amplitude(const Envelope& env, double theta);

// Find the amplitude scale such that the synthesized omega_x integrates to
// theta_target. `pipeline` maps an amplitude to the synthesized omega_x.
// Brent search on [0.5, 2] * omega_naive; |angle - theta| <= 1e-9 rad.
double calibrate_amplitude(const std::function<SignalPtr(double)>& pipeline,
                           double omega_naive, double theta_target);

// Endpoint residual report for orders 0..max_order.
struct BoundaryReport {
    struct Entry {
        int order;
        double at_start;
        double at_end;
        bool pass;
    };
    std::vector<Entry> entries;
    double tol_abs;  // tol * peak amplitude actually used
    bool pass;       // all orders pass
};

BoundaryReport check_boundary(const Signal& sig, int max_order, double tol = 1e-9);

std::string to_string(EnvelopeKind kind);
EnvelopeKind envelope_kind_from_string(const std::string& name);

}  // namespace rdrag

#endif
