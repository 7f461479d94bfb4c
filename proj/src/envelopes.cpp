#include "rdrag/envelopes.hpp"

#include <cmath>
#include <sstream>

#include "rdrag/errors.hpp"
#include "rdrag/quadrature.hpp"

namespace rdrag {

SignalPtr make_signal(const Envelope& env) {
    if (env.duration <= 0.0) throw std::domain_error("Envelope: duration must be positive");
    switch (env.kind) {
        case EnvelopeKind::Hann:
            return make_hann(env.amplitude, env.duration);
        case EnvelopeKind::SinPow:
            return make_sin_pow(env.n, env.amplitude, env.duration);
        case EnvelopeKind::FourierBL:
            return make_fourier_bl(env.amplitude, env.duration);
        case EnvelopeKind::FourierAnsatz:
            return make_fourier_ansatz(env.n, env.j, env.amplitude, env.duration);
    }
    throw std::domain_error("Envelope: unknown kind");
}

double rotation_angle(const Signal& omega_x) {
    return adaptive_simpson([&](double t) { return omega_x(t); }, 0.0,
                            omega_x.duration(), 1e-10);
}

namespace {

// int_0^pi sin^n x dx / pi (Wallis), as the fraction of the duration covered
// by sin^n(pi t / T).
double sin_pow_mean(int n) {
    double v = 1.0;
    for (int k = n; k >= 2; k -= 2) v *= double(k - 1) / k;
    if (n % 2 == 1) v *= 2.0 / M_PI;
    return v;
}

}  // namespace

double naive_amplitude(const Envelope& env, double theta) {
    const double T = env.duration;
    switch (env.kind) {
        case EnvelopeKind::Hann:
            return theta / (T / 2.0);
        case EnvelopeKind::SinPow:
            return theta / (T * sin_pow_mean(env.n));
        case EnvelopeKind::FourierBL:
        case EnvelopeKind::FourierAnsatz:
            return theta / (T / 2.0);  // oscillatory terms integrate to zero
    }
    throw std::domain_error("Envelope: unknown kind");
}

double calibrate_amplitude(const std::function<SignalPtr(double)>& pipeline,
                           double omega_naive, double theta_target) {
    auto mismatch = [&](double amp) {
        return rotation_angle(*pipeline(amp)) - theta_target;
    };
    const double lo = 0.5 * omega_naive, hi = 2.0 * omega_naive;
    const double flo = mismatch(lo), fhi = mismatch(hi);
    if (flo * fhi > 0.0) {
        std::ostringstream os;
        os << "calibrate_amplitude: no sign change on [" << lo << ", " << hi
           << "] (mismatch " << flo << ", " << fhi << ")";
        throw NumericalError(os.str());
    }
    return brent_root(mismatch, lo, hi, 0.0, 1e-9);
}

BoundaryReport check_boundary(const Signal& sig, int max_order, double tol) {
    if (max_order < 0 || max_order > 3)
        throw std::domain_error("check_boundary: max_order must be in [0, 3]");
    const double T = sig.duration();
    double peak = 0.0;
    for (int i = 0; i <= 1024; ++i) peak = std::max(peak, std::abs(sig(T * i / 1024)));

    BoundaryReport report;
    report.tol_abs = tol * std::max(peak, 1e-300);
    report.pass = true;
    for (int order = 0; order <= max_order; ++order) {
        BoundaryReport::Entry e;
        e.order = order;
        // Derivative order k carries 1/ns^k units; scale the tolerance to
        // keep the comparison dimensionless.
        const double unit = std::pow(2.0 * M_PI / T, order);
        e.at_start = sig.eval(0.0, order);
        e.at_end = sig.eval(T, order);
        e.pass = std::max(std::abs(e.at_start), std::abs(e.at_end)) <=
                 report.tol_abs * std::max(unit, 1.0);
        report.pass = report.pass && e.pass;
        report.entries.push_back(e);
    }
    return report;
}

std::string to_string(EnvelopeKind kind) {
    switch (kind) {
        case EnvelopeKind::Hann: return "hann";
        case EnvelopeKind::SinPow: return "sinpow";
        case EnvelopeKind::FourierBL: return "fourier_bl";
        case EnvelopeKind::FourierAnsatz: return "fourier_ansatz";
    }
    return "?";
}

EnvelopeKind envelope_kind_from_string(const std::string& name) {
    if (name == "hann") return EnvelopeKind::Hann;
    if (name == "sinpow" || name == "sin3" || name == "sin4") return EnvelopeKind::SinPow;
    if (name == "fourier_bl") return EnvelopeKind::FourierBL;
    if (name == "fourier_ansatz") return EnvelopeKind::FourierAnsatz;
    throw ConfigError("unknown envelope kind: " + name);
}

}  // namespace rdrag
