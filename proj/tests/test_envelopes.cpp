#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rdrag/envelopes.hpp"
#include "rdrag/quadrature.hpp"

using namespace rdrag;

namespace {
constexpr double kPi = std::numbers::pi;

Envelope env(EnvelopeKind kind, double amp, double T, int n = 0, int j = 0) {
    Envelope e;
    e.kind = kind;
    e.amplitude = amp;
    e.duration = T;
    e.n = n;
    e.j = j;
    return e;
}
}  // namespace

TEST_CASE("rotation angle of the pi-normalized hann pulse") {
    const double T = 14.0;
    const SignalPtr s = make_hann(2.0 * kPi / T, T);  // mean amp pi/T
    CHECK(rotation_angle(*s) == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("naive amplitudes reproduce the target angle") {
    const double T = 11.0, theta = kPi;
    // Wallis means: <sin^2> = 1/2, <sin^3> = 4/(3 pi), <sin^4> = 3/8.
    CHECK(naive_amplitude(env(EnvelopeKind::Hann, 1, T), theta) ==
          doctest::Approx(theta / (T / 2.0)).epsilon(1e-12));
    CHECK(naive_amplitude(env(EnvelopeKind::SinPow, 1, T, 3), theta) ==
          doctest::Approx(theta / (T * 4.0 / (3.0 * kPi))).epsilon(1e-12));
    CHECK(naive_amplitude(env(EnvelopeKind::SinPow, 1, T, 4), theta) ==
          doctest::Approx(theta / (T * 3.0 / 8.0)).epsilon(1e-12));
    for (Envelope e : {env(EnvelopeKind::Hann, 1, T), env(EnvelopeKind::SinPow, 1, T, 3),
                       env(EnvelopeKind::FourierBL, 1, T),
                       env(EnvelopeKind::FourierAnsatz, 1, T, 1, 4)}) {
        e.amplitude = naive_amplitude(e, theta);
        CHECK(rotation_angle(*make_signal(e)) == doctest::Approx(theta).epsilon(1e-9));
    }
}

TEST_CASE("amplitude calibration on a nonlinear pipeline") {
    const double T = 9.0, theta = kPi;
    // Pipeline whose area grows quadratically in the amplitude knob.
    auto pipeline = [T](double amp) { return make_hann(amp * amp, T); };
    const double naive = std::sqrt(naive_amplitude(env(EnvelopeKind::Hann, 1, T), theta));
    const double amp = calibrate_amplitude(pipeline, naive, theta);
    CHECK(rotation_angle(*pipeline(amp)) == doctest::Approx(theta).epsilon(1e-9));
}

TEST_CASE("boundary report distinguishes hann from sin^4") {
    const double T = 10.0;
    // Hann: value and first derivative vanish at the ends, second does not.
    const BoundaryReport hann = check_boundary(*make_hann(1.0, T), 2);
    CHECK(hann.entries[0].pass);
    CHECK(hann.entries[1].pass);
    CHECK_FALSE(hann.entries[2].pass);
    CHECK_FALSE(hann.pass);
    // sin^4 vanishes with three derivatives.
    CHECK(check_boundary(*make_sin_pow(4, 1.0, T), 3).pass);
    // The Fourier ansatz is built for order-3 boundary conditions.
    CHECK(check_boundary(*make_fourier_bl(1.0, T), 3).pass);
}

TEST_CASE("quadrature oracles agree at doubled resolution") {
    auto f = [](double t) { return std::exp(-t) * std::sin(3.0 * t); };
    const double coarse = simpson(f, 0.0, 2.0, 512);
    const double fine = simpson(f, 0.0, 2.0, 1024);
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-9));
    CHECK(adaptive_simpson(f, 0.0, 2.0) == doctest::Approx(fine).epsilon(1e-10));
}

TEST_CASE("brent root finder") {
    const double r = brent_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-14, 1e-14);
    CHECK(r == doctest::Approx(0.7390851332151607).epsilon(1e-12));
}

TEST_CASE("envelope kind names round-trip") {
    for (EnvelopeKind k : {EnvelopeKind::Hann, EnvelopeKind::SinPow, EnvelopeKind::FourierBL,
                           EnvelopeKind::FourierAnsatz}) {
        CHECK(envelope_kind_from_string(to_string(k)) == k);
    }
}
