#include "rdrag/analytics.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <vector>

#include "rdrag/envelopes.hpp"
#include "rdrag/errors.hpp"
#include "rdrag/quadrature.hpp"

namespace rdrag {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

struct Grid {
    double h = 0.0;
    std::vector<double> t, wx, wxd, theta, wx2_int;  // wx2_int = int_0^t wx^2
};

// Uniform grid with the accumulated angle theta(t) = int_0^t omega_x computed
// by fourth-order cumulative rules (Simpson on even nodes, a half-interval
// three-point rule on odd nodes).
Grid make_grid(const Signal& omega_x, int n) {
    if (n < 8 || n % 2 != 0) throw NumericalError("grid size must be even and >= 8");
    Grid g;
    const double T = omega_x.duration();
    g.h = T / n;
    g.t.resize(n + 1);
    g.wx.resize(n + 1);
    g.wxd.resize(n + 1);
    g.theta.assign(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        g.t[i] = (i == n) ? T : i * g.h;
        g.wx[i] = omega_x.eval(g.t[i], 0);
        g.wxd[i] = omega_x.eval(g.t[i], 1);
    }
    g.wx2_int.assign(n + 1, 0.0);
    auto sq = [&](int i) { return g.wx[i] * g.wx[i]; };
    for (int i = 0; i + 2 <= n; i += 2) {
        g.theta[i + 1] = g.theta[i] + g.h / 12.0 * (5.0 * g.wx[i] + 8.0 * g.wx[i + 1] - g.wx[i + 2]);
        g.theta[i + 2] = g.theta[i] + g.h / 3.0 * (g.wx[i] + 4.0 * g.wx[i + 1] + g.wx[i + 2]);
        g.wx2_int[i + 1] = g.wx2_int[i] + g.h / 12.0 * (5.0 * sq(i) + 8.0 * sq(i + 1) - sq(i + 2));
        g.wx2_int[i + 2] = g.wx2_int[i] + g.h / 3.0 * (sq(i) + 4.0 * sq(i + 1) + sq(i + 2));
    }
    return g;
}

cplx integrate(const std::vector<cplx>& v, double h) {
    const int n = static_cast<int>(v.size()) - 1;
    cplx acc = v[0] + v[n];
    for (int i = 1; i < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
    return acc * (h / 3.0);
}

double integrate(const std::vector<double>& v, double h) {
    const int n = static_cast<int>(v.size()) - 1;
    double acc = v[0] + v[n];
    for (int i = 1; i < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
    return acc * (h / 3.0);
}

MagnusElements elements_on_grid(const Grid& g, double delta2, double lambda2,
                                double alpha, double delta_c) {
    const int n = static_cast<int>(g.t.size()) - 1;
    const double l2sq = lambda2 * lambda2;
    const double kq = 4.0 * alpha * alpha + l2sq - 2.0 * alpha * l2sq;
    std::vector<cplx> d_diag(n + 1), d01(n + 1);
    std::array<std::vector<cplx>, 3> f12, f02;
    for (auto& v : f12) v.resize(n + 1);
    for (auto& v : f02) v.resize(n + 1);

    for (int i = 0; i <= n; ++i) {
        const double wx = g.wx[i], wxd = g.wxd[i], th = g.theta[i];
        const double sn = std::sin(th), cs = std::cos(th);
        const double sh = std::sin(0.5 * th), ch = std::cos(0.5 * th);
        const double detune = 4.0 * delta2 * delta_c + (4.0 * alpha - l2sq) * wx * wx;
        const double chirp = alpha * (alpha - 1.0) * l2sq * wxd * wx;

        d_diag[i] = kI * (detune * cs / (4.0 * delta2) + chirp * sn / (8.0 * std::pow(delta2, 3)));
        d01[i] = kI * (detune * sn / (8.0 * delta2) + chirp * cs / (16.0 * std::pow(delta2, 3)))
                 - wx * (8.0 * alpha * delta2 * delta_c + kq * wx * wx) / (16.0 * delta2 * delta2);

        // Precession phase of the leakage level: the bare anharmonicity plus
        // (twice) the accumulated Stark detuning of the drive. The dressing
        // keeps the prediction smooth in the gate time.
        const double stark = -(4.0 - l2sq) / (4.0 * delta2) * g.wx2_int[i];
        const double phi1 = delta2 * g.t[i] + 2.0 * stark;
        const cplx pref = lambda2 * std::exp(-kI * phi1) / (4.0 * delta2);
        f12[0][i] = pref * kI * (wx * wx * sh - 2.0 * wxd * ch);
        f12[1][i] = pref * (-0.5 / delta2) *
                    (-4.0 * kI * delta2 * wxd * ch + wx * (2.0 * wxd + kI * delta2 * wx) * sh);
        f12[2][i] = pref * (wx * wxd * sh / delta2);
        f02[0][i] = pref * (wx * wx * ch + 2.0 * wxd * sh);
        f02[1][i] = pref * (-0.5 / delta2) *
                    (4.0 * delta2 * wxd * sh + wx * (-2.0 * kI * wxd + delta2 * wx) * ch);
        f02[2][i] = pref * (-kI * wx * wxd * ch / delta2);
    }

    MagnusElements out;
    out.z11_minus_z00 = integrate(d_diag, g.h);
    out.z01 = integrate(d01, g.h);
    for (int k = 0; k < 3; ++k) {
        out.h12[k] = integrate(f12[k], g.h);
        out.h02[k] = integrate(f02[k], g.h);
    }
    const double a = alpha;
    out.z12 = out.h12[0] + a * out.h12[1] + a * a * out.h12[2];
    out.z02 = out.h02[0] + a * out.h02[1] + a * a * out.h02[2];
    return out;
}

SignalPtr default_pi_hann(double T) {
    return make_hann(std::numbers::pi / (T / 2.0), T);
}

void warn_if_not_pi(const Grid& g) {
    if (std::abs(g.theta.back() - std::numbers::pi) > 1e-3) {
        std::cerr << "warning: pulse area " << g.theta.back()
                  << " differs from pi; integral-mode prediction assumes a pi pulse\n";
    }
}

}  // namespace

MagnusElements magnus_elements(const Signal& omega_x, double delta2, double lambda2,
                               double alpha, double delta_c) {
    const Grid coarse = make_grid(omega_x, 4096);
    const Grid fine = make_grid(omega_x, 8192);
    MagnusElements a = elements_on_grid(coarse, delta2, lambda2, alpha, delta_c);
    MagnusElements b = elements_on_grid(fine, delta2, lambda2, alpha, delta_c);
    const double scale = std::abs(b.z12) + std::abs(b.z02) + std::abs(b.z01) + 1e-12;
    if (std::abs(a.z12 - b.z12) + std::abs(a.z02 - b.z02) + std::abs(a.z01 - b.z01) >
        1e-6 * scale) {
        throw NumericalError("magnus element quadrature failed halving check");
    }
    return b;
}

double delta_c_closed_form(double alpha, double lambda2, double delta2, double T) {
    const double pi = std::numbers::pi;
    return 0.712 * (lambda2 * lambda2 - 4.0 * alpha) * pi * pi / (delta2 * T * T);
}

double predict_delta_c(const Signal& omega_x, double alpha, double lambda2,
                       double delta2, DeltaCMode mode) {
    if (mode == DeltaCMode::ClosedForm) {
        return delta_c_closed_form(alpha, lambda2, delta2, omega_x.duration());
    }
    const Grid g = make_grid(omega_x, 8192);
    warn_if_not_pi(g);
    const int n = static_cast<int>(g.t.size()) - 1;
    const double l2sq = lambda2 * lambda2;
    std::vector<double> s(n + 1), w2s(n + 1), wdc(n + 1);
    for (int i = 0; i <= n; ++i) {
        s[i] = std::sin(g.theta[i]);
        w2s[i] = g.wx[i] * g.wx[i] * s[i];
        wdc[i] = g.wxd[i] * g.wx[i] * std::cos(g.theta[i]);
    }
    const double norm = integrate(s, g.h);
    return -(4.0 * alpha - l2sq) * integrate(w2s, g.h) / (4.0 * delta2 * norm) -
           alpha * l2sq * (alpha - 1.0) * integrate(wdc, g.h) /
               (8.0 * std::pow(delta2, 3) * norm);
}

double predict_beta(double alpha, double delta_c, double lambda2, double delta2,
                    double T, BetaMode mode, const Signal* omega_x) {
    const double pi = std::numbers::pi;
    const double l2sq = lambda2 * lambda2;
    const double kq = 4.0 * alpha * alpha + l2sq - 2.0 * alpha * l2sq;
    if (mode == BetaMode::Linearized) {
        const double num = 16.0 * alpha * delta_c * pi * delta2 + 5.0 * kq * pi * pi * pi / (T * T);
        const double den = 16.0 * pi * delta2 * delta2 - 16.0 * alpha * delta_c * pi * delta2 -
                           15.0 * kq * pi * pi * pi / (T * T);
        return 1.0 + num / den;
    }
    SignalPtr fallback;
    if (omega_x == nullptr) {
        fallback = default_pi_hann(T);
        omega_x = fallback.get();
    }
    const Grid g = make_grid(*omega_x, 8192);
    std::vector<double> w3(g.wx.size());
    for (std::size_t i = 0; i < g.wx.size(); ++i) w3[i] = std::pow(g.wx[i], 3);
    const double i1 = integrate(g.wx, g.h);
    const double i3 = integrate(w3, g.h);
    auto residual = [&](double b) {
        return (b - 1.0) * i1 / 2.0 -
               b * 8.0 * alpha * delta2 * delta_c * i1 / (16.0 * delta2 * delta2) -
               b * b * b * kq * i3 / (16.0 * delta2 * delta2);
    };
    return brent_root(residual, 0.2, 1.8, 1e-14, 1e-14);
}

double predict_alpha(double lambda2, double delta2, double delta3, double T,
                     const Signal* omega_x) {
    (void)delta3;
    SignalPtr fallback;
    if (omega_x == nullptr) {
        fallback = default_pi_hann(T);
        omega_x = fallback.get();
    }
    const MagnusElements m = magnus_elements(*omega_x, delta2, lambda2, 1.0, 0.0);
    auto pair_terms = [](const std::array<cplx, 3>& h, double& x1, double& x2) {
        const cplx total = h[0] + h[1] + h[2];
        x1 += std::real(h[1] * std::conj(total) + 2.0 * h[2] * std::conj(total));
        x2 += std::real(h[1] * std::conj(h[1]) + 2.0 * h[1] * std::conj(h[2]) +
                        2.0 * h[2] * std::conj(h[0]) + 4.0 * h[2] * std::conj(h[1]) +
                        6.0 * h[2] * std::conj(h[2]));
    };
    double x1 = 0.0, x2 = 0.0;
    pair_terms(m.h12, x1, x2);
    pair_terms(m.h02, x1, x2);
    if (std::abs(x2) < 1e-30) throw NumericalError("alpha prediction: degenerate curvature");
    return 1.0 - x1 / x2;
}

}  // namespace rdrag
