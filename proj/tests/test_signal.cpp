#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "doctest.h"
#include "rdrag/errors.hpp"
#include "rdrag/signal.hpp"

using namespace rdrag;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent derivative oracle: central finite difference on eval(t, order-1).
double fd_of(const Signal& s, double t, int order, double h) {
    auto f = [&](double x) { return s.eval(x, order - 1); };
    return fd_derivative(f, t, h, 0.0, s.duration());
}
}  // namespace

TEST_CASE("hann matches sin^2 and its closed-form derivatives") {
    const double T = 10.0, A = 1.7;
    const SignalPtr s = make_hann(A, T);
    for (double t : {0.0, 1.3, 4.9, 7.7, 10.0}) {
        CHECK((*s)(t) == doctest::Approx(A * std::pow(std::sin(kPi * t / T), 2)).epsilon(1e-13));
    }
    for (int order = 1; order <= 3; ++order) {
        for (double t : {0.0, 2.1, 5.0, 8.4, 10.0}) {
            const double fd = fd_of(*s, t, order, 1e-3);
            CHECK(s->eval(t, order) == doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("sin^n expansion is exact") {
    const double T = 8.0;
    for (int n : {1, 2, 3, 4, 5}) {
        const SignalPtr s = make_sin_pow(n, 2.0, T);
        for (double t : {0.0, 0.9, 3.3, 4.0, 6.2, 8.0}) {
            CHECK((*s)(t) ==
                  doctest::Approx(2.0 * std::pow(std::sin(kPi * t / T), n)).epsilon(1e-12));
        }
    }
}

TEST_CASE("fourier ansatz satisfies order-3 boundary conditions and k = j^2/n^2") {
    const double T = 12.0;
    const std::vector<std::pair<int, int>> shapes{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}};
    for (auto [n, j] : shapes) {
        const SignalPtr s = make_fourier_ansatz(n, j, 1.0, T);
        const double k = double(j) * j / (double(n) * n);
        for (double t : {0.0, 2.5, 6.0, 9.1, 12.0}) {
            const double w = 2.0 * kPi * t / T;
            const double expected =
                0.5 + (std::cos(j * w) - k * std::cos(n * w)) / (2.0 * (k - 1.0));
            CHECK((*s)(t) == doctest::Approx(expected).epsilon(1e-12));
        }
        for (int order = 0; order <= 3; ++order) {
            CHECK(std::abs(s->eval(0.0, order)) < 1e-10 * std::pow(2 * kPi * j / T, order) + 1e-12);
            CHECK(std::abs(s->eval(T, order)) < 1e-10 * std::pow(2 * kPi * j / T, order) + 1e-12);
        }
    }
    // The bandwidth-limited default is the (1, 3) member.
    const SignalPtr a = make_fourier_bl(1.4, T);
    const SignalPtr b = make_fourier_ansatz(1, 3, 1.4, T);
    for (double t : {0.3, 4.4, 11.0}) CHECK((*a)(t) == doctest::Approx((*b)(t)).epsilon(1e-13));
}

TEST_CASE("combinators: scale, sum, derivative") {
    const double T = 6.0;
    const SignalPtr h = make_hann(1.0, T);
    const SignalPtr s = sum(scale(h, 2.0), make_constant(0.5, T));
    CHECK((*s)(3.0) == doctest::Approx(2.0 + 0.5));
    const SignalPtr d = derivative(h);
    CHECK((*d)(1.7) == doctest::Approx(h->eval(1.7, 1)).epsilon(1e-14));
    CHECK(d->eval(1.7, 2) == doctest::Approx(h->eval(1.7, 3)).epsilon(1e-14));
}

TEST_CASE("functional signal: finite-difference derivatives track a known function") {
    const double T = 5.0;
    const SignalPtr s = make_functional(
        [T](double t) { return std::pow(std::sin(kPi * t / T), 4); }, T);
    const double w = kPi / T;
    for (double t : {1.1, 2.5, 3.9}) {
        const double exact = 4.0 * std::pow(std::sin(w * t), 3) * std::cos(w * t) * w;
        CHECK(s->eval(t, 1) == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("sqrt recursion: closed-form derivatives match finite differences") {
    const double T = 9.0, d2 = -2.0 * kPi * 0.225;
    const SignalPtr inner = make_sin_pow(3, 1.0, T);
    const SignalPtr f = make_sqrt_recursion(inner, 2.0 / (d2 * d2));
    for (int order = 1; order <= 3; ++order) {
        for (double t : {1.8, 3.2, 4.5, 6.1}) {
            const double fd = fd_of(*f, t, order, 5e-4);
            CHECK(f->eval(t, order) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    // At the pulse center the radicand reduces to W^2 + c Wddot W < W^2.
    const double mid = T / 2;
    CHECK((*f)(mid) < (*inner)(mid));
}

TEST_CASE("sqrt recursion radicand sign around the minimum gate time") {
    const double d2 = -2.0 * kPi * 0.225;
    const double tmin = std::sqrt(6.0) * kPi / std::abs(d2);  // sin^3 closed form
    const double c = 2.0 / (d2 * d2);
    {
        const SignalPtr inner = make_sin_pow(3, 1.0, tmin * 1.02);
        CHECK(scan_radicand(*inner, c).min_value >= -1e-12);
    }
    {
        const SignalPtr inner = make_sin_pow(3, 1.0, tmin * 0.98);
        CHECK(scan_radicand(*inner, c).min_value < 0.0);
        const SignalPtr f = make_sqrt_recursion(inner, c);
        CHECK_THROWS_AS((*f)(scan_radicand(*inner, c).argmin_t), InfeasibleGateTime);
    }
}

TEST_CASE("signals reject out-of-domain evaluation") {
    const SignalPtr s = make_hann(1.0, 4.0);
    CHECK_THROWS(s->eval(-0.5, 0));
    CHECK_THROWS(s->eval(4.5, 0));
}
