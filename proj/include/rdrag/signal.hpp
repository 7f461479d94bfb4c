#ifndef RDRAG_SIGNAL_HPP
#define RDRAG_SIGNAL_HPP

#include <functional>
#include <memory>
#include <vector>

namespace rdrag {

// A real-valued, smooth function of time on [0, T] with derivatives up to
// (at least) third order. All pulse channels, recursions and auxiliary
// profiles are Signals, so waveform assembly is plain composition.
class Signal {
public:
    explicit Signal(double duration) : T_(duration) {}
    virtual ~Signal() = default;

    double duration() const { return T_; }

    // order-th time derivative at t. t must lie in [0, T], order in [0, 3]
    // for every concrete signal (some support more).
    double eval(double t, int order = 0) const;

    double operator()(double t) const { return eval(t, 0); }

protected:
    virtual double eval_impl(double t, int order) const = 0;

private:
    double T_;
};

using SignalPtr = std::shared_ptr<const Signal>;

// Finite-difference first derivative of f at t, 5-point stencil of step h.
// The stencil switches to one-sided forms near the interval ends so f is
// never evaluated outside [lo, hi].
double fd_derivative(const std::function<double(double)>& f, double t, double h,
                     double lo, double hi);

// Trigonometric polynomial  sum_k a_k * cos(k * pi * t / T + phi_k).
// Covers Hann, sin^n and the Fourier ansatz family; derivatives of every
// order are closed-form.
class TrigSeries : public Signal {
public:
    struct Term {
        double amp;
        int harmonic;  // frequency = harmonic * pi / T
        double phase;  // 0 for cos, -pi/2 for sin
    };

    TrigSeries(std::vector<Term> terms, double duration)
        : Signal(duration), terms_(std::move(terms)) {}

    const std::vector<Term>& terms() const { return terms_; }

protected:
    double eval_impl(double t, int order) const override;

private:
    std::vector<Term> terms_;
};

// amp * sin^2(pi t / T)
SignalPtr make_hann(double amp, double duration);
// amp * sin^n(pi t / T), expanded into an exact trig series
SignalPtr make_sin_pow(int n, double amp, double duration);
// amp * [1/2 + (cos(2 pi j t / T) - k cos(2 pi n t / T)) / (2 (k - 1))],
// k = j^2 / n^2. Vanishing derivatives of orders 1..3 at both ends.
SignalPtr make_fourier_ansatz(int n, int j, double amp, double duration);
// The n = 1, j = 3 member: amp * [cos(6 pi t/T)/16 - 9 cos(2 pi t/T)/16 + 1/2]
SignalPtr make_fourier_bl(double amp, double duration);

SignalPtr make_constant(double value, double duration);
SignalPtr scale(SignalPtr inner, double factor);
SignalPtr sum(SignalPtr a, SignalPtr b);
// eval(t, k) = inner->eval(t, k + 1)
SignalPtr derivative(SignalPtr inner);

// Value-only signal defined by a callable; derivatives fall back to finite
// differences (order-dependent step, one-sided near the ends).
SignalPtr make_functional(std::function<double(double)> fn, double duration);

// sqrt(W^2 + c * (Wdot^2 + Wddot * W)) over an inner trial pulse W.
// Derivatives 1..3 use the chain rule away from the ends and a one-sided
// finite difference where the radicand degenerates. Throws
// InfeasibleGateTime from eval if the radicand is substantially negative.
class SqrtRecursion : public Signal {
public:
    SqrtRecursion(SignalPtr inner, double coeff);

    double radicand(double t) const;
    const Signal& inner() const { return *inner_; }
    double coeff() const { return coeff_; }

protected:
    double eval_impl(double t, int order) const override;

private:
    double radicand_deriv(double t, int order) const;

    SignalPtr inner_;
    double coeff_;
    double scale2_;  // peak radicand, sets the degeneracy threshold
};

SignalPtr make_sqrt_recursion(SignalPtr inner, double coeff);

// Minimum of the radicand of a candidate recursion on an n-point grid.
struct RadicandScan {
    double min_value;
    double argmin_t;
};
RadicandScan scan_radicand(const Signal& inner, double coeff, int n = 4096);

}  // namespace rdrag

#endif
