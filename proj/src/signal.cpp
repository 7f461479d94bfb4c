#include "rdrag/signal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "rdrag/errors.hpp"

namespace rdrag {

double Signal::eval(double t, int order) const {
    const double slack = 1e-12 * std::max(1.0, T_);
    if (t < -slack || t > T_ + slack)
        throw std::domain_error("Signal::eval: t outside [0, T]");
    if (order < 0 || order > 5)
        throw std::domain_error("Signal::eval: unsupported derivative order");
    t = std::clamp(t, 0.0, T_);
    return eval_impl(t, order);
}

double fd_derivative(const std::function<double(double)>& f, double t, double h,
                     double lo, double hi) {
    if (t - 2 * h >= lo && t + 2 * h <= hi) {
        return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
    }
    if (t + 4 * h <= hi) {  // forward
        return (-25 * f(t) + 48 * f(t + h) - 36 * f(t + 2 * h) + 16 * f(t + 3 * h) -
                3 * f(t + 4 * h)) /
               (12 * h);
    }
    // backward
    return (25 * f(t) - 48 * f(t - h) + 36 * f(t - 2 * h) - 16 * f(t - 3 * h) +
            3 * f(t - 4 * h)) /
           (12 * h);
}

double TrigSeries::eval_impl(double t, int order) const {
    const double w0 = M_PI / duration();
    double acc = 0.0;
    for (const Term& term : terms_) {
        const double w = term.harmonic * w0;
        double p = std::pow(w, order);
        if (term.harmonic == 0 && order > 0) continue;
        acc += term.amp * p * std::cos(w * t + term.phase + order * M_PI / 2);
    }
    return acc;
}

SignalPtr make_hann(double amp, double duration) {
    // sin^2(x) = 1/2 - cos(2x)/2
    return std::make_shared<TrigSeries>(
        std::vector<TrigSeries::Term>{{amp / 2, 0, 0.0}, {-amp / 2, 2, 0.0}}, duration);
}

SignalPtr make_sin_pow(int n, double amp, double duration) {
    if (n < 1) throw std::domain_error("make_sin_pow: n must be >= 1");
    // Expand sin^n(x) = ((e^{ix} - e^{-ix}) / 2i)^n by repeated convolution.
    using cd = std::complex<double>;
    std::vector<cd> coeff{cd(1.0, 0.0)};  // coeff[m] multiplies e^{i(m - deg)x}
    const cd a(0.0, -0.5), b(0.0, 0.5);   // e^{ix}/(2i), -e^{-ix}/(2i)
    for (int p = 0; p < n; ++p) {
        std::vector<cd> next(coeff.size() + 2, cd(0.0, 0.0));
        for (size_t m = 0; m < coeff.size(); ++m) {
            next[m + 2] += coeff[m] * a;
            next[m] += coeff[m] * b;
        }
        coeff = std::move(next);
    }
    std::vector<TrigSeries::Term> terms;
    for (int k = 0; k <= n; ++k) {
        // harmonic k corresponds to e^{ikx} (index n + k) and e^{-ikx} (n - k)
        const cd c = coeff[n + k];
        const double re = c.real(), im = c.imag();
        const double factor = (k == 0) ? 1.0 : 2.0;  // pair with conjugate
        if (std::abs(re) > 1e-15) terms.push_back({amp * factor * re, k, 0.0});
        if (k > 0 && std::abs(im) > 1e-15) terms.push_back({-amp * factor * im, k, -M_PI / 2});
    }
    return std::make_shared<TrigSeries>(std::move(terms), duration);
}

SignalPtr make_fourier_ansatz(int n, int j, double amp, double duration) {
    if (n < 1 || j < 1 || n == j)
        throw std::domain_error("make_fourier_ansatz: need n, j >= 1 and n != j");
    const double k = double(j) * j / (double(n) * n);
    const double c = 1.0 / (2.0 * (k - 1.0));
    return std::make_shared<TrigSeries>(
        std::vector<TrigSeries::Term>{
            {amp / 2, 0, 0.0}, {amp * c, 2 * j, 0.0}, {-amp * c * k, 2 * n, 0.0}},
        duration);
}

SignalPtr make_fourier_bl(double amp, double duration) {
    return make_fourier_ansatz(1, 3, amp, duration);
}

namespace {

class ConstantSignal : public Signal {
public:
    ConstantSignal(double value, double duration) : Signal(duration), value_(value) {}

protected:
    double eval_impl(double, int order) const override { return order == 0 ? value_ : 0.0; }

private:
    double value_;
};

class ScaledSignal : public Signal {
public:
    ScaledSignal(SignalPtr inner, double factor)
        : Signal(inner->duration()), inner_(std::move(inner)), factor_(factor) {}

protected:
    double eval_impl(double t, int order) const override {
        return factor_ * inner_->eval(t, order);
    }

private:
    SignalPtr inner_;
    double factor_;
};

class SumSignal : public Signal {
public:
    SumSignal(SignalPtr a, SignalPtr b)
        : Signal(a->duration()), a_(std::move(a)), b_(std::move(b)) {}

protected:
    double eval_impl(double t, int order) const override {
        return a_->eval(t, order) + b_->eval(t, order);
    }

private:
    SignalPtr a_, b_;
};

class DerivativeSignal : public Signal {
public:
    explicit DerivativeSignal(SignalPtr inner)
        : Signal(inner->duration()), inner_(std::move(inner)) {}

protected:
    double eval_impl(double t, int order) const override {
        return inner_->eval(t, order + 1);
    }

private:
    SignalPtr inner_;
};

class FunctionalSignal : public Signal {
public:
    FunctionalSignal(std::function<double(double)> fn, double duration)
        : Signal(duration), fn_(std::move(fn)) {}

protected:
    double eval_impl(double t, int order) const override {
        if (order == 0) return fn_(t);
        const double T = duration();
        // Step grows with order: nested stencils amplify rounding noise.
        const double h = (order == 1) ? T / (1 << 20) : T * 2e-4 * (1 << (2 * (order - 2)));
        auto lower = [this, order](double s) { return eval_impl(s, order - 1); };
        return fd_derivative(lower, t, h, 0.0, T);
    }

private:
    std::function<double(double)> fn_;
};

}  // namespace

SignalPtr make_constant(double value, double duration) {
    return std::make_shared<ConstantSignal>(value, duration);
}

SignalPtr scale(SignalPtr inner, double factor) {
    return std::make_shared<ScaledSignal>(std::move(inner), factor);
}

SignalPtr sum(SignalPtr a, SignalPtr b) {
    return std::make_shared<SumSignal>(std::move(a), std::move(b));
}

SignalPtr derivative(SignalPtr inner) {
    return std::make_shared<DerivativeSignal>(std::move(inner));
}

SignalPtr make_functional(std::function<double(double)> fn, double duration) {
    return std::make_shared<FunctionalSignal>(std::move(fn), duration);
}

SqrtRecursion::SqrtRecursion(SignalPtr inner, double coeff)
    : Signal(inner->duration()), inner_(std::move(inner)), coeff_(coeff) {
    double peak = 0.0;
    const int n = 1024;
    for (int i = 0; i <= n; ++i) {
        const double t = duration() * i / n;
        peak = std::max(peak, std::abs(radicand(t)));
    }
    scale2_ = std::max(peak, 1e-300);
}

double SqrtRecursion::radicand(double t) const {
    const double w = inner_->eval(t, 0);
    const double w1 = inner_->eval(t, 1);
    const double w2 = inner_->eval(t, 2);
    return w * w + coeff_ * (w1 * w1 + w2 * w);
}

double SqrtRecursion::radicand_deriv(double t, int order) const {
    const Signal& f = *inner_;
    switch (order) {
        case 1:
            return 2 * f.eval(t, 0) * f.eval(t, 1) +
                   coeff_ * (3 * f.eval(t, 1) * f.eval(t, 2) + f.eval(t, 3) * f.eval(t, 0));
        case 2: {
            const double w = f.eval(t, 0), w1 = f.eval(t, 1), w2 = f.eval(t, 2),
                         w3 = f.eval(t, 3), w4 = f.eval(t, 4);
            return 2 * w1 * w1 + 2 * w * w2 + coeff_ * (3 * w2 * w2 + 4 * w1 * w3 + w4 * w);
        }
        case 3: {
            const double w = f.eval(t, 0), w1 = f.eval(t, 1), w2 = f.eval(t, 2),
                         w3 = f.eval(t, 3), w4 = f.eval(t, 4), w5 = f.eval(t, 5);
            return 6 * w1 * w2 + 2 * w * w3 +
                   coeff_ * (10 * w2 * w3 + 5 * w1 * w4 + w5 * w);
        }
        default:
            throw std::domain_error("SqrtRecursion: radicand derivative order");
    }
}

double SqrtRecursion::eval_impl(double t, int order) const {
    const double g = radicand(t);
    const double tol = 1e-12 * scale2_;
    if (g < -tol) {
        std::ostringstream os;
        os << "recursion radicand negative (" << g << ") at t = " << t
           << " ns; gate time below the feasible minimum";
        throw InfeasibleGateTime(os.str(), t, g);
    }
    const double gc = std::max(g, 0.0);
    if (order == 0) return std::sqrt(gc);

    if (order <= 3 && gc > 1e-9 * scale2_) {
        const double f0 = std::sqrt(gc);
        const double g1 = radicand_deriv(t, 1);
        if (order == 1) return g1 / (2 * f0);
        const double g2 = radicand_deriv(t, 2);
        if (order == 2) return g2 / (2 * f0) - g1 * g1 / (4 * f0 * f0 * f0);
        const double g3 = radicand_deriv(t, 3);
        return g3 / (2 * f0) - 3 * g1 * g2 / (4 * f0 * f0 * f0) +
               3 * g1 * g1 * g1 / (8 * std::pow(f0, 5));
    }
    // Degenerate radicand (interval ends) or high order: finite differences.
    const double T = duration();
    // A wide step keeps the stencil exact for the polynomial behaviour at a
    // degenerate zero while averaging out value noise from nested recursions.
    const double h = (order == 1) ? T * 1e-3 : T * 2e-4 * (1 << (2 * (order - 2)));
    auto lower = [this, order](double s) { return eval_impl(s, order - 1); };
    return fd_derivative(lower, t, h, 0.0, T);
}

SignalPtr make_sqrt_recursion(SignalPtr inner, double coeff) {
    return std::make_shared<SqrtRecursion>(std::move(inner), coeff);
}

RadicandScan scan_radicand(const Signal& inner, double coeff, int n) {
    RadicandScan out{std::numeric_limits<double>::infinity(), 0.0};
    const double T = inner.duration();
    for (int i = 0; i <= n; ++i) {
        const double t = T * i / n;
        const double w = inner.eval(t, 0);
        const double w1 = inner.eval(t, 1);
        const double w2 = inner.eval(t, 2);
        const double g = w * w + coeff * (w1 * w1 + w2 * w);
        if (g < out.min_value) {
            out.min_value = g;
            out.argmin_t = t;
        }
    }
    return out;
}

}  // namespace rdrag
