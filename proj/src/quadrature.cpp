#include "rdrag/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "rdrag/errors.hpp"

namespace rdrag {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int n0, int n_max) {
    double prev = simpson(f, a, b, n0);
    for (int n = 2 * n0; n <= n_max; n *= 2) {
        const double cur = simpson(f, a, b, n);
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    std::ostringstream os;
    os << "adaptive_simpson: no convergence to rel_tol " << rel_tol << " within "
       << n_max << " intervals (last value " << prev << ")";
    throw NumericalError(os.str());
}

std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                        double T, int n) {
    std::vector<double> out(n + 1, 0.0);
    const double h = T / n;
    for (int i = 0; i < n; ++i) {
        const double a = i * h;
        // Simpson on the subinterval
        out[i + 1] = out[i] + h / 6.0 * (f(a) + 4.0 * f(a + h / 2) + f(a + h));
    }
    return out;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double x_tol, double f_tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa * fb > 0.0)
        throw NumericalError("brent_root: endpoints do not bracket a sign change");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool mflag = true;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fb) <= f_tol) return b;
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) +
                b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double lo = (3 * a + b) / 4;
        const bool cond = (s < std::min(lo, b) || s > std::max(lo, b)) ||
                          (mflag && std::abs(s - b) >= std::abs(b - c) / 2) ||
                          (!mflag && std::abs(s - b) >= std::abs(c - d) / 2) ||
                          (mflag && std::abs(b - c) < x_tol) ||
                          (!mflag && std::abs(c - d) < x_tol);
        if (cond) {
            s = (a + b) / 2;
            mflag = true;
        } else {
            mflag = false;
        }
        const double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
        if (std::abs(b - a) <= x_tol) return b;
    }
    throw NumericalError("brent_root: iteration limit reached");
}

}  // namespace rdrag
