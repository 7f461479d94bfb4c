#ifndef RDRAG_QUADRATURE_HPP
#define RDRAG_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace rdrag {

// Composite Simpson over [a, b] with n intervals (n even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);

// Step-halving composite Simpson, starting at n0 intervals, until the
// relative change is below rel_tol. Throws NumericalError on non-convergence.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-10, int n0 = 1024, int n_max = 1 << 22);

// Cumulative integral of f on a uniform n-interval grid over [0, T]:
// out[i] = int_0^{t_i} f, via per-subinterval Simpson (midpoint refinement).
std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                        double T, int n);

// Brent root bracketing on [a, b]; f(a), f(b) must differ in sign.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double x_tol, double f_tol, int max_iter = 200);

}  // namespace rdrag

#endif
