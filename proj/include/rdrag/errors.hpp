#ifndef RDRAG_ERRORS_HPP
#define RDRAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdrag {

// Invalid user-facing configuration (bad units, missing fields, bad ranges).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A recursion radicand went negative: the requested gate time is below the
// feasible minimum for the pulse family.
class InfeasibleGateTime : public std::runtime_error {
public:
    InfeasibleGateTime(const std::string& msg, double worst_t, double worst_value)
        : std::runtime_error(msg), worst_t_ns(worst_t), worst_radicand(worst_value) {}
    double worst_t_ns;
    double worst_radicand;
};

// Quadrature, root finding or time stepping failed to converge.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rdrag

#endif
