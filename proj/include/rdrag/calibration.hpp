#ifndef RDRAG_CALIBRATION_HPP
#define RDRAG_CALIBRATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdrag/metrics.hpp"
#include "rdrag/model.hpp"
#include "rdrag/synthesis.hpp"

namespace rdrag {

struct OptimizeOptions {
    int max_evals = 2000;
    double spread_tol = 1e-12;     // simplex infidelity spread convergence
    unsigned seed = 20260826;      // jitter applied to the initial simplex
    std::optional<PrefactorSet> init;  // warm start; default from analytic predictions
    bool fix_alpha12 = false;      // hold the derivative prefactor at its initial value
    std::optional<Envelope> base;  // envelope override
    int fixed_steps = 0;           // 0: choose once from a converged propagation
};

struct CalibrationRun {
    Family family = Family::Drag;
    double t_ns = 0.0;
    PrefactorSet initial;
    PrefactorSet result;
    double initial_infidelity = 0.0;
    double final_infidelity = 0.0;
    bool converged = false;
    int evaluations = 0;
    unsigned seed = 0;
    struct TracePoint {
        int eval;
        double infidelity;
    };
    std::vector<TracePoint> trace;  // running best
};

// Nelder-Mead over the family's prefactors (beta, alpha12[, alpha02[, alpha13]],
// delta_c), minimizing unitary infidelity of the calibrated pulse (constant
// detuning, no cubic corrections). Infeasible radicands score +inf; delta_c is
// clamped to 20x the closed-form prediction magnitude.
CalibrationRun optimize_prefactors(Family family, const LadderParams& params, double t_ns,
                                   const OptimizeOptions& opts = {});

// Analytic predictions packaged as a PrefactorSet (beta from the cubic,
// alpha from the leakage quadratic, delta_c from the integral expression).
PrefactorSet predicted_prefactors(const LadderParams& params, double t_ns);

enum class PrefactorMode { Analytic, Predicted, Optimized };

struct SweepOptions {
    PrefactorMode mode = PrefactorMode::Analytic;
    bool superlinear = true;  // analytic mode only
    std::optional<Envelope> base;
    std::optional<std::pair<double, double>> dissipation;  // (T1, T2*) in us
    int jobs = 1;
    OptimizeOptions optimize;  // optimized mode settings
};

struct SweepPoint {
    bool feasible = false;
    GateResult result;
    PrefactorSet prefactors;
    std::string error;
};

std::vector<SweepPoint> sweep(Family family, const LadderParams& params,
                              const std::vector<double>& t_grid, const SweepOptions& opts = {});

struct AnsatzScanEntry {
    int n = 0;
    int j = 0;
    double k = 0.0;
    bool reachable = false;
    double t_at_target = 0.0;  // ns, valid when reachable
    double t_min = 0.0;        // feasibility bound for this envelope
};

// For each bandwidth-limited cosine ansatz (n, j), find the shortest gate time
// at which the analytically corrected two-derivative pulse reaches the target
// infidelity (bisection to 0.01 ns), scanning up to t_max.
std::vector<AnsatzScanEntry> ansatz_scan(const LadderParams& params,
                                         const std::vector<std::pair<int, int>>& shapes,
                                         double target_infidelity = 1e-4,
                                         double t_max = 30.0);

}  // namespace rdrag

#endif
