#include "rdrag/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "rdrag/analytics.hpp"
#include "rdrag/errors.hpp"
#include "rdrag/propagation.hpp"

namespace rdrag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> pack(Family family, const PrefactorSet& p, bool fix_alpha12) {
    std::vector<double> x{p.beta};
    if (family != Family::Hann && !fix_alpha12) x.push_back(p.alpha12);
    if (family == Family::R1D || family == Family::R2D) x.push_back(p.alpha02);
    if (family == Family::R2D) x.push_back(p.alpha13);
    x.push_back(p.delta_c.value_or(0.0));
    return x;
}

PrefactorSet unpack(Family family, const std::vector<double>& x, const PrefactorSet& ref,
                    bool fix_alpha12) {
    PrefactorSet p = ref;
    std::size_t i = 0;
    p.beta = x[i++];
    if (family != Family::Hann && !fix_alpha12) p.alpha12 = x[i++];
    if (family == Family::R1D || family == Family::R2D) p.alpha02 = x[i++];
    if (family == Family::R2D) p.alpha13 = x[i++];
    p.delta_c = x[i++];
    return p;
}

ControlWaveform build_calibrated(Family family, const LadderParams& params, double t_ns,
                                 const PrefactorSet& p, const std::optional<Envelope>& base) {
    SynthesisOptions sopts;
    sopts.base = base ? base : std::optional<Envelope>(default_base_calibrated(family, t_ns));
    sopts.superlinear = false;
    sopts.detuning = DetuningMode::None;
    sopts.alpha02 = p.alpha02;
    sopts.alpha13 = p.alpha13;
    return apply_prefactors(synthesize(family, params, t_ns, sopts), p);
}

double unitary_infidelity(const LadderParams& params, const ControlWaveform& wave,
                          const PropagationOptions& popts) {
    const Propagator prop = propagate_unitary(params, wave, popts);
    return 1.0 - gate_fidelity(prop.u, pauli_x());
}

struct NelderMeadResult {
    std::vector<double> best_x;
    double best_f = kInf;
    int evaluations = 0;
    bool converged = false;
};

template <typename F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const std::vector<double>& scale,
                             int max_evals, double spread_tol, unsigned seed,
                             std::vector<CalibrationRun::TracePoint>* trace) {
    const std::size_t dim = x0.size();
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);

    NelderMeadResult out;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        ++evals;
        if (v < out.best_f) {
            out.best_f = v;
            out.best_x = x;
            if (trace) trace->push_back({evals, v});
        }
        return v;
    };

    auto run_from = [&](std::vector<double> origin, double edge_factor) {
        std::vector<std::vector<double>> xs(dim + 1, origin);
        std::vector<double> fs(dim + 1);
        for (std::size_t i = 0; i < dim; ++i) {
            xs[i + 1][i] += edge_factor * scale[i] * (1.0 + jitter(rng));
        }
        for (std::size_t i = 0; i <= dim; ++i) fs[i] = eval(xs[i]);

        bool converged = false;
        while (evals < max_evals) {
            std::vector<std::size_t> order(dim + 1);
            for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
            const std::size_t lo = order[0], hi = order[dim], next_hi = order[dim - 1];
            if (std::isfinite(fs[hi]) && fs[hi] - fs[lo] <= spread_tol) {
                converged = true;
                break;
            }
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t i = 0; i <= dim; ++i) {
                if (i == hi) continue;
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += xs[i][d] / dim;
            }
            auto along = [&](double c) {
                std::vector<double> x(dim);
                for (std::size_t d = 0; d < dim; ++d) {
                    x[d] = centroid[d] + c * (xs[hi][d] - centroid[d]);
                }
                return x;
            };
            const std::vector<double> xr = along(-1.0);
            const double fr = eval(xr);
            if (fr < fs[lo]) {
                const std::vector<double> xe = along(-2.0);
                const double fe = eval(xe);
                if (fe < fr) {
                    xs[hi] = xe;
                    fs[hi] = fe;
                } else {
                    xs[hi] = xr;
                    fs[hi] = fr;
                }
            } else if (fr < fs[next_hi]) {
                xs[hi] = xr;
                fs[hi] = fr;
            } else {
                const bool outside = fr < fs[hi];
                const std::vector<double> xc = along(outside ? -0.5 : 0.5);
                const double fc = eval(xc);
                if (fc < std::min(fr, fs[hi])) {
                    xs[hi] = xc;
                    fs[hi] = fc;
                } else {
                    for (std::size_t i = 0; i <= dim; ++i) {
                        if (i == lo) continue;
                        for (std::size_t d = 0; d < dim; ++d) {
                            xs[i][d] = xs[lo][d] + 0.5 * (xs[i][d] - xs[lo][d]);
                        }
                        fs[i] = eval(xs[i]);
                        if (evals >= max_evals) break;
                    }
                }
            }
        }
        return converged;
    };

    out.best_x = x0;
    bool conv = run_from(x0, 1.0);
    if (evals < max_evals) conv = run_from(out.best_x, 0.1);  // polish restart
    out.evaluations = evals;
    out.converged = conv;
    return out;
}

}  // namespace

PrefactorSet predicted_prefactors(const LadderParams& params, double t_ns) {
    const double d2 = params.delta2(), l2 = params.lambda2();
    PrefactorSet p;
    p.alpha12 = predict_alpha(l2, d2, params.delta3(), t_ns);
    const SignalPtr hann = make_hann(std::numbers::pi / (t_ns / 2.0), t_ns);
    p.delta_c = predict_delta_c(*hann, p.alpha12, l2, d2, DeltaCMode::Integral);
    p.beta = predict_beta(p.alpha12, *p.delta_c, l2, d2, t_ns, BetaMode::Cubic);
    return p;
}

CalibrationRun optimize_prefactors(Family family, const LadderParams& params, double t_ns,
                                   const OptimizeOptions& opts) {
    CalibrationRun run;
    run.family = family;
    run.t_ns = t_ns;
    run.seed = opts.seed;

    PrefactorSet init = opts.init.value_or(predicted_prefactors(params, t_ns));
    if (!init.delta_c) init.delta_c = 0.0;
    run.initial = init;

    const double dc_ref = delta_c_closed_form(init.alpha12, params.lambda2(),
                                              params.delta2(), t_ns);
    const double dc_bound = 20.0 * std::max(std::abs(dc_ref), 1e-3);

    // Freeze the step count from one converged propagation at the start point
    // so every objective call integrates the same deterministic grid.
    PropagationOptions inner;
    if (opts.fixed_steps > 0) {
        inner.fixed_steps = opts.fixed_steps;
    } else {
        const ControlWaveform w0 = build_calibrated(family, params, t_ns, init, opts.base);
        const Propagator p0 = propagate_unitary(params, w0);
        inner.fixed_steps = p0.steps;
    }

    auto objective = [&](const std::vector<double>& x) {
        const PrefactorSet p = unpack(family, x, init, opts.fix_alpha12);
        if (std::abs(p.delta_c.value_or(0.0)) > dc_bound) return kInf;
        if (p.beta <= 0.0 || p.beta > 3.0) return kInf;
        try {
            return unitary_infidelity(params, build_calibrated(family, params, t_ns, p, opts.base),
                                      inner);
        } catch (const InfeasibleGateTime&) {
            return kInf;
        } catch (const NumericalError&) {
            return kInf;
        }
    };

    const std::vector<double> x0 = pack(family, init, opts.fix_alpha12);
    std::vector<double> scale(x0.size(), 0.02);
    scale.back() = std::max(0.02 * std::abs(*init.delta_c), 2e-3);

    // The leakage interference makes the landscape multimodal in the
    // derivative prefactor, so restart from shifted values of it as well.
    std::vector<std::vector<double>> starts{x0};
    if (!opts.fix_alpha12 && family != Family::Hann) {
        for (double shift : {-0.4, 0.4}) {
            std::vector<double> x = x0;
            x[1] += shift;
            starts.push_back(x);
        }
    }
    NelderMeadResult best;
    int evals = 0;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        NelderMeadResult nm = nelder_mead(objective, starts[k], scale, opts.max_evals,
                                          opts.spread_tol, opts.seed + unsigned(k),
                                          k == 0 ? &run.trace : nullptr);
        evals += nm.evaluations;
        if (nm.best_f < best.best_f) best = std::move(nm);
    }

    run.result = unpack(family, best.best_x, init, opts.fix_alpha12);
    run.evaluations = evals;
    run.converged = best.converged;
    // Final numbers from fully converged propagations.
    run.initial_infidelity = unitary_infidelity(
        params, build_calibrated(family, params, t_ns, init, opts.base), {});
    run.final_infidelity = unitary_infidelity(
        params, build_calibrated(family, params, t_ns, run.result, opts.base), {});
    return run;
}

namespace {

SweepPoint sweep_point(Family family, const LadderParams& params, double t_ns,
                       const SweepOptions& opts, const std::optional<PrefactorSet>& warm,
                       PrefactorSet* carry) {
    SweepPoint point;
    try {
        ControlWaveform wave;
        if (opts.mode == PrefactorMode::Analytic) {
            SynthesisOptions sopts;
            sopts.base = opts.base;
            sopts.superlinear = opts.superlinear;
            sopts.detuning = DetuningMode::TimeDependent;
            wave = synthesize(family, params, t_ns, sopts);
        } else if (opts.mode == PrefactorMode::Predicted) {
            point.prefactors = predicted_prefactors(params, t_ns);
            wave = build_calibrated(family, params, t_ns, point.prefactors, opts.base);
        } else {
            OptimizeOptions oopts = opts.optimize;
            oopts.base = opts.base ? opts.base : oopts.base;
            if (warm) oopts.init = warm;
            const CalibrationRun run = optimize_prefactors(family, params, t_ns, oopts);
            point.prefactors = run.result;
            if (carry) *carry = run.result;
            wave = build_calibrated(family, params, t_ns, run.result, oopts.base);
        }

        const Propagator prop = propagate_unitary(params, wave);
        point.result = make_gate_result(t_ns, prop.u, pauli_x());
        if (opts.dissipation) {
            LadderParams open = params;
            open.gamma = 1.0 / (opts.dissipation->first * 1000.0);
            open.gamma_phi = 1.0 / (opts.dissipation->second * 1000.0);
            const double fd = dissipative_fidelity(open, wave, pauli_x());
            point.result.fidelity = fd;
            point.result.infidelity = 1.0 - fd;
        }
        point.feasible = true;
    } catch (const InfeasibleGateTime& e) {
        point.error = e.what();
        point.result.t_ns = t_ns;
    }
    return point;
}

}  // namespace

std::vector<SweepPoint> sweep(Family family, const LadderParams& params,
                              const std::vector<double>& t_grid, const SweepOptions& opts) {
    std::vector<SweepPoint> points(t_grid.size());
    if (opts.mode == PrefactorMode::Optimized) {
        // Sequential ascending pass so each fit warm-starts from the previous one.
        std::vector<std::size_t> order(t_grid.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });
        std::optional<PrefactorSet> warm = opts.optimize.init;
        PrefactorSet carry;
        for (std::size_t idx : order) {
            points[idx] = sweep_point(family, params, t_grid[idx], opts, warm, &carry);
            if (points[idx].feasible) warm = carry;
        }
        return points;
    }
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            points[i] = sweep_point(family, params, t_grid[i], opts, std::nullopt, nullptr);
        }
        return points;
    }
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < jobs; ++w) {
        workers.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next.fetch_add(1); i < t_grid.size(); i = next.fetch_add(1)) {
                points[i] = sweep_point(family, params, t_grid[i], opts, std::nullopt, nullptr);
            }
        }));
    }
    for (auto& w : workers) w.get();
    return points;
}

std::vector<AnsatzScanEntry> ansatz_scan(const LadderParams& params,
                                         const std::vector<std::pair<int, int>>& shapes,
                                         double target_infidelity, double t_max) {
    std::vector<AnsatzScanEntry> out;
    for (const auto& [n, j] : shapes) {
        AnsatzScanEntry entry;
        entry.n = n;
        entry.j = j;
        entry.k = static_cast<double>(j) * j / (static_cast<double>(n) * n);

        Envelope base;
        base.kind = EnvelopeKind::FourierAnsatz;
        base.n = n;
        base.j = j;
        base.amplitude = 1.0;
        base.duration = 10.0;

        SynthesisOptions sopts;
        sopts.base = base;
        sopts.superlinear = true;
        sopts.detuning = DetuningMode::TimeDependent;
        entry.t_min = family_tmin(Family::R2D, params, sopts);

        auto infidelity_at = [&](double T) {
            const ControlWaveform wave = synthesize(Family::R2D, params, T, sopts);
            const Propagator prop = propagate_unitary(params, wave);
            return 1.0 - gate_fidelity(prop.u, pauli_x());
        };
        auto good = [&](double T) {
            try {
                return infidelity_at(T) <= target_infidelity;
            } catch (const InfeasibleGateTime&) {
                return false;
            }
        };

        double lo = entry.t_min + 0.02, hi = lo;
        bool found = false;
        for (double T = lo; T <= t_max; T += 0.25) {
            if (good(T)) {
                hi = T;
                found = true;
                break;
            }
            lo = T;
        }
        if (!found) {
            out.push_back(entry);
            continue;
        }
        while (hi - lo > 0.01) {
            const double mid = 0.5 * (lo + hi);
            (good(mid) ? hi : lo) = mid;
        }
        entry.reachable = true;
        entry.t_at_target = hi;
        out.push_back(entry);
    }
    return out;
}

}  // namespace rdrag
