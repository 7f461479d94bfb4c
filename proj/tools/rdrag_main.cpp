// rdrag: synthesize, predict, calibrate and simulate corrected single-qubit
// drive pulses on an anharmonic ladder.
//
// Frequencies on the command line are ordinary frequencies (GHz / MHz);
// internally everything is angular (rad/ns). Gate times are in ns.
//
// Exit codes: 0 success, 1 configuration error, 2 infeasible gate time
// (the feasible minimum is reported), 3 numerical non-convergence.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdrag/analytics.hpp"
#include "rdrag/calibration.hpp"
#include "rdrag/errors.hpp"
#include "rdrag/metrics.hpp"
#include "rdrag/propagation.hpp"
#include "rdrag/synthesis.hpp"

using json = nlohmann::json;
using namespace rdrag;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ModelOptions {
    double anharmonicity_ghz = -0.225;  // delta2 / 2 pi
    double delta3_ratio = 3.0;          // delta3 / delta2
    int levels = 4;

    LadderParams params() const {
        LadderParams p = duffing_ladder(kTwoPi * anharmonicity_ghz, levels);
        if (levels > 3) p.delta[3] = delta3_ratio * p.delta2();
        return p;
    }
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--anharmonicity-ghz", m.anharmonicity_ghz,
                    "Second-level anharmonicity in GHz (ordinary frequency)")
        ->capture_default_str();
    cmd->add_option("--delta3-ratio", m.delta3_ratio,
                    "Third-level anharmonicity as a multiple of the second")
        ->capture_default_str();
    cmd->add_option("--levels", m.levels, "Ladder truncation")
        ->check(CLI::Range(3, 12))
        ->capture_default_str();
}

struct ShapeOptions {
    std::string family = "drag";
    std::string envelope;  // "", "hann", "sin:N", "fourier-bl", "ansatz:N:J"
    bool superlinear = false;

    std::optional<Envelope> base(double T) const {
        if (envelope.empty()) return std::nullopt;
        Envelope env;
        env.duration = T;
        std::stringstream ss(envelope);
        std::string kind;
        std::getline(ss, kind, ':');
        if (kind == "hann") {
            env.kind = EnvelopeKind::Hann;
        } else if (kind == "sin") {
            env.kind = EnvelopeKind::SinPow;
            if (!(ss >> env.n)) throw ConfigError("envelope sin:N needs a power");
        } else if (kind == "fourier-bl") {
            env.kind = EnvelopeKind::FourierBL;
        } else if (kind == "ansatz") {
            env.kind = EnvelopeKind::FourierAnsatz;
            char sep;
            if (!(ss >> env.n >> sep >> env.j))
                throw ConfigError("envelope ansatz:N:J needs two integers");
        } else {
            throw ConfigError("unknown envelope: " + envelope);
        }
        return env;
    }
};

void add_shape_options(CLI::App* cmd, ShapeOptions& s) {
    cmd->add_option("--family", s.family, "Pulse family: hann | drag | r1d | r2d")
        ->capture_default_str();
    cmd->add_option("--envelope", s.envelope,
                    "Base envelope override: hann | sin:N | fourier-bl | ansatz:N:J");
    cmd->add_flag("--superlinear", s.superlinear, "Apply the cubic drive corrections");
}

// FNV-1a hash of the resolved configuration, embedded in output headers so
// results can be traced back to the exact invocation.
std::string config_hash(const CLI::App& app) {
    std::string repr;
    for (const CLI::Option* opt : app.get_options()) {
        if (!opt->get_lnames().empty()) {
            repr += opt->get_lnames()[0] + "=";
            for (const std::string& v : opt->results()) repr += v + ",";
            repr += ";";
        }
    }
    unsigned long long h = 14695981039346656037ull;
    for (char ch : repr) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw ConfigError("cannot open output file: " + path);
    return file;
}

json leakage_json(const LeakageReport& leak) {
    json j;
    j["from0"] = leak.from0;
    j["from1"] = leak.from1;
    return j;
}

double mhz(double rad_per_ns) { return rad_per_ns / kTwoPi * 1e3; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytically corrected fast pulses on an anharmonic ladder"};
    app.set_config("--config", "", "Read defaults from a key=value file");
    app.require_subcommand(1);

    std::string output;
    app.add_option("-o,--output", output, "Output file (default: stdout)");
    int jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    // ---- pulse ------------------------------------------------------------
    auto* pulse = app.add_subcommand("pulse", "Emit a synthesized waveform as CSV");
    ModelOptions pulse_model;
    ShapeOptions pulse_shape;
    double pulse_t = 12.0;
    int pulse_samples = 512;
    std::string pulse_detuning = "time";
    double pulse_delta_c_mhz = 0.0;
    add_model_options(pulse, pulse_model);
    add_shape_options(pulse, pulse_shape);
    pulse->add_option("-T,--gate-time", pulse_t, "Gate time in ns")->capture_default_str();
    pulse->add_option("--samples", pulse_samples, "CSV sample count")->capture_default_str();
    pulse->add_option("--detuning", pulse_detuning, "Detuning profile: time | constant | none")
        ->capture_default_str();
    pulse->add_option("--delta-c-mhz", pulse_delta_c_mhz,
                      "Constant detuning in MHz (with --detuning constant)");

    // ---- simulate ---------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "Propagate a pulse and report the gate error");
    ModelOptions sim_model;
    ShapeOptions sim_shape;
    double sim_t = 12.0;
    double sim_t1 = 0.0, sim_t2 = 0.0;
    add_model_options(simulate, sim_model);
    add_shape_options(simulate, sim_shape);
    simulate->add_option("-T,--gate-time", sim_t, "Gate time in ns")->capture_default_str();
    simulate->add_option("--t1-us", sim_t1, "Relaxation time in us (0: closed system)");
    simulate->add_option("--t2-us", sim_t2, "Pure-dephasing time in us (0: closed system)");

    // ---- predict ----------------------------------------------------------
    auto* predict = app.add_subcommand("predict", "First-order calibration predictions");
    ModelOptions pred_model;
    double pred_t = 15.0;
    add_model_options(predict, pred_model);
    predict->add_option("-T,--gate-time", pred_t, "Gate time in ns")->capture_default_str();

    // ---- calibrate --------------------------------------------------------
    auto* calibrate = app.add_subcommand("calibrate", "Optimize the calibration prefactors");
    ModelOptions cal_model;
    ShapeOptions cal_shape;
    double cal_t = 12.0;
    double cal_fixed_alpha = 0.0;
    int cal_max_evals = 2000;
    unsigned cal_seed = 20260826;
    add_model_options(calibrate, cal_model);
    add_shape_options(calibrate, cal_shape);
    calibrate->add_option("-T,--gate-time", cal_t, "Gate time in ns")->capture_default_str();
    calibrate->add_option("--fix-alpha", cal_fixed_alpha,
                          "Hold the derivative prefactor at this value (0: optimize it)");
    calibrate->add_option("--max-evals", cal_max_evals, "Objective evaluation budget")
        ->capture_default_str();
    calibrate->add_option("--seed", cal_seed, "Simplex jitter seed")->capture_default_str();

    // ---- sweep ------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Infidelity versus gate time (CSV)");
    ModelOptions sw_model;
    ShapeOptions sw_shape;
    double sw_start = 6.0, sw_stop = 16.0, sw_step = 0.5;
    std::string sw_mode = "analytic";
    double sw_t1 = 0.0, sw_t2 = 0.0;
    add_model_options(sweep_cmd, sw_model);
    add_shape_options(sweep_cmd, sw_shape);
    sweep_cmd->add_option("--t-start", sw_start, "First gate time in ns")->capture_default_str();
    sweep_cmd->add_option("--t-stop", sw_stop, "Last gate time in ns")->capture_default_str();
    sweep_cmd->add_option("--t-step", sw_step, "Grid step in ns")->capture_default_str();
    sweep_cmd->add_option("--mode", sw_mode, "analytic | predicted | optimized")
        ->capture_default_str();
    sweep_cmd->add_option("--t1-us", sw_t1, "Relaxation time in us (0: closed system)");
    sweep_cmd->add_option("--t2-us", sw_t2, "Pure-dephasing time in us (0: closed system)");

    // ---- tmin -------------------------------------------------------------
    auto* tmin_cmd = app.add_subcommand("tmin", "Minimum feasible gate time of a family");
    ModelOptions tm_model;
    ShapeOptions tm_shape;
    add_model_options(tmin_cmd, tm_model);
    add_shape_options(tmin_cmd, tm_shape);

    // ---- ansatz-scan ------------------------------------------------------
    auto* scan_cmd = app.add_subcommand(
        "ansatz-scan", "Shortest gate time reaching a target error per envelope shape");
    ModelOptions scan_model;
    std::vector<std::string> scan_shapes{"1:2", "1:3", "1:4", "1:5"};
    double scan_target = 1e-4, scan_tmax = 30.0;
    add_model_options(scan_cmd, scan_model);
    scan_cmd->add_option("--shapes", scan_shapes, "Envelope shapes as N:J pairs")
        ->capture_default_str();
    scan_cmd->add_option("--target", scan_target, "Target infidelity")->capture_default_str();
    scan_cmd->add_option("--t-max", scan_tmax, "Scan limit in ns")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    std::ofstream file;
    try {
        std::ostream& os = open_output(output, file);
        const std::string hash = config_hash(app);

        if (*pulse) {
            const LadderParams params = pulse_model.params();
            SynthesisOptions opts;
            opts.base = pulse_shape.base(pulse_t);
            opts.superlinear = pulse_shape.superlinear;
            if (pulse_detuning == "time") {
                opts.detuning = DetuningMode::TimeDependent;
            } else if (pulse_detuning == "constant") {
                opts.detuning = DetuningMode::Constant;
                opts.delta_c = pulse_delta_c_mhz * kTwoPi * 1e-3;
            } else if (pulse_detuning == "none") {
                opts.detuning = DetuningMode::None;
            } else {
                throw ConfigError("unknown detuning mode: " + pulse_detuning);
            }
            const ControlWaveform wave =
                synthesize(family_from_string(pulse_shape.family), params, pulse_t, opts);
            os << "# config " << hash << "\n# waveform " << wave.tag << "\n";
            write_waveform_csv(os, wave, pulse_samples);
        } else if (*simulate) {
            const LadderParams params = sim_model.params();
            SynthesisOptions opts;
            opts.base = sim_shape.base(sim_t);
            opts.superlinear = sim_shape.superlinear;
            const ControlWaveform wave =
                synthesize(family_from_string(sim_shape.family), params, sim_t, opts);
            const Propagator prop = propagate_unitary(params, wave);
            GateResult result = make_gate_result(sim_t, prop.u, pauli_x());
            json j;
            j["config"] = hash;
            j["family"] = sim_shape.family;
            j["tag"] = wave.tag;
            j["t_ns"] = result.t_ns;
            j["unitary"] = {{"fidelity", result.fidelity},
                            {"infidelity", result.infidelity},
                            {"leakage", leakage_json(result.leakage)},
                            {"steps", prop.steps}};
            if (sim_t1 > 0.0 && sim_t2 > 0.0) {
                LadderParams open = params;
                open.gamma = 1.0 / (sim_t1 * 1000.0);
                open.gamma_phi = 1.0 / (sim_t2 * 1000.0);
                const double fd = dissipative_fidelity(open, wave, pauli_x());
                j["dissipative"] = {{"t1_us", sim_t1},
                                    {"t2_us", sim_t2},
                                    {"fidelity", fd},
                                    {"infidelity", 1.0 - fd}};
            }
            os << j.dump(2) << "\n";
        } else if (*predict) {
            const LadderParams params = pred_model.params();
            const PrefactorSet p = predicted_prefactors(params, pred_t);
            json j;
            j["config"] = hash;
            j["t_ns"] = pred_t;
            j["alpha"] = p.alpha12;
            j["beta"] = p.beta;
            j["delta_c_mhz"] = mhz(p.delta_c.value_or(0.0));
            j["delta_c_rad_ns"] = p.delta_c.value_or(0.0);
            j["delta_c_closed_form_rad_ns"] = delta_c_closed_form(
                p.alpha12, params.lambda2(), params.delta2(), pred_t);
            os << j.dump(2) << "\n";
        } else if (*calibrate) {
            const LadderParams params = cal_model.params();
            OptimizeOptions opts;
            opts.max_evals = cal_max_evals;
            opts.seed = cal_seed;
            opts.base = cal_shape.base(cal_t);
            if (cal_fixed_alpha != 0.0) {
                opts.fix_alpha12 = true;
                PrefactorSet init = predicted_prefactors(params, cal_t);
                init.alpha12 = cal_fixed_alpha;
                opts.init = init;
            }
            const CalibrationRun run = optimize_prefactors(
                family_from_string(cal_shape.family), params, cal_t, opts);
            json j;
            j["config"] = hash;
            j["family"] = cal_shape.family;
            j["t_ns"] = run.t_ns;
            j["seed"] = run.seed;
            j["converged"] = run.converged;
            j["evaluations"] = run.evaluations;
            j["initial"] = {{"beta", run.initial.beta},
                            {"alpha12", run.initial.alpha12},
                            {"alpha02", run.initial.alpha02},
                            {"alpha13", run.initial.alpha13},
                            {"delta_c_mhz", mhz(run.initial.delta_c.value_or(0.0))},
                            {"infidelity", run.initial_infidelity}};
            j["result"] = {{"beta", run.result.beta},
                           {"alpha12", run.result.alpha12},
                           {"alpha02", run.result.alpha02},
                           {"alpha13", run.result.alpha13},
                           {"delta_c_mhz", mhz(run.result.delta_c.value_or(0.0))},
                           {"infidelity", run.final_infidelity}};
            os << j.dump(2) << "\n";
        } else if (*sweep_cmd) {
            const LadderParams params = sw_model.params();
            std::vector<double> grid;
            for (double t = sw_start; t <= sw_stop + 1e-9; t += sw_step) grid.push_back(t);
            SweepOptions opts;
            opts.superlinear = sw_shape.superlinear;
            opts.jobs = jobs;
            if (!sw_shape.envelope.empty()) opts.base = sw_shape.base(sw_start);
            if (sw_mode == "analytic") {
                opts.mode = PrefactorMode::Analytic;
            } else if (sw_mode == "predicted") {
                opts.mode = PrefactorMode::Predicted;
            } else if (sw_mode == "optimized") {
                opts.mode = PrefactorMode::Optimized;
            } else {
                throw ConfigError("unknown sweep mode: " + sw_mode);
            }
            if (sw_t1 > 0.0 && sw_t2 > 0.0) opts.dissipation = {{sw_t1, sw_t2}};
            const auto points =
                sweep(family_from_string(sw_shape.family), params, grid, opts);
            os << "# config " << hash << "\nt_ns,infidelity,fidelity,feasible,error\n";
            for (const SweepPoint& pt : points) {
                os << pt.result.t_ns << ',';
                if (pt.feasible) {
                    os << pt.result.infidelity << ',' << pt.result.fidelity << ",1,\n";
                } else {
                    os << ",,0," << '"' << pt.error << '"' << "\n";
                }
            }
        } else if (*tmin_cmd) {
            const LadderParams params = tm_model.params();
            const Family family = family_from_string(tm_shape.family);
            SynthesisOptions opts;
            opts.base = tm_shape.base(10.0);
            json j;
            j["config"] = hash;
            j["family"] = tm_shape.family;
            j["t_min_ns"] = family_tmin(family, params, opts);
            if (family == Family::R1D && !opts.base) {
                j["closed_form_ns"] = tmin_r1d(3, params.delta2());
            }
            os << j.dump(2) << "\n";
        } else if (*scan_cmd) {
            const LadderParams params = scan_model.params();
            std::vector<std::pair<int, int>> shapes;
            for (const std::string& s : scan_shapes) {
                int n = 0, jj = 0;
                char sep = 0;
                std::stringstream ss(s);
                if (!(ss >> n >> sep >> jj)) throw ConfigError("bad shape spec: " + s);
                shapes.push_back({n, jj});
            }
            const auto entries = ansatz_scan(params, shapes, scan_target, scan_tmax);
            os << "# config " << hash << "\nn,j,k,t_min_ns,reachable,t_at_target_ns\n";
            for (const AnsatzScanEntry& e : entries) {
                os << e.n << ',' << e.j << ',' << e.k << ',' << e.t_min << ','
                   << (e.reachable ? 1 : 0) << ',';
                if (e.reachable) os << e.t_at_target;
                os << "\n";
            }
        }
    } catch (const InfeasibleGateTime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
