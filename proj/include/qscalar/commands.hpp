// Copyright 2026 The qscalar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Implementations behind the qscalar command-line subcommands. Each command
 * returns its tables so tests can drive it without a process boundary.
 */
#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qscalar/io.hpp"
#include "qscalar/splitting.hpp"

namespace qscalar::cli {

namespace fs = std::filesystem;

/// Least-squares slope of log(y) against log(x). NaN when fewer than two
/// points have positive y.
inline double log_log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0) || !(x[i] > 0.0)) {
            continue;
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double denom = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / denom;
}

inline void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    detail::require(!ec, "cannot create output directory '" + dir.string() + "'");
}

/// Whether the closed-form pulse solution applies to this spec.
inline bool has_analytic_reference(const io::RunSpec &spec) {
    const auto &c = spec.scenario;
    return !c.two_dimensional() && c.bc_x == BoundaryKind::Periodic && spec.initial == "pulse" &&
           c.profile.order() == 0;
}

inline std::vector<double> analytic_samples(const ScenarioConfig &c, double time) {
    std::vector<double> out(c.nx());
    const double u = c.velocity * c.profile.coefficients.front();
    for (std::size_t j = 0; j < c.nx(); ++j) {
        out[j] = reference::analytic_pulse_solution(axis_coordinate(c.bc_x, j, c.nx(), c.length), time, u,
                                                    c.diffusivity, c.length);
    }
    return out;
}

// ---------------------------------------------------------------------------
// run

struct RunOutcome {
    RunResult result;
    std::map<std::string, double> errors;
    io::CsvTable summary;
};

inline RunOutcome cmd_run(io::RunSpec spec, const fs::path &out_dir, std::ostream &log,
                          std::optional<Splitting> splitting = std::nullopt, bool dump_amplitudes = false) {
    if (splitting) {
        spec.scenario.splitting = *splitting;
    }
    const auto &c = spec.scenario;
    const auto initial = io::initial_field(spec);
    RunOutcome outcome;
    outcome.result = run_scenario(c, initial);
    auto &result = outcome.result;
    outcome.errors = result.error_norms;

    if (has_analytic_reference(spec)) {
        outcome.errors["analytic"] =
            reference::error_norm(result.final_state.amplitudes(), std::span<const double>(analytic_samples(c, c.t_final)));
        double worst = 0.0;
        for (const auto &cp : result.checkpoints) {
            const auto exact = analytic_samples(c, cp.time);
            worst = std::max(worst, reference::error_norm(cp.amplitudes, std::span<const double>(exact)));
        }
        outcome.errors["analytic_max"] = worst;
    }
    if (spec.fd10) {
        const auto fd = reference::fd10_reference(c, reference::ScalarField::on_grid(c, initial));
        outcome.errors["fd10"] = reference::error_norm(result.final_state.amplitudes(), std::span<const double>(fd.values));
    }

    ensure_dir(out_dir);
    for (std::size_t k = 0; k < result.checkpoints.size(); ++k) {
        const auto &cp = result.checkpoints[k];
        io::CsvTable field{{"x", "y", "value"}, {}};
        for (std::size_t iy = 0; iy < c.ny(); ++iy) {
            const double y = c.two_dimensional() ? axis_coordinate(c.bc_y, iy, c.ny(), c.length) : 0.0;
            for (std::size_t ix = 0; ix < c.nx(); ++ix) {
                field.rows.push_back({io::format_double(axis_coordinate(c.bc_x, ix, c.nx(), c.length)),
                                      io::format_double(y), io::format_double(cp.amplitudes[ix + c.nx() * iy].real())});
            }
        }
        io::write_csv((out_dir / ("field_" + std::to_string(k) + ".csv")).string(), field);
    }

    auto &summary = outcome.summary;
    summary.header = {"Pe", "Fo", "success_prob", "oracle_success_prob"};
    summary.rows.push_back({io::format_double(c.peclet()), io::format_double(c.fourier()),
                            io::format_double(result.final_state.success_prob()),
                            io::format_double(result.oracle_success_prob)});
    for (const auto &[name, value] : outcome.errors) {
        summary.header.push_back("error_" + name);
        summary.rows.back().push_back(io::format_double(value));
    }
    io::write_csv((out_dir / "summary.csv").string(), summary);

    if (dump_amplitudes) {
        std::ofstream dump(out_dir / "final_state.bin", std::ios::binary);
        detail::require(static_cast<bool>(dump), "cannot write amplitude dump");
        write_amplitude_dump(dump, result.final_state);
    }

    log << "Pe=" << io::format_short(c.peclet()) << " Fo=" << io::format_short(c.fourier())
        << " success_prob=" << io::format_short(result.final_state.success_prob()) << "\n";
    for (const auto &[name, value] : outcome.errors) {
        log << "error[" << name << "]=" << io::format_short(value) << "\n";
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// converge

enum class SweepKind { Grid, Steps };

/// Largest error against the closed-form solution over the checkpoint times
/// t_k = k t / C, each reached by one splitting step from t = 0.
inline double pulse_checkpoint_error(const ScenarioConfig &base, Splitting splitting) {
    const int count = std::max(base.checkpoints, 1);
    ScenarioConfig c = base;
    c.steps = 1;
    c.splitting = splitting;
    c.checkpoints = 0;
    const auto initial = pulse_initial_condition(c);
    double worst = 0.0;
    for (int k = 1; k <= count; ++k) {
        c.t_final = base.t_final * k / count;
        const auto run = run_scenario(c, initial, RunOptions{false, false});
        const auto exact = analytic_samples(c, c.t_final);
        worst = std::max(worst, reference::error_norm(run.final_state.amplitudes(), std::span<const double>(exact)));
    }
    return worst;
}

/// Final-time error of an N_t-step run against a precomputed reference field.
inline double step_error(const ScenarioConfig &base, Splitting splitting, int steps,
                         std::span<const double> initial, std::span<const complex_t> reference_field) {
    ScenarioConfig c = base;
    c.steps = steps;
    c.splitting = splitting;
    c.checkpoints = 1;
    const auto run = run_scenario(c, initial, RunOptions{false, false});
    return reference::error_norm(run.final_state.amplitudes(), reference_field);
}

/// Reference for a step sweep: the FD10 solution when requested, otherwise a
/// merged Strang run with spec.reference_steps steps.
inline std::vector<complex_t> step_sweep_reference(const io::RunSpec &spec, std::span<const double> initial) {
    const auto &c = spec.scenario;
    if (spec.fd10) {
        const auto fd = reference::fd10_reference(c, reference::ScalarField::on_grid(c, {initial.begin(), initial.end()}));
        return {fd.values.begin(), fd.values.end()};
    }
    ScenarioConfig fine = c;
    fine.steps = spec.reference_steps;
    fine.splitting = Splitting::Strang;
    fine.merge_half_steps = true;
    fine.checkpoints = 1;
    const auto run = run_scenario(fine, initial, RunOptions{false, false});
    const auto amps = run.final_state.amplitudes();
    return {amps.begin(), amps.end()};
}

/// Rows (N or N_t, trotter_error, strang_error). With two or more rows a
/// footer "fit" row holds the log-log slopes against the swept variable.
inline io::CsvTable cmd_converge(const io::RunSpec &spec, SweepKind kind, const std::vector<int> &values,
                                 std::ostream &log) {
    detail::require(!values.empty(), "sweep list must not be empty");
    io::CsvTable table;
    std::vector<double> xs, trotter, strang;
    if (kind == SweepKind::Grid) {
        detail::require(has_analytic_reference(spec),
                        "grid sweep needs the 1D periodic pulse scenario (closed-form reference)");
        table.header = {"N", "trotter_error", "strang_error"};
        for (int n_points : values) {
            detail::require(n_points >= 2 && detail::is_power_of_two(static_cast<std::size_t>(n_points)),
                            "grid sizes must be powers of two >= 2");
            ScenarioConfig c = spec.scenario;
            c.n_x = detail::log2_exact(static_cast<std::size_t>(n_points));
            xs.push_back(n_points);
            trotter.push_back(pulse_checkpoint_error(c, Splitting::Trotter));
            strang.push_back(pulse_checkpoint_error(c, Splitting::Strang));
        }
    } else {
        table.header = {"N_t", "trotter_error", "strang_error"};
        const auto initial = io::initial_field(spec);
        const auto ref = step_sweep_reference(spec, initial);
        for (int steps : values) {
            detail::require(steps >= 1, "step counts must be positive");
            xs.push_back(steps);
            trotter.push_back(step_error(spec.scenario, Splitting::Trotter, steps, initial, ref));
            strang.push_back(step_error(spec.scenario, Splitting::Strang, steps, initial, ref));
        }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        table.rows.push_back({io::format_double(xs[i]), io::format_double(trotter[i]), io::format_double(strang[i])});
        log << table.header[0] << "=" << xs[i] << " trotter=" << io::format_short(trotter[i])
            << " strang=" << io::format_short(strang[i]) << "\n";
    }
    if (xs.size() >= 2) {
        const double st = log_log_slope(xs, trotter);
        const double ss = log_log_slope(xs, strang);
        table.rows.push_back({"fit", io::format_double(st), io::format_double(ss)});
        log << "fit slopes: trotter=" << io::format_short(st) << " strang=" << io::format_short(ss) << "\n";
    }
    return table;
}

// ---------------------------------------------------------------------------
// gatecount

struct GateCountRow {
    int n = 0;
    std::int64_t logical = 0;
    std::int64_t two_qubit = 0;
    std::int64_t qft_two_qubit = 0;
};

/// Advection circuit with n qubits per axis for `profile`.
inline GateCountRow advection_gate_counts(const VelocityProfile &profile, int n) {
    const Circuit circuit = profile.order() == 0 ? build_uniform_advection(Register{0, n}, 2 * n, 1.0)
                                                 : build_shear_advection(profile, n, n, 1.0);
    const auto counts = count_gates(circuit);
    return {n, counts.controlled, counts.two_qubit, count_two_qubit_gates(build_qft_circuit(n))};
}

/// Rows (n, logical, two_qubit, qft_two_qubit) plus a "fit" footer with the
/// log-log exponents in n.
inline io::CsvTable cmd_gatecount(const VelocityProfile &profile, int n_min, int n_max, std::ostream &log) {
    detail::require(n_min >= 1 && n_max >= n_min && n_max <= 62, "invalid qubit range");
    io::CsvTable table{{"n", "logical", "two_qubit", "qft_two_qubit"}, {}};
    std::vector<double> ns, logical, two, qft;
    for (int n = n_min; n <= n_max; ++n) {
        const auto row = advection_gate_counts(profile, n);
        ns.push_back(n);
        logical.push_back(static_cast<double>(row.logical));
        two.push_back(static_cast<double>(row.two_qubit));
        qft.push_back(static_cast<double>(row.qft_two_qubit));
        table.rows.push_back({std::to_string(n), std::to_string(row.logical), std::to_string(row.two_qubit),
                              std::to_string(row.qft_two_qubit)});
    }
    if (ns.size() >= 2) {
        table.rows.push_back({"fit", io::format_double(log_log_slope(ns, logical)),
                              io::format_double(log_log_slope(ns, two)), io::format_double(log_log_slope(ns, qft))});
        log << to_string(profile.kind) << ": two-qubit exponent " << io::format_short(log_log_slope(ns, two)) << "\n";
    }
    return table;
}

// ---------------------------------------------------------------------------
// hardware-demo and sample

/// sqrt(p -/+ 3 sigma) with sigma = sqrt(p (1 - p) / M), clipped to [0, 1].
inline std::pair<double, double> three_sigma_band(double p, std::int64_t shots) {
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
    return {std::sqrt(std::max(0.0, p - 3.0 * sigma)), std::sqrt(std::min(1.0, p + 3.0 * sigma))};
}

struct ReconstructionTable {
    io::CsvTable table;
    std::size_t inside = 0;
    std::size_t bins = 0;
};

inline ReconstructionTable reconstruct(const QuantumState &state, std::int64_t shots, std::uint64_t seed) {
    const auto counts = sample_counts(state, shots, seed);
    ReconstructionTable out;
    out.table.header = {"index", "ideal_amp", "sampled_amp", "lo_3sigma", "hi_3sigma"};
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        const double sampled = std::sqrt(static_cast<double>(counts[i]) / static_cast<double>(shots));
        const auto [lo, hi] = three_sigma_band(p, shots);
        out.table.rows.push_back({std::to_string(i), io::format_double(std::abs(amps[i])), io::format_double(sampled),
                                  io::format_double(lo), io::format_double(hi)});
        ++out.bins;
        if (sampled >= lo && sampled <= hi) {
            ++out.inside;
        }
    }
    return out;
}

struct HardwareDemo {
    Circuit circuit;
    int n_main = 0;
    int n_ancilla = 0;
};

/// Fourier-space initial state, advection by alpha = -pi/2, diffusion with
/// beta = ln 2 on fresh ancillas, and the transform back to physical space.
inline HardwareDemo build_hardware_demo(int n) {
    detail::require(n >= 2, "hardware demo needs n >= 2");
    HardwareDemo demo;
    demo.n_main = n;
    const Register reg{0, n};
    demo.n_ancilla = periodic_damping_count(n);
    const int total = n + demo.n_ancilla;
    detail::require(total <= max_qubits(), "hardware demo exceeds the configured maximum qubit count");
    Circuit circuit(total);
    circuit.append(build_fourier_initial_state(n, total));
    circuit.append(build_uniform_advection(reg, total, -std::numbers::pi / 2.0));
    circuit.append(build_periodic_diffusion_fresh_ancillas(reg, n, total, std::log(2.0)));
    circuit.append(build_qft_circuit(reg, total, false));
    demo.circuit = std::move(circuit);
    return demo;
}

/// One line per gate: GATE kind target [q:v,...] angle.
inline std::string circuit_listing(const Circuit &circuit) {
    std::string out = "# qubits " + std::to_string(circuit.n_qubits()) + "\n";
    for (const auto &gate : circuit.gates()) {
        out += "GATE " + gate_mnemonic(gate) + " " + std::to_string(gate.target);
        if (gate.kind == GateKind::Swap) {
            out += "," + std::to_string(gate.target2);
        }
        out += " [";
        for (std::size_t i = 0; i < gate.controls.size(); ++i) {
            out += (i ? "," : "") + std::to_string(gate.controls[i].qubit) + ":" + (gate.controls[i].value ? "1" : "0");
        }
        out += "] " + io::format_double(gate.param) + "\n";
    }
    return out;
}

/// Ideal postselected main-register state of the hardware demo. All
/// ancillas are measured at the end.
inline QuantumState run_hardware_demo(const HardwareDemo &demo) {
    QuantumState state = new_state(demo.circuit.n_qubits());
    apply_circuit(state, demo.circuit, Postselection::Deferred);
    for (int a = demo.n_main; a < demo.circuit.n_qubits(); ++a) {
        project_ancilla_zero(state, a);
    }
    return discard_ancillas(state, demo.n_main);
}

struct HardwareDemoOutcome {
    double success_prob = 0.0;
    int ancillas = 0;
    ReconstructionTable reconstruction;
};

inline HardwareDemoOutcome cmd_hardware_demo(int n, std::int64_t shots, std::uint64_t seed, const fs::path &out_dir,
                                             std::ostream &log) {
    const auto demo = build_hardware_demo(n);
    const auto state = run_hardware_demo(demo);
    HardwareDemoOutcome outcome{state.success_prob(), demo.n_ancilla, reconstruct(state, shots, seed)};
    ensure_dir(out_dir);
    {
        std::ofstream listing(out_dir / "circuit.txt");
        detail::require(static_cast<bool>(listing), "cannot write circuit listing");
        listing << circuit_listing(demo.circuit);
    }
    io::write_csv((out_dir / "hardware_demo.csv").string(), outcome.reconstruction.table);
    log << "n=" << n << " ancillas=" << demo.n_ancilla << " success_prob=" << io::format_short(outcome.success_prob)
        << " inside_3sigma=" << outcome.reconstruction.inside << "/" << outcome.reconstruction.bins << "\n";
    return outcome;
}

inline ReconstructionTable cmd_sample(const io::RunSpec &spec, std::int64_t shots, std::uint64_t seed,
                                      const fs::path &out_dir, std::ostream &log) {
    detail::require(shots >= 1, "shots must be at least 1");
    auto run = run_scenario(spec.scenario, io::initial_field(spec), RunOptions{false, false});
    auto table = reconstruct(run.final_state, shots, seed);
    ensure_dir(out_dir);
    io::write_csv((out_dir / "sample.csv").string(), table.table);
    log << "shots=" << shots << " inside_3sigma=" << table.inside << "/" << table.bins << "\n";
    return table;
}

} // namespace qscalar::cli
