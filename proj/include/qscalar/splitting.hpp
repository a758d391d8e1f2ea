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
 * Trotter and Strang time stepping for advection by a shear flow u(y) plus
 * diffusion, and the driver that runs a whole scenario.
 *
 * Advection is the first operator and diffusion the second. Diffusion is
 * applied as an x part (fused with advection in x-spectral space) and a y
 * part in y-spectral space; the two are diagonal in the product basis and
 * commute exactly.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qscalar/advection.hpp"
#include "qscalar/diffusion.hpp"
#include "qscalar/reference.hpp"
#include "qscalar/scenario.hpp"
#include "qscalar/state.hpp"
#include "qscalar/transforms.hpp"

namespace qscalar {

/// Circuits for one step size, built once and reused across steps.
class StepCircuits {
  public:
    StepCircuits(const ScenarioConfig &config, double dt) : config_(config), dt_(dt) {
        config.validate();
        const int total = config.total_qubits();
        full_advection_ = advection(dt);
        half_advection_ = advection(0.5 * dt);
        diffusion_x_ = build_diffusion(config.x_register(), config.ancilla(), total,
                                       diffusion_beta(config.bc_x, config.diffusivity, dt, config.length),
                                       config.bc_x);
        if (config.two_dimensional()) {
            diffusion_y_ = build_diffusion(config.y_register(), config.ancilla(), total,
                                           diffusion_beta(config.bc_y, config.diffusivity, dt, config.length),
                                           config.bc_y);
        }
    }

    [[nodiscard]] const ScenarioConfig &config() const noexcept { return config_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] const Circuit &full_advection() const noexcept { return full_advection_; }
    [[nodiscard]] const Circuit &half_advection() const noexcept { return half_advection_; }
    [[nodiscard]] const Circuit &diffusion_x() const noexcept { return diffusion_x_; }
    [[nodiscard]] const std::optional<Circuit> &diffusion_y() const noexcept { return diffusion_y_; }

  private:
    [[nodiscard]] Circuit advection(double time) const {
        const double alpha = advection_alpha(config_.velocity, time, config_.length);
        if (config_.two_dimensional() && config_.profile.order() > 0) {
            return build_shear_advection(config_.profile, config_.x_register(), config_.y_register(),
                                         config_.total_qubits(), alpha);
        }
        return build_uniform_advection(config_.x_register(), config_.total_qubits(),
                                       alpha * config_.profile.coefficients.front());
    }

    ScenarioConfig config_;
    double dt_;
    Circuit full_advection_{1};
    Circuit half_advection_{1};
    Circuit diffusion_x_{1};
    std::optional<Circuit> diffusion_y_;
};

namespace detail {

inline void to_spectral_x(QuantumState &state, const ScenarioConfig &config) {
    apply_spectral_transform(state, config.x_register(), config.bc_x, TransformDirection::ToSpectral);
}

inline void to_physical_x(QuantumState &state, const ScenarioConfig &config) {
    apply_spectral_transform(state, config.x_register(), config.bc_x, TransformDirection::ToPhysical);
}

inline void diffuse_y(QuantumState &state, const StepCircuits &circuits) {
    if (!circuits.diffusion_y()) {
        return;
    }
    const auto &config = circuits.config();
    apply_spectral_transform(state, config.y_register(), config.bc_y, TransformDirection::ToSpectral);
    apply_circuit(state, *circuits.diffusion_y());
    apply_spectral_transform(state, config.y_register(), config.bc_y, TransformDirection::ToPhysical);
}

inline void check_state(const QuantumState &state, const ScenarioConfig &config) {
    require(state.n_qubits() == config.total_qubits(),
            "state has " + std::to_string(state.n_qubits()) + " qubits, scenario needs " +
                std::to_string(config.total_qubits()));
}

} // namespace detail

/// One first-order step: x to spectral, advection and x diffusion, back,
/// then y diffusion in y-spectral space.
inline void trotter_step(QuantumState &state, const StepCircuits &circuits) {
    const auto &config = circuits.config();
    detail::check_state(state, config);
    detail::to_spectral_x(state, config);
    apply_circuit(state, circuits.full_advection());
    apply_circuit(state, circuits.diffusion_x());
    detail::to_physical_x(state, config);
    detail::diffuse_y(state, circuits);
}

/// One second-order step: half advection, full diffusion, half advection.
inline void strang_step(QuantumState &state, const StepCircuits &circuits) {
    const auto &config = circuits.config();
    detail::check_state(state, config);
    detail::to_spectral_x(state, config);
    apply_circuit(state, circuits.half_advection());
    apply_circuit(state, circuits.diffusion_x());
    detail::to_physical_x(state, config);
    detail::diffuse_y(state, circuits);
    detail::to_spectral_x(state, config);
    apply_circuit(state, circuits.half_advection());
    detail::to_physical_x(state, config);
}

inline void trotter_step(QuantumState &state, const ScenarioConfig &config, double dt) {
    trotter_step(state, StepCircuits(config, dt));
}

inline void strang_step(QuantumState &state, const ScenarioConfig &config, double dt) {
    strang_step(state, StepCircuits(config, dt));
}

/// `count` Strang steps with the inner half advections fused into full ones.
/// The result equals `count` separate Strang steps; intermediate states are
/// not Strang states.
inline void merged_strang_steps(QuantumState &state, const StepCircuits &circuits, int count) {
    const auto &config = circuits.config();
    detail::check_state(state, config);
    if (count <= 0) {
        return;
    }
    detail::to_spectral_x(state, config);
    for (int s = 0; s < count; ++s) {
        apply_circuit(state, s == 0 ? circuits.half_advection() : circuits.full_advection());
        apply_circuit(state, circuits.diffusion_x());
        detail::diffuse_y(state, circuits);
    }
    apply_circuit(state, circuits.half_advection());
    detail::to_physical_x(state, config);
}

// ---------------------------------------------------------------------------
// Scenario driver

struct Checkpoint {
    int step = 0;
    double time = 0.0;
    double success_prob = 1.0;
    /// Main-register amplitudes (ancilla removed), normalised.
    std::vector<complex_t> amplitudes;
};

struct RunResult {
    /// Main register only.
    QuantumState final_state = new_state(1);
    /// success_prob after each step; entry 0 is the initial value.
    std::vector<double> success_prob_history;
    std::map<std::string, double> error_norms;
    /// ||phi(t)||^2 / ||phi(0)||^2 of the classical split propagation.
    double oracle_success_prob = 0.0;
    std::map<std::string, std::int64_t> gate_counts;
    std::vector<Checkpoint> checkpoints;
};

struct RunOptions {
    bool compute_oracle = true;
    bool keep_checkpoints = true;
};

/// Steps after which checkpoints are taken: round(k N_t / C) for k = 1..C,
/// deduplicated, always ending with N_t. Step 0 is included.
inline std::vector<int> checkpoint_steps(int steps, int checkpoints) {
    std::vector<int> out{0};
    for (int k = 1; k <= checkpoints; ++k) {
        const int s = static_cast<int>(std::lround(static_cast<double>(k) * steps / checkpoints));
        if (s > out.back()) {
            out.push_back(s);
        }
    }
    if (out.back() != steps) {
        out.push_back(steps);
    }
    return out;
}

inline std::map<std::string, std::int64_t> step_gate_counts(const StepCircuits &circuits) {
    const auto &config = circuits.config();
    std::map<std::string, std::int64_t> counts;
    const auto adv = count_gates(circuits.full_advection());
    counts["advection_single"] = adv.single_qubit;
    counts["advection_controlled"] = adv.controlled;
    counts["advection_two_qubit"] = adv.two_qubit;
    const auto dx = count_gates(circuits.diffusion_x());
    counts["diffusion_x_controlled"] = dx.controlled;
    counts["diffusion_x_two_qubit"] = dx.two_qubit;
    if (circuits.diffusion_y()) {
        const auto dy = count_gates(*circuits.diffusion_y());
        counts["diffusion_y_controlled"] = dy.controlled;
        counts["diffusion_y_two_qubit"] = dy.two_qubit;
    }
    counts["qft_x_two_qubit"] = count_two_qubit_gates(build_qft_circuit(config.x_register(), config.total_qubits()));
    return counts;
}

/// Runs N_t steps of the configured splitting from `initial` (main register
/// amplitudes, any norm). With merge_half_steps, Strang half advections are
/// fused between checkpoints only.
inline RunResult run_scenario(const ScenarioConfig &config, std::span<const complex_t> initial,
                              RunOptions options = {}) {
    config.validate();
    detail::require(initial.size() == config.points(), "initial field does not match the grid");
    std::vector<complex_t> padded(std::size_t{1} << config.total_qubits());
    std::copy(initial.begin(), initial.end(), padded.begin());
    QuantumState state = encode_amplitudes(std::span<const complex_t>(padded));

    const StepCircuits circuits(config, config.dt());
    RunResult result;
    result.gate_counts = step_gate_counts(circuits);
    result.success_prob_history.push_back(state.success_prob());

    auto record = [&](int step) {
        if (!options.keep_checkpoints) {
            return;
        }
        const auto main = discard_ancillas(state, config.main_qubits());
        const auto amps = main.amplitudes();
        result.checkpoints.push_back(Checkpoint{step, config.dt() * step, state.success_prob(),
                                                std::vector<complex_t>(amps.begin(), amps.end())});
    };

    const auto marks = checkpoint_steps(config.steps, config.checkpoints);
    record(0);
    for (std::size_t m = 1; m < marks.size(); ++m) {
        const int segment = marks[m] - marks[m - 1];
        if (config.splitting == Splitting::Strang && config.merge_half_steps) {
            merged_strang_steps(state, circuits, segment);
            // Merged segments only expose the state at their end.
            for (int s = 0; s < segment; ++s) {
                result.success_prob_history.push_back(state.success_prob());
            }
        } else {
            for (int s = 0; s < segment; ++s) {
                if (config.splitting == Splitting::Trotter) {
                    trotter_step(state, circuits);
                } else {
                    strang_step(state, circuits);
                }
                result.success_prob_history.push_back(state.success_prob());
            }
        }
        record(marks[m]);
    }

    result.final_state = discard_ancillas(state, config.main_qubits());
    if (options.compute_oracle) {
        const auto oracle = reference::split_propagator_oracle(config, initial, config.splitting, config.steps);
        double n0 = 0.0;
        double n1 = 0.0;
        for (std::size_t i = 0; i < initial.size(); ++i) {
            n0 += std::norm(initial[i]);
            n1 += std::norm(oracle[i]);
        }
        result.oracle_success_prob = n1 / n0;
        result.error_norms["oracle"] = reference::error_norm(result.final_state.amplitudes(), oracle);
    }
    return result;
}

inline RunResult run_scenario(const ScenarioConfig &config, std::span<const double> initial, RunOptions options = {}) {
    std::vector<complex_t> promoted(initial.begin(), initial.end());
    return run_scenario(config, std::span<const complex_t>(promoted), options);
}

// ---------------------------------------------------------------------------
// Diagnostics

namespace detail {

/// Spectral derivative of every x line of `field` (N_x x N_y, real), using
/// the periodic wavenumbers and zeroing the Nyquist mode for odd orders.
inline std::vector<double> spectral_x_derivative(const ScenarioConfig &config, const std::vector<double> &field) {
    const std::size_t nx = config.nx();
    const std::size_t ny = config.ny();
    const reference::AxisTransform transform(BoundaryKind::Periodic, nx);
    auto k = wavenumbers(BoundaryKind::Periodic, nx, config.length).values;
    if (nx >= 2) {
        k[nx / 2] = 0.0;
    }
    std::vector<complex_t> data(field.begin(), field.end());
    std::vector<complex_t> scratch;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        transform.apply(data, nx * iy, 1, false, scratch);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            // The forward kernel is e^{-ikx}, so mode j is e^{+i k_j x}.
            data[ix + nx * iy] *= complex_t(0.0, k[ix]);
        }
        transform.apply(data, nx * iy, 1, true, scratch);
    }
    std::vector<double> out(field.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = data[i].real();
    }
    return out;
}

/// y derivative of the cosine (Neumann), sine (Dirichlet) or Fourier
/// (periodic) series of each column, evaluated on the grid.
inline std::vector<double> spectral_y_derivative(const ScenarioConfig &config, const std::vector<double> &field) {
    const std::size_t nx = config.nx();
    const std::size_t ny = config.ny();
    std::vector<double> out(field.size(), 0.0);
    if (config.bc_y == BoundaryKind::Periodic) {
        // Transpose, differentiate along the fast axis, transpose back.
        ScenarioConfig swapped = config;
        std::swap(swapped.n_x, swapped.n_y);
        std::vector<double> t(field.size());
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                t[iy + ny * ix] = field[ix + nx * iy];
            }
        }
        const auto dt = spectral_x_derivative(swapped, t);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                out[ix + nx * iy] = dt[iy + ny * ix];
            }
        }
        return out;
    }
    const bool neumann = config.bc_y == BoundaryKind::Neumann;
    const auto basis = neumann ? dct2_matrix(ny) : dst2_matrix(ny);
    const auto k = wavenumbers(config.bc_y, ny, config.length).values;
    std::vector<double> derivative(ny * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double scale = (j == 0 && neumann) || (j + 1 == ny && !neumann) ? std::sqrt(1.0 / static_cast<double>(ny))
                                                                               : std::sqrt(2.0 / static_cast<double>(ny));
        for (std::size_t q = 0; q < ny; ++q) {
            const double y = axis_coordinate(config.bc_y, q, ny, config.length);
            derivative[j * ny + q] = neumann ? -scale * k[j] * std::sin(k[j] * y) : scale * k[j] * std::cos(k[j] * y);
        }
    }
    std::vector<double> coeff(ny);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t j = 0; j < ny; ++j) {
            double acc = 0.0;
            for (std::size_t q = 0; q < ny; ++q) {
                acc += basis[j * ny + q] * field[ix + nx * q];
            }
            coeff[j] = acc;
        }
        for (std::size_t q = 0; q < ny; ++q) {
            double acc = 0.0;
            for (std::size_t j = 0; j < ny; ++j) {
                acc += coeff[j] * derivative[j * ny + q];
            }
            out[ix + nx * q] = acc;
        }
    }
    return out;
}

} // namespace detail

/// Leading local error of one splitting step per unit dt^2 / 2:
/// D (2 u'(y) phi_xy + u''(y) phi_x), with u' and u'' in physical units.
/// Derivatives are spectral: Fourier in x, cosine series in y.
inline std::vector<double> commutator_error_estimate(const ScenarioConfig &config, const std::vector<double> &field) {
    config.validate();
    detail::require(field.size() == config.points(), "field does not match the grid");
    std::vector<double> out(field.size(), 0.0);
    if (!config.two_dimensional() || config.profile.order() == 0) {
        return out;
    }
    const auto phi_x = detail::spectral_x_derivative(config, field);
    const auto phi_xy = detail::spectral_y_derivative(config, phi_x);
    const std::size_t nx = config.nx();
    for (std::size_t q = 0; q < config.ny(); ++q) {
        const double y = config.profile_coordinate(q);
        const double du = config.velocity * config.profile.derivative(y, 1) / config.length;
        const double d2u = config.velocity * config.profile.derivative(y, 2) / (config.length * config.length);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t i = ix + nx * q;
            out[i] = config.diffusivity * (2.0 * du * phi_xy[i] + d2u * phi_x[i]);
        }
    }
    return out;
}

struct SteadyStateSplit {
    std::vector<double> fluctuation;
    std::vector<double> steady;
};

/// phi = phi_bar + phi' with phi_bar = offset + x d_x phi_bar + y d_y phi_bar
/// on the scenario grid coordinates.
inline SteadyStateSplit decompose_steady_state(const ScenarioConfig &config, const std::vector<double> &field,
                                               std::pair<double, double> gradients, double offset) {
    detail::require(field.size() == config.points(), "field does not match the grid");
    SteadyStateSplit split{std::vector<double>(field.size()), std::vector<double>(field.size())};
    for (std::size_t iy = 0; iy < config.ny(); ++iy) {
        const double y = config.two_dimensional() ? axis_coordinate(config.bc_y, iy, config.ny(), config.length) : 0.0;
        for (std::size_t ix = 0; ix < config.nx(); ++ix) {
            const double x = axis_coordinate(config.bc_x, ix, config.nx(), config.length);
            const std::size_t i = ix + config.nx() * iy;
            split.steady[i] = offset + x * gradients.first + y * gradients.second;
            split.fluctuation[i] = field[i] - split.steady[i];
        }
    }
    return split;
}

} // namespace qscalar
