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
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qscalar/advection.hpp"
#include "qscalar/state.hpp"
#include "qscalar/transforms.hpp"

namespace qscalar {

enum class Splitting { Trotter, Strang };

inline std::string to_string(Splitting s) { return s == Splitting::Trotter ? "trotter" : "strang"; }

inline Splitting parse_splitting(const std::string &text) {
    if (text == "trotter") {
        return Splitting::Trotter;
    }
    if (text == "strang") {
        return Splitting::Strang;
    }
    detail::fail("unknown splitting '" + text + "' (expected trotter or strang)");
}

/// Advection-diffusion run on a square domain of side L. n_y = 0 selects the
/// one-dimensional problem (x only, profile must be constant).
///
/// Qubit layout: x register [0, n_x), y register [n_x, n_x + n_y), one
/// ancilla above them. Basis index = ix + N_x * iy.
struct ScenarioConfig {
    int n_x = 6;
    int n_y = 0;
    double length = 1.0;
    double velocity = 1.0;
    double diffusivity = 0.0;
    double t_final = 0.0;
    int steps = 1;
    Splitting splitting = Splitting::Strang;
    VelocityProfile profile = VelocityProfile::uniform();
    BoundaryKind bc_x = BoundaryKind::Periodic;
    BoundaryKind bc_y = BoundaryKind::Neumann;
    int checkpoints = 10;
    bool merge_half_steps = false;

    [[nodiscard]] double peclet() const { return velocity * length / diffusivity; }
    [[nodiscard]] double fourier() const { return diffusivity * t_final / (length * length); }
    [[nodiscard]] double dt() const { return t_final / static_cast<double>(steps); }

    [[nodiscard]] bool two_dimensional() const noexcept { return n_y > 0; }
    [[nodiscard]] std::size_t nx() const noexcept { return std::size_t{1} << n_x; }
    [[nodiscard]] std::size_t ny() const noexcept { return std::size_t{1} << n_y; }
    [[nodiscard]] std::size_t points() const noexcept { return nx() * ny(); }
    [[nodiscard]] Register x_register() const noexcept { return {0, n_x}; }
    [[nodiscard]] Register y_register() const noexcept { return {n_x, n_y}; }
    [[nodiscard]] int main_qubits() const noexcept { return n_x + n_y; }
    [[nodiscard]] int ancilla() const noexcept { return n_x + n_y; }
    [[nodiscard]] int total_qubits() const noexcept { return n_x + n_y + 1; }

    /// Wall-normal coordinate of y row q used by the velocity profile:
    /// q / (N_y - 1), both walls included.
    [[nodiscard]] double profile_coordinate(std::size_t q) const {
        return static_cast<double>(q) / static_cast<double>(ny() - 1);
    }

    /// u(y_q) in physical units for every y row (a single entry in 1D).
    [[nodiscard]] std::vector<double> velocity_samples() const {
        if (!two_dimensional()) {
            return {velocity * profile(0.0)};
        }
        std::vector<double> u(ny());
        for (std::size_t q = 0; q < ny(); ++q) {
            u[q] = velocity * profile(profile_coordinate(q));
        }
        return u;
    }

    void validate() const {
        detail::require(n_x >= 1, "n_x must be at least 1");
        detail::require(n_y >= 0, "n_y must be non-negative");
        detail::require(total_qubits() <= max_qubits(), "scenario needs " + std::to_string(total_qubits()) +
                                                            " qubits, above the configured maximum");
        detail::require(length > 0.0 && std::isfinite(length), "L must be positive");
        detail::require(std::isfinite(velocity), "U must be finite");
        detail::require(diffusivity >= 0.0 && std::isfinite(diffusivity), "D must be non-negative");
        detail::require(t_final >= 0.0 && std::isfinite(t_final), "t_final must be non-negative");
        detail::require(steps >= 1, "N_t must be at least 1");
        detail::require(checkpoints >= 0, "checkpoints must be non-negative");
        detail::require(bc_x == BoundaryKind::Periodic, "bc_x must be periodic (x is Fourier transformed)");
        profile.validate();
        if (!two_dimensional()) {
            detail::require(profile.order() == 0, "a y-dependent profile needs n_y >= 1");
        }
    }
};

/// Gaussian pulse exp(-100 (x/L - 1/2)^2), constant in y, on the scenario grid.
inline std::vector<double> pulse_initial_condition(const ScenarioConfig &config) {
    std::vector<double> values(config.points());
    for (std::size_t iy = 0; iy < config.ny(); ++iy) {
        for (std::size_t ix = 0; ix < config.nx(); ++ix) {
            const double x = axis_coordinate(config.bc_x, ix, config.nx(), config.length) / config.length;
            values[ix + config.nx() * iy] = std::exp(-100.0 * (x - 0.5) * (x - 0.5));
        }
    }
    return values;
}

/// Main-register amplitudes embedded in the full register (ancilla in |0>).
inline QuantumState embed_with_ancilla(const ScenarioConfig &config, std::span<const double> field) {
    detail::require(field.size() == config.points(), "field size does not match the scenario grid");
    std::vector<complex_t> amps(std::size_t{1} << config.total_qubits());
    std::copy(field.begin(), field.end(), amps.begin());
    return encode_amplitudes(std::span<const complex_t>(amps));
}

} // namespace qscalar
