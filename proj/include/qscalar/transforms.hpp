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
 * Spectral transforms on a register: the exact QFT circuit and the
 * orthonormal type-II cosine and sine transforms, plus the wavenumber tables
 * that go with each boundary condition.
 *
 * Direction convention: physical -> spectral uses the kernel e^{-i k x}
 * (the adjoint of the textbook QFT), so that spectral index j carries the
 * mode e^{+i k_j x} and the advection diagonal e^{-i u k_j t} moves the
 * profile towards +x for u > 0.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qscalar/state.hpp"

namespace qscalar {

enum class BoundaryKind { Periodic, Neumann, Dirichlet };

inline std::string to_string(BoundaryKind kind) {
    switch (kind) {
    case BoundaryKind::Periodic:
        return "periodic";
    case BoundaryKind::Neumann:
        return "neumann";
    case BoundaryKind::Dirichlet:
        return "dirichlet";
    }
    return "?";
}

inline BoundaryKind parse_boundary_kind(const std::string &text) {
    if (text == "periodic") {
        return BoundaryKind::Periodic;
    }
    if (text == "neumann") {
        return BoundaryKind::Neumann;
    }
    if (text == "dirichlet") {
        return BoundaryKind::Dirichlet;
    }
    detail::fail("unknown boundary kind '" + text + "' (expected periodic, neumann or dirichlet)");
}

struct WavenumberTable {
    std::vector<double> values;
    BoundaryKind kind = BoundaryKind::Periodic;
    double length = 1.0;
};

/// Periodic: k_j = 2 pi j / L for j < N/2 and 2 pi (j - N) / L otherwise.
/// Neumann: k_j = pi j / L. Dirichlet: k_j = pi (j + 1) / L.
inline WavenumberTable wavenumbers(BoundaryKind kind, std::size_t n_points, double length) {
    detail::require(detail::is_power_of_two(n_points), "grid size must be a power of two");
    detail::require(length > 0.0 && std::isfinite(length), "domain length must be positive");
    WavenumberTable table{std::vector<double>(n_points), kind, length};
    const auto n = static_cast<double>(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
        const auto jd = static_cast<double>(j);
        switch (kind) {
        case BoundaryKind::Periodic:
            table.values[j] = 2.0 * std::numbers::pi / length * (j < n_points / 2 ? jd : jd - n);
            break;
        case BoundaryKind::Neumann:
            table.values[j] = std::numbers::pi * jd / length;
            break;
        case BoundaryKind::Dirichlet:
            table.values[j] = std::numbers::pi * (jd + 1.0) / length;
            break;
        }
    }
    return table;
}

/// Grid coordinate of point j along an axis. Periodic axes start at 0 and
/// exclude L; Neumann and Dirichlet axes are cell centred, as implied by the
/// half-cell reflections of the type-II transforms.
inline double axis_coordinate(BoundaryKind kind, std::size_t j, std::size_t n_points, double length) {
    const double h = length / static_cast<double>(n_points);
    return kind == BoundaryKind::Periodic ? static_cast<double>(j) * h
                                          : (static_cast<double>(j) + 0.5) * h;
}

// ---------------------------------------------------------------------------
// QFT

inline void validate_register(const Register &reg, int total_qubits) {
    detail::require(reg.size >= 1 && reg.first >= 0 && reg.first + reg.size <= total_qubits,
                    "invalid qubit set: register [" + std::to_string(reg.first) + ", " +
                        std::to_string(reg.first + reg.size) + ") does not fit " +
                        std::to_string(total_qubits) + " qubits");
}

/// Exact QFT |j> -> N^{-1/2} sum_k e^{2 pi i j k / N} |k> on `reg`, including
/// the closing swap network. `inverse` emits the adjoint.
inline Circuit build_qft_circuit(const Register &reg, int total_qubits, bool inverse = false) {
    validate_register(reg, total_qubits);
    Circuit circuit(total_qubits);
    const int n = reg.size;
    for (int t = n - 1; t >= 0; --t) {
        circuit.add(GateOp::hadamard(reg.qubit(t)));
        for (int c = t - 1; c >= 0; --c) {
            const double angle = std::numbers::pi / static_cast<double>(std::size_t{1} << (t - c));
            circuit.add(GateOp::phase(reg.qubit(t), angle, {Control{reg.qubit(c), true}}));
        }
    }
    for (int i = 0; i < n / 2; ++i) {
        circuit.add(GateOp::swap(reg.qubit(i), reg.qubit(n - 1 - i)));
    }
    return inverse ? circuit.inverse() : circuit;
}

inline Circuit build_qft_circuit(int n, bool inverse = false) {
    return build_qft_circuit(Register{0, n}, n, inverse);
}

// ---------------------------------------------------------------------------
// Cosine / sine transforms (applied directly as orthogonal matrices)

/// Orthonormal DCT-II, row-major: C[k][n] = s_k cos(pi (n + 1/2) k / N) with
/// s_0 = sqrt(1/N), s_k = sqrt(2/N).
inline std::vector<double> dct2_matrix(std::size_t n_points) {
    std::vector<double> m(n_points * n_points);
    const auto n = static_cast<double>(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (std::size_t j = 0; j < n_points; ++j) {
            m[k * n_points + j] =
                scale * std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) * static_cast<double>(k) / n);
        }
    }
    return m;
}

/// Orthonormal DST-II, row-major: S[k][n] = s_k sin(pi (k + 1)(n + 1/2) / N)
/// with s_k = sqrt(2/N) except s_{N-1} = sqrt(1/N). Row k is the Dirichlet
/// mode with wavenumber pi (k + 1) / L sampled at the cell centres.
inline std::vector<double> dst2_matrix(std::size_t n_points) {
    std::vector<double> m(n_points * n_points);
    const auto n = static_cast<double>(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double scale = k + 1 == n_points ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (std::size_t j = 0; j < n_points; ++j) {
            m[k * n_points + j] = scale * std::sin(std::numbers::pi * (static_cast<double>(k) + 1.0) *
                                                   (static_cast<double>(j) + 0.5) / n);
        }
    }
    return m;
}

namespace detail {

/// Applies a real N x N matrix (or its transpose) along the qubits of `reg`.
inline void apply_axis_matrix(QuantumState &state, const Register &reg, const std::vector<double> &matrix,
                              bool transpose) {
    validate_register(reg, state.n_qubits());
    auto amps = state.amplitudes();
    const std::size_t n = reg.dimension();
    const std::size_t stride = std::size_t{1} << reg.first;
    const std::size_t block = stride * n;
    std::vector<complex_t> in(n);
    std::vector<complex_t> out(n);
    for (std::size_t high = 0; high < amps.size(); high += block) {
        for (std::size_t low = 0; low < stride; ++low) {
            const std::size_t base = high + low;
            for (std::size_t a = 0; a < n; ++a) {
                in[a] = amps[base + a * stride];
            }
            for (std::size_t r = 0; r < n; ++r) {
                complex_t acc = 0.0;
                if (transpose) {
                    for (std::size_t c = 0; c < n; ++c) {
                        acc += matrix[c * n + r] * in[c];
                    }
                } else {
                    const double *row = matrix.data() + r * n;
                    for (std::size_t c = 0; c < n; ++c) {
                        acc += row[c] * in[c];
                    }
                }
                out[r] = acc;
            }
            for (std::size_t a = 0; a < n; ++a) {
                amps[base + a * stride] = out[a];
            }
        }
    }
}

} // namespace detail

inline void apply_qct(QuantumState &state, const Register &axis, bool inverse = false) {
    validate_register(axis, state.n_qubits());
    detail::apply_axis_matrix(state, axis, dct2_matrix(axis.dimension()), inverse);
}

inline void apply_qst(QuantumState &state, const Register &axis, bool inverse = false) {
    validate_register(axis, state.n_qubits());
    detail::apply_axis_matrix(state, axis, dst2_matrix(axis.dimension()), inverse);
}

enum class TransformDirection { ToSpectral, ToPhysical };

/// Moves `axis` between physical and spectral space for the given boundary
/// condition. Periodic axes use the QFT circuit (adjoint on the way in).
inline void apply_spectral_transform(QuantumState &state, const Register &axis, BoundaryKind kind,
                                     TransformDirection direction) {
    const bool to_spectral = direction == TransformDirection::ToSpectral;
    switch (kind) {
    case BoundaryKind::Periodic:
        apply_circuit(state, build_qft_circuit(axis, state.n_qubits(), to_spectral));
        break;
    case BoundaryKind::Neumann:
        apply_qct(state, axis, !to_spectral);
        break;
    case BoundaryKind::Dirichlet:
        apply_qst(state, axis, !to_spectral);
        break;
    }
}

} // namespace qscalar
