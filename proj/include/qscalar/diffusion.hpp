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
 * Block-encoded spectral diffusion.
 *
 * In spectral space diffusion is diag(e^{-beta s_j}) with s_j the squared
 * index (j^2, (N-j)^2, or (j+1)^2 depending on the boundary). Expanding s_j
 * over the binary digits of j turns the diagonal into a product of factors
 * e^{-gamma} conditioned on one or two qubits, each realised by a controlled
 * damping rotation on an ancilla that is then postselected on |0>.
 */
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "qscalar/state.hpp"
#include "qscalar/transforms.hpp"

namespace qscalar {

/// Dt (2 pi / L)^2 for periodic axes, Dt (pi / L)^2 for Neumann/Dirichlet.
inline double diffusion_beta(BoundaryKind kind, double diffusivity, double time, double length) {
    const double k1 = (kind == BoundaryKind::Periodic ? 2.0 : 1.0) * std::numbers::pi / length;
    return diffusivity * time * k1 * k1;
}

struct DiffusionParams {
    double beta = 0.0;
    BoundaryKind kind = BoundaryKind::Periodic;
    int n = 1;
};

struct DampingTerm {
    double gamma = 0.0;
    std::vector<Control> controls;
};

inline std::array<std::array<double, 2>, 2> damping_unitary(double gamma) {
    const auto [c, s] = damping_entries(gamma);
    return {{{c, -s}, {s, c}}};
}

/// Squared wavenumber in units of (2 pi / L)^2 (periodic) or (pi / L)^2.
inline double squared_index(BoundaryKind kind, std::size_t j, std::size_t n_points) {
    double m = static_cast<double>(j);
    switch (kind) {
    case BoundaryKind::Periodic:
        if (j >= n_points / 2) {
            m = static_cast<double>(n_points - j);
        }
        break;
    case BoundaryKind::Neumann:
        break;
    case BoundaryKind::Dirichlet:
        m += 1.0;
        break;
    }
    return m * m;
}

namespace detail {

inline void require_beta(double beta) {
    require(std::isfinite(beta), "beta must be finite");
    require(beta >= 0.0, "amplification not block-encodable (beta < 0)");
}

/// Factors of e^{-beta j^2} over qubits reg[0..count): single terms
/// 2^{2r} q_r, then pair terms 2^{1+r+s} q_r q_s.
inline void append_square_terms(std::vector<DampingTerm> &terms, const Register &reg, int count, double beta,
                                const std::vector<Control> &extra) {
    auto with = [&extra](std::vector<Control> c) {
        c.insert(c.end(), extra.begin(), extra.end());
        return c;
    };
    for (int r = 0; r < count; ++r) {
        terms.push_back({std::ldexp(beta, 2 * r), with({Control{reg.qubit(r), true}})});
    }
    for (int r = 0; r < count; ++r) {
        for (int s = r + 1; s < count; ++s) {
            terms.push_back({std::ldexp(beta, 1 + r + s), with({Control{reg.qubit(r), true}, Control{reg.qubit(s), true}})});
        }
    }
}

/// Extra factors turning j^2 into (j+1)^2: 2^{r+1} q_r and the constant 1.
inline void append_shift_terms(std::vector<DampingTerm> &terms, const Register &reg, int count, double beta,
                               const std::vector<Control> &extra) {
    for (int r = 0; r < count; ++r) {
        std::vector<Control> c{Control{reg.qubit(r), true}};
        c.insert(c.end(), extra.begin(), extra.end());
        terms.push_back({std::ldexp(beta, r + 1), std::move(c)});
    }
    terms.push_back({beta, extra});
}

} // namespace detail

/// Damping factors of the periodic circuit, in emission order. Assumes the
/// CNOT fan from the most significant qubit has mirrored the upper half of
/// the spectrum onto N - 1 - j.
inline std::vector<DampingTerm> periodic_damping_terms(const Register &reg, double beta) {
    detail::require_beta(beta);
    detail::require(reg.size >= 1, "register must have at least one qubit");
    std::vector<DampingTerm> terms;
    const int low = reg.size - 1;
    const Control msb{reg.qubit(reg.size - 1), true};
    detail::append_square_terms(terms, reg, low, beta, {});
    detail::append_shift_terms(terms, reg, low, beta, {msb});
    return terms;
}

/// Neumann: e^{-beta j^2}. Dirichlet: e^{-beta (j+1)^2}. No mirroring.
inline std::vector<DampingTerm> halfspectrum_damping_terms(const Register &reg, double beta, BoundaryKind kind) {
    detail::require_beta(beta);
    detail::require(kind != BoundaryKind::Periodic, "half-spectrum diffusion needs a Neumann or Dirichlet axis");
    std::vector<DampingTerm> terms;
    detail::append_square_terms(terms, reg, reg.size, beta, {});
    if (kind == BoundaryKind::Dirichlet) {
        detail::append_shift_terms(terms, reg, reg.size, beta, {});
    }
    return terms;
}

namespace detail {

inline void add_cnot_fan(Circuit &circuit, const Register &reg) {
    for (int r = 0; r + 1 < reg.size; ++r) {
        circuit.add(GateOp::cnot(reg.qubit(reg.size - 1), reg.qubit(r)));
    }
}

/// Emits one damping rotation per term. With `fresh_ancillas` each term gets
/// its own ancilla starting at `ancilla`; otherwise they all share one.
inline void add_damping_gates(Circuit &circuit, const std::vector<DampingTerm> &terms, int ancilla,
                              bool fresh_ancillas) {
    int target = ancilla;
    for (const auto &term : terms) {
        circuit.add_ancilla(target);
        circuit.add(GateOp::damping(target, term.gamma, term.controls));
        if (fresh_ancillas) {
            ++target;
        }
    }
}

inline void check_layout(const Register &reg, int ancilla, int ancilla_count, int total_qubits) {
    validate_register(reg, total_qubits);
    require(ancilla >= 0 && ancilla + ancilla_count <= total_qubits, "ancilla index out of range");
    require(!reg.overlaps(Register{ancilla, ancilla_count}), "ancilla overlaps the main register");
}

} // namespace detail

/// Periodic diffusion on a Fourier-space register: CNOT fan, shared j^2
/// factors on the low n-1 qubits, (j+1)^2 extras controlled on the top
/// qubit, closing fan. All damping rotations target one reusable ancilla.
inline Circuit build_periodic_diffusion(const Register &reg, int ancilla, int total_qubits, double beta) {
    detail::check_layout(reg, ancilla, 1, total_qubits);
    const auto terms = periodic_damping_terms(reg, beta);
    Circuit circuit(total_qubits);
    circuit.add_ancilla(ancilla);
    detail::add_cnot_fan(circuit, reg);
    detail::add_damping_gates(circuit, terms, ancilla, false);
    detail::add_cnot_fan(circuit, reg);
    return circuit;
}

inline Circuit build_periodic_diffusion(int n, double beta) {
    return build_periodic_diffusion(Register{0, n}, n, n + 1, beta);
}

/// Number of damping rotations in the periodic circuit, i.e. the ancilla
/// count of the fresh-ancilla layout: (n-1) + (n-1)(n-2)/2 + (n-1) + 1.
inline int periodic_damping_count(int n) {
    const int m = n - 1;
    return m + m * (m - 1) / 2 + m + 1;
}

/// Same operator with a fresh ancilla per damping rotation, starting at
/// `first_ancilla`, so all measurements can be deferred to the end.
inline Circuit build_periodic_diffusion_fresh_ancillas(const Register &reg, int first_ancilla, int total_qubits,
                                                       double beta) {
    const auto terms = periodic_damping_terms(reg, beta);
    detail::check_layout(reg, first_ancilla, static_cast<int>(terms.size()), total_qubits);
    Circuit circuit(total_qubits);
    detail::add_cnot_fan(circuit, reg);
    detail::add_damping_gates(circuit, terms, first_ancilla, true);
    detail::add_cnot_fan(circuit, reg);
    return circuit;
}

inline Circuit build_halfspectrum_diffusion(const Register &reg, int ancilla, int total_qubits, double beta,
                                            BoundaryKind kind) {
    detail::check_layout(reg, ancilla, 1, total_qubits);
    const auto terms = halfspectrum_damping_terms(reg, beta, kind);
    Circuit circuit(total_qubits);
    circuit.add_ancilla(ancilla);
    detail::add_damping_gates(circuit, terms, ancilla, false);
    return circuit;
}

inline Circuit build_halfspectrum_diffusion(int n, double beta, BoundaryKind kind) {
    return build_halfspectrum_diffusion(Register{0, n}, n, n + 1, beta, kind);
}

inline Circuit build_diffusion(const Register &reg, int ancilla, int total_qubits, double beta, BoundaryKind kind) {
    return kind == BoundaryKind::Periodic ? build_periodic_diffusion(reg, ancilla, total_qubits, beta)
                                          : build_halfspectrum_diffusion(reg, ancilla, total_qubits, beta, kind);
}

/// Large-beta limit of the success probability for periodic or Neumann
/// diffusion: only the mean survives, p = N |mean|^2 / ||phi||^2.
inline double worst_case_success(std::span<const complex_t> amplitudes) {
    complex_t sum = 0.0;
    double norm2 = 0.0;
    for (const auto &a : amplitudes) {
        sum += a;
        norm2 += std::norm(a);
    }
    detail::require(norm2 > 0.0, "state has zero norm");
    const auto n = static_cast<double>(amplitudes.size());
    return std::norm(sum / n) * n / norm2;
}

inline double worst_case_success(const QuantumState &state) { return worst_case_success(state.amplitudes()); }

/// Heat-kernel initial condition: the basis state at the centre of an
/// N = 2^n periodic grid diffused for Dt (L = 1). The returned state has the
/// ancilla removed; its success probability is kept.
inline QuantumState prepare_gaussian_by_diffusion(int n, double dt_product, double length = 1.0) {
    detail::require(n >= 3, "Gaussian preparation needs at least three qubits");
    detail::require(dt_product >= 0.0, "Dt must be non-negative");
    const Register reg{0, n};
    QuantumState state = new_state(n + 1);
    auto amps = state.amplitudes();
    amps[0] = 0.0;
    amps[std::size_t{1} << (n - 1)] = 1.0;
    const double beta = diffusion_beta(BoundaryKind::Periodic, dt_product, 1.0, length);
    apply_spectral_transform(state, reg, BoundaryKind::Periodic, TransformDirection::ToSpectral);
    apply_circuit(state, build_periodic_diffusion(reg, n, n + 1, beta));
    apply_spectral_transform(state, reg, BoundaryKind::Periodic, TransformDirection::ToPhysical);
    return discard_ancillas(state, n);
}

} // namespace qscalar
