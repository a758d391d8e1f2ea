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
 * Statevector register, gate set and circuit container.
 *
 * Qubit ordering is little-endian: qubit 0 is the least significant bit of a
 * basis index. Postselection is deterministic: the projected branch is kept,
 * renormalized, and the lost norm is folded into the success probability.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qscalar/error.hpp"

namespace qscalar {

using complex_t = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 26;

/// Largest register the library will allocate. Overridable through the
/// QSCALAR_MAX_QUBITS environment variable.
inline int max_qubits() {
    static const int value = [] {
        if (const char *env = std::getenv("QSCALAR_MAX_QUBITS")) {
            char *end = nullptr;
            const long parsed = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && parsed >= 1 && parsed <= 40) {
                return static_cast<int>(parsed);
            }
        }
        return kDefaultMaxQubits;
    }();
    return value;
}

/// Contiguous block of qubits, e.g. the x or y register of a 2D grid.
struct Register {
    int first = 0;
    int size = 0;

    [[nodiscard]] int last() const noexcept { return first + size - 1; }
    [[nodiscard]] std::size_t dimension() const noexcept { return std::size_t{1} << size; }
    [[nodiscard]] bool contains(int qubit) const noexcept {
        return qubit >= first && qubit < first + size;
    }
    [[nodiscard]] bool overlaps(const Register &other) const noexcept {
        return size > 0 && other.size > 0 && first < other.first + other.size &&
               other.first < first + size;
    }
    [[nodiscard]] int qubit(int offset) const noexcept { return first + offset; }
};

class QuantumState {
  public:
    QuantumState() = default;

    QuantumState(int n_qubits, std::vector<complex_t> amplitudes, double success_prob = 1.0)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)), success_prob_(success_prob) {
        detail::require(n_qubits_ >= 1, "register must have at least one qubit");
        detail::require(amplitudes_.size() == (std::size_t{1} << n_qubits_),
                        "amplitude vector length must be 2^n_qubits");
    }

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] double success_prob() const noexcept { return success_prob_; }

    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] const complex_t &operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm() const noexcept {
        double sum = 0.0;
        for (const auto &a : amplitudes_) {
            sum += std::norm(a);
        }
        return std::sqrt(sum);
    }

    void scale_success_prob(double factor) noexcept { success_prob_ *= factor; }

  private:
    int n_qubits_ = 0;
    std::vector<complex_t> amplitudes_;
    double success_prob_ = 1.0;
};

inline QuantumState new_state(int n) {
    detail::require(n >= 1, "register must have at least one qubit");
    detail::require(n <= max_qubits(), "register of " + std::to_string(n) +
                                           " qubits exceeds the configured maximum of " +
                                           std::to_string(max_qubits()));
    std::vector<complex_t> amplitudes(std::size_t{1} << n);
    amplitudes[0] = 1.0;
    return QuantumState(n, std::move(amplitudes));
}

inline QuantumState encode_amplitudes(std::span<const complex_t> values) {
    detail::require(detail::is_power_of_two(values.size()) && values.size() >= 2,
                    "amplitude count must be a power of two (at least 2)");
    const int n = detail::log2_exact(values.size());
    detail::require(n <= max_qubits(), "register exceeds the configured maximum qubit count");
    double sum = 0.0;
    for (const auto &v : values) {
        sum += std::norm(v);
    }
    detail::require(sum > 0.0 && std::isfinite(sum), "cannot normalize zero vector");
    const double inv = 1.0 / std::sqrt(sum);
    std::vector<complex_t> amplitudes(values.begin(), values.end());
    for (auto &a : amplitudes) {
        a *= inv;
    }
    return QuantumState(n, std::move(amplitudes));
}

inline QuantumState encode_amplitudes(std::span<const double> values) {
    std::vector<complex_t> promoted(values.begin(), values.end());
    return encode_amplitudes(std::span<const complex_t>(promoted));
}

// ---------------------------------------------------------------------------
// Gates

enum class GateKind {
    Phase,           ///< diag(1, e^{i theta})
    Hadamard,
    PauliX,          ///< a CNOT when it carries one control
    DampingRotation, ///< U(gamma) = R_Y(2 arccos e^{-gamma})
    Swap,
};

struct Control {
    int qubit = 0;
    bool value = true;

    friend bool operator==(const Control &, const Control &) = default;
};

struct GateOp {
    GateKind kind = GateKind::Phase;
    int target = 0;
    /// Second target; used by Swap only.
    int target2 = -1;
    /// Phase angle theta for Phase, gamma for DampingRotation.
    double param = 0.0;
    std::vector<Control> controls;

    static GateOp phase(int target, double theta, std::vector<Control> controls = {}) {
        return {GateKind::Phase, target, -1, theta, std::move(controls)};
    }
    static GateOp hadamard(int target, std::vector<Control> controls = {}) {
        return {GateKind::Hadamard, target, -1, 0.0, std::move(controls)};
    }
    static GateOp x(int target, std::vector<Control> controls = {}) {
        return {GateKind::PauliX, target, -1, 0.0, std::move(controls)};
    }
    static GateOp cnot(int control, int target) {
        return {GateKind::PauliX, target, -1, 0.0, {Control{control, true}}};
    }
    static GateOp damping(int target, double gamma, std::vector<Control> controls = {}) {
        return {GateKind::DampingRotation, target, -1, gamma, std::move(controls)};
    }
    static GateOp swap(int a, int b) { return {GateKind::Swap, a, b, 0.0, {}}; }

    [[nodiscard]] bool is_unitary_invertible() const noexcept {
        return kind != GateKind::DampingRotation;
    }
};

/// Short mnemonic used in circuit listings.
inline std::string gate_mnemonic(const GateOp &gate) {
    const bool controlled = !gate.controls.empty();
    switch (gate.kind) {
    case GateKind::Phase:
        return controlled ? "CP" : "P";
    case GateKind::Hadamard:
        return controlled ? "CH" : "H";
    case GateKind::PauliX:
        return controlled ? "CX" : "X";
    case GateKind::DampingRotation:
        return controlled ? "CU" : "U";
    case GateKind::Swap:
        return "SWAP";
    }
    return "?";
}

inline void validate_gate(const GateOp &gate, int n_qubits) {
    auto in_range = [n_qubits](int q) { return q >= 0 && q < n_qubits; };
    detail::require(in_range(gate.target), "gate target qubit " + std::to_string(gate.target) +
                                               " out of range for " + std::to_string(n_qubits) +
                                               " qubits");
    if (gate.kind == GateKind::Swap) {
        detail::require(in_range(gate.target2) && gate.target2 != gate.target,
                        "swap requires two distinct valid qubits");
        detail::require(gate.controls.empty(), "controlled swap is not supported");
    }
    for (std::size_t i = 0; i < gate.controls.size(); ++i) {
        const int q = gate.controls[i].qubit;
        detail::require(in_range(q), "control qubit " + std::to_string(q) + " out of range");
        detail::require(q != gate.target && q != gate.target2, "control qubit equals target");
        for (std::size_t j = 0; j < i; ++j) {
            detail::require(gate.controls[j].qubit != q, "duplicate control qubit");
        }
    }
    detail::require(std::isfinite(gate.param), "gate parameter must be finite");
    if (gate.kind == GateKind::DampingRotation) {
        detail::require(gate.param >= 0.0, "amplification not block-encodable (gamma < 0)");
    }
}

/// Adjoint of a unitary gate. Damping rotations have no adjoint inside the
/// gate set (it would need gamma < 0).
inline GateOp adjoint(const GateOp &gate) {
    detail::require(gate.is_unitary_invertible(), "damping rotation has no in-set adjoint");
    GateOp inv = gate;
    if (gate.kind == GateKind::Phase) {
        inv.param = -gate.param;
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Circuit

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
        detail::require(n_qubits >= 1, "circuit must act on at least one qubit");
    }

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const std::vector<GateOp> &gates() const noexcept { return gates_; }
    [[nodiscard]] const std::vector<int> &ancillas() const noexcept { return ancillas_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    [[nodiscard]] bool is_ancilla(int qubit) const noexcept {
        return std::binary_search(ancillas_.begin(), ancillas_.end(), qubit);
    }

    void add_ancilla(int qubit) {
        detail::require(qubit >= 0 && qubit < n_qubits_, "ancilla index out of range");
        if (!is_ancilla(qubit)) {
            ancillas_.insert(std::upper_bound(ancillas_.begin(), ancillas_.end(), qubit), qubit);
        }
    }

    Circuit &add(GateOp gate) {
        validate_gate(gate, n_qubits_);
        gates_.push_back(std::move(gate));
        return *this;
    }

    Circuit &append(const Circuit &other) {
        detail::require(other.n_qubits_ == n_qubits_, "cannot append circuits of different width");
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        for (int q : other.ancillas_) {
            add_ancilla(q);
        }
        return *this;
    }

    /// Gate-wise inverse of a purely unitary circuit.
    [[nodiscard]] Circuit inverse() const {
        Circuit inv(n_qubits_);
        inv.ancillas_ = ancillas_;
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
            inv.gates_.push_back(adjoint(*it));
        }
        return inv;
    }

  private:
    int n_qubits_ = 1;
    std::vector<GateOp> gates_;
    std::vector<int> ancillas_;
};

// ---------------------------------------------------------------------------
// Application kernels

namespace detail {

inline std::size_t insert_zero_bit(std::size_t k, int bit) noexcept {
    const std::size_t low = k & ((std::size_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

struct ControlMask {
    std::size_t mask = 0;
    std::size_t value = 0;
};

inline ControlMask control_mask(const std::vector<Control> &controls) noexcept {
    ControlMask cm;
    for (const auto &c : controls) {
        const std::size_t bit = std::size_t{1} << c.qubit;
        cm.mask |= bit;
        if (c.value) {
            cm.value |= bit;
        }
    }
    return cm;
}

template <typename Kernel>
void for_each_pair(std::span<complex_t> amps, int target, const ControlMask &cm, Kernel &&kernel) {
    const std::size_t bit = std::size_t{1} << target;
    const std::size_t half = amps.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero_bit(k, target);
        if ((i0 & cm.mask) != cm.value) {
            continue;
        }
        kernel(amps[i0], amps[i0 | bit]);
    }
}

} // namespace detail

/// Entries of the 2x2 damping rotation
/// [[e^-g, -sqrt(1-e^-2g)], [sqrt(1-e^-2g), e^-g]].
struct DampingEntries {
    double diag = 1.0;
    double off = 0.0;
};

inline DampingEntries damping_entries(double gamma) {
    detail::require(gamma >= 0.0 && std::isfinite(gamma),
                    "amplification not block-encodable (gamma < 0)");
    return {std::exp(-gamma), std::sqrt(-std::expm1(-2.0 * gamma))};
}

inline void apply_gate(QuantumState &state, const GateOp &gate) {
    validate_gate(gate, state.n_qubits());
    auto amps = state.amplitudes();
    const auto cm = detail::control_mask(gate.controls);
    switch (gate.kind) {
    case GateKind::Phase: {
        const complex_t factor = std::polar(1.0, gate.param);
        detail::for_each_pair(amps, gate.target, cm, [&](complex_t &, complex_t &a1) { a1 *= factor; });
        break;
    }
    case GateKind::Hadamard: {
        const double s = std::numbers::sqrt2 / 2.0;
        detail::for_each_pair(amps, gate.target, cm, [s](complex_t &a0, complex_t &a1) {
            const complex_t u = a0;
            const complex_t v = a1;
            a0 = s * (u + v);
            a1 = s * (u - v);
        });
        break;
    }
    case GateKind::PauliX:
        detail::for_each_pair(amps, gate.target, cm, [](complex_t &a0, complex_t &a1) { std::swap(a0, a1); });
        break;
    case GateKind::DampingRotation: {
        const auto [c, s] = damping_entries(gate.param);
        detail::for_each_pair(amps, gate.target, cm, [c, s](complex_t &a0, complex_t &a1) {
            const complex_t u = a0;
            const complex_t v = a1;
            a0 = c * u - s * v;
            a1 = s * u + c * v;
        });
        break;
    }
    case GateKind::Swap: {
        const std::size_t ba = std::size_t{1} << gate.target;
        const std::size_t bb = std::size_t{1} << gate.target2;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if ((i & ba) != 0 && (i & bb) == 0) {
                std::swap(amps[i], amps[(i ^ ba) | bb]);
            }
        }
        break;
    }
    }
}

/// Zeroes the ancilla=1 branch, renormalizes, and multiplies the success
/// probability by the probability of having measured ancilla=0.
inline void project_ancilla_zero(QuantumState &state, int ancilla) {
    detail::require(ancilla >= 0 && ancilla < state.n_qubits(), "ancilla index out of range");
    auto amps = state.amplitudes();
    const std::size_t bit = std::size_t{1} << ancilla;
    double kept = 0.0;
    double dropped = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        ((i & bit) == 0 ? kept : dropped) += std::norm(amps[i]);
    }
    const double p0 = kept / (kept + dropped);
    detail::require(kept >= 1e-300 && p0 >= 1e-300, "postselection impossible: ancilla=0 has vanishing probability");
    const double inv = 1.0 / std::sqrt(kept);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            amps[i] *= inv;
        } else {
            amps[i] = 0.0;
        }
    }
    state.scale_success_prob(p0);
}

enum class Postselection {
    /// Project a listed ancilla right after each damping rotation that targets it.
    Immediate,
    /// Treat the circuit as purely unitary; ancillas are left unmeasured.
    Deferred,
};

inline void apply_circuit(QuantumState &state, const Circuit &circuit,
                          Postselection mode = Postselection::Immediate) {
    detail::require(circuit.n_qubits() == state.n_qubits(),
                    "circuit width " + std::to_string(circuit.n_qubits()) +
                        " does not match state width " + std::to_string(state.n_qubits()));
    for (const auto &gate : circuit.gates()) {
        apply_gate(state, gate);
        if (mode == Postselection::Immediate && gate.kind == GateKind::DampingRotation &&
            circuit.is_ancilla(gate.target)) {
            project_ancilla_zero(state, gate.target);
        }
    }
}

/// Keeps the lowest `n_main` qubits of a state whose upper qubits are all |0>.
inline QuantumState discard_ancillas(const QuantumState &state, int n_main, double tolerance = 1e-12) {
    detail::require(n_main >= 1 && n_main <= state.n_qubits(), "invalid main register size");
    const std::size_t dim = std::size_t{1} << n_main;
    const auto amps = state.amplitudes();
    double outside = 0.0;
    for (std::size_t i = dim; i < amps.size(); ++i) {
        outside += std::norm(amps[i]);
    }
    detail::require(outside <= tolerance * tolerance, "ancilla register is not in |0>");
    return QuantumState(n_main, std::vector<complex_t>(amps.begin(), amps.begin() + dim),
                        state.success_prob());
}

// ---------------------------------------------------------------------------
// Measurement

/// Multinomial shot histogram over all basis indices. Drawn as a chain of
/// conditional binomials, so the result depends only on (state, shots, seed).
inline std::vector<std::uint64_t> sample_counts(const QuantumState &state, std::int64_t shots,
                                                std::uint64_t seed) {
    detail::require(shots >= 1, "shots must be at least 1");
    std::mt19937_64 rng(seed);
    const auto amps = state.amplitudes();
    std::vector<std::uint64_t> counts(amps.size(), 0);
    std::size_t last = 0;
    double remaining_prob = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        remaining_prob += p;
        if (p > 0.0) {
            last = i;
        }
    }
    auto remaining = static_cast<std::uint64_t>(shots);
    for (std::size_t i = 0; i <= last && remaining > 0; ++i) {
        const double p = std::norm(amps[i]);
        if (p <= 0.0) {
            continue;
        }
        std::uint64_t drawn = remaining;
        if (i != last) {
            const double conditional = std::clamp(p / remaining_prob, 0.0, 1.0);
            std::binomial_distribution<std::uint64_t> dist(remaining, conditional);
            drawn = dist(rng);
        }
        counts[i] = drawn;
        remaining -= drawn;
        remaining_prob = std::max(remaining_prob - p, 0.0);
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Fourier-space initial state of the hardware demonstration

/// Prepares sqrt(2/3)|0..0> + sqrt(1/6)(|0..01> + |1..1>) from |0..0>:
/// a rotation on q0, a Hadamard on q1 controlled by q0, and a CNOT ladder
/// that turns |0..011> into |1..1>.
inline Circuit build_fourier_initial_state(int n, int total_qubits = 0) {
    detail::require(n >= 2, "Fourier initial state needs at least two qubits");
    Circuit circuit(total_qubits == 0 ? n : total_qubits);
    // U(gamma)|0> = e^-gamma |0> + sqrt(1 - e^-2gamma) |1> with e^-gamma = sqrt(2/3).
    circuit.add(GateOp::damping(0, 0.5 * std::log(1.5)));
    circuit.add(GateOp::hadamard(1, {Control{0, true}}));
    for (int q = 1; q + 1 < n; ++q) {
        circuit.add(GateOp::cnot(q, q + 1));
    }
    return circuit;
}

// ---------------------------------------------------------------------------
// Binary amplitude dump: uint64 LE qubit count, then (re, im) float64 LE pairs.

namespace detail {

inline void write_u64_le(std::ostream &out, std::uint64_t value) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<unsigned char>((value >> (8 * i)) & 0xFFu);
    }
    out.write(reinterpret_cast<const char *>(bytes), 8);
}

inline std::uint64_t read_u64_le(std::istream &in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char *>(bytes), 8);
    require(in.gcount() == 8, "truncated amplitude dump");
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
        value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    }
    return value;
}

} // namespace detail

inline void write_amplitude_dump(std::ostream &out, const QuantumState &state) {
    detail::write_u64_le(out, static_cast<std::uint64_t>(state.n_qubits()));
    for (const auto &a : state.amplitudes()) {
        detail::write_u64_le(out, std::bit_cast<std::uint64_t>(a.real()));
        detail::write_u64_le(out, std::bit_cast<std::uint64_t>(a.imag()));
    }
}

inline QuantumState read_amplitude_dump(std::istream &in) {
    const std::uint64_t n = detail::read_u64_le(in);
    detail::require(n >= 1 && n <= static_cast<std::uint64_t>(max_qubits()),
                    "amplitude dump has an invalid qubit count");
    std::vector<complex_t> amplitudes(std::size_t{1} << n);
    for (auto &a : amplitudes) {
        const double re = std::bit_cast<double>(detail::read_u64_le(in));
        const double im = std::bit_cast<double>(detail::read_u64_le(in));
        a = {re, im};
    }
    return QuantumState(static_cast<int>(n), std::move(amplitudes));
}

} // namespace qscalar
