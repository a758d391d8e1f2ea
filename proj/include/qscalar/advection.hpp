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
 * Spectral-space advection circuits.
 *
 * With the x register in Fourier space, e^{-i u k_j t} factorises into one
 * phase gate per x qubit: P(-alpha 2^r) on qubits r < n-1 and
 * P(+alpha 2^{n-1}) on the most significant qubit, alpha = 2 pi u t / L.
 * A polynomial shear profile u(y) is handled by expanding it over products
 * of y-register qubits and conditioning copies of that pattern on them.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qscalar/state.hpp"

namespace qscalar {

enum class ProfileKind { Uniform, Couette, Poiseuille, Blasius, Custom };

inline constexpr int kMaxProfileOrder = 4;

/// Streamwise velocity u(y) = sum_m c_m y^m in units of U, y in [0, 1].
struct VelocityProfile {
    ProfileKind kind = ProfileKind::Uniform;
    std::vector<double> coefficients{1.0};

    static VelocityProfile uniform() { return {ProfileKind::Uniform, {1.0}}; }
    static VelocityProfile couette() { return {ProfileKind::Couette, {0.0, 1.0}}; }
    static VelocityProfile poiseuille() { return {ProfileKind::Poiseuille, {0.0, 4.0, -4.0}}; }
    static VelocityProfile blasius() { return {ProfileKind::Blasius, {0.0, 2.0, -1.0}}; }
    static VelocityProfile custom(std::vector<double> coefficients) {
        VelocityProfile p{ProfileKind::Custom, std::move(coefficients)};
        p.validate();
        return p;
    }

    [[nodiscard]] int order() const noexcept { return static_cast<int>(coefficients.size()) - 1; }

    [[nodiscard]] double operator()(double y) const noexcept {
        double value = 0.0;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
            value = value * y + *it;
        }
        return value;
    }

    [[nodiscard]] double derivative(double y, int times = 1) const noexcept {
        double value = 0.0;
        for (int m = order(); m >= times; --m) {
            double factor = 1.0;
            for (int i = 0; i < times; ++i) {
                factor *= m - i;
            }
            value = value * y + factor * coefficients[static_cast<std::size_t>(m)];
        }
        return value;
    }

    [[nodiscard]] double max_abs(std::size_t samples = 1025) const noexcept {
        double m = 0.0;
        for (std::size_t i = 0; i < samples; ++i) {
            m = std::max(m, std::abs((*this)(static_cast<double>(i) / static_cast<double>(samples - 1))));
        }
        return m;
    }

    void validate() const {
        detail::require(!coefficients.empty(), "velocity profile needs at least one coefficient");
        for (double c : coefficients) {
            detail::require(std::isfinite(c), "velocity profile coefficients must be finite");
        }
        const VelocityProfile *canonical = nullptr;
        static const VelocityProfile u = uniform(), c = couette(), p = poiseuille(), b = blasius();
        switch (kind) {
        case ProfileKind::Uniform:
            canonical = &u;
            break;
        case ProfileKind::Couette:
            canonical = &c;
            break;
        case ProfileKind::Poiseuille:
            canonical = &p;
            break;
        case ProfileKind::Blasius:
            canonical = &b;
            break;
        case ProfileKind::Custom:
            break;
        }
        if (canonical != nullptr) {
            detail::require(canonical->coefficients == coefficients,
                            "profile label does not match its coefficients");
        }
    }
};

inline std::string to_string(ProfileKind kind) {
    switch (kind) {
    case ProfileKind::Uniform:
        return "uniform";
    case ProfileKind::Couette:
        return "couette";
    case ProfileKind::Poiseuille:
        return "poiseuille";
    case ProfileKind::Blasius:
        return "blasius";
    case ProfileKind::Custom:
        return "custom";
    }
    return "?";
}

/// One factor of the expanded shear phase: the x-register phase pattern
/// scaled by `coefficient` (a multiple of alpha), conditioned on all
/// `y_controls` (offsets within the y register) being |1>.
struct PhaseTerm {
    double coefficient = 0.0;
    std::vector<int> y_controls;
};

namespace detail {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Monomials = std::map<std::uint64_t, cpp_int>;

/// (sum_r 2^r q_r)^power over idempotent qubits (q^2 = q), keyed by the
/// bitmask of qubits in each product.
inline Monomials binary_index_power(int n_qubits, int power) {
    Monomials current{{0, cpp_int(1)}};
    for (int p = 0; p < power; ++p) {
        Monomials next;
        for (const auto &[mask, coeff] : current) {
            for (int r = 0; r < n_qubits; ++r) {
                next[mask | (std::uint64_t{1} << r)] += coeff << r;
            }
        }
        current = std::move(next);
    }
    return current;
}

inline bool monomial_less(std::uint64_t a, std::uint64_t b) {
    const int da = std::popcount(a);
    const int db = std::popcount(b);
    if (da != db) {
        return da < db;
    }
    // Lexicographic on ascending qubit lists.
    while (a != 0 && b != 0) {
        const int qa = std::countr_zero(a);
        const int qb = std::countr_zero(b);
        if (qa != qb) {
            return qa < qb;
        }
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

} // namespace detail

/// Expands u(y) with y = (sum_r 2^r q_r) / (2^n - 1) into phase terms over
/// y-qubit products. Like terms are collected in exact rational arithmetic
/// and terms that cancel exactly are dropped. Ordered by degree, then
/// lexicographically by control list.
inline std::vector<PhaseTerm> expand_profile_phases(const VelocityProfile &profile, int n_y) {
    profile.validate();
    detail::require(n_y >= 1 && n_y <= 62, "y register must have between 1 and 62 qubits");
    detail::require(profile.order() <= kMaxProfileOrder,
                    "profile order " + std::to_string(profile.order()) + " exceeds the supported maximum of " +
                        std::to_string(kMaxProfileOrder));
    using detail::cpp_int;
    using detail::cpp_rational;

    const cpp_int denominator = (cpp_int(1) << n_y) - 1;
    std::map<std::uint64_t, cpp_rational> collected;
    cpp_int denominator_power = 1;
    for (int m = 0; m <= profile.order(); ++m) {
        const double c = profile.coefficients[static_cast<std::size_t>(m)];
        if (c != 0.0) {
            const cpp_rational cm(c);
            for (const auto &[mask, count] : detail::binary_index_power(n_y, m)) {
                collected[mask] += cm * cpp_rational(count, denominator_power);
            }
        }
        denominator_power *= denominator;
    }

    std::vector<std::uint64_t> masks;
    for (const auto &[mask, value] : collected) {
        if (value != 0) {
            masks.push_back(mask);
        }
    }
    std::sort(masks.begin(), masks.end(), detail::monomial_less);

    std::vector<PhaseTerm> terms;
    terms.reserve(masks.size());
    for (std::uint64_t mask : masks) {
        PhaseTerm term;
        term.coefficient = collected[mask].convert_to<double>();
        for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
            term.y_controls.push_back(std::countr_zero(bits));
        }
        terms.push_back(std::move(term));
    }
    return terms;
}

namespace detail {

inline void add_advection_pattern(Circuit &circuit, const Register &x_reg, double alpha,
                                  const std::vector<Control> &controls) {
    const int n = x_reg.size;
    for (int r = 0; r + 1 < n; ++r) {
        circuit.add(GateOp::phase(x_reg.qubit(r), -alpha * std::ldexp(1.0, r), controls));
    }
    circuit.add(GateOp::phase(x_reg.qubit(n - 1), alpha * std::ldexp(1.0, n - 1), controls));
}

} // namespace detail

/// alpha = 2 pi U t / L, the number of advective time scales times 2 pi.
inline double advection_alpha(double velocity, double time, double length) {
    return 2.0 * std::numbers::pi * velocity * time / length;
}

/// Uniform advection in Fourier space: one phase gate per qubit.
inline Circuit build_uniform_advection(const Register &x_reg, int total_qubits, double alpha) {
    detail::require(x_reg.size >= 1 && x_reg.first >= 0 && x_reg.first + x_reg.size <= total_qubits,
                    "x register does not fit the circuit");
    Circuit circuit(total_qubits);
    detail::add_advection_pattern(circuit, x_reg, alpha, {});
    return circuit;
}

inline Circuit build_uniform_advection(int n, double alpha) {
    return build_uniform_advection(Register{0, n}, n, alpha);
}

/// Shear advection u(y) d/dx with x in Fourier space and y in physical space.
inline Circuit build_shear_advection(const VelocityProfile &profile, const Register &x_reg,
                                     const Register &y_reg, int total_qubits, double alpha) {
    detail::require(x_reg.size >= 1 && y_reg.size >= 1, "registers must be non-empty");
    detail::require(!x_reg.overlaps(y_reg), "x and y registers overlap");
    detail::require(x_reg.first >= 0 && x_reg.first + x_reg.size <= total_qubits && y_reg.first >= 0 &&
                        y_reg.first + y_reg.size <= total_qubits,
                    "registers do not fit the circuit");
    Circuit circuit(total_qubits);
    for (const auto &term : expand_profile_phases(profile, y_reg.size)) {
        std::vector<Control> controls;
        for (int offset : term.y_controls) {
            controls.push_back(Control{y_reg.qubit(offset), true});
        }
        detail::add_advection_pattern(circuit, x_reg, term.coefficient * alpha, controls);
    }
    return circuit;
}

inline Circuit build_shear_advection(const VelocityProfile &profile, int n_x, int n_y, double alpha) {
    return build_shear_advection(profile, Register{0, n_x}, Register{n_x, n_y}, n_x + n_y, alpha);
}

// ---------------------------------------------------------------------------
// Gate counting

/// Two-qubit gate cost of a k-controlled NOT. k = 1 is a CNOT, k = 2 a
/// Toffoli (5 two-qubit gates), k >= 3 uses 4(k-2) Toffolis with borrowed
/// work qubits (Barenco et al. 1995, Lemmas 6.1 and 7.2).
inline std::int64_t multi_controlled_not_cost(int controls) {
    if (controls <= 0) {
        return 0;
    }
    if (controls == 1) {
        return 1;
    }
    if (controls == 2) {
        return 5;
    }
    return 20 * static_cast<std::int64_t>(controls - 2);
}

/// Two-qubit gate cost of a single-qubit gate with m controls, via the
/// recursion C^m(U) = C(V) C^{m-1}(X) C(V^dag) C^{m-1}(X) C^{m-1}(V)
/// (Barenco et al. 1995, Lemma 7.5). Grows quadratically in m.
inline std::int64_t controlled_gate_cost(int controls) {
    if (controls <= 0) {
        return 0;
    }
    std::int64_t cost = 1;
    for (int m = 2; m <= controls; ++m) {
        cost += 2 + 2 * multi_controlled_not_cost(m - 1);
    }
    return cost;
}

struct GateCounts {
    std::int64_t single_qubit = 0;
    /// Gates carrying at least one control, counted once each.
    std::int64_t controlled = 0;
    /// Two-qubit gates after decomposing every controlled gate and swap.
    std::int64_t two_qubit = 0;
};

inline GateCounts count_gates(const Circuit &circuit) {
    GateCounts counts;
    for (const auto &gate : circuit.gates()) {
        if (gate.kind == GateKind::Swap) {
            counts.two_qubit += 3;
            continue;
        }
        if (gate.controls.empty()) {
            ++counts.single_qubit;
        } else {
            ++counts.controlled;
            counts.two_qubit += controlled_gate_cost(static_cast<int>(gate.controls.size()));
        }
    }
    return counts;
}

inline std::int64_t count_two_qubit_gates(const Circuit &circuit) { return count_gates(circuit).two_qubit; }

} // namespace qscalar
