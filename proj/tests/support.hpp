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
// Test-side oracles. Nothing here calls the library's gate kernels or
// transforms; dense matrices are assembled from the textbook definitions.
#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qscalar/qscalar.hpp"

namespace qtest {

using qscalar::complex_t;
using Matrix = std::vector<complex_t>; // row-major, square

inline std::vector<complex_t> random_vector(std::size_t size, std::mt19937_64 &rng, bool normalize = true) {
    std::normal_distribution<double> g;
    std::vector<complex_t> v(size);
    double norm = 0.0;
    for (auto &a : v) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    if (normalize) {
        for (auto &a : v) {
            a /= std::sqrt(norm);
        }
    }
    return v;
}

inline std::vector<complex_t> random_real_vector(std::size_t size, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<complex_t> v(size);
    for (auto &a : v) {
        a = g(rng);
    }
    return v;
}

inline qscalar::QuantumState state_from(std::vector<complex_t> amps) {
    const int n = qscalar::detail::log2_exact(amps.size());
    return qscalar::QuantumState(n, std::move(amps));
}

inline Matrix identity(std::size_t dim) {
    Matrix m(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        m[i * dim + i] = 1.0;
    }
    return m;
}

inline Matrix multiply(const Matrix &a, const Matrix &b, std::size_t dim) {
    Matrix c(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            const complex_t aik = a[i * dim + k];
            if (aik == complex_t{0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                c[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    return c;
}

inline std::vector<complex_t> apply(const Matrix &m, std::span<const complex_t> v) {
    const std::size_t dim = v.size();
    std::vector<complex_t> out(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            out[i] += m[i * dim + j] * v[j];
        }
    }
    return out;
}

/// Full 2^n x 2^n matrix of one gate, built entry by entry from its 2x2
/// (or swap) definition.
inline Matrix gate_matrix(const qscalar::GateOp &g, int n) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix m(dim * dim, 0.0);
    const double s2 = 1.0 / std::sqrt(2.0);
    complex_t u[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    switch (g.kind) {
    case qscalar::GateKind::Phase:
        u[1][1] = std::exp(complex_t(0.0, g.param));
        break;
    case qscalar::GateKind::Hadamard:
        u[0][0] = s2;
        u[0][1] = s2;
        u[1][0] = s2;
        u[1][1] = -s2;
        break;
    case qscalar::GateKind::PauliX:
        u[0][0] = 0.0;
        u[0][1] = 1.0;
        u[1][0] = 1.0;
        u[1][1] = 0.0;
        break;
    case qscalar::GateKind::DampingRotation: {
        const double c = std::exp(-g.param);
        const double s = std::sqrt(1.0 - c * c);
        u[0][0] = c;
        u[0][1] = -s;
        u[1][0] = s;
        u[1][1] = c;
        break;
    }
    case qscalar::GateKind::Swap:
        break;
    }
    for (std::size_t col = 0; col < dim; ++col) {
        bool active = true;
        for (const auto &c : g.controls) {
            active = active && (((col >> c.qubit) & 1u) == (c.value ? 1u : 0u));
        }
        if (!active) {
            m[col * dim + col] = 1.0;
            continue;
        }
        if (g.kind == qscalar::GateKind::Swap) {
            const std::size_t a = (col >> g.target) & 1u;
            const std::size_t b = (col >> g.target2) & 1u;
            std::size_t row = col & ~((std::size_t{1} << g.target) | (std::size_t{1} << g.target2));
            row |= (b << g.target) | (a << g.target2);
            m[row * dim + col] = 1.0;
            continue;
        }
        const std::size_t bit = (col >> g.target) & 1u;
        const std::size_t base = col & ~(std::size_t{1} << g.target);
        for (std::size_t out = 0; out < 2; ++out) {
            m[(base | (out << g.target)) * dim + col] = u[out][bit];
        }
    }
    return m;
}

/// Product of all gate matrices, later gates on the left.
inline Matrix circuit_matrix(const qscalar::Circuit &circuit) {
    const int n = circuit.n_qubits();
    const std::size_t dim = std::size_t{1} << n;
    Matrix m = identity(dim);
    for (const auto &g : circuit.gates()) {
        m = multiply(gate_matrix(g, n), m, dim);
    }
    return m;
}

/// Unitary DFT with kernel e^{sign 2 pi i j k / N} / sqrt(N).
inline Matrix dft_matrix(std::size_t n, int sign) {
    Matrix m(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) * static_cast<double>(k) /
                                 static_cast<double>(n);
            m[k * n + j] = std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
        }
    }
    return m;
}

inline Matrix adjoint(const Matrix &m, std::size_t dim) {
    Matrix a(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            a[j * dim + i] = std::conj(m[i * dim + j]);
        }
    }
    return a;
}

inline double max_abs_diff(std::span<const complex_t> a, std::span<const complex_t> b) {
    EXPECT_EQ(a.size(), b.size());
    double d = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

inline double norm2(std::span<const complex_t> v) {
    double s = 0.0;
    for (const auto &a : v) {
        s += std::norm(a);
    }
    return s;
}

inline std::vector<complex_t> normalized(std::vector<complex_t> v) {
    const double n = std::sqrt(norm2(v));
    for (auto &a : v) {
        a /= n;
    }
    return v;
}

/// Padded copy with `extra` zero qubits above the main register.
inline std::vector<complex_t> pad(std::span<const complex_t> v, int extra) {
    std::vector<complex_t> out(v.size() << extra, 0.0);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

template <typename Fn>
void expect_error(Fn &&fn, const std::string &fragment) {
    try {
        fn();
        ADD_FAILURE() << "expected an error containing '" << fragment << "'";
    } catch (const qscalar::Error &e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

} // namespace qtest
