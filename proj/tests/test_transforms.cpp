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
#include "support.hpp"

using namespace qscalar;
using qtest::expect_error;

namespace {

std::vector<complex_t> column(const qtest::Matrix &m, std::size_t dim, std::size_t j) {
    std::vector<complex_t> c(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        c[i] = m[i * dim + j];
    }
    return c;
}

// Textbook formulas, evaluated entrywise.
double dct_entry(std::size_t k, std::size_t n, std::size_t size) {
    const double s = k == 0 ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
    return s * std::cos(std::numbers::pi * (n + 0.5) * k / size);
}

double dst_entry(std::size_t k, std::size_t n, std::size_t size) {
    const double s = k + 1 == size ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
    return s * std::sin(std::numbers::pi * (k + 1.0) * (n + 0.5) / size);
}

} // namespace

TEST(Qft, SingleQubitIsHadamard) {
    const auto c = build_qft_circuit(1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.gates()[0].kind, GateKind::Hadamard);
}

TEST(Qft, ThreeQubitColumnsMatchDft) {
    const auto c = build_qft_circuit(3);
    const auto dft = qtest::dft_matrix(8, +1);
    for (std::size_t j = 0; j < 8; ++j) {
        auto s = new_state(3);
        s.amplitudes()[0] = 0.0;
        s.amplitudes()[j] = 1.0;
        apply_circuit(s, c);
        EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), column(dft, 8, j)), 1e-14) << j;
    }
}

TEST(Qft, MatchesDftUpToSixQubits) {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 6; ++n) {
        const std::size_t dim = std::size_t{1} << n;
        const auto forward = qtest::dft_matrix(dim, +1);
        const auto backward = qtest::dft_matrix(dim, -1);
        for (int trial = 0; trial < 5; ++trial) {
            const auto v = qtest::random_vector(dim, rng);
            auto s = qtest::state_from(v);
            apply_circuit(s, build_qft_circuit(n));
            EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), qtest::apply(forward, v)), 1e-12);
            auto t = qtest::state_from(v);
            apply_circuit(t, build_qft_circuit(n, true));
            EXPECT_LT(qtest::max_abs_diff(t.amplitudes(), qtest::apply(backward, v)), 1e-12);
        }
    }
}

TEST(Qft, ForwardThenInverseIsIdentity) {
    std::mt19937_64 rng(2);
    for (int n = 1; n <= 8; ++n) {
        const auto v = qtest::random_vector(std::size_t{1} << n, rng);
        auto s = qtest::state_from(v);
        apply_circuit(s, build_qft_circuit(n));
        apply_circuit(s, build_qft_circuit(n, true));
        EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), v), 1e-12);
    }
}

TEST(Qft, ActsOnSubRegister) {
    std::mt19937_64 rng(6);
    const auto v = qtest::random_vector(32, rng);
    auto s = qtest::state_from(v);
    const auto c = build_qft_circuit(Register{2, 3}, 5);
    apply_circuit(s, c);
    EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), qtest::apply(qtest::circuit_matrix(c), v)), 1e-13);
    expect_error([] { (void)build_qft_circuit(Register{3, 3}, 5); }, "invalid qubit set");
}

TEST(Qct, ConstantVectorMapsToZeroMode) {
    const std::size_t n = 16;
    std::vector<complex_t> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    auto s = qtest::state_from(v);
    apply_qct(s, Register{0, 4});
    EXPECT_NEAR(s[0].real(), 1.0, 1e-14);
    for (std::size_t k = 1; k < n; ++k) {
        EXPECT_NEAR(std::abs(s[k]), 0.0, 1e-14);
    }
}

TEST(Qct, FourPointMatrixFromDefinition) {
    const auto m = dct2_matrix(4);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t n = 0; n < 4; ++n) {
            EXPECT_NEAR(m[k * 4 + n], dct_entry(k, n, 4), 1e-15);
        }
    }
    // Hand values for row 1: sqrt(1/2) cos(pi/8), sqrt(1/2) cos(3 pi/8), ...
    EXPECT_NEAR(m[4], std::sqrt(0.5) * 0.92387953251128674, 1e-15);
    EXPECT_NEAR(m[5], std::sqrt(0.5) * 0.38268343236508984, 1e-15);
}

TEST(Qst, TwoPointMatrixFromDefinition) {
    const auto m = dst2_matrix(2);
    EXPECT_NEAR(m[0], std::sin(std::numbers::pi / 4), 1e-15);
    EXPECT_NEAR(m[1], std::sin(3 * std::numbers::pi / 4), 1e-15);
    EXPECT_NEAR(m[2], std::sqrt(0.5) * std::sin(std::numbers::pi / 2), 1e-15);
    EXPECT_NEAR(m[3], std::sqrt(0.5) * std::sin(3 * std::numbers::pi / 2), 1e-15);
    for (std::size_t size : {4u, 8u}) {
        const auto big = dst2_matrix(size);
        for (std::size_t k = 0; k < size; ++k) {
            for (std::size_t n = 0; n < size; ++n) {
                EXPECT_NEAR(big[k * size + n], dst_entry(k, n, size), 1e-15);
            }
        }
    }
}

TEST(CosineSine, OrthogonalUpTo64Points) {
    for (std::size_t size = 1; size <= 64; size *= 2) {
        for (const auto &m : {dct2_matrix(size), dst2_matrix(size)}) {
            for (std::size_t a = 0; a < size; ++a) {
                for (std::size_t b = 0; b < size; ++b) {
                    double dot = 0.0;
                    for (std::size_t j = 0; j < size; ++j) {
                        dot += m[a * size + j] * m[b * size + j];
                    }
                    ASSERT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-12) << size << " " << a << " " << b;
                }
            }
        }
    }
}

TEST(CosineSine, InverseRestoresState) {
    std::mt19937_64 rng(10);
    for (int n = 1; n <= 6; ++n) {
        const auto v = qtest::random_vector(std::size_t{1} << (n + 1), rng);
        auto s = qtest::state_from(v);
        apply_qct(s, Register{1, n});
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        apply_qct(s, Register{1, n}, true);
        EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), v), 1e-12);
        apply_qst(s, Register{0, n});
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
        apply_qst(s, Register{0, n}, true);
        EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), v), 1e-12);
    }
    auto s = new_state(3);
    expect_error([&] { apply_qst(s, Register{2, 2}); }, "invalid qubit set");
}

TEST(Qst, OddSymmetricAlternatingVector) {
    const std::size_t size = 8;
    std::vector<complex_t> v(size);
    for (std::size_t n = 0; n < size; ++n) {
        v[n] = (n % 2 == 0 ? 1.0 : -1.0) / std::sqrt(8.0);
    }
    auto s = qtest::state_from(v);
    apply_qst(s, Register{0, 3});
    std::vector<complex_t> expected(size, 0.0);
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t n = 0; n < size; ++n) {
            expected[k] += dst_entry(k, n, size) * v[n] / std::sqrt(qtest::norm2(v));
        }
    }
    EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), expected), 1e-14);
    // An alternating vector is the sampled top Dirichlet mode.
    EXPECT_NEAR(std::norm(s[size - 1]), 1.0, 1e-14);
}

TEST(Wavenumbers, TableExamples) {
    const auto p = wavenumbers(BoundaryKind::Periodic, 4, 2.0 * std::numbers::pi).values;
    const std::vector<double> pe{0, 1, -2, -1};
    const auto ne = wavenumbers(BoundaryKind::Neumann, 4, std::numbers::pi).values;
    const auto di = wavenumbers(BoundaryKind::Dirichlet, 4, std::numbers::pi).values;
    for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_NEAR(p[j], pe[j], 1e-15);
        EXPECT_NEAR(ne[j], static_cast<double>(j), 1e-15);
        EXPECT_NEAR(di[j], static_cast<double>(j + 1), 1e-15);
    }
    expect_error([] { (void)wavenumbers(BoundaryKind::Periodic, 6, 1.0); }, "power of two");
    expect_error([] { (void)wavenumbers(BoundaryKind::Neumann, 4, 0.0); }, "positive");
}

TEST(Wavenumbers, PeriodicMirrorIdentity) {
    const double length = 1.7;
    for (std::size_t size = 2; size <= 256; size *= 2) {
        const auto k = wavenumbers(BoundaryKind::Periodic, size, length).values;
        const double k1 = 2.0 * std::numbers::pi / length;
        for (std::size_t j = size / 2; j < size; ++j) {
            const double jp = static_cast<double>(size - 1 - j);
            EXPECT_NEAR(k[j] * k[j], k1 * k1 * (jp + 1.0) * (jp + 1.0), 1e-9 * k[j] * k[j]);
        }
    }
}

TEST(SpectralTransform, AgreesWithExtensionRoute) {
    // reference::AxisTransform derives its matrices from DFTs of symmetric
    // extensions, independently of the library's direct formulas.
    std::mt19937_64 rng(31);
    for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
        for (int n = 1; n <= 6; ++n) {
            const std::size_t size = std::size_t{1} << n;
            const reference::AxisTransform oracle(kind, size);
            const auto v = qtest::random_vector(size, rng);
            auto s = qtest::state_from(v);
            apply_spectral_transform(s, Register{0, n}, kind, TransformDirection::ToSpectral);
            std::vector<complex_t> expected = v;
            std::vector<complex_t> scratch;
            oracle.apply(expected, 0, 1, false, scratch);
            EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), expected), 1e-12) << to_string(kind) << " n=" << n;
            apply_spectral_transform(s, Register{0, n}, kind, TransformDirection::ToPhysical);
            EXPECT_LT(qtest::max_abs_diff(s.amplitudes(), v), 1e-12);
        }
    }
}

TEST(SpectralTransform, PeriodicForwardKernelIsNegativeExponent) {
    // Physical -> spectral uses e^{-2 pi i j k / N}: a plane wave e^{+i k_1 x}
    // lands in spectral index 1.
    const std::size_t size = 16;
    std::vector<complex_t> v(size);
    for (std::size_t j = 0; j < size; ++j) {
        v[j] = std::polar(0.25, 2.0 * std::numbers::pi * j / size);
    }
    auto s = qtest::state_from(v);
    apply_spectral_transform(s, Register{0, 4}, BoundaryKind::Periodic, TransformDirection::ToSpectral);
    EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-13);
}

TEST(BoundaryKind, ParseRoundTrip) {
    for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
        EXPECT_EQ(parse_boundary_kind(to_string(kind)), kind);
    }
    expect_error([] { (void)parse_boundary_kind("robin"); }, "unknown boundary kind");
}
