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
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "support.hpp"

using namespace qscalar;
using qtest::expect_error;
namespace ref = qscalar::reference;

namespace {

double initial_pulse(double x) { return std::exp(-100.0 * (x - 0.5) * (x - 0.5)); }

// Direct adaptive quadrature of the periodic Green-function convolution on
// [0, 1), summing images until they stop contributing.
double quadrature_pulse(double x, double t, double u, double d) {
    using boost::math::quadrature::gauss_kronrod;
    const double four_dt = 4.0 * d * t;
    double total = 0.0;
    for (int m = -8; m <= 8; ++m) {
        auto f = [&](double eta) {
            const double z = x - u * t - eta - m;
            return initial_pulse(eta) * std::exp(-z * z / four_dt) / std::sqrt(std::numbers::pi * four_dt);
        };
        total += gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 12, 1e-13);
    }
    return total;
}

ScenarioConfig pulse_config(int n_x) {
    ScenarioConfig c;
    c.n_x = n_x;
    c.diffusivity = 0.08;
    c.t_final = 1.0;
    return c;
}

} // namespace

TEST(AnalyticPulse, InitialConditionAtZeroTime) {
    for (double x = 0.0; x < 1.0; x += 0.01) {
        EXPECT_NEAR(ref::analytic_pulse_solution(x, 0.0, 1.0, 0.08), initial_pulse(x), 1e-10);
    }
    expect_error([] { (void)ref::analytic_pulse_solution(0.3, -1.0, 1.0, 0.08); }, "t >= 0");
}

TEST(AnalyticPulse, VanishingDiffusionTranslates) {
    for (double t : {0.1, 0.37, 1.0, 2.5}) {
        for (double x = 0.0; x < 1.0; x += 0.05) {
            double shifted = x - t;
            shifted -= std::floor(shifted);
            EXPECT_NEAR(ref::analytic_pulse_solution(x, t, 1.0, 1e-12), initial_pulse(shifted), 1e-8);
        }
    }
}

TEST(AnalyticPulse, AgreesWithQuadrature) {
    for (double t : {0.1, 0.5, 1.0}) {
        for (int j = 0; j < 128; j += 9) {
            const double x = j / 128.0;
            EXPECT_NEAR(ref::analytic_pulse_solution(x, t, 1.0, 0.08), quadrature_pulse(x, t, 1.0, 0.08), 1e-10)
                << "t=" << t << " x=" << x;
        }
    }
    // Narrow and wide kernels.
    for (double d : {1e-4, 0.5}) {
        for (double x : {0.0, 0.25, 0.61}) {
            EXPECT_NEAR(ref::analytic_pulse_solution(x, 0.7, -0.3, d), quadrature_pulse(x, 0.7, -0.3, d), 1e-10);
        }
    }
}

TEST(AxisTransform, ExtensionRouteMatchesFormulas) {
    for (std::size_t size = 1; size <= 32; size *= 2) {
        const ref::AxisTransform per(BoundaryKind::Periodic, size);
        const ref::AxisTransform neu(BoundaryKind::Neumann, size);
        const ref::AxisTransform dir(BoundaryKind::Dirichlet, size);
        const auto dft = qtest::dft_matrix(size, -1);
        for (std::size_t k = 0; k < size; ++k) {
            for (std::size_t j = 0; j < size; ++j) {
                const double sn = k == 0 ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
                const double sd = k + 1 == size ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
                EXPECT_NEAR(std::abs(per.forward_entry(k, j) - dft[k * size + j]), 0.0, 1e-13);
                EXPECT_NEAR(std::abs(neu.forward_entry(k, j) - sn * std::cos(std::numbers::pi * k * (j + 0.5) / size)),
                            0.0, 1e-13);
                EXPECT_NEAR(
                    std::abs(dir.forward_entry(k, j) - sd * std::sin(std::numbers::pi * (k + 1.0) * (j + 0.5) / size)),
                    0.0, 1e-13);
            }
        }
    }
}

TEST(DiagonalOracle, TrivialCases) {
    std::mt19937_64 rng(1);
    const auto v = qtest::random_vector(16, rng);
    for (auto kind : {BoundaryKind::Periodic, BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
        const auto same = ref::diagonal_propagator_oracle(std::span<const complex_t>(v), kind, 1.0, std::nullopt, 0.3, 0.0);
        EXPECT_LT(qtest::max_abs_diff(same, v), 1e-13);
    }
    const std::vector<complex_t> flat(16, 0.25);
    const auto kept = ref::diagonal_propagator_oracle(std::span<const complex_t>(flat), BoundaryKind::Neumann, 1.0,
                                                      std::nullopt, 5.0, 3.0);
    EXPECT_LT(qtest::max_abs_diff(kept, flat), 1e-13);
    expect_error(
        [&] { (void)ref::diagonal_propagator_oracle(std::span<const complex_t>(v), BoundaryKind::Neumann, 1.0, 1.0, 0.1, 1.0); },
        "periodic");
}

TEST(DiagonalOracle, PulseNormRatio) {
    const auto c = pulse_config(7);
    const auto g = pulse_initial_condition(c);
    const auto out = ref::diagonal_propagator_oracle(std::span<const double>(g), BoundaryKind::Periodic, 1.0, 1.0, 0.08, 1.0);
    double n0 = 0.0;
    for (double v : g) {
        n0 += v * v;
    }
    EXPECT_NEAR(qtest::norm2(out) / n0, 0.251, 0.0015);
    // Exact spectral propagation reproduces the closed form.
    std::vector<double> exact(128);
    for (std::size_t j = 0; j < 128; ++j) {
        exact[j] = ref::analytic_pulse_solution(j / 128.0, 1.0, 1.0, 0.08);
    }
    EXPECT_LT(ref::error_norm(qtest::normalized(out), std::span<const double>(exact)), 1e-12);
}

TEST(ErrorNorm, Examples) {
    std::mt19937_64 rng(2);
    const auto v = qtest::random_vector(32, rng);
    EXPECT_NEAR(ref::error_norm(v, v), 0.0, 1e-15);
    std::vector<complex_t> neg(v.size()), scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        neg[i] = -v[i];
        scaled[i] = 3.7 * v[i];
    }
    EXPECT_NEAR(ref::error_norm(v, neg), 2.0, 1e-14);
    EXPECT_NEAR(ref::error_norm(v, scaled), 0.0, 1e-14);
    EXPECT_NEAR(ref::error_norm(v, scaled), ref::error_norm(v, v), 1e-14);
    const std::vector<complex_t> zero(32, 0.0);
    expect_error([&] { (void)ref::error_norm(v, zero); }, "zero norm");
    expect_error([&] { (void)ref::error_norm(v, std::span<const complex_t>(zero).first(4)); }, "length mismatch");
}

TEST(Fd10, StencilsAreExactForPolynomials) {
    for (int k = 0; k <= 10; ++k) {
        double first = 0.0;
        double second = k == 0 ? ref::kSecondDerivativeCentre : 0.0;
        for (int m = 1; m <= 5; ++m) {
            first += ref::kFirstDerivative[m - 1] * (std::pow(m, k) - std::pow(-m, k));
            second += ref::kSecondDerivative[m - 1] * (std::pow(m, k) + std::pow(-m, k));
        }
        EXPECT_NEAR(first, k == 1 ? 1.0 : 0.0, 1e-9) << k;
        EXPECT_NEAR(second, k == 2 ? 2.0 : 0.0, 1e-9) << k;
    }
}

TEST(Fd10, ConstantFieldStaysConstant) {
    ScenarioConfig c;
    c.n_x = 4;
    c.n_y = 4;
    c.profile = VelocityProfile::poiseuille();
    c.diffusivity = 0.01;
    c.t_final = 0.5;
    auto f = ref::ScalarField::on_grid(c, std::vector<double>(c.points(), 2.5));
    const auto out = ref::fd10_reference(c, f);
    for (double v : out.values) {
        EXPECT_NEAR(v, 2.5, 1e-12);
    }
    EXPECT_NEAR(out.time, 0.5, 0.0);
}

TEST(Fd10, PulseMatchesClosedForm) {
    const auto c = pulse_config(7);
    const auto out = ref::fd10_reference(c, ref::ScalarField::on_grid(c, pulse_initial_condition(c)));
    double worst = 0.0;
    for (std::size_t j = 0; j < 128; ++j) {
        worst = std::max(worst, std::abs(out.values[j] - ref::analytic_pulse_solution(j / 128.0, 1.0, 1.0, 0.08)));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Fd10, ConservesIntegral) {
    for (auto bc : {BoundaryKind::Periodic, BoundaryKind::Neumann}) {
        ScenarioConfig c;
        c.n_x = 5;
        c.n_y = 5;
        c.bc_y = bc;
        c.profile = VelocityProfile::blasius();
        c.diffusivity = 0.01;
        c.t_final = 1.0;
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> values(c.points());
        for (auto &v : values) {
            v = u(rng);
        }
        const auto f = ref::ScalarField::on_grid(c, values);
        const auto out = ref::fd10_reference(c, f);
        EXPECT_NEAR(out.integral(), f.integral(), 1e-10 * c.t_final) << to_string(bc);
    }
}

TEST(Fd10, DirichletGhostsAreOdd) {
    std::size_t mapped = 0;
    EXPECT_EQ(ref::detail::ghost_index(-1, 8, BoundaryKind::Dirichlet, mapped), -1.0);
    EXPECT_EQ(mapped, 0u);
    EXPECT_EQ(ref::detail::ghost_index(-2, 8, BoundaryKind::Neumann, mapped), 1.0);
    EXPECT_EQ(mapped, 1u);
    EXPECT_EQ(ref::detail::ghost_index(9, 8, BoundaryKind::Neumann, mapped), 1.0);
    EXPECT_EQ(mapped, 6u);
    EXPECT_EQ(ref::detail::ghost_index(-3, 8, BoundaryKind::Periodic, mapped), 1.0);
    EXPECT_EQ(mapped, 5u);
}

TEST(Fd10, RejectsBadSettings) {
    const auto c = pulse_config(4);
    const auto f = ref::ScalarField::on_grid(c, pulse_initial_condition(c));
    expect_error([&] { (void)ref::fd10_reference(c, f, ref::Fd10Options{0.0}); }, "unstable parameters");
    expect_error([&] { (void)ref::fd10_reference(c, f, ref::Fd10Options{1.5}); }, "unstable parameters");
    auto bad = c;
    bad.n_x = 5;
    expect_error([&] { (void)ref::fd10_reference(bad, f); }, "does not match");
    std::vector<double> nan_field(c.points(), 0.0);
    nan_field[3] = std::nan("");
    expect_error([&] { (void)ref::ScalarField::on_grid(c, nan_field); }, "finite");
}

TEST(SplitOracle, CommutingCaseIsExact) {
    const auto c = pulse_config(6);
    const auto g = pulse_initial_condition(c);
    std::vector<complex_t> gc(g.begin(), g.end());
    const auto exact = ref::diagonal_propagator_oracle(std::span<const double>(g), BoundaryKind::Periodic, 1.0, 1.0, 0.08, 1.0);
    for (auto s : {Splitting::Trotter, Splitting::Strang}) {
        for (int steps : {1, 2, 5}) {
            const auto split = ref::split_propagator_oracle(c, gc, s, steps);
            EXPECT_LT(qtest::max_abs_diff(split, exact), 1e-13);
        }
    }
}
