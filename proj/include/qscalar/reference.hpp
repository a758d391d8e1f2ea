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
 * Classical ground truth for the circuits: the closed-form periodic pulse
 * solution, dense spectral propagators, and a tenth-order finite-difference
 * solver.
 *
 * The spectral transforms here are built independently of transforms.hpp:
 * the DFT is summed directly and the cosine/sine transforms are taken from a
 * DFT of the even/odd symmetric extension of length 2N.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "qscalar/scenario.hpp"
#include "qscalar/state.hpp"
#include "qscalar/transforms.hpp"

namespace qscalar::reference {

// ---------------------------------------------------------------------------
// Closed-form pulse solution

namespace detail {

/// erf(p) - erf(q) for p >= q without cancellation in the tails.
inline double erf_difference(double p, double q) {
    if (q >= 0.0) {
        return std::erfc(q) - std::erfc(p);
    }
    if (p <= 0.0) {
        return std::erfc(-p) - std::erfc(-q);
    }
    return std::erf(p) - std::erf(q);
}

} // namespace detail

/// Periodic advection-diffusion of phi_0(x) = exp(-100 (x/L - 1/2)^2) on
/// [0, L): the heat kernel with drift u convolved with phi_0 over one period
/// and summed over periodic images. Each image integral is evaluated in
/// closed form with error functions.
inline double analytic_pulse_solution(double x, double t, double u, double diffusivity, double length = 1.0) {
    qscalar::detail::require(t >= 0.0, "analytic solution needs t >= 0");
    qscalar::detail::require(length > 0.0, "L must be positive");
    const double a = 100.0 / (length * length);
    const double c = 0.5 * length;
    const double z = x - u * t - length * std::floor((x - u * t) / length);
    if (t == 0.0 || diffusivity == 0.0) {
        return std::exp(-a * (z - c) * (z - c));
    }
    const double four_dt = 4.0 * diffusivity * t;
    const double b = 1.0 / four_dt;
    const double s = a + b;
    const double root_s = std::sqrt(s);
    // Images beyond |m| = M contribute less than exp(-37) ~ 1e-16.
    const int images = 1 + static_cast<int>(std::ceil(std::sqrt(four_dt * 37.0) / length));
    double total = 0.0;
    for (int m = -images; m <= images; ++m) {
        const double w = z - m * length;
        const double centre = (a * c + b * w) / s;
        const double envelope = std::exp(-a * b / s * (c - w) * (c - w));
        if (envelope == 0.0) {
            continue;
        }
        total += envelope * detail::erf_difference(root_s * (length - centre), -root_s * centre);
    }
    return 0.5 * std::sqrt(b / s) * total;
}

// ---------------------------------------------------------------------------
// Dense spectral transforms

/// Orthonormal physical -> spectral matrix for one axis, built from DFT sums.
/// Periodic rows are e^{-2 pi i j k / N} / sqrt(N); Neumann and Dirichlet
/// rows come from the 2N-point DFT of the symmetric extension.
class AxisTransform {
  public:
    AxisTransform(BoundaryKind kind, std::size_t n_points) : kind_(kind), n_(n_points), forward_(n_points * n_points) {
        qscalar::detail::require(qscalar::detail::is_power_of_two(n_points), "grid size must be a power of two");
        switch (kind) {
        case BoundaryKind::Periodic:
            build_periodic();
            break;
        case BoundaryKind::Neumann:
        case BoundaryKind::Dirichlet:
            build_from_extension();
            break;
        }
    }

    [[nodiscard]] BoundaryKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] complex_t forward_entry(std::size_t k, std::size_t j) const { return forward_[k * n_ + j]; }

    /// Applies the transform (or its adjoint) to the line in[0], in[stride], ...
    void apply(std::span<complex_t> data, std::size_t offset, std::size_t stride, bool inverse,
               std::vector<complex_t> &scratch) const {
        scratch.resize(2 * n_);
        complex_t *in = scratch.data();
        complex_t *out = scratch.data() + n_;
        for (std::size_t j = 0; j < n_; ++j) {
            in[j] = data[offset + j * stride];
        }
        for (std::size_t r = 0; r < n_; ++r) {
            complex_t acc = 0.0;
            if (inverse) {
                for (std::size_t c = 0; c < n_; ++c) {
                    acc += std::conj(forward_[c * n_ + r]) * in[c];
                }
            } else {
                const complex_t *row = forward_.data() + r * n_;
                for (std::size_t c = 0; c < n_; ++c) {
                    acc += row[c] * in[c];
                }
            }
            out[r] = acc;
        }
        for (std::size_t j = 0; j < n_; ++j) {
            data[offset + j * stride] = out[j];
        }
    }

  private:
    void build_periodic() {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
        for (std::size_t k = 0; k < n_; ++k) {
            for (std::size_t j = 0; j < n_; ++j) {
                const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n_) / static_cast<double>(n_);
                forward_[k * n_ + j] = std::polar(scale, angle);
            }
        }
    }

    /// Column j is the transform of the unit vector e_j, computed through the
    /// symmetric extension: even (DCT-II) or odd (DST-II) about both ends.
    void build_from_extension() {
        const std::size_t m = 2 * n_;
        const auto nd = static_cast<double>(n_);
        std::vector<complex_t> ext(m);
        for (std::size_t j = 0; j < n_; ++j) {
            std::fill(ext.begin(), ext.end(), complex_t{0.0});
            ext[j] = 1.0;
            ext[m - 1 - j] = kind_ == BoundaryKind::Neumann ? 1.0 : -1.0;
            for (std::size_t k = 0; k < n_; ++k) {
                // Neumann uses DFT bin k, Dirichlet bin k + 1.
                const std::size_t bin = kind_ == BoundaryKind::Neumann ? k : k + 1;
                complex_t y = 0.0;
                for (std::size_t p = 0; p < m; ++p) {
                    const double angle = -std::numbers::pi * static_cast<double>((bin * p) % m) / nd;
                    y += ext[p] * std::polar(1.0, angle);
                }
                const complex_t shift = std::polar(1.0, -std::numbers::pi * static_cast<double>(bin) / (2.0 * nd));
                double value = 0.0;
                if (kind_ == BoundaryKind::Neumann) {
                    // e^{-i pi k / 2N} Y_k = 2 sum_j x_j cos(pi k (j + 1/2) / N)
                    value = (shift * y).real() / 2.0;
                    value *= k == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
                } else {
                    // e^{-i pi b / 2N} Y_b = -2i sum_j x_j sin(pi b (j + 1/2) / N)
                    value = (shift * y * complex_t(0.0, 1.0)).real() / 2.0;
                    value *= k + 1 == n_ ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
                }
                forward_[k * n_ + j] = value;
            }
        }
    }

    BoundaryKind kind_;
    std::size_t n_;
    std::vector<complex_t> forward_;
};

/// Squared wavenumber table of an axis in physical units.
inline std::vector<double> squared_wavenumbers(BoundaryKind kind, std::size_t n_points, double length) {
    auto k = wavenumbers(kind, n_points, length).values;
    for (auto &v : k) {
        v *= v;
    }
    return k;
}

/// Exact 1D propagator: transform, multiply by e^{-i u k t - D k^2 t},
/// transform back. Returns the unnormalised solution, so its squared norm
/// ratio to the input is the theoretical success probability. A non-zero
/// velocity is only diagonal on periodic axes.
inline std::vector<complex_t> diagonal_propagator_oracle(std::span<const complex_t> initial, BoundaryKind kind,
                                                         double length, std::optional<double> velocity,
                                                         double diffusivity, double time) {
    const std::size_t n = initial.size();
    const double u = velocity.value_or(0.0);
    qscalar::detail::require(u == 0.0 || kind == BoundaryKind::Periodic,
                             "advection is diagonal only on a periodic axis");
    const AxisTransform transform(kind, n);
    const auto k = wavenumbers(kind, n, length).values;
    std::vector<complex_t> data(initial.begin(), initial.end());
    std::vector<complex_t> scratch;
    transform.apply(data, 0, 1, false, scratch);
    for (std::size_t j = 0; j < n; ++j) {
        data[j] *= std::exp(complex_t(-diffusivity * k[j] * k[j] * time, -u * k[j] * time));
    }
    transform.apply(data, 0, 1, true, scratch);
    return data;
}

inline std::vector<complex_t> diagonal_propagator_oracle(std::span<const double> initial, BoundaryKind kind,
                                                         double length, std::optional<double> velocity,
                                                         double diffusivity, double time) {
    std::vector<complex_t> promoted(initial.begin(), initial.end());
    return diagonal_propagator_oracle(std::span<const complex_t>(promoted), kind, length, velocity, diffusivity,
                                      time);
}

/// Classical operator splitting of the scenario with dense transforms and
/// exact diagonal factors: advection and x diffusion are diagonal in
/// (k_x, y), y diffusion in (k_x, k_y). Returns the unnormalised field.
inline std::vector<complex_t> split_propagator_oracle(const ScenarioConfig &config, std::span<const complex_t> initial,
                                                      Splitting splitting, int steps) {
    config.validate();
    qscalar::detail::require(initial.size() == config.points(), "initial field does not match the grid");
    qscalar::detail::require(steps >= 1, "steps must be at least 1");
    const std::size_t nx = config.nx();
    const std::size_t ny = config.ny();
    const double dt = config.t_final / static_cast<double>(steps);
    const double d = config.diffusivity;

    const AxisTransform tx(config.bc_x, nx);
    const auto kx = wavenumbers(config.bc_x, nx, config.length).values;
    const auto u = config.velocity_samples();

    std::optional<AxisTransform> ty;
    std::vector<double> ky2;
    if (config.two_dimensional()) {
        ty.emplace(config.bc_y, ny);
        ky2 = squared_wavenumbers(config.bc_y, ny, config.length);
    }

    auto advect_diffuse_x = [&](double adv_time, double diff_time) {
        std::vector<complex_t> factors(nx * ny);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) {
                factors[ix + nx * iy] =
                    std::exp(complex_t(-d * kx[ix] * kx[ix] * diff_time, -u[config.two_dimensional() ? iy : 0] * kx[ix] * adv_time));
            }
        }
        return factors;
    };

    std::vector<complex_t> data(initial.begin(), initial.end());
    std::vector<complex_t> scratch;
    auto transform_x = [&](bool inverse) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            tx.apply(data, nx * iy, 1, inverse, scratch);
        }
    };
    auto diffuse_y = [&](double time) {
        if (!ty) {
            return;
        }
        for (std::size_t ix = 0; ix < nx; ++ix) {
            ty->apply(data, ix, nx, false, scratch);
        }
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double f = std::exp(-d * ky2[iy] * time);
            for (std::size_t ix = 0; ix < nx; ++ix) {
                data[ix + nx * iy] *= f;
            }
        }
        for (std::size_t ix = 0; ix < nx; ++ix) {
            ty->apply(data, ix, nx, true, scratch);
        }
    };
    auto multiply = [&](const std::vector<complex_t> &f) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            data[i] *= f[i];
        }
    };

    // x stays in spectral space for the whole run.
    transform_x(false);
    if (splitting == Splitting::Trotter) {
        const auto step_x = advect_diffuse_x(dt, dt);
        for (int s = 0; s < steps; ++s) {
            multiply(step_x);
            diffuse_y(dt);
        }
    } else {
        // Consecutive half advections merge into full ones.
        const auto first = advect_diffuse_x(0.5 * dt, dt);
        const auto middle = advect_diffuse_x(dt, dt);
        const auto last = advect_diffuse_x(0.5 * dt, 0.0);
        for (int s = 0; s < steps; ++s) {
            multiply(s == 0 ? first : middle);
            diffuse_y(dt);
        }
        multiply(last);
    }
    transform_x(true);
    return data;
}

// ---------------------------------------------------------------------------
// Error metric

/// || a - r / ||r|| ||, in [0, 2] for unit-norm a.
inline double error_norm(std::span<const complex_t> state, std::span<const complex_t> reference) {
    qscalar::detail::require(state.size() == reference.size(), "error_norm: length mismatch");
    double rnorm = 0.0;
    for (const auto &r : reference) {
        rnorm += std::norm(r);
    }
    qscalar::detail::require(rnorm > 0.0, "error_norm: reference has zero norm");
    const double inv = 1.0 / std::sqrt(rnorm);
    double sum = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        sum += std::norm(state[i] - reference[i] * inv);
    }
    return std::sqrt(sum);
}

inline double error_norm(std::span<const complex_t> state, std::span<const double> reference) {
    std::vector<complex_t> promoted(reference.begin(), reference.end());
    return error_norm(state, std::span<const complex_t>(promoted));
}

inline double error_norm(const QuantumState &state, std::span<const complex_t> reference) {
    return error_norm(state.amplitudes().first(reference.size()), reference);
}

// ---------------------------------------------------------------------------
// Tenth-order finite differences

/// Real field on an N_x x N_y grid, index ix + N_x * iy (N_y = 1 in 1D).
struct ScalarField {
    std::size_t nx = 0;
    std::size_t ny = 1;
    double dx = 1.0;
    double dy = 1.0;
    double time = 0.0;
    std::vector<double> values;

    [[nodiscard]] double &at(std::size_t ix, std::size_t iy) { return values[ix + nx * iy]; }
    [[nodiscard]] double at(std::size_t ix, std::size_t iy) const { return values[ix + nx * iy]; }

    [[nodiscard]] double integral() const {
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        return sum * dx * dy;
    }

    static ScalarField on_grid(const ScenarioConfig &config, std::vector<double> values) {
        qscalar::detail::require(values.size() == config.points(), "field does not match the grid");
        ScalarField f;
        f.nx = config.nx();
        f.ny = config.ny();
        f.dx = config.length / static_cast<double>(f.nx);
        f.dy = config.two_dimensional() ? config.length / static_cast<double>(f.ny) : 1.0;
        f.values = std::move(values);
        for (double v : f.values) {
            qscalar::detail::require(std::isfinite(v), "field values must be finite");
        }
        return f;
    }
};

/// Central stencil weights for offsets 1..5 (antisymmetric first derivative,
/// symmetric second derivative with centre weight kSecondDerivativeCentre).
inline constexpr double kFirstDerivative[5] = {5.0 / 6.0, -5.0 / 21.0, 5.0 / 84.0, -5.0 / 504.0, 1.0 / 1260.0};
inline constexpr double kSecondDerivative[5] = {5.0 / 3.0, -5.0 / 21.0, 5.0 / 126.0, -5.0 / 1008.0, 1.0 / 3150.0};
inline constexpr double kSecondDerivativeCentre = -5269.0 / 1800.0;

namespace detail {

/// Maps an index outside [0, n) onto the grid for the y boundary: periodic
/// wrap, or reflection about the half-cell walls (phi_{-1} = +/- phi_0,
/// phi_{-2} = +/- phi_1, ...). Returns the sign to apply.
inline double ghost_index(long j, std::size_t n, BoundaryKind kind, std::size_t &mapped) {
    const long nl = static_cast<long>(n);
    if (j >= 0 && j < nl) {
        mapped = static_cast<std::size_t>(j);
        return 1.0;
    }
    if (kind == BoundaryKind::Periodic) {
        mapped = static_cast<std::size_t>(((j % nl) + nl) % nl);
        return 1.0;
    }
    const long reflected = j < 0 ? -j - 1 : 2 * nl - 1 - j;
    mapped = static_cast<std::size_t>(reflected);
    return kind == BoundaryKind::Neumann ? 1.0 : -1.0;
}

/// Largest |symbol| of the second-derivative stencil, reached at the Nyquist mode.
inline double second_derivative_radius() {
    double value = kSecondDerivativeCentre;
    for (int m = 0; m < 5; ++m) {
        value += 2.0 * kSecondDerivative[m] * ((m % 2 == 0) ? -1.0 : 1.0);
    }
    return std::abs(value);
}

} // namespace detail

struct Fd10Options {
    /// Fraction of the stability-limited step used by the RK4 integrator.
    double safety = 0.4;
};

/// Advances phi_t + u(y) phi_x = D (phi_xx + phi_yy) to config.t_final with
/// tenth-order central differences (periodic in x, bc_y in y) and classical
/// RK4 on uniform sub-steps.
inline ScalarField fd10_reference(const ScenarioConfig &config, const ScalarField &initial, Fd10Options options = {}) {
    config.validate();
    qscalar::detail::require(initial.nx == config.nx() && initial.ny == config.ny(), "field does not match the grid");
    qscalar::detail::require(options.safety > 0.0 && options.safety <= 1.0, "unstable parameters: safety must lie in (0, 1]");
    const std::size_t nx = initial.nx;
    const std::size_t ny = initial.ny;
    const bool two_d = config.two_dimensional();
    const double dx = config.length / static_cast<double>(nx);
    const double dy = two_d ? config.length / static_cast<double>(ny) : 1.0;
    const double d = config.diffusivity;
    const auto u = config.velocity_samples();
    double umax = 0.0;
    for (double v : u) {
        umax = std::max(umax, std::abs(v));
    }

    ScalarField field = initial;
    if (config.t_final == 0.0) {
        return field;
    }
    double dt_limit = std::numeric_limits<double>::infinity();
    if (umax > 0.0) {
        dt_limit = std::min(dt_limit, dx / umax);
    }
    if (d > 0.0) {
        const double radius = detail::second_derivative_radius() * (1.0 / (dx * dx) + (two_d ? 1.0 / (dy * dy) : 0.0));
        dt_limit = std::min(dt_limit, 2.0 / (d * radius));
    }
    const double dt_target = options.safety * dt_limit;
    const long substeps = std::isfinite(dt_target) ? std::max(1L, static_cast<long>(std::ceil(config.t_final / dt_target))) : 1L;
    qscalar::detail::require(substeps < 100'000'000L, "unstable parameters: too many sub-steps");
    const double h = config.t_final / static_cast<double>(substeps);

    auto rhs = [&](const std::vector<double> &phi, std::vector<double> &out) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double uy = u[two_d ? iy : 0];
            const double *row = phi.data() + nx * iy;
            for (std::size_t ix = 0; ix < nx; ++ix) {
                double first = 0.0;
                double second = kSecondDerivativeCentre * row[ix];
                for (std::size_t m = 1; m <= 5; ++m) {
                    const double plus = row[(ix + m) % nx];
                    const double minus = row[(ix + nx * 5 - m) % nx];
                    first += kFirstDerivative[m - 1] * (plus - minus);
                    second += kSecondDerivative[m - 1] * (plus + minus);
                }
                double value = -uy * first / dx + d * second / (dx * dx);
                if (two_d) {
                    double second_y = kSecondDerivativeCentre * row[ix];
                    for (long m = 1; m <= 5; ++m) {
                        std::size_t up = 0;
                        std::size_t down = 0;
                        const double su = detail::ghost_index(static_cast<long>(iy) + m, ny, config.bc_y, up);
                        const double sd = detail::ghost_index(static_cast<long>(iy) - m, ny, config.bc_y, down);
                        second_y += kSecondDerivative[m - 1] * (su * phi[ix + nx * up] + sd * phi[ix + nx * down]);
                    }
                    value += d * second_y / (dy * dy);
                }
                out[ix + nx * iy] = value;
            }
        }
    };

    const std::size_t size = field.values.size();
    std::vector<double> k1(size), k2(size), k3(size), k4(size), tmp(size);
    auto &phi = field.values;
    for (long s = 0; s < substeps; ++s) {
        rhs(phi, k1);
        for (std::size_t i = 0; i < size; ++i) {
            tmp[i] = phi[i] + 0.5 * h * k1[i];
        }
        rhs(tmp, k2);
        for (std::size_t i = 0; i < size; ++i) {
            tmp[i] = phi[i] + 0.5 * h * k2[i];
        }
        rhs(tmp, k3);
        for (std::size_t i = 0; i < size; ++i) {
            tmp[i] = phi[i] + h * k3[i];
        }
        rhs(tmp, k4);
        for (std::size_t i = 0; i < size; ++i) {
            phi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    field.time = initial.time + config.t_final;
    return field;
}

} // namespace qscalar::reference
