// Copyright 2026 The idp authors
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

/** @file hypvol.hpp
 * Hyperbolic volume primitives: the Lobachevsky function, ideal tetrahedra,
 * and the volume of the ideal prism spanned by a hyperbolic triangle with
 * angles (A, B, C), A + B + C < pi.
 *
 * The prism volume is computed two independent ways: (a) as the sum of three
 * ideal tetrahedra slicing the prism, and (b) as a path integral of the
 * exact differential dV = -(a* dA* + b* dB* + c* dC*), where a* is twice the
 * log of sinh of half the edge length opposite A and A* = (pi + A - B - C)/2
 * is the angle of the truncated face. Both must agree; prism_volume_checked
 * enforces this at runtime.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "idp/errors.hpp"

namespace idp
{

/** @brief Angles (A, B, C) of one hyperbolic triangle. */
using AngleTriple = std::array<double, 3>;

/** @brief Corner angles, indexed by global corner id 3t+i. */
using AngleVector = std::vector<double>;

/** Strict hyperbolic triangle: all angles positive, angle sum below pi. */
inline auto strict_triple(const AngleTriple& d) noexcept -> bool
{
    return d[0] > 0.0 && d[1] > 0.0 && d[2] > 0.0 &&
           d[0] + d[1] + d[2] < std::numbers::pi;
}

inline void require_strict(const AngleTriple& d, const char* where)
{
    if (!strict_triple(d)) {
        throw DomainError(std::string(where) +
                          ": angles must be positive with sum below pi, got (" +
                          std::to_string(d[0]) + ", " + std::to_string(d[1]) + ", " +
                          std::to_string(d[2]) + ")");
    }
}

/** Angle-sum defect k = A + B + C - pi (negative on strict triples). */
inline auto triple_curvature(const AngleTriple& d) noexcept -> double
{
    return d[0] + d[1] + d[2] - std::numbers::pi;
}

/** Truncated-face angles A* = (pi + A - B - C)/2, cyclically. */
inline auto star_angles(const AngleTriple& d) noexcept -> AngleTriple
{
    const double pi = std::numbers::pi;
    return {0.5 * (pi + d[0] - d[1] - d[2]), 0.5 * (pi + d[1] - d[0] - d[2]),
            0.5 * (pi + d[2] - d[0] - d[1])};
}

/** @brief Lobachevsky function: minus the integral of log|2 sin| from 0 to theta.
 *
 * Odd, pi-periodic, maximal at pi/6. Evaluated by reducing the argument to
 * [-pi/2, pi/2] and either summing the power series
 *   theta - theta log(2 theta) + sum_n c_n theta^(2n+1)
 * (for reduced |theta| <= 0.36 pi) or applying the duplication identity
 *   L(theta) = L(2 theta)/2 - L(theta - pi/2 sgn theta)
 * once, which lands both arguments inside the series range. Absolute error
 * is a few ulp of the maximum (~1e-16).
 */
template <typename T = double>
auto lobachevsky(T theta) -> T
{
    static constexpr T kCoeff[] = {
        T(0.0555555555555555555556L),    T(0.00111111111111111111111L),
        T(0.0000503905265810027714790L), T(0.00000293944738389182833627L),
        T(1.94343628687063030497e-7L),   T(1.38743864154256231315e-8L),
        T(1.04409275485113227618e-9L),   T(8.16713558455135260149e-11L),
        T(6.58124167158157685796e-12L),  T(5.42979790585528163473e-13L),
        T(4.56648865592937235109e-14L),  T(3.90195113663748065987e-15L),
        T(3.37906230772559177992e-16L),  T(2.95990336617089977575e-17L),
        T(2.61848968055735147646e-18L),  T(2.33652348912614343806e-19L),
        T(2.10081283791771504033e-20L),  T(1.90164897578125738102e-21L),
        T(1.73175571544037021668e-22L),  T(1.58559124756934595052e-23L),
        T(1.45887336900076419389e-24L),  T(1.34824993139262371387e-25L),
        T(1.25106582891259527772e-26L),  T(1.16519547379674802076e-27L),
        T(1.08892051659468371926e-28L),  T(1.02083935002245259586e-29L),
    };
    constexpr T pi = std::numbers::pi_v<T>;

    const auto series = [&](T t) -> T {
        if (t == T(0)) {
            return T(0);
        }
        const T a = std::abs(t);
        const T a2 = a * a;
        T power = a * a2;
        T sum = a - a * std::log(T(2) * a);
        for (const T c : kCoeff) {
            const T term = c * power;
            sum += term;
            if (term < T(1e-20) * a) {
                break;
            }
            power *= a2;
        }
        return std::copysign(sum, t);
    };

    // reduce to the fundamental half-period
    T r = std::remainder(theta, pi);
    if (std::abs(r) <= T(0.36L) * pi) {
        return series(r);
    }
    const T u = r - std::copysign(pi / T(2), r);
    return series(T(2) * u) / T(2) - series(u);
}

/** @brief Volume of the ideal tetrahedron with dihedral angles (alpha, beta,
 * pi - alpha - beta): the sum of the Lobachevsky function at its angles. */
inline auto ideal_tet_volume(double alpha, double beta) -> double
{
    const double gamma = std::numbers::pi - alpha - beta;
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0)) {
        throw DomainError("ideal_tet_volume: dihedral angles must be positive with sum pi");
    }
    return lobachevsky(alpha) + lobachevsky(beta) + lobachevsky(gamma);
}

/** Three-angle form; the angles must sum to pi (checked loosely). */
inline auto ideal_tet_volume(const AngleTriple& t) -> double
{
    if (std::abs(t[0] + t[1] + t[2] - std::numbers::pi) > 1e-9) {
        throw DomainError("ideal_tet_volume: dihedral angles must sum to pi");
    }
    return ideal_tet_volume(t[0], t[1]);
}

/** @brief Twice the log of sinh of half the edge length opposite A.
 *
 * From the hyperbolic law of cosines, cosh(a) = (cos A + cos B cos C) /
 * (sin B sin C); the quantity 2 log sinh(a/2) = log((cosh a - 1)/2) expands
 * into the cancellation-free form used here, valid for any strict triple
 * including uniformly scaled-down ones (where each log term stays finite).
 */
inline auto truncated_length(double A, double B, double C) -> double
{
    require_strict({A, B, C}, "truncated_length");
    const double halfSum = 0.5 * (A + B + C);
    return std::log(std::cos(halfSum)) + std::log(std::cos(A - halfSum)) -
           std::log(std::sin(B)) - std::log(std::sin(C));
}

/** Truncated lengths of all three edges; entry i is opposite angle d[i]. */
inline auto truncated_lengths(const AngleTriple& d) -> AngleTriple
{
    return {truncated_length(d[0], d[1], d[2]), truncated_length(d[1], d[2], d[0]),
            truncated_length(d[2], d[0], d[1])};
}

/** Hyperbolic length of the edge opposite A, recovered from half the
 * truncated length as 2 asinh(exp(.)); stable even for nearly flat triples. */
inline auto edge_length(double A, double B, double C) -> double
{
    return 2.0 * std::asinh(std::exp(0.5 * truncated_length(A, B, C)));
}

inline auto edge_lengths(const AngleTriple& d) -> AngleTriple
{
    return {edge_length(d[0], d[1], d[2]), edge_length(d[1], d[2], d[0]),
            edge_length(d[2], d[0], d[1])};
}

/** @brief The three ideal tetrahedra slicing the prism over (A, B, C).
 *
 * With stars X* = (pi + X - Y - Z)/2 and defect k = A + B + C - pi:
 *   (A, B*, C*), (B, -k/2, pi - B*), (C, A*, B*).
 * Each triple sums to pi with positive entries for any strict input, and the
 * volumes add up to the symmetric closed form
 *   L(A) + L(B) + L(C) + L(A*) + L(B*) + L(C*) + L(-k/2).
 */
inline auto tetra_decomposition(const AngleTriple& d) -> std::array<AngleTriple, 3>
{
    require_strict(d, "tetra_decomposition");
    const AngleTriple s = star_angles(d);
    const double k = triple_curvature(d);
    return {AngleTriple{d[0], s[1], s[2]},
            AngleTriple{d[1], -0.5 * k, std::numbers::pi - s[1]},
            AngleTriple{d[2], s[0], s[1]}};
}

/** Prism volume via the tetrahedron slicing. */
inline auto prism_volume(const AngleTriple& d) -> double
{
    double v = 0.0;
    for (const AngleTriple& tet : tetra_decomposition(d)) {
        v += ideal_tet_volume(tet[0], tet[1]);
    }
    return v;
}

namespace detail
{

/** @brief Integral of f over (0, 1) by tanh-sinh (double-exponential)
 * quadrature; tolerates integrable endpoint singularities such as logs. */
template <typename F>
auto tanh_sinh_01(F&& f, double tol = 5e-14, int max_level = 12) -> double
{
    constexpr double pi = std::numbers::pi;
    constexpr double tMax = 6.9; // beyond this the weight underflows

    const auto node = [&](double t) -> double {
        const double u = pi * std::sinh(t);
        const double x = 1.0 / (1.0 + std::exp(-u));   // stable near 0
        const double omx = 1.0 / (1.0 + std::exp(u));  // stable near 1
        const double w = pi * std::cosh(t) * x * omx;
        if (w == 0.0) {
            return 0.0;
        }
        return w * f(x);
    };

    double h = 1.0;
    double sum = node(0.0);
    for (int k = 1; k * h <= tMax; ++k) {
        sum += node(k * h) + node(-k * h);
    }
    double estimate = h * sum;

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double odd = 0.0;
        for (int k = 1; k * h <= tMax; k += 2) {
            odd += node(k * h) + node(-k * h);
        }
        sum += odd;
        const double refined = h * sum;
        const double delta = std::abs(refined - estimate);
        estimate = refined;
        if (level >= 3 && delta <= tol * std::max(1.0, std::abs(refined))) {
            break;
        }
    }
    return estimate;
}

/** One straight-line leg of the volume path integral. The integrand uses the
 * Schlaefli differential with the truncated-face angles moving linearly, so
 * their derivatives are constant along the leg. */
inline auto prism_path_leg(const AngleTriple& from, const AngleTriple& to) -> double
{
    const AngleTriple delta = {to[0] - from[0], to[1] - from[1], to[2] - from[2]};
    const AngleTriple dstar = {0.5 * (delta[0] - delta[1] - delta[2]),
                               0.5 * (delta[1] - delta[0] - delta[2]),
                               0.5 * (delta[2] - delta[0] - delta[1])};
    return tanh_sinh_01([&](double s) {
        const double A = from[0] + s * delta[0];
        const double B = from[1] + s * delta[1];
        const double C = from[2] + s * delta[2];
        return -(truncated_length(A, B, C) * dstar[0] + truncated_length(B, C, A) * dstar[1] +
                 truncated_length(C, A, B) * dstar[2]);
    });
}

} // namespace detail

/** @brief Prism volume as a path integral of the exact Schlaefli differential,
 * anchored at the zero-angle corner of the domain where the volume vanishes.
 * The straight path from the origin hits a logarithmic endpoint singularity,
 * which the double-exponential quadrature absorbs. */
inline auto prism_volume_path(const AngleTriple& d) -> double
{
    require_strict(d, "prism_volume_path");
    return detail::prism_path_leg({0.0, 0.0, 0.0}, d);
}

/** Path-integral volume routed through a waypoint; the domain is convex, so
 * any strict waypoint yields an admissible two-leg path. Used to test path
 * independence of the differential. */
inline auto prism_volume_path(const AngleTriple& d, const AngleTriple& via) -> double
{
    require_strict(d, "prism_volume_path");
    require_strict(via, "prism_volume_path waypoint");
    return detail::prism_path_leg({0.0, 0.0, 0.0}, via) + detail::prism_path_leg(via, d);
}

/** Tetrahedron-slicing volume cross-checked against the path integral. */
inline auto prism_volume_checked(const AngleTriple& d, double tol = 1e-8) -> double
{
    const double bySlicing = prism_volume(d);
    const double byPath = prism_volume_path(d);
    if (std::abs(bySlicing - byPath) > tol) {
        throw CrossCheckFailure("prism volume methods disagree", bySlicing, byPath);
    }
    return bySlicing;
}

/** @brief Gradient of the prism volume in the corner angles:
 * dV/dA = (-a* + b* + c*)/2, cyclically, with a* the truncated length
 * opposite A. Follows from the Schlaefli differential by the chain rule
 * through the truncated-face angles. */
inline auto prism_gradient(const AngleTriple& d) -> AngleTriple
{
    const AngleTriple t = truncated_lengths(d);
    return {0.5 * (-t[0] + t[1] + t[2]), 0.5 * (t[0] - t[1] + t[2]),
            0.5 * (t[0] + t[1] - t[2])};
}

/** Angles of triangle t inside a full angle vector. */
inline auto triangle_angles(const AngleVector& x, int t) -> AngleTriple
{
    return {x[static_cast<std::size_t>(3 * t)], x[static_cast<std::size_t>(3 * t + 1)],
            x[static_cast<std::size_t>(3 * t + 2)]};
}

} // namespace idp
