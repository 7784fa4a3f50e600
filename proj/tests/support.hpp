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

/**
 * @file support.hpp
 * @brief Shared test fixtures: reference complexes, deterministic random
 * samplers, and independent numerical oracles used to cross-check the library
 * implementations (a quadrature route to the Lobachevsky function, a
 * law-of-cosines route to hyperbolic side lengths, finite differences).
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "idp/idp.hpp"

namespace idptest
{

inline auto data_path(const std::string& name) -> std::string
{
    return std::string(IDP_TEST_DATA_DIR) + "/" + name;
}

inline auto golden_path(const std::string& name) -> std::string
{
    return std::string(IDP_TEST_GOLDEN_DIR) + "/" + name;
}

// ---- reference complexes ---------------------------------------------------

/** Closed genus-2 surface from six triangles around an octagon fan; one
 * vertex, nine edges, Euler characteristic -2. */
inline auto genus2_spec() -> idp::GluingSpec
{
    idp::GluingSpec spec;
    spec.triangles = 6;
    spec.gluings = {
        {{0, 1}, {1, 2}, false}, {{1, 1}, {2, 2}, false}, {{2, 1}, {3, 2}, false},
        {{3, 1}, {4, 2}, false}, {{4, 1}, {5, 2}, false}, {{0, 2}, {1, 0}, false},
        {{0, 0}, {2, 0}, false}, {{3, 0}, {5, 0}, false}, {{4, 0}, {5, 1}, false},
    };
    return spec;
}

/** Two triangles glued along all three sides: a sphere, chi = 2. */
inline auto sphere_double_spec() -> idp::GluingSpec
{
    idp::GluingSpec spec;
    spec.triangles = 2;
    spec.gluings = {{{0, 0}, {1, 0}, false}, {{0, 1}, {1, 2}, false}, {{0, 2}, {1, 1}, false}};
    return spec;
}

/** Seven triangles around a single interior hub vertex; disk with boundary.
 * Boundary vertex targets are set to 1/2 so strict angle systems exist. */
inline auto wheel7_spec() -> idp::GluingSpec
{
    idp::GluingSpec spec;
    spec.triangles = 7;
    for (int i = 0; i < 7; ++i) {
        spec.gluings.push_back({{i, 1}, {(i + 1) % 7, 2}, false});
    }
    for (int v = 1; v <= 7; ++v) {
        spec.vertex_targets[v] = 1.2;
    }
    return spec;
}

/** One unglued triangle; targets are the pi/9 equilateral corner angles. */
inline auto single_triangle_spec() -> idp::GluingSpec
{
    idp::GluingSpec spec;
    spec.triangles = 1;
    const double a = std::numbers::pi / 9.0;
    spec.vertex_targets = {{0, a}, {1, a}, {2, a}};
    return spec;
}

// ---- deterministic randomness ------------------------------------------------

inline auto rng(unsigned seed) -> std::mt19937
{
    return std::mt19937{seed};
}

/** Random point of the affine flat: per-vertex random positive corner weights
 * scaled so each vertex sum equals its target exactly. Angles need not be
 * below pi nor triangles hyperbolic. */
inline auto random_vertex_split(const idp::TriangularDecomposition& td, std::mt19937& gen)
    -> idp::AngleVector
{
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    idp::AngleVector x(static_cast<std::size_t>(td.corner_count()), 0.0);
    for (int v = 0; v < td.vertex_count(); ++v) {
        const auto& corners = td.vertex_corners(v);
        std::vector<double> w(corners.size());
        double total = 0.0;
        for (auto& wi : w) {
            wi = unit(gen);
            total += wi;
        }
        const double target = td.vertex_target(v);
        for (std::size_t i = 0; i < corners.size(); ++i) {
            x[static_cast<std::size_t>(corners[i])] = target * w[i] / total;
        }
    }
    return x;
}

/** Random strict angle system: blend the even split toward a random flat
 * point until strictness would break, staying safely inside. */
inline auto random_strict(const idp::TriangularDecomposition& td, std::mt19937& gen)
    -> idp::AngleVector
{
    const idp::AngleVector base = idp::default_start(td);
    for (int attempt = 0; attempt < 64; ++attempt) {
        const idp::AngleVector raw = random_vertex_split(td, gen);
        double s = 0.6;
        for (int halvings = 0; halvings < 20; ++halvings, s *= 0.5) {
            idp::AngleVector x(base.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
                x[i] = (1.0 - s) * base[i] + s * raw[i];
            }
            if (idp::strict_system(td, x)) {
                return x;
            }
        }
    }
    return base;
}

/** Random conformal coefficients, one per basis vector, in [lo, hi]. */
inline auto random_coefficients(std::size_t n, std::mt19937& gen, double lo, double hi)
    -> std::vector<double>
{
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> c(n);
    for (auto& ci : c) {
        ci = dist(gen);
    }
    return c;
}

/** Random strict hyperbolic angle triple: positive angles, sum below pi. */
inline auto random_strict_triple(std::mt19937& gen) -> idp::AngleTriple
{
    std::uniform_real_distribution<double> sum_dist(0.3, 3.0);
    std::uniform_real_distribution<double> unit(0.08, 1.0);
    const double sigma = std::min(sum_dist(gen), std::numbers::pi - 0.05);
    double w0 = unit(gen);
    double w1 = unit(gen);
    double w2 = unit(gen);
    const double total = w0 + w1 + w2;
    return {sigma * w0 / total, sigma * w1 / total, sigma * w2 / total};
}

/** Random pattern with every theta strictly inside its admissibility window. */
inline auto random_window_pattern(const idp::TriangularDecomposition& td, std::mt19937& gen)
    -> idp::PatternVector
{
    idp::PatternVector p;
    for (int e = 0; e < td.edge_count(); ++e) {
        const double window =
            td.edge(e).interior() ? std::numbers::pi : 0.5 * std::numbers::pi;
        std::uniform_real_distribution<double> dist(0.05, window - 0.05);
        p.theta.push_back(dist(gen));
    }
    return p;
}

/** Random gluing description: F triangles, a random subset of sides paired
 * off (never a side with itself), random flips. Always builds: the only
 * structural failure mode is a self-glued side. */
inline auto random_gluing_spec(std::mt19937& gen, int max_triangles) -> idp::GluingSpec
{
    std::uniform_int_distribution<int> fdist(1, max_triangles);
    idp::GluingSpec spec;
    spec.triangles = fdist(gen);
    std::vector<std::array<int, 2>> sides;
    for (int t = 0; t < spec.triangles; ++t) {
        for (int s = 0; s < 3; ++s) {
            sides.push_back({t, s});
        }
    }
    std::shuffle(sides.begin(), sides.end(), gen);
    std::uniform_int_distribution<int> pairs_dist(0, static_cast<int>(sides.size()) / 2);
    const int pairs = pairs_dist(gen);
    std::bernoulli_distribution flip(0.3);
    for (int i = 0; i < pairs; ++i) {
        spec.gluings.push_back({sides[2 * i], sides[2 * i + 1], flip(gen)});
    }
    return spec;
}

// ---- independent oracles -----------------------------------------------------

namespace detail
{

inline auto simpson(const std::function<double(double)>& f, double a, double b) -> double
{
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline auto adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                             double whole, double tol, int depth) -> double
{
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/** Quadrature route to the Lobachevsky function, fully independent of the
 * series implementation: split -ln|2 sin t| = -ln(2t) - ln(sin t / t) on
 * (0, theta); the first part integrates in closed form, the second is smooth
 * and handled by adaptive Simpson. Odd extension for negative arguments,
 * pi-periodicity for large ones. */
inline auto lobachevsky_quadrature(double theta) -> double
{
    const double reduced = std::remainder(theta, std::numbers::pi);
    if (reduced == 0.0) {
        return 0.0;
    }
    const double t = std::abs(reduced);
    const auto smooth = [](double u) {
        if (std::abs(u) < 1e-8) {
            return -u * u / 6.0; // ln(sin u / u) ~ -u^2/6
        }
        return std::log(std::sin(u) / u);
    };
    const double closed = t * std::log(2.0 * t) - t;
    const double rest =
        detail::adaptive_simpson(smooth, 0.0, t, detail::simpson(smooth, 0.0, t), 1e-14, 48);
    const double value = -(closed + rest);
    return reduced > 0.0 ? value : -value;
}

/** Hyperbolic law of cosines route to the side length opposite A. */
inline auto side_length_law_of_cosines(double A, double B, double C) -> double
{
    const double ca = (std::cos(A) + std::cos(B) * std::cos(C)) / (std::sin(B) * std::sin(C));
    return std::acosh(ca);
}

/** Central finite difference. */
inline auto central_difference(const std::function<double(double)>& f, double h) -> double
{
    return (f(h) - f(-h)) / (2.0 * h);
}

// ---- structural identity helpers ----------------------------------------------

/** Sum of theta over the edges meeting a triangle set, evaluated directly. */
inline auto theta_sum_direct(const idp::TriangularDecomposition& td, const idp::AngleVector& x,
                             const std::vector<char>& in_set) -> double
{
    double sum = 0.0;
    for (int e = 0; e < td.edge_count(); ++e) {
        const idp::Edge& ed = td.edge(e);
        const bool touches = in_set[static_cast<std::size_t>(ed.t1)] ||
                             (ed.interior() && in_set[static_cast<std::size_t>(ed.t2)]);
        if (touches) {
            sum += idp::theta_edge_value(td, x, e);
        }
    }
    return sum;
}

/** The same sum, assembled from per-triangle curvatures plus psi corrections
 * on interior edges with exactly one side in the set (the correction uses the
 * psi of the side in the triangle outside the set). */
inline auto theta_sum_assembled(const idp::TriangularDecomposition& td,
                                const idp::AngleVector& x, const std::vector<char>& in_set)
    -> double
{
    double sum = 0.0;
    for (int t = 0; t < td.triangle_count(); ++t) {
        if (in_set[static_cast<std::size_t>(t)]) {
            sum += std::numbers::pi - 0.5 * idp::curvature_value(td, x, t);
        }
    }
    for (const int e : td.interior_edges()) {
        const idp::Edge& ed = td.edge(e);
        const bool in1 = in_set[static_cast<std::size_t>(ed.t1)];
        const bool in2 = in_set[static_cast<std::size_t>(ed.t2)];
        if (in1 != in2) {
            const int t_out = in1 ? ed.t2 : ed.t1;
            const int s_out = in1 ? ed.s2 : ed.s1;
            sum += 0.5 * std::numbers::pi - idp::psi_side_value(td, x, t_out, s_out);
        }
    }
    return sum;
}

} // namespace idptest
