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

/** @file develop.hpp
 * Development of a uniform structure into the Poincare disk: breadth-first
 * placement over a spanning tree of the dual graph, circumscribing circles,
 * intersection-angle verification, holonomy defects on the non-tree edges,
 * and single-vertex flower developments for cone-closure checks.
 *
 * The disk chart is conformal, so Euclidean angles between placed curves
 * equal their hyperbolic angles; the intersection angle of the circles
 * circumscribing the two triangles of an interior edge must reproduce the
 * pattern angle theta of that edge.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "idp/angles.hpp"
#include "idp/complex.hpp"
#include "idp/errors.hpp"
#include "idp/hypvol.hpp"
#include "idp/uniformize.hpp"

namespace idp
{

using DiskPoint = std::complex<double>;

/** Hyperbolic distance between two points of the open unit disk. */
inline auto disk_distance(DiskPoint z, DiskPoint w) -> double
{
    return 2.0 * std::atanh(std::abs((z - w) / (1.0 - std::conj(z) * w)));
}

/** @brief One triangle placed in the disk. parity +1 means the corner order
 * 0,1,2 runs counterclockwise in the chart. */
struct PlacedTriangle {
    std::array<DiskPoint, 3> corners{};
    int parity{1};
};

/** @brief Euclidean circle in the chart. Hyperbolic circles, horocycles and
 * equidistants all appear as such circles; no case split is needed. */
struct Circle {
    DiskPoint center;
    double radius;
};

struct HolonomyDefect {
    int edge;
    double defect; ///< max distance between the two developments of the endpoints
};

/** @brief A developed fundamental domain. */
struct Layout {
    std::vector<PlacedTriangle> triangles; ///< indexed by triangle id
    std::vector<char> placed;              ///< all true for connected complexes
    std::vector<int> tree_edges;           ///< dual spanning tree, BFS order
    std::vector<char> edge_in_tree;        ///< per edge id
    std::vector<HolonomyDefect> holonomy;  ///< non-tree interior edges
    int root{0};
};

namespace detail
{

/** Local corner pairs (in t1, in t2) identified across an edge, following the
 * gluing rule: the default identification swaps the flanking corners, flip
 * matches them directly. */
inline auto edge_corner_pairs(const Edge& ed) -> std::array<std::array<int, 2>, 2>
{
    const int a1 = (ed.s1 + 1) % 3;
    const int a2 = (ed.s1 + 2) % 3;
    const int b1 = (ed.s2 + 1) % 3;
    const int b2 = (ed.s2 + 2) % 3;
    if (ed.flip) {
        return {{{a1, b1}, {a2, b2}}};
    }
    return {{{a1, b2}, {a2, b1}}};
}

/** Mobius transport of q into the tangent picture at p: the unit direction
 * of the geodesic from p toward q, in the chart at p. */
inline auto geodesic_direction(DiskPoint p, DiskPoint q) -> DiskPoint
{
    const DiskPoint w = (q - p) / (1.0 - std::conj(p) * q);
    return w / std::abs(w);
}

/** Places triangle t with local corner i at the origin, local corner j on the
 * positive real axis, and the third corner k counterclockwise above the axis.
 * The parity records the induced orientation of the local order (0,1,2):
 * +1 when (i,j,k) is an even permutation. */
inline auto seed_triangle(const AngleVector& x, int t, int i, int j) -> PlacedTriangle
{
    const int k = 3 - i - j;
    PlacedTriangle out;
    out.parity = (j == (i + 1) % 3) ? 1 : -1;
    out.corners[static_cast<std::size_t>(i)] = 0.0;
    out.corners[static_cast<std::size_t>(j)] = std::tanh(0.5 * side_length(x, t, k));
    out.corners[static_cast<std::size_t>(k)] =
        std::polar(std::tanh(0.5 * side_length(x, t, j)), x[static_cast<std::size_t>(3 * t + i)]);
    return out;
}

/** Places the triangle on the far side of edge ed, entering from the side
 * (fromT, fromS) already placed as "from". The two shared corners inherit
 * their positions exactly; the third is constructed from the far triangle's
 * own angle and side length at the anchor corner. Returns the far triangle id
 * and its placement. */
inline auto place_across(const TriangularDecomposition& td, const AngleVector& x, int e,
                         int fromT, int fromS, const PlacedTriangle& from)
    -> std::pair<int, PlacedTriangle>
{
    const Edge& ed = td.edge(e);
    const bool fromFirst = (fromT == ed.t1 && fromS == ed.s1);
    const int tTo = fromFirst ? ed.t2 : ed.t1;
    const int sTo = fromFirst ? ed.s2 : ed.s1;

    PlacedTriangle to;
    to.parity = ed.flip ? -from.parity : from.parity;
    for (const auto& [c1, c2] : edge_corner_pairs(ed)) {
        const int cFrom = fromFirst ? c1 : c2;
        const int cTo = fromFirst ? c2 : c1;
        to.corners[static_cast<std::size_t>(cTo)] = from.corners[static_cast<std::size_t>(cFrom)];
    }

    const int k = sTo;            // third corner, opposite the shared side
    const int i = (sTo + 1) % 3;  // anchor
    const int j = (sTo + 2) % 3;
    const DiskPoint qi = to.corners[static_cast<std::size_t>(i)];
    const DiskPoint qj = to.corners[static_cast<std::size_t>(j)];
    const DiskPoint dir = geodesic_direction(qi, qj);
    const double len = side_length(x, tTo, j); // side j joins corners i and k
    const DiskPoint zeta =
        dir * std::polar(std::tanh(0.5 * len),
                         static_cast<double>(to.parity) *
                             x[static_cast<std::size_t>(3 * tTo + i)]);
    to.corners[static_cast<std::size_t>(k)] = (zeta + qi) / (1.0 + std::conj(qi) * zeta);
    return {tTo, to};
}

} // namespace detail

/** @brief Options for develop. */
struct DevelopOptions {
    double residual_tol{1e-8}; ///< required uniformity of the input structure
    int root{0};               ///< triangle seeded at the origin
};

/** @brief Develops a uniform structure into the disk over a breadth-first
 * dual spanning tree. The root triangle is placed with corner 0 at the
 * origin and corner 1 on the positive real axis. Non-tree interior edges
 * carry holonomy defects: on a surface with topology these measure the
 * developing map around essential cycles and need not vanish. */
inline auto develop(const TriangularDecomposition& td, const AngleVector& x,
                    const DevelopOptions& opts = {}) -> Layout
{
    if (static_cast<int>(x.size()) != td.corner_count()) {
        throw DomainError("develop: angle vector size must be 3 * triangle count");
    }
    const double residual = length_residual(td, x);
    if (residual > opts.residual_tol) {
        throw NotConvergedError("develop: structure is not uniform (edge lengths mismatch)",
                                residual);
    }
    if (opts.root < 0 || opts.root >= td.triangle_count()) {
        throw DomainError("develop: root triangle out of range");
    }

    Layout layout;
    layout.root = opts.root;
    layout.triangles.resize(static_cast<std::size_t>(td.triangle_count()));
    layout.placed.assign(static_cast<std::size_t>(td.triangle_count()), 0);
    layout.edge_in_tree.assign(static_cast<std::size_t>(td.edge_count()), 0);

    std::queue<int> frontier;
    const auto seed = [&](int t) {
        layout.triangles[static_cast<std::size_t>(t)] = detail::seed_triangle(x, t, 0, 1);
        layout.placed[static_cast<std::size_t>(t)] = 1;
        frontier.push(t);
    };
    seed(opts.root);

    // BFS forest: extra components (if any) are seeded at the origin too
    for (int scan = 0; scan <= td.triangle_count(); ++scan) {
        while (!frontier.empty()) {
            const int t = frontier.front();
            frontier.pop();
            for (int s = 0; s < 3; ++s) {
                const int e = td.edge_of_side(t, s);
                const Edge& ed = td.edge(e);
                if (!ed.interior()) {
                    continue;
                }
                const bool fromFirst = (t == ed.t1 && s == ed.s1);
                const int other = fromFirst ? ed.t2 : ed.t1;
                if (layout.placed[static_cast<std::size_t>(other)]) {
                    continue;
                }
                auto [tTo, pl] = detail::place_across(td, x, e, t, s,
                                                      layout.triangles[static_cast<std::size_t>(t)]);
                layout.triangles[static_cast<std::size_t>(tTo)] = pl;
                layout.placed[static_cast<std::size_t>(tTo)] = 1;
                layout.edge_in_tree[static_cast<std::size_t>(e)] = 1;
                layout.tree_edges.push_back(e);
                frontier.push(tTo);
            }
        }
        int next = -1;
        for (int t = 0; t < td.triangle_count(); ++t) {
            if (!layout.placed[static_cast<std::size_t>(t)]) {
                next = t;
                break;
            }
        }
        if (next < 0) {
            break;
        }
        seed(next);
    }

    // holonomy on the non-tree interior edges
    for (const int e : td.interior_edges()) {
        if (layout.edge_in_tree[static_cast<std::size_t>(e)]) {
            continue;
        }
        const Edge& ed = td.edge(e);
        const auto& p1 = layout.triangles[static_cast<std::size_t>(ed.t1)];
        const auto& p2 = layout.triangles[static_cast<std::size_t>(ed.t2)];
        double defect = 0.0;
        for (const auto& [c1, c2] : detail::edge_corner_pairs(ed)) {
            defect = std::max(defect,
                              disk_distance(p1.corners[static_cast<std::size_t>(c1)],
                                            p2.corners[static_cast<std::size_t>(c2)]));
        }
        layout.holonomy.push_back({e, defect});
    }
    return layout;
}

/** Euclidean circumcircle of a placed triangle. */
inline auto circumcircle(const PlacedTriangle& tri) -> Circle
{
    const DiskPoint z1 = tri.corners[0];
    const DiskPoint z2 = tri.corners[1];
    const DiskPoint z3 = tri.corners[2];
    const double d = 2.0 * (z1.real() * (z2.imag() - z3.imag()) +
                            z2.real() * (z3.imag() - z1.imag()) +
                            z3.real() * (z1.imag() - z2.imag()));
    const double scale =
        std::max({std::abs(z1 - z2), std::abs(z2 - z3), std::abs(z3 - z1), 1e-30});
    if (std::abs(d) < 1e-14 * scale) {
        throw CircumcircleDegenerate("placed corners are collinear in the chart");
    }
    const double n1 = std::norm(z1);
    const double n2 = std::norm(z2);
    const double n3 = std::norm(z3);
    const DiskPoint center{(n1 * (z2.imag() - z3.imag()) + n2 * (z3.imag() - z1.imag()) +
                            n3 * (z1.imag() - z2.imag())) /
                               d,
                           (n1 * (z3.real() - z2.real()) + n2 * (z1.real() - z3.real()) +
                            n3 * (z2.real() - z1.real())) /
                               d};
    return {center, std::abs(z1 - center)};
}

/** Intersection angle of two circles from the triangle-of-centers relation
 * cos(angle) = (d^2 - r1^2 - r2^2) / (2 r1 r2); requires the circles to
 * actually meet. */
inline auto circle_angle(const Circle& c1, const Circle& c2) -> double
{
    const double d = std::abs(c1.center - c2.center);
    const double arg = (d * d - c1.radius * c1.radius - c2.radius * c2.radius) /
                       (2.0 * c1.radius * c2.radius);
    if (std::abs(arg) > 1.0 + 1e-9) {
        throw DomainError("circle_angle: circles do not intersect");
    }
    return std::acos(std::clamp(arg, -1.0, 1.0));
}

struct EdgeAngleCheck {
    int edge;
    double expected; ///< theta of the edge at the given angle system
    double measured; ///< circumcircle intersection angle in the chart
};

/** @brief Geometry-vs-combinatorics report for a developed layout. */
struct VerifyReport {
    double max_length_error{0.0}; ///< placed side lengths vs law-of-cosines lengths
    double max_mating_gap{0.0};   ///< endpoint coincidence across tree edges
    double max_angle_error{0.0};  ///< circumcircle angles vs theta, tree edges
    std::vector<EdgeAngleCheck> angles;
    std::vector<HolonomyDefect> holonomy;
};

/** Measures every placed triangle and every tree-adjacent interior edge of a
 * layout against the angle system that produced it. */
inline auto verify_pattern(const TriangularDecomposition& td, const AngleVector& x,
                           const Layout& layout) -> VerifyReport
{
    VerifyReport rep;
    for (int t = 0; t < td.triangle_count(); ++t) {
        if (!layout.placed[static_cast<std::size_t>(t)]) {
            continue;
        }
        const auto& pl = layout.triangles[static_cast<std::size_t>(t)];
        for (int s = 0; s < 3; ++s) {
            const double placedLen = disk_distance(pl.corners[static_cast<std::size_t>((s + 1) % 3)],
                                                   pl.corners[static_cast<std::size_t>((s + 2) % 3)]);
            rep.max_length_error =
                std::max(rep.max_length_error, std::abs(placedLen - side_length(x, t, s)));
        }
    }

    for (const int e : layout.tree_edges) {
        const Edge& ed = td.edge(e);
        const auto& p1 = layout.triangles[static_cast<std::size_t>(ed.t1)];
        const auto& p2 = layout.triangles[static_cast<std::size_t>(ed.t2)];
        for (const auto& [c1, c2] : detail::edge_corner_pairs(ed)) {
            rep.max_mating_gap =
                std::max(rep.max_mating_gap,
                         disk_distance(p1.corners[static_cast<std::size_t>(c1)],
                                       p2.corners[static_cast<std::size_t>(c2)]));
        }
        const double measured =
            circle_angle(circumcircle(p1), circumcircle(p2));
        const double expected = theta_edge_value(td, x, e);
        rep.angles.push_back({e, expected, measured});
        rep.max_angle_error = std::max(rep.max_angle_error, std::abs(measured - expected));
    }
    rep.holonomy = layout.holonomy;
    return rep;
}

/** @brief Development of the triangles around one vertex, pinned at the origin. */
struct FlowerDevelopment {
    int vertex;
    std::vector<PlacedTriangle> triangles; ///< one per flower corner, chain order
    std::vector<double> corner_angles;     ///< angle measured at the origin per triangle
    double total_angle{0.0};               ///< sum of the measured angles
    /** For cyclic flowers: after walking once around, the re-entrant copy of
     * the first triangle must coincide with the original rotated by the
     * vertex target; this is the max hyperbolic mismatch over its corners.
     * NaN for boundary vertices (no closure constraint). */
    double closure_defect{std::numeric_limits<double>::quiet_NaN()};
};

/** Develops the flower of vertex v by mating triangles around the origin.
 * The placements use actual hyperbolic side lengths, so on a non-uniform
 * system the chain need not close; at a uniform structure with vertex sum
 * equal to the target, the closure defect vanishes. */
inline auto develop_flower(const TriangularDecomposition& td, const AngleVector& x, int v)
    -> FlowerDevelopment
{
    if (static_cast<int>(x.size()) != td.corner_count()) {
        throw DomainError("develop_flower: angle vector size must be 3 * triangle count");
    }
    const Flower& fl = td.flower(v);

    FlowerDevelopment dev;
    dev.vertex = v;

    const int c0 = fl.corners[0];
    const int t0 = c0 / 3;
    const int i0 = c0 % 3;
    int in0 = (i0 + 1) % 3;
    if (!fl.cyclic && !fl.out_sides.empty()) {
        const int out0 = fl.out_sides[0];
        in0 = (out0 == (i0 + 1) % 3) ? (i0 + 2) % 3 : (i0 + 1) % 3;
    }
    const int j0 = ((in0 + 1) % 3 == i0) ? (in0 + 2) % 3 : (in0 + 1) % 3;
    dev.triangles.push_back(detail::seed_triangle(x, t0, i0, j0));

    const auto measure = [&](int idx) {
        const int c = fl.corners[static_cast<std::size_t>(idx)];
        const int vi = c % 3;
        const auto& pl = dev.triangles[static_cast<std::size_t>(idx)];
        const DiskPoint a = pl.corners[static_cast<std::size_t>((vi + 1) % 3)];
        const DiskPoint b = pl.corners[static_cast<std::size_t>((vi + 2) % 3)];
        const double ang = std::abs(std::arg(b / a));
        dev.corner_angles.push_back(ang);
        dev.total_angle += ang;
    };
    measure(0);

    const int crossings = static_cast<int>(fl.out_sides.size());
    for (int step = 0; step < crossings; ++step) {
        const int cFrom = fl.corners[static_cast<std::size_t>(step)];
        const int tFrom = cFrom / 3;
        const int sOut = fl.out_sides[static_cast<std::size_t>(step)];
        const int e = fl.links[static_cast<std::size_t>(step + (fl.cyclic ? 0 : 1))];
        auto [tTo, pl] = detail::place_across(td, x, e, tFrom, sOut,
                                              dev.triangles[static_cast<std::size_t>(step)]);
        if (fl.cyclic && step == crossings - 1) {
            // re-entrant copy of the seed: closure against rotation by the target
            const DiskPoint rot = std::polar(1.0, td.vertex_target(v));
            double defect = 0.0;
            for (int j = 0; j < 3; ++j) {
                defect = std::max(
                    defect, disk_distance(pl.corners[static_cast<std::size_t>(j)],
                                          rot * dev.triangles[0].corners[static_cast<std::size_t>(j)]));
            }
            dev.closure_defect = defect;
            break;
        }
        dev.triangles.push_back(pl);
        measure(step + 1);
        (void)tTo;
    }
    return dev;
}

} // namespace idp
