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

/** @file svg.hpp
 * SVG rendering of developed layouts: the unit-disk boundary, triangle sides
 * as geodesic arcs (circular arcs orthogonal to the boundary, or diameters),
 * and optional circumscribing circles. Output is deterministic for a fixed
 * layout: triangles ascending, sides ascending, fixed-precision numbers.
 */

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "idp/complex.hpp"
#include "idp/develop.hpp"

namespace idp
{

namespace detail
{

/** @brief A geodesic segment prepared for drawing: either a straight chord
 * through the origin or a circular arc (center outside the disk, orthogonal
 * to the boundary). sweep_ccw says whether the arc runs counterclockwise
 * from "from" to "to" in mathematical orientation. */
struct GeodesicArc {
    bool straight{false};
    DiskPoint from;
    DiskPoint to;
    DiskPoint center;
    double radius{0.0};
    bool sweep_ccw{false};
};

inline auto geodesic_arc(DiskPoint z1, DiskPoint z2) -> GeodesicArc
{
    GeodesicArc arc;
    arc.from = z1;
    arc.to = z2;
    const double cross = z1.real() * z2.imag() - z1.imag() * z2.real();
    if (std::abs(cross) <= 1e-12 * (1.0 + std::norm(z1) + std::norm(z2))) {
        arc.straight = true; // collinear with the origin: the geodesic is a diameter
        return arc;
    }
    // circle through z1, z2 orthogonal to the unit circle: |c|^2 = r^2 + 1
    const double n1 = std::norm(z1) + 1.0;
    const double n2 = std::norm(z2) + 1.0;
    const double det = 2.0 * cross;
    arc.center = {(n1 * z2.imag() - n2 * z1.imag()) / det,
                  (n2 * z1.real() - n1 * z2.real()) / det};
    arc.radius = std::sqrt(std::norm(arc.center) - 1.0);
    const DiskPoint u = z1 - arc.center;
    const DiskPoint v = z2 - arc.center;
    arc.sweep_ccw = (u.real() * v.imag() - u.imag() * v.real()) > 0.0;
    return arc;
}

} // namespace detail

/** @brief Rendering knobs. */
struct RenderOptions {
    bool circumcircles{false};
    int pixels{800};
};

/** Renders the placed triangles of a layout. Every side of every placed
 * triangle is drawn; a tree-shared side is drawn once (the two copies
 * coincide), while both copies of a non-tree interior edge are drawn, making
 * holonomy visible. */
inline auto render_svg(const TriangularDecomposition& td, const Layout& layout,
                       const RenderOptions& opts = {}) -> std::string
{
    std::string out;
    const auto emit = [&out](const char* fmt, auto... args) {
        char buf[512];
        std::snprintf(buf, sizeof(buf), fmt, args...);
        out += buf;
    };

    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    emit("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
         "width=\"%d\" height=\"%d\">\n",
         opts.pixels, opts.pixels);
    out += "<g transform=\"scale(1,-1)\" fill=\"none\">\n";
    out += "<circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#888888\" stroke-width=\"0.004\"/>\n";

    const auto path = [&](DiskPoint a, DiskPoint b) {
        const detail::GeodesicArc arc = detail::geodesic_arc(a, b);
        if (arc.straight) {
            emit("<path d=\"M %.6f %.6f L %.6f %.6f\"/>\n", a.real(), a.imag(), b.real(),
                 b.imag());
        } else {
            emit("<path d=\"M %.6f %.6f A %.6f %.6f 0 0 %d %.6f %.6f\"/>\n", a.real(), a.imag(),
                 arc.radius, arc.radius, arc.sweep_ccw ? 1 : 0, b.real(), b.imag());
        }
    };

    out += "<g stroke=\"#000000\" stroke-width=\"0.003\">\n";
    for (int t = 0; t < td.triangle_count(); ++t) {
        if (!layout.placed[static_cast<std::size_t>(t)]) {
            continue;
        }
        const auto& pl = layout.triangles[static_cast<std::size_t>(t)];
        for (int s = 0; s < 3; ++s) {
            const int e = td.edge_of_side(t, s);
            const Edge& ed = td.edge(e);
            // a tree-glued side appears twice with identical geometry; keep one
            if (layout.edge_in_tree[static_cast<std::size_t>(e)] &&
                !(t == ed.t1 && s == ed.s1)) {
                continue;
            }
            path(pl.corners[static_cast<std::size_t>((s + 1) % 3)],
                 pl.corners[static_cast<std::size_t>((s + 2) % 3)]);
        }
    }
    out += "</g>\n";

    if (opts.circumcircles) {
        out += "<g stroke=\"#3366cc\" stroke-width=\"0.002\">\n";
        for (int t = 0; t < td.triangle_count(); ++t) {
            if (!layout.placed[static_cast<std::size_t>(t)]) {
                continue;
            }
            const Circle c = circumcircle(layout.triangles[static_cast<std::size_t>(t)]);
            emit("<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\"/>\n", c.center.real(),
                 c.center.imag(), c.radius);
        }
        out += "</g>\n";
    }

    out += "</g>\n</svg>\n";
    return out;
}

} // namespace idp
