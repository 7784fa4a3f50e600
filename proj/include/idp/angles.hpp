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

/** @file angles.hpp
 * Angle systems on a triangulated surface and the linear functionals used
 * throughout: vertex sums, triangle curvatures, edge functionals psi/theta,
 * and the conformal deformation space they induce.
 *
 * For a side s of triangle t with opposite angle A and flanking angles B, C:
 *   psi = (B + C - A)/2            (per-side edge functional)
 *   theta (per side) = pi/2 - psi  = (pi + A - B - C)/2
 * For an edge: psi sums its one or two side values; theta = pi - psi on
 * interior edges and pi/2 - psi on boundary edges. theta is the intersection
 * angle of circumscribing circles in a realized pattern.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "idp/complex.hpp"
#include "idp/errors.hpp"

namespace idp
{

/** @brief Corner angles, indexed by global corner id 3t+i. */
using AngleVector = std::vector<double>;

/** @brief Sparse affine functional on angle vectors. */
struct Covector {
    std::vector<std::pair<int, double>> terms; ///< (corner, coefficient)
    double constant{0.0};

    /** Full affine evaluation. */
    [[nodiscard]] auto operator()(const AngleVector& x) const -> double
    {
        double v = constant;
        for (const auto& [c, coef] : terms) {
            v += coef * x[static_cast<std::size_t>(c)];
        }
        return v;
    }

    /** Pairing of the linear part with a direction (the differential). */
    [[nodiscard]] auto pair(const AngleVector& dir) const -> double
    {
        double v = 0.0;
        for (const auto& [c, coef] : terms) {
            v += coef * dir[static_cast<std::size_t>(c)];
        }
        return v;
    }
};

// ---- fast value evaluation ---------------------------------------------------

/** Angle sum at vertex v. */
inline auto vertex_sum_value(const TriangularDecomposition& td, const AngleVector& x, int v)
    -> double
{
    double s = 0.0;
    for (const int c : td.vertex_corners(v)) {
        s += x[static_cast<std::size_t>(c)];
    }
    return s;
}

/** Angle sum of triangle t. */
inline auto triangle_sum_value(const TriangularDecomposition& /*td*/, const AngleVector& x, int t)
    -> double
{
    return x[static_cast<std::size_t>(3 * t)] + x[static_cast<std::size_t>(3 * t + 1)] +
           x[static_cast<std::size_t>(3 * t + 2)];
}

/** Curvature k of triangle t: angle sum minus pi (negative on strict systems). */
inline auto curvature_value(const TriangularDecomposition& td, const AngleVector& x, int t)
    -> double
{
    return triangle_sum_value(td, x, t) - std::numbers::pi;
}

/** psi contribution of side (t,s): (B + C - A)/2 with A opposite the side. */
inline auto psi_side_value(const TriangularDecomposition& /*td*/, const AngleVector& x, int t,
                           int s) -> double
{
    const double A = x[static_cast<std::size_t>(3 * t + s)];
    const double B = x[static_cast<std::size_t>(3 * t + (s + 1) % 3)];
    const double C = x[static_cast<std::size_t>(3 * t + (s + 2) % 3)];
    return 0.5 * (B + C - A);
}

/** theta contribution of side (t,s): pi/2 - psi. */
inline auto theta_side_value(const TriangularDecomposition& td, const AngleVector& x, int t,
                             int s) -> double
{
    return 0.5 * std::numbers::pi - psi_side_value(td, x, t, s);
}

/** psi of edge e: sum over its sides. */
inline auto psi_edge_value(const TriangularDecomposition& td, const AngleVector& x, int e)
    -> double
{
    const auto& ed = td.edge(e);
    double v = psi_side_value(td, x, ed.t1, ed.s1);
    if (ed.interior()) {
        v += psi_side_value(td, x, ed.t2, ed.s2);
    }
    return v;
}

/** theta of edge e: pi - psi on interior edges, pi/2 - psi on boundary edges. */
inline auto theta_edge_value(const TriangularDecomposition& td, const AngleVector& x, int e)
    -> double
{
    const double offset = td.edge(e).interior() ? std::numbers::pi : 0.5 * std::numbers::pi;
    return offset - psi_edge_value(td, x, e);
}

// ---- covector builders -------------------------------------------------------

/** Vertex-sum functional p^v. */
inline auto vertex_sum(const TriangularDecomposition& td, int v) -> Covector
{
    Covector cv;
    for (const int c : td.vertex_corners(v)) {
        cv.terms.emplace_back(c, 1.0);
    }
    return cv;
}

/** Triangle angle-sum functional. */
inline auto triangle_sum(const TriangularDecomposition& /*td*/, int t) -> Covector
{
    return {{{3 * t, 1.0}, {3 * t + 1, 1.0}, {3 * t + 2, 1.0}}, 0.0};
}

/** Curvature functional: angle sum minus pi. */
inline auto curvature(const TriangularDecomposition& td, int t) -> Covector
{
    Covector cv = triangle_sum(td, t);
    cv.constant = -std::numbers::pi;
    return cv;
}

/** Per-side psi functional. */
inline auto psi_side(const TriangularDecomposition& /*td*/, int t, int s) -> Covector
{
    return {{{3 * t + s, -0.5}, {3 * t + (s + 1) % 3, 0.5}, {3 * t + (s + 2) % 3, 0.5}}, 0.0};
}

/** Per-side theta functional: pi/2 - psi. */
inline auto theta_side(const TriangularDecomposition& td, int t, int s) -> Covector
{
    Covector cv = psi_side(td, t, s);
    for (auto& [c, coef] : cv.terms) {
        coef = -coef;
    }
    cv.constant = 0.5 * std::numbers::pi;
    return cv;
}

/** Edge psi functional. */
inline auto psi_edge(const TriangularDecomposition& td, int e) -> Covector
{
    const auto& ed = td.edge(e);
    Covector cv = psi_side(td, ed.t1, ed.s1);
    if (ed.interior()) {
        const Covector other = psi_side(td, ed.t2, ed.s2);
        cv.terms.insert(cv.terms.end(), other.terms.begin(), other.terms.end());
    }
    return cv;
}

/** Edge theta functional. */
inline auto theta_edge(const TriangularDecomposition& td, int e) -> Covector
{
    Covector cv = psi_edge(td, e);
    for (auto& [c, coef] : cv.terms) {
        coef = -coef;
    }
    cv.constant = td.edge(e).interior() ? std::numbers::pi : 0.5 * std::numbers::pi;
    return cv;
}

// ---- conformal deformations --------------------------------------------------

/** @brief Basis of the conformal deformation space.
 *
 * One direction w per interior edge e: +1 at the two corners adjacent to e on
 * its canonical side (the lexicographically least (t,s)), -1 at the two
 * corners adjacent on the partner side, accumulated when a triangle is glued
 * to itself. These directions annihilate every vertex sum and every edge psi,
 * and pair with the per-side theta functionals as
 *   d theta^e_{canonical side}(w_e) = -1,  d theta^e_{partner side}(w_e) = +1,
 * all other pairings zero.
 */
struct ConformalBasis {
    std::vector<int> edges;      ///< interior edge ids, canonical order
    std::vector<AngleVector> w;  ///< dense direction per entry of edges

    [[nodiscard]] auto dimension() const noexcept -> int
    {
        return static_cast<int>(edges.size());
    }
};

inline auto conformal_basis(const TriangularDecomposition& td) -> ConformalBasis
{
    ConformalBasis basis;
    basis.edges = td.interior_edges();
    basis.w.reserve(basis.edges.size());
    for (const int e : basis.edges) {
        const auto& ed = td.edge(e);
        AngleVector w(static_cast<std::size_t>(td.corner_count()), 0.0);
        for (const int i : {1, 2}) {
            w[static_cast<std::size_t>(3 * ed.t1 + (ed.s1 + i) % 3)] += 1.0;
            w[static_cast<std::size_t>(3 * ed.t2 + (ed.s2 + i) % 3)] -= 1.0;
        }
        basis.w.push_back(std::move(w));
    }
    return basis;
}

/** @brief Dual-pairing partner of psi: +1 at the two corners adjacent to e on
 * its canonical side. Satisfies psi^f(m_e) = delta_{ef}. */
inline auto m_vector(const TriangularDecomposition& td, int e) -> AngleVector
{
    const auto& ed = td.edge(e);
    AngleVector m(static_cast<std::size_t>(td.corner_count()), 0.0);
    for (const int i : {1, 2}) {
        m[static_cast<std::size_t>(3 * ed.t1 + (ed.s1 + i) % 3)] += 1.0;
    }
    return m;
}

/** x + sum_j coeffs[j] * w_j. */
inline auto conformal_shift(const ConformalBasis& basis, const AngleVector& x,
                            const std::vector<double>& coeffs) -> AngleVector
{
    AngleVector y = x;
    for (std::size_t j = 0; j < basis.w.size(); ++j) {
        const double c = coeffs[j];
        if (c == 0.0) {
            continue;
        }
        const auto& w = basis.w[j];
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] += c * w[i];
        }
    }
    return y;
}

// ---- membership ---------------------------------------------------------------

/** @brief Tolerances for classification. */
struct MembershipOptions {
    double tol_vertex{1e-9};   ///< |vertex sum - target| tolerance
    double boundary_tol{1e-9}; ///< strictness margin treated as "degenerate"
};

/** @brief Per-triangle degeneracy classification. */
struct TriangleStatus {
    double curvature{0.0};
    bool degenerate{false};   ///< some strictness margin within boundary_tol
    bool zero_zero_pi{false}; ///< degenerate of angle type {0, 0, pi}
    bool legal{false};        ///< degenerate but not of type {0, 0, pi}
};

/** @brief Where an angle vector sits relative to the nested domains.
 *
 * in_V: vertex sums match targets. in_N: additionally every angle lies
 * strictly in (0, pi) and every curvature is strictly negative. in_D:
 * additionally every edge theta lies in its window ((0, pi) interior,
 * (0, pi/2) boundary). A point on the domain boundary sits in the bad set
 * when every degenerate triangle has angle type {0, 0, pi}; the objective's
 * boundary derivative blow-up fails only there.
 */
struct MembershipReport {
    bool in_V{false};
    bool in_N{false};
    bool in_D{false};
    bool on_boundary{false};
    bool in_bad_set{false};
    double max_vertex_error{0.0};
    double min_angle{0.0};
    double max_angle{0.0};
    double max_curvature{0.0};
    double min_theta_margin{0.0};
    std::vector<TriangleStatus> triangles;
};

/** True when every angle is strictly inside (0, pi) and every curvature is
 * strictly negative: the defining strictness of an angle system, with the
 * vertex-sum constraints checked separately. */
inline auto strict_system(const TriangularDecomposition& td, const AngleVector& x) -> bool
{
    for (const double a : x) {
        if (!(a > 0.0) || !(a < std::numbers::pi)) {
            return false;
        }
    }
    for (int t = 0; t < td.triangle_count(); ++t) {
        if (!(curvature_value(td, x, t) < 0.0)) {
            return false;
        }
    }
    return true;
}

inline auto classify(const TriangularDecomposition& td, const AngleVector& x,
                     const MembershipOptions& opts = {}) -> MembershipReport
{
    MembershipReport rep;
    const double pi = std::numbers::pi;

    rep.max_vertex_error = 0.0;
    for (int v = 0; v < td.vertex_count(); ++v) {
        rep.max_vertex_error = std::max(
            rep.max_vertex_error, std::abs(vertex_sum_value(td, x, v) - td.vertex_target(v)));
    }
    rep.in_V = rep.max_vertex_error <= opts.tol_vertex;

    rep.min_angle = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
    rep.max_angle = x.empty() ? 0.0 : *std::max_element(x.begin(), x.end());

    rep.max_curvature = -pi;
    bool anyDegenerate = false;
    bool allDegenerateZZP = true;
    for (int t = 0; t < td.triangle_count(); ++t) {
        TriangleStatus st;
        st.curvature = curvature_value(td, x, t);
        rep.max_curvature = std::max(rep.max_curvature, st.curvature);
        double a[3] = {x[static_cast<std::size_t>(3 * t)], x[static_cast<std::size_t>(3 * t + 1)],
                       x[static_cast<std::size_t>(3 * t + 2)]};
        std::sort(a, a + 3);
        const double margin =
            std::min({a[0], pi - a[2], -st.curvature}); // strictness slack of this triangle
        st.degenerate = margin <= opts.boundary_tol;
        st.zero_zero_pi = st.degenerate && a[0] <= opts.boundary_tol &&
                          a[1] <= opts.boundary_tol && a[2] >= pi - 2.0 * opts.boundary_tol;
        st.legal = st.degenerate && !st.zero_zero_pi;
        anyDegenerate = anyDegenerate || st.degenerate;
        allDegenerateZZP = allDegenerateZZP && (!st.degenerate || st.zero_zero_pi);
        rep.triangles.push_back(st);
    }

    const bool strict = strict_system(td, x);
    rep.in_N = rep.in_V && strict;
    rep.on_boundary = anyDegenerate;
    rep.in_bad_set = anyDegenerate && allDegenerateZZP;

    rep.min_theta_margin = pi;
    for (int e = 0; e < td.edge_count(); ++e) {
        const double window = td.edge(e).interior() ? pi : 0.5 * pi;
        const double th = theta_edge_value(td, x, e);
        rep.min_theta_margin = std::min({rep.min_theta_margin, th, window - th});
    }
    rep.in_D = rep.in_N && rep.min_theta_margin > 0.0;
    return rep;
}

} // namespace idp
