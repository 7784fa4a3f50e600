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

/** @file complex.hpp
 * Combinatorics of triangulated surfaces described by side gluings.
 *
 * Conventions, used uniformly across the library:
 *  - triangle t has corners 0,1,2; the global corner id is 3t+i;
 *  - side i of a triangle is opposite corner i and joins corners
 *    (i+1)%3 and (i+2)%3;
 *  - a gluing identifies two distinct sides. The default identification is
 *    orientation-compatible: corner (s1+1)%3 matches corner (s2+2)%3 and
 *    (s1+2)%3 matches (s2+1)%3. With flip=true the identification is
 *    (s1+1)%3 <-> (s2+1)%3, (s1+2)%3 <-> (s2+2)%3 (orientation-reversing,
 *    for non-orientable complexes).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "idp/errors.hpp"

namespace idp
{

/** @brief One side-to-side identification, as it appears in input documents. */
struct Gluing {
    std::array<int, 2> a{0, 0}; ///< (triangle, side)
    std::array<int, 2> b{0, 0}; ///< (triangle, side)
    bool flip{false};           ///< orientation-reversing identification
};

/** @brief Raw description of a complex: triangle count plus gluings.
 *
 * vertex_targets optionally overrides the per-vertex angle target (defaults:
 * 2*pi at interior vertices, pi at boundary vertices). angles optionally
 * carries a corner angle vector of size 3*triangles.
 */
struct GluingSpec {
    int triangles{0};
    std::vector<Gluing> gluings;
    std::map<int, double> vertex_targets;
    std::vector<double> angles;
};

/** @brief An edge of the glued complex: one side (boundary) or two. */
struct Edge {
    int t1{-1}, s1{-1}; ///< canonical side: lexicographically least (t,s)
    int t2{-1}, s2{-1}; ///< partner side; t2 < 0 on boundary edges
    bool flip{false};

    [[nodiscard]] auto interior() const noexcept -> bool { return t2 >= 0; }
};

/** @brief The link of a vertex: its corners in chain order.
 *
 * links[i] is the edge joining corners[i] to corners[i+1] (cyclically for an
 * interior vertex). At a boundary vertex the chain is linear and links has
 * corners.size()+1 entries: the leading and trailing entries are the two
 * boundary-edge incidences capping the chain.
 */
struct Flower {
    bool cyclic{false};
    std::vector<int> corners;
    std::vector<int> links;
    /** Side of triangle corners[i]/3 crossed to reach corners[i+1] (wrapping
     * for cyclic flowers); empty boundary crossings are not recorded, so the
     * size is corners.size() for cyclic flowers and corners.size()-1 for
     * chains. */
    std::vector<int> out_sides;
};

/** @brief A validated, fully derived triangulated surface.
 *
 * Derived data: edges in canonical order (sorted by least incident side),
 * vertex orbits in canonical order (sorted by least corner id), vertex links,
 * per-vertex angle targets.
 */
class TriangularDecomposition
{
public:
    /** Global corner id of corner i of triangle t. */
    [[nodiscard]] static constexpr auto corner(int t, int i) -> int { return 3 * t + i; }

    [[nodiscard]] auto triangle_count() const noexcept -> int { return F_; }
    [[nodiscard]] auto edge_count() const noexcept -> int { return static_cast<int>(edges_.size()); }
    [[nodiscard]] auto vertex_count() const noexcept -> int { return static_cast<int>(vertices_.size()); }
    [[nodiscard]] auto corner_count() const noexcept -> int { return 3 * F_; }

    [[nodiscard]] auto boundary_edge_count() const noexcept -> int { return boundary_edges_; }
    [[nodiscard]] auto interior_edge_count() const noexcept -> int
    {
        return edge_count() - boundary_edges_;
    }
    [[nodiscard]] auto closed() const noexcept -> bool { return boundary_edges_ == 0; }

    /** Euler characteristic V - E + F. */
    [[nodiscard]] auto euler_characteristic() const noexcept -> int
    {
        return vertex_count() - edge_count() + triangle_count();
    }

    [[nodiscard]] auto edge(int e) const -> const Edge& { return edges_.at(e); }
    [[nodiscard]] auto edges() const noexcept -> const std::vector<Edge>& { return edges_; }

    /** Edge index the side (t,s) belongs to. */
    [[nodiscard]] auto edge_of_side(int t, int s) const -> int
    {
        return side_edge_.at(3 * t + s);
    }

    /** Interior edge indices in canonical order. */
    [[nodiscard]] auto interior_edges() const noexcept -> const std::vector<int>&
    {
        return interior_edges_;
    }

    [[nodiscard]] auto vertex_of_corner(int c) const -> int { return corner_vertex_.at(c); }
    [[nodiscard]] auto vertex_corners(int v) const -> const std::vector<int>&
    {
        return vertices_.at(v);
    }
    [[nodiscard]] auto flower(int v) const -> const Flower& { return flowers_.at(v); }
    [[nodiscard]] auto boundary_vertex(int v) const -> bool { return !flowers_.at(v).cyclic; }
    [[nodiscard]] auto boundary_vertex_count() const noexcept -> int { return boundary_vertices_; }

    /** Target angle sum at vertex v. */
    [[nodiscard]] auto vertex_target(int v) const -> double { return vertex_targets_.at(v); }
    [[nodiscard]] auto vertex_targets() const noexcept -> const std::vector<double>&
    {
        return vertex_targets_;
    }

    /** Sum of all vertex targets; the complex admits strict angle systems with
     * these targets only if this is < pi * F. */
    [[nodiscard]] auto target_total() const noexcept -> double
    {
        return std::accumulate(vertex_targets_.begin(), vertex_targets_.end(), 0.0);
    }

    /** @brief Corner identified with corner c across interior edge e.
     *
     * s names the side of c's triangle being crossed (disambiguates when a
     * triangle is glued to itself); c must be an endpoint of that side.
     */
    [[nodiscard]] auto corner_across(int e, int c, int s) const -> int
    {
        const auto& ed = edges_.at(e);
        const bool fromFirst = (c / 3 == ed.t1 && s == ed.s1);
        const int sFrom = fromFirst ? ed.s1 : ed.s2;
        const int tTo = fromFirst ? ed.t2 : ed.t1;
        const int sTo = fromFirst ? ed.s2 : ed.s1;
        const int k = (c % 3 - sFrom + 3) % 3; // endpoint index, 1 or 2
        const int kTo = ed.flip ? k : 3 - k;   // default identification swaps endpoints
        return 3 * tTo + (sTo + kTo) % 3;
    }

    friend auto build_decomposition(const GluingSpec& spec) -> TriangularDecomposition;

private:
    int F_{0};
    int boundary_edges_{0};
    int boundary_vertices_{0};
    std::vector<Edge> edges_;
    std::vector<int> side_edge_; // 3F entries
    std::vector<int> interior_edges_;
    std::vector<int> corner_vertex_;
    std::vector<std::vector<int>> vertices_;
    std::vector<Flower> flowers_;
    std::vector<double> vertex_targets_;
};

namespace detail
{

class UnionFind
{
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    auto find(int x) -> int
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int x, int y) { parent_[find(x)] = find(y); }

private:
    std::vector<int> parent_;
};

/** Corner pairs identified by a gluing. */
inline auto gluing_corner_pairs(const Gluing& g) -> std::array<std::array<int, 2>, 2>
{
    const auto [t1, s1] = g.a;
    const auto [t2, s2] = g.b;
    if (g.flip) {
        return {{{3 * t1 + (s1 + 1) % 3, 3 * t2 + (s2 + 1) % 3},
                 {3 * t1 + (s1 + 2) % 3, 3 * t2 + (s2 + 2) % 3}}};
    }
    return {{{3 * t1 + (s1 + 1) % 3, 3 * t2 + (s2 + 2) % 3},
             {3 * t1 + (s1 + 2) % 3, 3 * t2 + (s2 + 1) % 3}}};
}

} // namespace detail

/** @brief Validate a gluing description and derive the full complex.
 *
 * Throws DanglingSideError (side out of range), DuplicateGluingError (side in
 * two pairs), NonManifoldError (side glued to itself), DomainError (bad
 * triangle count, nonpositive vertex target, bad override key, bad angle
 * vector size).
 */
inline auto build_decomposition(const GluingSpec& spec) -> TriangularDecomposition
{
    if (spec.triangles <= 0) {
        throw DomainError("triangle count must be positive, got " +
                          std::to_string(spec.triangles));
    }
    const int F = spec.triangles;

    auto side_name = [](int t, int s) {
        return "(" + std::to_string(t) + "," + std::to_string(s) + ")";
    };

    // pair sides, rejecting reuse and self-gluing
    std::vector<int> partner_gluing(static_cast<std::size_t>(3 * F), -1);
    for (std::size_t gi = 0; gi < spec.gluings.size(); ++gi) {
        const auto& g = spec.gluings[gi];
        for (const auto& side : {g.a, g.b}) {
            if (side[0] < 0 || side[0] >= F || side[1] < 0 || side[1] > 2) {
                throw DanglingSideError("gluing references nonexistent side " +
                                        side_name(side[0], side[1]));
            }
        }
        if (g.a == g.b) {
            throw NonManifoldError("side " + side_name(g.a[0], g.a[1]) + " glued to itself");
        }
        for (const auto& side : {g.a, g.b}) {
            auto& slot = partner_gluing[static_cast<std::size_t>(3 * side[0] + side[1])];
            if (slot >= 0) {
                throw DuplicateGluingError("side " + side_name(side[0], side[1]) +
                                           " appears in more than one gluing");
            }
            slot = static_cast<int>(gi);
        }
    }

    TriangularDecomposition td;
    td.F_ = F;
    td.side_edge_.assign(static_cast<std::size_t>(3 * F), -1);

    // edges in canonical order: scan sides lexicographically
    for (int t = 0; t < F; ++t) {
        for (int s = 0; s < 3; ++s) {
            if (td.side_edge_[static_cast<std::size_t>(3 * t + s)] >= 0) {
                continue;
            }
            Edge ed;
            ed.t1 = t;
            ed.s1 = s;
            const int gi = partner_gluing[static_cast<std::size_t>(3 * t + s)];
            if (gi >= 0) {
                const auto& g = spec.gluings[static_cast<std::size_t>(gi)];
                const auto other = (g.a == std::array<int, 2>{t, s}) ? g.b : g.a;
                ed.t2 = other[0];
                ed.s2 = other[1];
                ed.flip = g.flip;
                td.side_edge_[static_cast<std::size_t>(3 * ed.t2 + ed.s2)] =
                    static_cast<int>(td.edges_.size());
            } else {
                ++td.boundary_edges_;
            }
            td.side_edge_[static_cast<std::size_t>(3 * t + s)] =
                static_cast<int>(td.edges_.size());
            td.edges_.push_back(ed);
        }
    }
    for (int e = 0; e < td.edge_count(); ++e) {
        if (td.edges_[static_cast<std::size_t>(e)].interior()) {
            td.interior_edges_.push_back(e);
        }
    }

    // vertex orbits from corner identifications
    detail::UnionFind uf(3 * F);
    for (const auto& g : spec.gluings) {
        for (const auto& [c1, c2] : detail::gluing_corner_pairs(g)) {
            uf.unite(c1, c2);
        }
    }
    td.corner_vertex_.assign(static_cast<std::size_t>(3 * F), -1);
    std::map<int, int> root_vertex;
    for (int c = 0; c < 3 * F; ++c) {
        const int r = uf.find(c);
        auto [it, inserted] = root_vertex.try_emplace(r, td.vertex_count());
        if (inserted) {
            td.vertices_.emplace_back();
        }
        td.corner_vertex_[static_cast<std::size_t>(c)] = it->second;
        td.vertices_[static_cast<std::size_t>(it->second)].push_back(c);
    }

    // vertex links: walk the corner chain. Each corner has two ports (its
    // flanking sides); glued ports connect to the matched corner across the
    // edge, so every orbit is a single path or cycle.
    auto other_port = [](int cornerLocal, int side) {
        return (side == (cornerLocal + 1) % 3) ? (cornerLocal + 2) % 3 : (cornerLocal + 1) % 3;
    };
    td.flowers_.resize(static_cast<std::size_t>(td.vertex_count()));
    for (int v = 0; v < td.vertex_count(); ++v) {
        const auto& orbit = td.vertices_[static_cast<std::size_t>(v)];
        // linear chains start at the first open port in scan order
        int startCorner = -1;
        int startPort = -1;
        for (const int cc : orbit) {
            for (const int s : {(cc % 3 + 1) % 3, (cc % 3 + 2) % 3}) {
                const int e = td.side_edge_[static_cast<std::size_t>(3 * (cc / 3) + s)];
                if (!td.edges_[static_cast<std::size_t>(e)].interior()) {
                    startCorner = cc;
                    startPort = s;
                    break;
                }
            }
            if (startCorner >= 0) {
                break;
            }
        }
        Flower fl;
        fl.cyclic = startCorner < 0;
        int c = fl.cyclic ? orbit.front() : startCorner;
        int in = fl.cyclic ? (c % 3 + 1) % 3 : startPort;
        if (!fl.cyclic) {
            // leading boundary incidence
            fl.links.push_back(td.side_edge_[static_cast<std::size_t>(3 * (c / 3) + in)]);
        }
        const int first = c;
        while (true) {
            fl.corners.push_back(c);
            const int out = other_port(c % 3, in);
            const int e = td.side_edge_[static_cast<std::size_t>(3 * (c / 3) + out)];
            fl.links.push_back(e);
            if (!td.edges_[static_cast<std::size_t>(e)].interior()) {
                break; // trailing boundary incidence
            }
            fl.out_sides.push_back(out);
            const auto& ed = td.edges_[static_cast<std::size_t>(e)];
            const bool fromFirst = (c / 3 == ed.t1 && out == ed.s1);
            const int next = td.corner_across(e, c, out);
            if (fl.cyclic && next == first) {
                break;
            }
            in = fromFirst ? ed.s2 : ed.s1;
            c = next;
        }
        if (fl.corners.size() != orbit.size()) {
            throw NonManifoldError("vertex " + std::to_string(v) +
                                   ": link is not a single chain");
        }
        if (!fl.cyclic) {
            ++td.boundary_vertices_;
        }
        td.flowers_[static_cast<std::size_t>(v)] = std::move(fl);
    }

    // vertex targets: defaults with overrides
    td.vertex_targets_.resize(static_cast<std::size_t>(td.vertex_count()));
    for (int v = 0; v < td.vertex_count(); ++v) {
        td.vertex_targets_[static_cast<std::size_t>(v)] =
            td.boundary_vertex(v) ? std::numbers::pi : 2.0 * std::numbers::pi;
    }
    for (const auto& [v, target] : spec.vertex_targets) {
        if (v < 0 || v >= td.vertex_count()) {
            throw DomainError("vertex target references nonexistent vertex " +
                              std::to_string(v));
        }
        if (!(target > 0.0) || !std::isfinite(target)) {
            throw DomainError("vertex target must be positive and finite");
        }
        td.vertex_targets_[static_cast<std::size_t>(v)] = target;
    }

    if (!spec.angles.empty() &&
        spec.angles.size() != static_cast<std::size_t>(3 * F)) {
        throw DomainError("angle vector must have 3F = " + std::to_string(3 * F) +
                          " entries, got " + std::to_string(spec.angles.size()));
    }
    return td;
}

/** @brief One named structural check with outcome. */
struct ValidationCheck {
    std::string name;
    bool pass{false};
    std::string detail;
};

/** @brief Diagnostics for a gluing description.
 *
 * structure_ok mirrors whether build_decomposition would succeed; admissible
 * additionally reports whether the vertex targets leave room for strict angle
 * systems (sum of targets < pi * F).
 */
struct ValidationReport {
    bool structure_ok{false};
    bool admissible{false};
    int triangles{0};
    int edges{0};
    int vertices{0};
    int boundary_edges{0};
    int boundary_vertices{0};
    int euler_characteristic{0};
    std::vector<ValidationCheck> checks;
};

/** @brief Run all structural checks without throwing. */
inline auto validate(const GluingSpec& spec) -> ValidationReport
{
    ValidationReport rep;
    try {
        const auto td = build_decomposition(spec);
        rep.structure_ok = true;
        rep.triangles = td.triangle_count();
        rep.edges = td.edge_count();
        rep.vertices = td.vertex_count();
        rep.boundary_edges = td.boundary_edge_count();
        rep.boundary_vertices = td.boundary_vertex_count();
        rep.euler_characteristic = td.euler_characteristic();
        rep.checks.push_back({"sides-paired-once", true, ""});
        rep.checks.push_back({"no-side-self-gluing", true, ""});
        rep.checks.push_back({"links-single-chains", true, ""});
        const bool count = 3 * td.triangle_count() ==
                           2 * td.edge_count() - td.boundary_edge_count();
        rep.checks.push_back({"side-count-identity", count,
                              count ? "" : "3F != 2E - boundary edges"});
        const double total = td.target_total();
        const double cap = std::numbers::pi * td.triangle_count();
        rep.admissible = total < cap;
        rep.checks.push_back({"targets-admissible", rep.admissible,
                              "sum targets = " + std::to_string(total) + ", pi*F = " +
                                  std::to_string(cap)});
        rep.structure_ok = rep.structure_ok && count;
    } catch (const Error& err) {
        rep.checks.push_back({err.code(), false, err.what()});
    }
    return rep;
}

} // namespace idp
