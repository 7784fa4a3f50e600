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

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <utility>

#include "support.hpp"

using idp::build_decomposition;
using idp::TriangularDecomposition;

TEST_CASE("genus-2 fan: counts, closedness, flower", "[complex]")
{
    const auto td = build_decomposition(idptest::genus2_spec());
    CHECK(td.triangle_count() == 6);
    CHECK(td.edge_count() == 9);
    CHECK(td.vertex_count() == 1);
    CHECK(td.boundary_edge_count() == 0);
    CHECK(td.closed());
    CHECK(td.euler_characteristic() == -2);

    const idp::Flower& fl = td.flower(0);
    CHECK(fl.cyclic);
    CHECK(fl.corners.size() == 18);
    CHECK(fl.links.size() == 18);
    CHECK(fl.out_sides.size() == 18);

    // Every interior edge appears exactly twice among the links (both of its
    // endpoints are the single vertex).
    std::vector<int> uses(9, 0);
    for (const int e : fl.links) {
        ++uses[static_cast<std::size_t>(e)];
    }
    for (const int u : uses) {
        CHECK(u == 2);
    }
}

TEST_CASE("doubled triangle is a sphere", "[complex]")
{
    const auto td = build_decomposition(idptest::sphere_double_spec());
    CHECK(td.triangle_count() == 2);
    CHECK(td.edge_count() == 3);
    CHECK(td.vertex_count() == 3);
    CHECK(td.euler_characteristic() == 2);
    for (int v = 0; v < 3; ++v) {
        CHECK_FALSE(td.boundary_vertex(v));
        CHECK(td.flower(v).corners.size() == 2);
    }
}

TEST_CASE("seven-triangle wheel: disk with one interior vertex", "[complex]")
{
    const auto td = build_decomposition(idptest::wheel7_spec());
    CHECK(td.triangle_count() == 7);
    CHECK(td.edge_count() == 14);
    CHECK(td.boundary_edge_count() == 7);
    CHECK(td.vertex_count() == 8);
    CHECK(td.boundary_vertex_count() == 7);
    CHECK(td.euler_characteristic() == 1);

    CHECK_FALSE(td.boundary_vertex(0));
    CHECK(td.flower(0).corners.size() == 7);
    CHECK(td.flower(0).out_sides.size() == 7);
    for (int v = 1; v < 8; ++v) {
        const idp::Flower& fl = td.flower(v);
        CHECK(td.boundary_vertex(v));
        CHECK(fl.corners.size() == 2);
        // leading boundary link, one interior crossing, trailing boundary link
        CHECK(fl.links.size() == 3);
        CHECK(fl.out_sides.size() == 1);
        CHECK(td.edge(fl.links[1]).interior());
        CHECK_FALSE(td.edge(fl.links[0]).interior());
        CHECK_FALSE(td.edge(fl.links[2]).interior());
    }

    // targets: overridden on the boundary, default 2*pi at the hub
    CHECK(td.vertex_target(0) == Catch::Approx(2.0 * std::numbers::pi));
    for (int v = 1; v < 8; ++v) {
        CHECK(td.vertex_target(v) == 1.2);
    }
}

TEST_CASE("single triangle: three boundary edges and vertices", "[complex]")
{
    const auto td = build_decomposition(idptest::single_triangle_spec());
    CHECK(td.triangle_count() == 1);
    CHECK(td.edge_count() == 3);
    CHECK(td.boundary_edge_count() == 3);
    CHECK(td.vertex_count() == 3);
    CHECK(td.euler_characteristic() == 1);
    for (int v = 0; v < 3; ++v) {
        const idp::Flower& fl = td.flower(v);
        CHECK(fl.corners.size() == 1);
        CHECK(fl.links.size() == 2);
        CHECK(fl.out_sides.empty());
    }
}

TEST_CASE("side-count identity 3F = 2E - boundary on random complexes", "[complex]")
{
    auto gen = idptest::rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = idptest::random_gluing_spec(gen, 12);
        const auto td = build_decomposition(spec);
        CHECK(3 * td.triangle_count() == 2 * td.edge_count() - td.boundary_edge_count());
        // vertex orbits partition the corners
        int corners = 0;
        for (int v = 0; v < td.vertex_count(); ++v) {
            corners += static_cast<int>(td.vertex_corners(v).size());
            CHECK(td.flower(v).corners.size() == td.vertex_corners(v).size());
        }
        CHECK(corners == td.corner_count());
    }
}

TEST_CASE("edges are canonical: sorted by least incident side", "[complex]")
{
    const auto td = build_decomposition(idptest::genus2_spec());
    int prev = -1;
    for (int e = 0; e < td.edge_count(); ++e) {
        const idp::Edge& ed = td.edge(e);
        const int key = 3 * ed.t1 + ed.s1;
        CHECK(key > prev);
        prev = key;
        if (ed.interior()) {
            CHECK(std::make_pair(ed.t1, ed.s1) < std::make_pair(ed.t2, ed.s2));
        }
        CHECK(td.edge_of_side(ed.t1, ed.s1) == e);
        if (ed.interior()) {
            CHECK(td.edge_of_side(ed.t2, ed.s2) == e);
        }
    }
}

TEST_CASE("corner identification across an edge is an involution", "[complex]")
{
    auto gen = idptest::rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const auto td = build_decomposition(idptest::random_gluing_spec(gen, 10));
        for (const int e : td.interior_edges()) {
            const idp::Edge& ed = td.edge(e);
            for (int k = 1; k <= 2; ++k) {
                const int c = 3 * ed.t1 + (ed.s1 + k) % 3;
                const int c2 = td.corner_across(e, c, ed.s1);
                CHECK(c2 / 3 == ed.t2);
                CHECK(td.corner_across(e, c2, ed.s2) == c);
                // identified corners belong to the same vertex orbit
                CHECK(td.vertex_of_corner(c) == td.vertex_of_corner(c2));
            }
        }
    }
}

TEST_CASE("orientation flag flips the identified endpoints", "[complex]")
{
    idp::GluingSpec spec;
    spec.triangles = 2;
    spec.gluings = {{{0, 0}, {1, 0}, true}};
    const auto td = build_decomposition(spec);
    const int e = td.edge_of_side(0, 0);
    // flip matches endpoints directly: corner s+1 pairs with s+1
    CHECK(td.corner_across(e, 1, 0) == 4);
    CHECK(td.corner_across(e, 2, 0) == 5);

    spec.gluings = {{{0, 0}, {1, 0}, false}};
    const auto td2 = build_decomposition(spec);
    const int e2 = td2.edge_of_side(0, 0);
    CHECK(td2.corner_across(e2, 1, 0) == 5);
    CHECK(td2.corner_across(e2, 2, 0) == 4);
}

TEST_CASE("non-orientable gluings build", "[complex]")
{
    idp::GluingSpec spec = idptest::wheel7_spec();
    spec.vertex_targets.clear();
    for (auto& g : spec.gluings) {
        g.flip = true;
    }
    const auto td = build_decomposition(spec);
    CHECK(td.triangle_count() == 7);
    CHECK(3 * td.triangle_count() == 2 * td.edge_count() - td.boundary_edge_count());
}

TEST_CASE("invalid gluing descriptions are rejected", "[complex]")
{
    idp::GluingSpec spec;
    spec.triangles = 2;

    SECTION("side glued to itself")
    {
        spec.gluings = {{{0, 0}, {0, 0}, false}};
        CHECK_THROWS_AS(build_decomposition(spec), idp::NonManifoldError);
    }
    SECTION("side used twice")
    {
        spec.gluings = {{{0, 0}, {1, 0}, false}, {{0, 0}, {1, 1}, false}};
        CHECK_THROWS_AS(build_decomposition(spec), idp::DuplicateGluingError);
    }
    SECTION("triangle index out of range")
    {
        spec.gluings = {{{0, 0}, {2, 0}, false}};
        CHECK_THROWS_AS(build_decomposition(spec), idp::DanglingSideError);
    }
    SECTION("side index out of range")
    {
        spec.gluings = {{{0, 3}, {1, 0}, false}};
        CHECK_THROWS_AS(build_decomposition(spec), idp::DanglingSideError);
    }
    SECTION("vertex target for a nonexistent vertex")
    {
        spec.gluings = {{{0, 0}, {1, 0}, false}};
        spec.vertex_targets[99] = 1.0;
        CHECK_THROWS_AS(build_decomposition(spec), idp::DomainError);
    }
}

TEST_CASE("validate reports structure and admissibility", "[complex]")
{
    const idp::ValidationReport good = idp::validate(idptest::genus2_spec());
    CHECK(good.structure_ok);
    CHECK(good.admissible);
    CHECK(good.euler_characteristic == -2);

    idp::GluingSpec bad;
    bad.triangles = 1;
    bad.gluings = {{{0, 0}, {0, 0}, false}};
    const idp::ValidationReport rep = idp::validate(bad);
    CHECK_FALSE(rep.structure_ok);
    REQUIRE_FALSE(rep.checks.empty());
    CHECK(rep.checks.front().name == "NonManifold");

    // a lone triangle with default targets (pi per boundary vertex) leaves no
    // room for a strict angle system: sum of targets is 3*pi >= pi * F
    idp::GluingSpec lone;
    lone.triangles = 1;
    const idp::ValidationReport crowded = idp::validate(lone);
    CHECK(crowded.structure_ok);
    CHECK_FALSE(crowded.admissible);
}
