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

#include <cmath>
#include <numbers>

#include "support.hpp"

using std::numbers::pi;

TEST_CASE("side lengths at the symmetric genus-2 system", "[uniformize]")
{
    const idp::AngleVector x(18, pi / 9.0);
    for (int t = 0; t < 6; ++t) {
        for (int s = 0; s < 3; ++s) {
            CHECK(idp::side_length(x, t, s) ==
                  Catch::Approx(3.43821424123010309189704).epsilon(1e-14));
            CHECK(idp::truncated_side_length(x, t, s) ==
                  Catch::Approx(1.98662142238996504319911).epsilon(1e-14));
        }
    }
}

TEST_CASE("total volume and residual at the symmetric system", "[uniformize]")
{
    const auto td = idp::build_decomposition(idptest::genus2_spec());
    const idp::AngleVector x(18, pi / 9.0);
    CHECK(idp::total_volume(td, x) ==
          Catch::Approx(12.77513985246193942457396).epsilon(1e-15));
    CHECK(idp::length_residual(td, x) == 0.0);

    idp::AngleVector y = x;
    y[0] += 1e-3;
    y[1] -= 1e-3; // keeps the vertex sum, breaks length matching
    CHECK(idp::length_residual(td, y) > 1e-5);
}

TEST_CASE("the two gradient routes agree", "[uniformize]")
{
    auto gen = idptest::rng(31);
    for (const auto& spec : {idptest::genus2_spec(), idptest::wheel7_spec()}) {
        const auto td = idp::build_decomposition(spec);
        const idp::ConformalBasis basis = idp::conformal_basis(td);
        for (int trial = 0; trial < 10; ++trial) {
            const idp::AngleVector x = idptest::random_strict(td, gen);
            const auto g1 = idp::volume_gradient(td, basis, x);
            const auto g2 = idp::volume_gradient_assembled(td, basis, x);
            REQUIRE(g1.size() == g2.size());
            for (std::size_t j = 0; j < g1.size(); ++j) {
                CHECK(g1[j] == Catch::Approx(g2[j]).margin(1e-10));
            }
        }
    }
}

TEST_CASE("gradient matches finite differences of the volume", "[uniformize]")
{
    auto gen = idptest::rng(32);
    const auto td = idp::build_decomposition(idptest::genus2_spec());
    const idp::ConformalBasis basis = idp::conformal_basis(td);
    for (int trial = 0; trial < 5; ++trial) {
        const idp::AngleVector x = idptest::random_strict(td, gen);
        const auto grad = idp::volume_gradient(td, basis, x);
        for (std::size_t j = 0; j < basis.w.size(); ++j) {
            const auto f = [&](double h) {
                idp::AngleVector y = x;
                for (std::size_t i = 0; i < y.size(); ++i) {
                    y[i] += h * basis.w[j][i];
                }
                return idp::total_volume(td, y);
            };
            const double fd = idptest::central_difference(f, 1e-6);
            CHECK(grad[j] == Catch::Approx(fd).margin(1e-6));
        }
    }
}

TEST_CASE("volume is concave along conformal segments", "[uniformize]")
{
    auto gen = idptest::rng(33);
    const auto td = idp::build_decomposition(idptest::genus2_spec());
    const idp::ConformalBasis basis = idp::conformal_basis(td);
    const idp::AngleVector x(18, pi / 9.0);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto c1 = idptest::random_coefficients(basis.w.size(), gen, -0.1, 0.1);
        const auto c2 = idptest::random_coefficients(basis.w.size(), gen, -0.1, 0.1);
        const idp::AngleVector a = idp::conformal_shift(basis, x, c1);
        const idp::AngleVector b = idp::conformal_shift(basis, x, c2);
        if (!idp::strict_system(td, a) || !idp::strict_system(td, b)) {
            continue;
        }
        idp::AngleVector mid(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            mid[i] = 0.5 * (a[i] + b[i]);
        }
        const double va = idp::total_volume(td, a);
        const double vb = idp::total_volume(td, b);
        const double vm = idp::total_volume(td, mid);
        CHECK(vm >= 0.5 * (va + vb) - 1e-12);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("maximize recovers the symmetric system from perturbations", "[uniformize]")
{
    auto gen = idptest::rng(34);
    const auto td = idp::build_decomposition(idptest::genus2_spec());
    const idp::ConformalBasis basis = idp::conformal_basis(td);
    const idp::AngleVector u(18, pi / 9.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto coeffs = idptest::random_coefficients(basis.w.size(), gen, -0.05, 0.05);
        const idp::AngleVector x0 = idp::conformal_shift(basis, u, coeffs);
        REQUIRE(idp::strict_system(td, x0));
        const idp::SolverResult res = idp::maximize(td, x0);
        CHECK(res.converged);
        CHECK(res.residual <= 1e-10);
        CHECK(res.iterations <= 200);
        for (const double xi : res.x) {
            CHECK(xi == Catch::Approx(pi / 9.0).margin(1e-7));
        }
        CHECK(res.objective == Catch::Approx(12.77513985246193942457396).margin(1e-9));
    }
}

TEST_CASE("maximize on a bounded complex: wheel with prescribed targets", "[uniformize]")
{
    auto gen = idptest::rng(35);
    const auto td = idp::build_decomposition(idptest::wheel7_spec());
    const idp::ConformalBasis basis = idp::conformal_basis(td);
    const idp::AngleVector start = idp::default_start(td);
    // the symmetric wheel start is already uniform; perturb to make it work
    const auto coeffs = idptest::random_coefficients(basis.w.size(), gen, -0.03, 0.03);
    const idp::AngleVector x0 = idp::conformal_shift(basis, start, coeffs);
    REQUIRE(idp::strict_system(td, x0));
    REQUIRE(idp::length_residual(td, x0) > 1e-6);
    const idp::SolverResult res = idp::maximize(td, x0);
    CHECK(res.converged);
    CHECK(res.residual <= 1e-10);
    // all vertex sums still on target
    for (int v = 0; v < td.vertex_count(); ++v) {
        CHECK(idp::vertex_sum_value(td, res.x, v) ==
              Catch::Approx(td.vertex_target(v)).margin(1e-9));
    }
}

TEST_CASE("distinct starts in one conformal class reach the same maximizer",
          "[uniformize]")
{
    auto gen = idptest::rng(36);
    const auto td = idp::build_decomposition(idptest::genus2_spec());
    const idp::ConformalBasis basis = idp::conformal_basis(td);
    const idp::AngleVector u(18, pi / 9.0);
    for (int trial = 0; trial < 3; ++trial) {
        const auto c1 = idptest::random_coefficients(basis.w.size(), gen, -0.05, 0.05);
        const auto c2 = idptest::random_coefficients(basis.w.size(), gen, -0.05, 0.05);
        const idp::AngleVector a = idp::conformal_shift(basis, u, c1);
        const idp::AngleVector b = idp::conformal_shift(basis, u, c2);
        const idp::SolverResult ra = idp::maximize(td, a);
        const idp::SolverResult rb = idp::maximize(td, b);
        for (std::size_t i = 0; i < ra.x.size(); ++i) {
            CHECK(ra.x[i] == Catch::Approx(rb.x[i]).margin(1e-6));
        }
    }
}

TEST_CASE("solver guards", "[uniformize]")
{
    const auto td = idp::build_decomposition(idptest::genus2_spec());

    SECTION("non-strict start is rejected")
    {
        idp::AngleVector bad(18, pi / 3.0); // flat triangles, k = 0
        CHECK_THROWS_AS(idp::maximize(td, bad), idp::NotInNError);
    }
    SECTION("wrong size is rejected")
    {
        idp::AngleVector bad(5, 0.3);
        CHECK_THROWS_AS(idp::maximize(td, bad), idp::DomainError);
    }
    SECTION("iteration cap throws by default")
    {
        auto gen = idptest::rng(37);
        const idp::ConformalBasis basis = idp::conformal_basis(td);
        const idp::AngleVector u(18, pi / 9.0);
        const auto coeffs = idptest::random_coefficients(basis.w.size(), gen, -0.05, 0.05);
        const idp::AngleVector x0 = idp::conformal_shift(basis, u, coeffs);
        idp::SolverOptions opts;
        opts.max_iter = 1;
        opts.tol_residual = 1e-14;
        CHECK_THROWS_AS(idp::maximize(td, x0, opts), idp::MaxIterExceeded);

        opts.throw_on_max_iter = false;
        const idp::SolverResult res = idp::maximize(td, x0, opts);
        CHECK_FALSE(res.converged);
        CHECK(res.iterations == 1);
    }
    SECTION("an already uniform start returns immediately")
    {
        const idp::AngleVector u(18, pi / 9.0);
        const idp::SolverResult res = idp::maximize(td, u);
        CHECK(res.converged);
        CHECK(res.iterations == 0);
        CHECK(res.residual == 0.0);
    }
}

TEST_CASE("default start splits the vertex targets evenly", "[uniformize]")
{
    const auto td = idp::build_decomposition(idptest::genus2_spec());
    const idp::AngleVector x = idp::default_start(td);
    for (const double xi : x) {
        CHECK(xi == Catch::Approx(pi / 9.0).margin(1e-14));
    }
    CHECK(idp::strict_system(td, x));

    // infeasible targets: a lone triangle with default boundary targets pi
    idp::GluingSpec lone;
    lone.triangles = 1;
    const auto tdl = idp::build_decomposition(lone);
    CHECK_THROWS_AS(idp::default_start(tdl), idp::NotInNError);
}

TEST_CASE("cone targets: prescribed vertex angle away from 2 pi", "[uniformize]")
{
    idp::GluingSpec spec = idptest::genus2_spec();
    spec.vertex_targets[0] = 1.5 * pi; // cone point
    const auto td = idp::build_decomposition(spec);
    const idp::AngleVector start = idp::default_start(td);
    for (const double xi : start) {
        CHECK(xi == Catch::Approx(pi / 12.0).margin(1e-14));
    }
    // the symmetric start is uniform for this fan; perturb and recover
    auto gen = idptest::rng(38);
    const idp::ConformalBasis basis = idp::conformal_basis(td);
    const auto coeffs = idptest::random_coefficients(basis.w.size(), gen, -0.02, 0.02);
    const idp::SolverResult res =
        idp::maximize(td, idp::conformal_shift(basis, start, coeffs));
    CHECK(res.converged);
    CHECK(res.residual <= 1e-10);
    for (const double xi : res.x) {
        CHECK(xi == Catch::Approx(pi / 12.0).margin(1e-7));
    }
}
