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

/** @file uniformize.hpp
 * Maximization of the total prism volume over a conformal class of angle
 * systems. The total volume is strictly concave along conformal directions;
 * its critical point is the unique angle system whose two hyperbolic edge
 * lengths agree across every interior edge, i.e. whose triangles mate into a
 * genuine hyperbolic structure.
 *
 * The directional derivative along the basis direction w of an interior edge
 * is the difference of truncated lengths (twice log sinh of half the edge
 * length) of its two sides, so the gradient vanishes exactly at uniformity.
 */

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "idp/angles.hpp"
#include "idp/complex.hpp"
#include "idp/errors.hpp"
#include "idp/hypvol.hpp"

namespace idp
{

/** Length of the side (t, s) measured inside t alone. */
inline auto side_length(const AngleVector& x, int t, int s) -> double
{
    return edge_length(x[static_cast<std::size_t>(3 * t + s)],
                       x[static_cast<std::size_t>(3 * t + (s + 1) % 3)],
                       x[static_cast<std::size_t>(3 * t + (s + 2) % 3)]);
}

/** Truncated length (2 log sinh(len/2)) of the side (t, s) inside t alone. */
inline auto truncated_side_length(const AngleVector& x, int t, int s) -> double
{
    return truncated_length(x[static_cast<std::size_t>(3 * t + s)],
                            x[static_cast<std::size_t>(3 * t + (s + 1) % 3)],
                            x[static_cast<std::size_t>(3 * t + (s + 2) % 3)]);
}

/** Total prism volume of an angle system (the objective being maximized). */
inline auto total_volume(const TriangularDecomposition& td, const AngleVector& x) -> double
{
    double v = 0.0;
    for (int t = 0; t < td.triangle_count(); ++t) {
        v += prism_volume(triangle_angles(x, t));
    }
    return v;
}

/** Max mismatch of the two independently measured lengths across interior
 * edges; zero exactly at a uniform structure. */
inline auto length_residual(const TriangularDecomposition& td, const AngleVector& x) -> double
{
    double r = 0.0;
    for (const int e : td.interior_edges()) {
        const auto& ed = td.edge(e);
        r = std::max(r, std::abs(side_length(x, ed.t1, ed.s1) - side_length(x, ed.t2, ed.s2)));
    }
    return r;
}

/** Gradient of the total volume in the conformal basis: per interior edge,
 * the truncated length on the canonical side minus the one on the partner
 * side. */
inline auto volume_gradient(const TriangularDecomposition& td, const ConformalBasis& basis,
                            const AngleVector& x) -> std::vector<double>
{
    std::vector<double> g;
    g.reserve(basis.edges.size());
    for (const int e : basis.edges) {
        const auto& ed = td.edge(e);
        g.push_back(truncated_side_length(x, ed.t1, ed.s1) -
                    truncated_side_length(x, ed.t2, ed.s2));
    }
    return g;
}

/** Same gradient assembled the long way round: the full per-corner gradient
 * of the volume paired against each basis direction. Kept as an independent
 * route for cross-checking. */
inline auto volume_gradient_assembled(const TriangularDecomposition& td,
                                      const ConformalBasis& basis, const AngleVector& x)
    -> std::vector<double>
{
    AngleVector full(static_cast<std::size_t>(td.corner_count()), 0.0);
    for (int t = 0; t < td.triangle_count(); ++t) {
        const AngleTriple grad = prism_gradient(triangle_angles(x, t));
        for (int i = 0; i < 3; ++i) {
            full[static_cast<std::size_t>(3 * t + i)] = grad[static_cast<std::size_t>(i)];
        }
    }
    std::vector<double> g;
    g.reserve(basis.w.size());
    for (const auto& w : basis.w) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            s += full[i] * w[i];
        }
        g.push_back(s);
    }
    return g;
}

/** @brief Knobs for the volume maximizer. */
struct SolverOptions {
    double tol_residual{1e-10}; ///< convergence: max cross-edge length mismatch
    int max_iter{1000};
    double armijo_c1{1e-4};      ///< sufficient-increase fraction
    double backtrack{0.5};       ///< step shrink factor
    int max_backtracks{60};
    bool throw_on_max_iter{true}; ///< throw MaxIterExceeded instead of returning
};

/** @brief Outcome of a maximization run. */
struct SolverResult {
    AngleVector x;                     ///< final angle system
    std::vector<double> coefficients;  ///< conformal coordinates of x - x0
    double objective{0.0};             ///< total prism volume at x
    double residual{0.0};              ///< max cross-edge length mismatch
    double grad_norm{0.0};             ///< max |directional derivative|
    int iterations{0};
    bool converged{false};
    bool near_degenerate{false}; ///< stopped near an all-{0,0,pi} boundary face
};

/** @brief Maximizes the total prism volume over the conformal class of x0.
 *
 * BFGS on the negated objective with a backtracking line search. Two
 * departures from the textbook loop, both needed near the optimum where the
 * objective is flat to machine precision while the length residual is still
 * meaningful: steps are pre-shrunk until the iterate stays a strict angle
 * system, and the sufficient-decrease test carries a machine-epsilon
 * allowance so that sub-resolution improvements are not rejected. A restart
 * to the identity metric handles non-descent directions and erratic steps.
 *
 * x0 must be a strict angle system; its vertex sums (and hence its conformal
 * class) are preserved exactly by construction.
 */
inline auto maximize(const TriangularDecomposition& td, const ConformalBasis& basis,
                     const AngleVector& x0, const SolverOptions& opts = {}) -> SolverResult
{
    if (static_cast<int>(x0.size()) != td.corner_count()) {
        throw DomainError("maximize: angle vector size must be 3 * triangle count");
    }
    if (!strict_system(td, x0)) {
        throw NotInNError("maximize: starting point is not a strict angle system");
    }

    const int m = basis.dimension();
    const int n = td.corner_count();

    SolverResult res;
    res.x = x0;
    res.coefficients.assign(static_cast<std::size_t>(m), 0.0);
    res.residual = length_residual(td, res.x);
    res.objective = total_volume(td, res.x);
    if (m == 0 || res.residual <= opts.tol_residual) {
        res.converged = true;
        res.grad_norm = 0.0;
        if (m > 0) {
            const auto g0 = volume_gradient(td, basis, res.x);
            for (const double gi : g0) {
                res.grad_norm = std::max(res.grad_norm, std::abs(gi));
            }
        }
        return res;
    }

    Eigen::MatrixXd W(n, m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            W(i, j) = basis.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    }
    Eigen::Map<const Eigen::VectorXd> x0v(x0.data(), n);

    const auto angles_at = [&](const Eigen::VectorXd& c) -> AngleVector {
        Eigen::VectorXd xv = x0v + W * c;
        return {xv.data(), xv.data() + n};
    };

    // minimization form: f = -total volume, gf = -gradient
    const auto eval_f = [&](const AngleVector& x) { return -total_volume(td, x); };
    const auto eval_g = [&](const AngleVector& x) -> Eigen::VectorXd {
        const auto g = volume_gradient(td, basis, x);
        Eigen::VectorXd gf(m);
        for (int j = 0; j < m; ++j) {
            gf(j) = -g[static_cast<std::size_t>(j)];
        }
        return gf;
    };

    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    AngleVector x = res.x;
    double f = -res.objective;
    Eigen::VectorXd gf = eval_g(x);
    Eigen::MatrixXd Hk = Eigen::MatrixXd::Identity(m, m);
    bool scaled = false;

    int iter = 0;
    bool stalled = false;
    for (; iter < opts.max_iter; ++iter) {
        res.residual = length_residual(td, x);
        res.grad_norm = gf.cwiseAbs().maxCoeff();
        if (res.residual <= opts.tol_residual) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd p = -Hk * gf;
        if (p.dot(gf) >= 0.0) { // metric went bad; restart steepest
            Hk.setIdentity();
            scaled = false;
            p = -gf;
        }

        const double epsf = 1e-14 * (1.0 + std::abs(f));
        double alpha = 1.0;
        double fNew = 0.0;
        Eigen::VectorXd cNew;
        AngleVector xNew;
        bool accepted = false;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            const double slope = gf.dot(p);
            alpha = 1.0;
            for (int k = 0; k < opts.max_backtracks; ++k) {
                cNew = c + alpha * p;
                xNew = angles_at(cNew);
                if (strict_system(td, xNew)) {
                    fNew = eval_f(xNew);
                    if (fNew <= f + opts.armijo_c1 * alpha * slope + epsf) {
                        accepted = true;
                        break;
                    }
                }
                alpha *= opts.backtrack;
            }
            if (!accepted && attempt == 0) { // retry once from the raw gradient
                Hk.setIdentity();
                scaled = false;
                p = -gf;
            }
        }
        if (!accepted) {
            stalled = true;
            break;
        }

        const Eigen::VectorXd gNew = eval_g(xNew);
        const Eigen::VectorXd s = cNew - c;
        const Eigen::VectorXd y = gNew - gf;
        const double sy = s.dot(y);

        const double gInfOld = gf.cwiseAbs().maxCoeff();
        const double gInfNew = gNew.cwiseAbs().maxCoeff();
        if (gInfNew > 2.0 * gInfOld && fNew > f) {
            Hk.setIdentity(); // erratic step admitted by the epsilon allowance
            scaled = false;
        } else if (sy > 1e-16) {
            if (!scaled) {
                Hk *= sy / y.dot(y);
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd V =
                Eigen::MatrixXd::Identity(m, m) - rho * s * y.transpose();
            Hk = V * Hk * V.transpose() + rho * s * s.transpose();
        }

        c = cNew;
        x = xNew;
        f = fNew;
        gf = gNew;
    }

    res.x = x;
    res.coefficients.assign(c.data(), c.data() + m);
    res.objective = -f;
    res.residual = length_residual(td, x);
    res.grad_norm = gf.cwiseAbs().maxCoeff();
    res.iterations = iter;

    if (!res.converged) {
        const MembershipReport rep = classify(td, x, {1e-9, 1e-5});
        res.near_degenerate = rep.in_bad_set;
        if (opts.throw_on_max_iter) {
            throw MaxIterExceeded(
                std::string(stalled ? "line search stalled" : "iteration cap reached") +
                    " at residual " + std::to_string(res.residual) +
                    (res.near_degenerate ? " near a degenerate boundary face" : ""),
                res.residual, res.x);
        }
    }
    return res;
}

/** Convenience overload computing the basis internally. */
inline auto maximize(const TriangularDecomposition& td, const AngleVector& x0,
                     const SolverOptions& opts = {}) -> SolverResult
{
    return maximize(td, conformal_basis(td), x0, opts);
}

/** @brief Default starting angle system for a decomposition: each vertex
 * target split evenly across the corners at that vertex. Feasible whenever
 * the resulting per-triangle sums are strictly below pi (checked). */
inline auto default_start(const TriangularDecomposition& td) -> AngleVector
{
    AngleVector x(static_cast<std::size_t>(td.corner_count()), 0.0);
    for (int v = 0; v < td.vertex_count(); ++v) {
        const auto& corners = td.vertex_corners(v);
        const double share = td.vertex_target(v) / static_cast<double>(corners.size());
        for (const int cnr : corners) {
            x[static_cast<std::size_t>(cnr)] = share;
        }
    }
    if (!strict_system(td, x)) {
        throw NotInNError("default_start: even split is not a strict angle system; "
                          "supply explicit starting angles");
    }
    return x;
}

} // namespace idp
