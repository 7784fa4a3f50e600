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

/** @file patterns.hpp
 * Circle patterns: one intersection angle theta per edge, in canonical edge
 * order. A pattern is realizable by a uniform structure exactly when
 *
 *  (n1) at each vertex, the psi values of the edges around its flower
 *       (counted once per incidence, i.e. per link of the flower chain)
 *       sum to the vertex target; and
 *  (n2) every nonempty triangle set S satisfies
 *       sum of theta over edges incident to S > pi |S|.
 *
 * (n2) is checked either by exhaustive subset enumeration (exact, small
 * instances) or by minimizing the submodular left-hand side with a max-flow
 * construction: a source arc of capacity pi per triangle, an arc of capacity
 * theta per edge into the sink, and infinite arcs from each triangle to its
 * incident edges. The min cut is pi F + min_S (slack of S), so the flow
 * detects a violating S and the residual graph recovers it.
 *
 * realize_pattern inverts a feasible pattern: a least-squares preimage of
 * the psi targets, an interior-point pass pushing the preimage to a strict
 * angle system inside its conformal class (the pattern is conformally
 * invariant, so this is free), and the volume maximizer to land on the
 * uniform structure.
 */

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "idp/angles.hpp"
#include "idp/complex.hpp"
#include "idp/errors.hpp"
#include "idp/maxflow.hpp"
#include "idp/uniformize.hpp"

namespace idp
{

/** @brief Intersection angles theta, indexed by canonical edge order. */
struct PatternVector {
    std::vector<double> theta;
};

/** Pattern carried by an angle system. */
inline auto pattern_of(const TriangularDecomposition& td, const AngleVector& x) -> PatternVector
{
    PatternVector p;
    p.theta.reserve(static_cast<std::size_t>(td.edge_count()));
    for (int e = 0; e < td.edge_count(); ++e) {
        p.theta.push_back(theta_edge_value(td, x, e));
    }
    return p;
}

/** Per-edge psi targets implied by a pattern: pi - theta on interior edges,
 * pi/2 - theta on boundary edges. */
inline auto psi_targets(const TriangularDecomposition& td, const PatternVector& p)
    -> std::vector<double>
{
    if (static_cast<int>(p.theta.size()) != td.edge_count()) {
        throw DomainError("pattern size must equal edge count");
    }
    std::vector<double> psi(p.theta.size());
    for (int e = 0; e < td.edge_count(); ++e) {
        const double window = td.edge(e).interior() ? std::numbers::pi : 0.5 * std::numbers::pi;
        psi[static_cast<std::size_t>(e)] = window - p.theta[static_cast<std::size_t>(e)];
    }
    return psi;
}

/** Smallest distance of any theta into its open window ((0, pi) interior,
 * (0, pi/2) boundary); nonpositive when some theta is outside. */
inline auto window_margin(const TriangularDecomposition& td, const PatternVector& p) -> double
{
    double margin = std::numeric_limits<double>::infinity();
    for (int e = 0; e < td.edge_count(); ++e) {
        const double window = td.edge(e).interior() ? std::numbers::pi : 0.5 * std::numbers::pi;
        const double th = p.theta[static_cast<std::size_t>(e)];
        margin = std::min({margin, th, window - th});
    }
    return margin;
}

// ---- vertex condition (n1) -----------------------------------------------------

struct VertexSumCheck {
    int vertex;
    double sum;    ///< flower sum of psi values
    double target; ///< prescribed cone angle
};

struct N1Report {
    bool ok{false};
    double max_error{0.0};
    std::vector<VertexSumCheck> sums;
};

inline auto check_n1(const TriangularDecomposition& td, const PatternVector& p,
                     double tol = 1e-9) -> N1Report
{
    const std::vector<double> psi = psi_targets(td, p);
    N1Report rep;
    rep.ok = true;
    for (int v = 0; v < td.vertex_count(); ++v) {
        double sum = 0.0;
        for (const int e : td.flower(v).links) {
            sum += psi[static_cast<std::size_t>(e)];
        }
        const double target = td.vertex_target(v);
        rep.sums.push_back({v, sum, target});
        rep.max_error = std::max(rep.max_error, std::abs(sum - target));
    }
    rep.ok = rep.max_error <= tol;
    return rep;
}

// ---- triangle-set condition (n2) -----------------------------------------------

struct N2Report {
    bool satisfied{false};
    /** Exact minimum slack over nonempty S for the exhaustive check; the
     * recomputed slack of the witness for the flow check when violated,
     * NaN when the flow check is satisfied (the flow only bounds it). */
    double min_slack{0.0};
    std::vector<int> witness; ///< minimizing triangle set (empty if satisfied)
};

/** Slack of a triangle set: sum of theta over edges with at least one
 * incident triangle in S, minus pi |S|. */
inline auto n2_slack(const TriangularDecomposition& td, const PatternVector& p,
                     const std::vector<int>& S) -> double
{
    std::vector<char> inS(static_cast<std::size_t>(td.triangle_count()), 0);
    for (const int t : S) {
        inS[static_cast<std::size_t>(t)] = 1;
    }
    double sum = 0.0;
    for (int e = 0; e < td.edge_count(); ++e) {
        const auto& ed = td.edge(e);
        if (inS[static_cast<std::size_t>(ed.t1)] ||
            (ed.interior() && inS[static_cast<std::size_t>(ed.t2)])) {
            sum += p.theta[static_cast<std::size_t>(e)];
        }
    }
    return sum - std::numbers::pi * static_cast<double>(S.size());
}

/** Exhaustive check over all nonempty triangle sets; exact but exponential,
 * refused above 24 triangles. */
inline auto check_n2_brute(const TriangularDecomposition& td, const PatternVector& p)
    -> N2Report
{
    const int F = td.triangle_count();
    if (F > 24) {
        throw TooLargeError("check_n2_brute: " + std::to_string(F) +
                            " triangles exceeds the exhaustive limit of 24");
    }
    if (static_cast<int>(p.theta.size()) != td.edge_count()) {
        throw DomainError("pattern size must equal edge count");
    }

    std::vector<std::uint32_t> incidence(static_cast<std::size_t>(td.edge_count()), 0);
    for (int e = 0; e < td.edge_count(); ++e) {
        const auto& ed = td.edge(e);
        incidence[static_cast<std::size_t>(e)] |= 1U << ed.t1;
        if (ed.interior()) {
            incidence[static_cast<std::size_t>(e)] |= 1U << ed.t2;
        }
    }

    N2Report rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    std::uint32_t best = 0;
    const std::uint32_t all = (1U << F) - 1U;
    for (std::uint32_t mask = 1; mask <= all; ++mask) {
        double sum = 0.0;
        for (int e = 0; e < td.edge_count(); ++e) {
            if (incidence[static_cast<std::size_t>(e)] & mask) {
                sum += p.theta[static_cast<std::size_t>(e)];
            }
        }
        const double slack = sum - std::numbers::pi * std::popcount(mask);
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            best = mask;
        }
    }
    rep.satisfied = rep.min_slack > 0.0;
    if (!rep.satisfied) {
        for (int t = 0; t < F; ++t) {
            if (best & (1U << t)) {
                rep.witness.push_back(t);
            }
        }
    }
    return rep;
}

/** Max-flow check; near-linear in practice. eps is the strictness band: a
 * minimum within eps of zero counts as a violation of the strict inequality,
 * and residual capacities below eps are treated as saturated. */
inline auto check_n2_flow(const TriangularDecomposition& td, const PatternVector& p,
                          double eps = 1e-9) -> N2Report
{
    const int F = td.triangle_count();
    const int E = td.edge_count();
    if (static_cast<int>(p.theta.size()) != E) {
        throw DomainError("pattern size must equal edge count");
    }
    for (const double th : p.theta) {
        if (!(th >= 0.0)) {
            throw DomainError("check_n2_flow: negative theta; capacities must be nonnegative");
        }
    }

    const int src = 0;
    const int sink = F + E + 1;
    const auto tri = [&](int t) { return 1 + t; };
    const auto edg = [&](int e) { return 1 + F + e; };
    constexpr double inf = 1e18;

    detail::MaxFlow net(F + E + 2);
    for (int t = 0; t < F; ++t) {
        net.add_arc(src, tri(t), std::numbers::pi);
    }
    for (int e = 0; e < E; ++e) {
        const auto& ed = td.edge(e);
        net.add_arc(tri(ed.t1), edg(e), inf);
        if (ed.interior() && ed.t2 != ed.t1) {
            net.add_arc(tri(ed.t2), edg(e), inf);
        }
        net.add_arc(edg(e), sink, p.theta[static_cast<std::size_t>(e)]);
    }

    const double flow = net.solve(src, sink);
    const double full = std::numbers::pi * static_cast<double>(F);

    N2Report rep;
    if (flow < full - eps) {
        // a strictly negative minimum: its minimal minimizer is the source
        // side of the minimum cut
        const auto seen = net.reachable_from(src, eps);
        for (int t = 0; t < F; ++t) {
            if (seen[static_cast<std::size_t>(tri(t))]) {
                rep.witness.push_back(t);
            }
        }
        rep.satisfied = false;
        rep.min_slack = n2_slack(td, p, rep.witness);
        return rep;
    }

    // the minimum over nonempty sets may still be ~0, which violates the
    // strict inequality; the maximal minimizer is the complement of the
    // nodes that can still reach the sink
    const auto toSink = net.reaching(sink, eps);
    std::vector<int> tight;
    for (int t = 0; t < F; ++t) {
        if (!toSink[static_cast<std::size_t>(tri(t))]) {
            tight.push_back(t);
        }
    }
    if (!tight.empty()) {
        rep.satisfied = false;
        rep.witness = tight;
        rep.min_slack = n2_slack(td, p, rep.witness);
        return rep;
    }
    rep.satisfied = true;
    rep.min_slack = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

// ---- realization ---------------------------------------------------------------

/** @brief Knobs for realize_pattern. */
struct RealizeOptions {
    double tol_n1{1e-9};
    double n2_eps{1e-9};
    bool n2_exhaustive{false}; ///< use the brute check instead of the flow
    std::vector<double> phase2_temperatures{1e-1, 1e-2, 1e-3, 1e-4};
    int phase2_iterations{400}; ///< ascent steps per temperature
    double lsq_tol{1e-8};       ///< allowed residual of the psi least-squares solve
    double tol_pattern{1e-6};   ///< required |theta(result) - target|
    SolverOptions solver{};
};

/** @brief Everything produced on the way to a realization. */
struct RealizeResult {
    AngleVector x;          ///< uniform structure carrying the pattern
    AngleVector preimage;   ///< least-squares psi preimage (possibly non-strict)
    double phase2_slack;    ///< strictness margin achieved before maximizing
    SolverResult solver;    ///< volume maximization record
    double pattern_error;   ///< max |theta(x) - target|
};

inline auto realize_pattern(const TriangularDecomposition& td, const PatternVector& p,
                            const RealizeOptions& opts = {}) -> RealizeResult
{
    const int E = td.edge_count();
    const int n = td.corner_count();
    if (static_cast<int>(p.theta.size()) != E) {
        throw DomainError("pattern size must equal edge count");
    }

    // feasibility: windows, vertex sums, triangle-set inequalities
    {
        std::vector<int> outside;
        for (int e = 0; e < E; ++e) {
            const double window =
                td.edge(e).interior() ? std::numbers::pi : 0.5 * std::numbers::pi;
            const double th = p.theta[static_cast<std::size_t>(e)];
            if (!(th > 0.0) || !(th < window)) {
                outside.push_back(e);
            }
        }
        if (!outside.empty()) {
            throw InfeasiblePattern("pattern angle outside its open window", "window",
                                    outside, window_margin(td, p));
        }
    }
    {
        const N1Report n1 = check_n1(td, p, opts.tol_n1);
        if (!n1.ok) {
            std::vector<int> bad;
            for (const auto& s : n1.sums) {
                if (std::abs(s.sum - s.target) > opts.tol_n1) {
                    bad.push_back(s.vertex);
                }
            }
            throw InfeasiblePattern("flower psi sums do not match vertex targets", "n1", bad,
                                    -n1.max_error);
        }
    }
    {
        const N2Report n2 =
            opts.n2_exhaustive ? check_n2_brute(td, p) : check_n2_flow(td, p, opts.n2_eps);
        if (!n2.satisfied) {
            throw InfeasiblePattern("triangle-set inequality violated", "n2", n2.witness,
                                    n2.min_slack);
        }
    }

    // phase 1: min-norm preimage of the psi targets
    const std::vector<double> psi = psi_targets(td, p);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(E, n);
    for (int e = 0; e < E; ++e) {
        for (const auto& [c, coef] : psi_edge(td, e).terms) {
            M(e, c) += coef;
        }
    }
    Eigen::Map<const Eigen::VectorXd> rhs(psi.data(), E);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(M);
    Eigen::VectorXd xls = cod.solve(rhs);
    const double lsqResidual = (M * xls - rhs).cwiseAbs().maxCoeff();
    if (lsqResidual > opts.lsq_tol) {
        throw InfeasiblePattern("psi targets not in the range of the edge functionals",
                                "psi-solve", {}, -lsqResidual);
    }

    RealizeResult out;
    out.preimage.assign(xls.data(), xls.data() + n);

    // phase 2: walk inside the conformal class (psi values stay fixed) to a
    // strictly feasible angle system, maximizing the smallest strictness
    // slack through a descending-temperature smoothed minimum
    const ConformalBasis basis = conformal_basis(td);
    const int m = basis.dimension();
    const int F = td.triangle_count();
    const int rows = 2 * n + F;

    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            W(i, j) = basis.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    }

    // slack(c) = s0 + B c, rows: angle > 0, angle < pi, triangle sum < pi
    Eigen::MatrixXd B(rows, m);
    Eigen::VectorXd s0(rows);
    s0.head(n) = xls;
    B.topRows(n) = W;
    s0.segment(n, n) = Eigen::VectorXd::Constant(n, std::numbers::pi) - xls;
    B.middleRows(n, n) = -W;
    for (int t = 0; t < F; ++t) {
        double sigma = 0.0;
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
        for (int i = 0; i < 3; ++i) {
            sigma += xls(3 * t + i);
            row -= W.row(3 * t + i);
        }
        s0(2 * n + t) = std::numbers::pi - sigma;
        B.row(2 * n + t) = row;
    }

    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    const auto min_slack = [&](const Eigen::VectorXd& cc) -> double {
        return (s0 + B * cc).minCoeff();
    };

    if (m > 0) {
        for (const double temp : opts.phase2_temperatures) {
            // smoothed minimum: g(c) = -T log sum exp(-slack_i / T)
            const auto eval = [&](const Eigen::VectorXd& cc, Eigen::VectorXd* grad) -> double {
                const Eigen::VectorXd s = s0 + B * cc;
                const Eigen::VectorXd z = -s / temp;
                const double zmax = z.maxCoeff();
                const Eigen::VectorXd ez = (z.array() - zmax).exp();
                const double sum = ez.sum();
                if (grad != nullptr) {
                    *grad = B.transpose() * (ez / sum);
                }
                return -temp * (zmax + std::log(sum));
            };
            Eigen::VectorXd grad(m);
            double g = eval(c, &grad);
            for (int it = 0; it < opts.phase2_iterations; ++it) {
                if (grad.cwiseAbs().maxCoeff() < 1e-12) {
                    break;
                }
                const Eigen::VectorXd d = grad;
                const double slope = grad.dot(d);
                double alpha = 1.0;
                bool moved = false;
                for (int k = 0; k < 60; ++k) {
                    const Eigen::VectorXd cNew = c + alpha * d;
                    Eigen::VectorXd gradNew(m);
                    const double gNew = eval(cNew, &gradNew);
                    if (gNew >= g + 1e-4 * alpha * slope) {
                        c = cNew;
                        g = gNew;
                        grad = gradNew;
                        moved = true;
                        break;
                    }
                    alpha *= 0.5;
                }
                if (!moved) {
                    break;
                }
            }
        }
    }

    out.phase2_slack = min_slack(c);
    if (!(out.phase2_slack > 0.0)) {
        throw Phase2Failure("no strictly feasible angle system found in the conformal class",
                            out.phase2_slack);
    }

    Eigen::VectorXd xiv = xls + W * c;
    AngleVector xInterior(xiv.data(), xiv.data() + n);

    // phase 3: maximize the volume to land on the uniform structure
    out.solver = maximize(td, basis, xInterior, opts.solver);
    out.x = out.solver.x;

    const PatternVector realized = pattern_of(td, out.x);
    out.pattern_error = 0.0;
    for (int e = 0; e < E; ++e) {
        out.pattern_error =
            std::max(out.pattern_error, std::abs(realized.theta[static_cast<std::size_t>(e)] -
                                                 p.theta[static_cast<std::size_t>(e)]));
    }
    if (out.pattern_error > opts.tol_pattern) {
        throw CrossCheckFailure("realized pattern does not match its prescription",
                                out.pattern_error, opts.tol_pattern);
    }
    return out;
}

} // namespace idp
