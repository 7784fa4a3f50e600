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

/** @file maxflow.hpp
 * A small real-capacity max-flow solver (Dinic's algorithm: breadth-first
 * level graphs plus blocking flows) with residual-reachability queries, used
 * to minimize submodular cut functions arising from pattern inequalities.
 */

#include <limits>
#include <queue>
#include <vector>

namespace idp::detail
{

class MaxFlow
{
public:
    explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    /** Adds a directed arc u -> v and its zero-capacity reverse; returns the
     * arc id (reverse is id ^ 1). */
    auto add_arc(int u, int v, double cap) -> int
    {
        const int id = static_cast<int>(arcs_.size());
        arcs_.push_back({v, cap});
        arcs_.push_back({u, 0.0});
        adj_[static_cast<std::size_t>(u)].push_back(id);
        adj_[static_cast<std::size_t>(v)].push_back(id + 1);
        return id;
    }

    [[nodiscard]] auto residual(int arc) const -> double
    {
        return arcs_[static_cast<std::size_t>(arc)].cap;
    }

    [[nodiscard]] auto node_count() const -> int { return static_cast<int>(adj_.size()); }

    /** Computes the maximum s-t flow. eps is the smallest residual capacity
     * treated as usable; keeps float dust from spinning the augmentation. */
    auto solve(int s, int t, double eps = 1e-12) -> double
    {
        double flow = 0.0;
        while (build_levels(s, t, eps)) {
            iter_.assign(adj_.size(), 0);
            while (true) {
                const double pushed =
                    augment(s, t, std::numeric_limits<double>::infinity(), eps);
                if (pushed <= 0.0) {
                    break;
                }
                flow += pushed;
            }
        }
        return flow;
    }

    /** Nodes reachable from s along residual arcs (the source side of a
     * minimum cut after solve). */
    [[nodiscard]] auto reachable_from(int s, double eps = 1e-12) const -> std::vector<char>
    {
        std::vector<char> seen(adj_.size(), 0);
        std::queue<int> q;
        seen[static_cast<std::size_t>(s)] = 1;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const int id : adj_[static_cast<std::size_t>(u)]) {
                const auto& a = arcs_[static_cast<std::size_t>(id)];
                if (a.cap > eps && !seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    q.push(a.to);
                }
            }
        }
        return seen;
    }

    /** Nodes that can still reach t along residual arcs (complement of the
     * sink side of the maximal minimum cut). */
    [[nodiscard]] auto reaching(int t, double eps = 1e-12) const -> std::vector<char>
    {
        std::vector<char> seen(adj_.size(), 0);
        std::queue<int> q;
        seen[static_cast<std::size_t>(t)] = 1;
        q.push(t);
        while (!q.empty()) {
            const int w = q.front();
            q.pop();
            // every id in adj_[w] is an arc w -> x; its partner id^1 is the
            // arc x -> w, whose residual capacity is what lets x reach t
            for (const int id : adj_[static_cast<std::size_t>(w)]) {
                const int x = arcs_[static_cast<std::size_t>(id)].to;
                if (!seen[static_cast<std::size_t>(x)] &&
                    arcs_[static_cast<std::size_t>(id ^ 1)].cap > eps) {
                    seen[static_cast<std::size_t>(x)] = 1;
                    q.push(x);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        double cap; // residual capacity
    };

    auto build_levels(int s, int t, double eps) -> bool
    {
        level_.assign(adj_.size(), -1);
        std::queue<int> q;
        level_[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const int id : adj_[static_cast<std::size_t>(u)]) {
                const auto& a = arcs_[static_cast<std::size_t>(id)];
                if (a.cap > eps && level_[static_cast<std::size_t>(a.to)] < 0) {
                    level_[static_cast<std::size_t>(a.to)] =
                        level_[static_cast<std::size_t>(u)] + 1;
                    q.push(a.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    auto augment(int u, int t, double limit, double eps) -> double
    {
        if (u == t) {
            return limit;
        }
        auto& it = iter_[static_cast<std::size_t>(u)];
        for (; it < adj_[static_cast<std::size_t>(u)].size(); ++it) {
            const int id = adj_[static_cast<std::size_t>(u)][it];
            auto& a = arcs_[static_cast<std::size_t>(id)];
            if (a.cap <= eps ||
                level_[static_cast<std::size_t>(a.to)] != level_[static_cast<std::size_t>(u)] + 1) {
                continue;
            }
            const double pushed = augment(a.to, t, std::min(limit, a.cap), eps);
            if (pushed > 0.0) {
                a.cap -= pushed;
                arcs_[static_cast<std::size_t>(id ^ 1)].cap += pushed;
                return pushed;
            }
        }
        return 0.0;
    }

    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

} // namespace idp::detail
