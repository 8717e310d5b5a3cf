/*
 * Copyright (c) 2026 aclsim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Reference routing oracle: enumerate every simple path with depth-first
// search and keep the best under the documented order (cost, then hop
// count, then lexicographic node sequence). Exponential, fine for the
// small graphs the tests use.

#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aclsim/reroute.hpp"
#include "aclsim/topology.hpp"

namespace aclsim::testing {

inline bool path_better(const Path& a, const Path& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
    return a.nodes < b.nodes;
}

inline void enumerate_paths(const Topology& topo, const NodeId& at, const NodeId& dst,
                            const WeightFn& weight, std::vector<NodeId>& nodes,
                            std::vector<LinkId>& links, double cost,
                            std::optional<Path>& best) {
    if (at == dst) {
        Path p{nodes, links, cost};
        if (!best || path_better(p, *best)) best = p;
        return;
    }
    for (const Neighbor& nb : topo.neighbors(at)) {
        bool seen = false;
        for (const NodeId& n : nodes)
            if (n == nb.peer) seen = true;
        if (seen) continue;
        const Link& l = topo.link(nb.link);
        std::optional<double> w = weight(l, Topology::direction_from(l, at));
        if (!w) continue;
        nodes.push_back(nb.peer);
        links.push_back(nb.link);
        enumerate_paths(topo, nb.peer, dst, weight, nodes, links, cost + *w, best);
        nodes.pop_back();
        links.pop_back();
    }
}

/// Best simple path by exhaustive enumeration; nullopt when none exists.
inline std::optional<Path> oracle_best_path(const Topology& topo, const NodeId& src,
                                            const NodeId& dst, const WeightFn& weight) {
    std::vector<NodeId> nodes{src};
    std::vector<LinkId> links;
    std::optional<Path> best;
    enumerate_paths(topo, src, dst, weight, nodes, links, 0.0, best);
    return best;
}

inline WeightFn base_weight_fn() {
    return [](const Link& l, int) { return std::optional<double>(l.base_weight); };
}

/// A random topology document with `n` nodes: a random spanning tree keeps
/// it connected, plus extra random links; weights are small integers so
/// cost ties happen often enough to exercise the tie-break.
inline std::string random_graph_document(std::mt19937_64& rng, std::size_t n) {
    auto name = [](std::size_t i) { return "g" + std::to_string(i + 1); };
    std::string doc;
    for (std::size_t i = 0; i < n; ++i) doc += "node " + name(i) + "\n";
    std::size_t link_no = 0;
    std::vector<std::size_t> port_next(n, 0);
    auto add_link = [&](std::size_t a, std::size_t b) {
        ++link_no;
        std::string id = link_no < 10 ? "E0" + std::to_string(link_no)
                                      : "E" + std::to_string(link_no);
        int weight = 1 + static_cast<int>(rng() % 4);
        doc += "link " + id + " " + name(a) + ":" + std::to_string(port_next[a]++) + " " +
               name(b) + ":" + std::to_string(port_next[b]++) + " weight " +
               std::to_string(weight) + "\n";
    };
    for (std::size_t i = 1; i < n; ++i) add_link(rng() % i, i);
    std::size_t extra = rng() % (n + 1);
    for (std::size_t e = 0; e < extra && link_no < 2 * n; ++e) {
        std::size_t a = rng() % n;
        std::size_t b = rng() % n;
        if (a != b) add_link(a, b);
    }
    return doc;
}

}  // namespace aclsim::testing
