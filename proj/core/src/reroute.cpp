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

#include "aclsim/reroute.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "aclsim/errors.hpp"

namespace aclsim {

void validate_path(const Topology& topo, const Path& p, const NodeId& src, const NodeId& dst) {
    if (p.nodes.empty() || p.nodes.front() != src || p.nodes.back() != dst)
        throw ValidationError("path does not run " + src + " -> " + dst);
    if (p.links.size() + 1 != p.nodes.size())
        throw ValidationError("path has " + std::to_string(p.links.size()) + " links for " +
                              std::to_string(p.nodes.size()) + " nodes");
    std::set<NodeId> seen;
    for (const auto& n : p.nodes)
        if (!seen.insert(n).second) throw ValidationError("path repeats node " + n);
    for (std::size_t i = 0; i < p.links.size(); ++i) {
        const Link& l = topo.link(p.links[i]);
        const NodeId& from = p.nodes[i];
        const NodeId& to = p.nodes[i + 1];
        bool forward = l.a.node == from && l.b.node == to;
        bool backward = l.b.node == from && l.a.node == to;
        if (!forward && !backward)
            throw ValidationError("link " + l.id + " does not join " + from + " and " + to);
    }
}

namespace {

// Label-setting search over full path labels. The composite key
// (cost, hops, node sequence) strictly grows along every edge (weights are
// positive), so settling the minimum label per node is exact, including the
// tie-breaks. Graphs here are small; labels carrying whole paths are cheap.
struct Label {
    double cost;
    std::vector<NodeId> nodes;
    std::vector<LinkId> links;

    bool operator<(const Label& o) const {
        if (cost != o.cost) return cost < o.cost;
        if (nodes.size() != o.nodes.size()) return nodes.size() < o.nodes.size();
        return nodes < o.nodes;
    }
};

}  // namespace

std::optional<Path> shortest_path(const Topology& topo, const NodeId& src, const NodeId& dst,
                                  const WeightFn& weight) {
    if (src == dst) throw ValidationError("shortest_path needs distinct endpoints");
    if (!topo.has_node(src)) throw NotFoundError("unknown node \"" + src + "\"");
    if (!topo.has_node(dst)) throw NotFoundError("unknown node \"" + dst + "\"");

    std::set<Label> frontier;
    std::set<NodeId> settled;
    frontier.insert({0.0, {src}, {}});

    while (!frontier.empty()) {
        Label cur = *frontier.begin();
        frontier.erase(frontier.begin());
        const NodeId& at = cur.nodes.back();
        if (settled.count(at)) continue;
        settled.insert(at);
        if (at == dst) return Path{std::move(cur.nodes), std::move(cur.links), cur.cost};

        for (const Neighbor& nb : topo.neighbors(at)) {
            if (settled.count(nb.peer)) continue;
            const Link& l = topo.link(nb.link);
            auto w = weight(l, Topology::direction_from(l, at));
            if (!w) continue;
            if (*w <= 0) throw ValidationError("non-positive weight on link " + l.id);
            Label next = cur;
            next.cost += *w;
            next.nodes.push_back(nb.peer);
            next.links.push_back(nb.link);
            frontier.insert(std::move(next));
        }
    }
    return std::nullopt;
}

std::optional<Path> shortest_path(const Topology& topo, const NodeId& src, const NodeId& dst) {
    return shortest_path(topo, src, dst,
                         [](const Link& l, int) { return std::optional<double>(l.base_weight); });
}

void RouteTable::set_route(const Topology& topo, const NodeId& src, const NodeId& dst, Path p) {
    validate_path(topo, p, src, dst);
    auto key = std::make_pair(src, dst);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        Entry e;
        e.current = p;
        e.original = std::move(p);
        e.epoch = 0;
        entries_.emplace(std::move(key), std::move(e));
    } else {
        it->second.current = std::move(p);
        ++it->second.epoch;
    }
}

const RouteTable::Entry& RouteTable::entry(const NodeId& src, const NodeId& dst) const {
    auto it = entries_.find(std::make_pair(src, dst));
    if (it == entries_.end())
        throw NotFoundError("no route entry for " + src + " -> " + dst);
    return it->second;
}

bool RouteTable::has_route(const NodeId& src, const NodeId& dst) const {
    return entries_.count(std::make_pair(src, dst)) != 0;
}

void RouteTable::revert(const NodeId& src, const NodeId& dst) {
    auto it = entries_.find(std::make_pair(src, dst));
    if (it == entries_.end())
        throw NotFoundError("no route entry for " + src + " -> " + dst);
    it->second.current = it->second.original;
    ++it->second.epoch;
}

RerouteOutcome reroute(RouteTable& table, const Topology& topo, const NodeId& src,
                       const NodeId& dst, const LoadFn& loads, double threshold) {
    if (!table.has_route(src, dst))
        throw NotFoundError("no route entry for " + src + " -> " + dst);

    auto penalized = [&](const Link& l, int dir) -> std::optional<double> {
        double u = loads(l, dir);
        if (u > threshold) return std::nullopt;
        return l.base_weight / (1.0 - std::min(u, 0.99));
    };
    auto found = shortest_path(topo, src, dst, penalized);
    if (!found) return RerouteOutcome{RerouteOutcome::Kind::NoAlternative, {}};

    table.set_route(topo, src, dst, *found);
    return RerouteOutcome{RerouteOutcome::Kind::NewPath, std::move(*found)};
}

std::vector<std::uint64_t> priority_drop_decision(const std::vector<QueuedFrameView>& queue,
                                                  std::uint64_t needed_bits,
                                                  std::uint8_t min_protected_priority) {
    // Candidate order: priority ascending, FIFO age ascending within a
    // priority. Stable sort on priority preserves the age order.
    std::vector<std::size_t> order(queue.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return queue[x].priority < queue[y].priority;
    });

    std::vector<std::uint64_t> drops;
    std::uint64_t freed = 0;
    for (std::size_t idx : order) {
        if (freed >= needed_bits) break;
        if (queue[idx].priority >= min_protected_priority) break;
        drops.push_back(queue[idx].frame_id);
        freed += queue[idx].wire_bits;
    }
    return drops;
}

std::string reroute_json_line(SimTime t, const std::string& flow,
                              const std::vector<LinkId>& old_path,
                              const std::vector<LinkId>& new_path) {
    auto format_number = [](double v) {
        char buf[64];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, p);
    };
    auto link_array = [](const std::vector<LinkId>& ids) {
        std::string out = "[";
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i) out += ',';
            out += '"' + ids[i] + '"';
        }
        return out + "]";
    };
    return "{\"t\":" + format_number(ps_to_seconds(t)) + ",\"flow\":\"" + flow +
           "\",\"old_path\":" + link_array(old_path) + ",\"new_path\":" + link_array(new_path) +
           ",\"reason\":\"guard\"}";
}

}  // namespace aclsim
