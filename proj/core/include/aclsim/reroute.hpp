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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aclsim/sim_time.hpp"
#include "aclsim/topology.hpp"

namespace aclsim {

struct Path {
    std::vector<NodeId> nodes;  // src first, dst last
    std::vector<LinkId> links;  // nodes.size() - 1 entries
    double cost = 0;

    friend bool operator==(const Path&, const Path&) = default;
};

/// Throws ValidationError unless the path is simple, connected in the
/// topology, and runs src → dst.
void validate_path(const Topology& topo, const Path& p, const NodeId& src, const NodeId& dst);

/// Weight of traversing `link` in direction `dir`; nullopt prunes the edge.
using WeightFn = std::function<std::optional<double>(const Link& link, int dir)>;

/// Minimum-total-weight simple path; ties broken by fewer hops, then by the
/// lexicographically smallest node-id sequence. nullopt when unreachable.
/// Throws ValidationError on src == dst or a non-positive weight.
std::optional<Path> shortest_path(const Topology& topo, const NodeId& src, const NodeId& dst,
                                  const WeightFn& weight);

/// Base-weight variant.
std::optional<Path> shortest_path(const Topology& topo, const NodeId& src, const NodeId& dst);

class RouteTable {
public:
    struct Entry {
        Path current;
        Path original;  // first route installed for the pair
        std::uint64_t epoch = 0;
    };

    /// Installs the pair's route; the first install also fixes `original`.
    void set_route(const Topology& topo, const NodeId& src, const NodeId& dst, Path p);

    /// Throws NotFoundError on unknown pair.
    const Entry& entry(const NodeId& src, const NodeId& dst) const;
    bool has_route(const NodeId& src, const NodeId& dst) const;

    /// Restores the original path and bumps the epoch.
    void revert(const NodeId& src, const NodeId& dst);

private:
    friend struct RerouteAccess;
    std::map<std::pair<NodeId, NodeId>, Entry> entries_;
};

/// Carried utilization of `link` in direction `dir` as seen by the monitor.
using LoadFn = std::function<double(const Link& link, int dir)>;

struct RerouteOutcome {
    enum class Kind { NewPath, NoAlternative };
    Kind kind = Kind::NoAlternative;
    Path path;  // set when kind == NewPath
};

/// Shortest path over the subgraph that excludes every direction with load
/// strictly above `threshold`; surviving edges weigh
/// base_weight / (1 - min(load, 0.99)). NewPath replaces the table entry and
/// bumps its epoch. Throws NotFoundError when the pair has no route entry.
RerouteOutcome reroute(RouteTable& table, const Topology& topo, const NodeId& src,
                       const NodeId& dst, const LoadFn& loads, double threshold);

/// One frame waiting in an egress queue; index order is FIFO age (0 oldest).
struct QueuedFrameView {
    std::uint64_t frame_id = 0;
    std::uint8_t priority = 0;
    std::uint64_t wire_bits = 0;
};

/// Frames to evict: lowest priority first, oldest first within a priority,
/// stopping once at least `needed_bits` are freed. Frames with priority at
/// or above `min_protected_priority` are never chosen.
std::vector<std::uint64_t> priority_drop_decision(const std::vector<QueuedFrameView>& queue,
                                                  std::uint64_t needed_bits,
                                                  std::uint8_t min_protected_priority);

/// One JSON line: {"t":..., "flow":..., "old_path":[...], "new_path":[...],
/// "reason":"guard"}.
std::string reroute_json_line(SimTime t, const std::string& flow,
                              const std::vector<LinkId>& old_path,
                              const std::vector<LinkId>& new_path);

}  // namespace aclsim
