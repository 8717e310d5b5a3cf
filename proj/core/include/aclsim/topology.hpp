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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aclsim/acl.hpp"

namespace aclsim {

using NodeId = std::string;

struct Endpoint {
    NodeId node;
    PortId port;
    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Full-duplex link; direction 0 runs a→b, direction 1 runs b→a.
struct Link {
    LinkId id;
    Endpoint a;
    Endpoint b;
    double rate_bps = 1e9;
    double base_weight = 1.0;
};

struct Neighbor {
    LinkId link;
    NodeId peer;
};

/// Immutable after load; shareable across threads.
class Topology {
public:
    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    const std::map<std::string, std::vector<LinkId>>& subnetworks() const { return subnets_; }

    bool has_node(const NodeId& n) const;
    /// Throws NotFoundError on unknown id.
    const Link& link(const LinkId& id) const;
    std::size_t link_index(const LinkId& id) const;

    /// Adjacency in ascending link_id order. Throws NotFoundError.
    const std::vector<Neighbor>& neighbors(const NodeId& n) const;

    /// Direction index for traffic leaving `from` over `l` (0: a→b, 1: b→a).
    /// Throws NotFoundError when `from` is not an endpoint of `l`.
    static int direction_from(const Link& l, const NodeId& from);

    /// The endpoint of `l` on `node` / opposite `node`.
    static const Endpoint& endpoint_on(const Link& l, const NodeId& node);
    static const Endpoint& endpoint_opposite(const Link& l, const NodeId& node);

    friend Topology load_topology(const std::string& document, double default_rate_bps);

private:
    std::vector<NodeId> nodes_;
    std::vector<Link> links_;
    std::map<std::string, std::vector<LinkId>> subnets_;
    std::map<NodeId, std::vector<Neighbor>> adjacency_;
    std::map<LinkId, std::size_t> link_by_id_;
};

// Document grammar, one directive per line ('#' comments allowed):
//   node <id>
//   link <id> <node>:<port> <node>:<port> [rate <bps>] [weight <w>]
//   subnet <name> <link-id> [<link-id> ...]
// or a single line
//   preset <name>
// naming a built-in layout: "paper10" (10 nodes / 18 links, generator n01,
// receiver n10, burst sources n03 and n05), "twopath" (4 nodes, two disjoint
// 2-hop paths), "chain3" (3 nodes in a line).

/// Throws SchemaError with a line number on malformed documents.
Topology load_topology(const std::string& document, double default_rate_bps = 1e9);

/// The document text behind a preset name; throws NotFoundError.
std::string preset_document(const std::string& name);

}  // namespace aclsim
