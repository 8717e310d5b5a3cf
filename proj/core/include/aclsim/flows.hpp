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
#include <optional>

#include "aclsim/frame.hpp"
#include "aclsim/topology.hpp"

namespace aclsim {

/// Deterministic per-node addressing: the node at position k of
/// Topology::nodes() gets MAC 02:00:00:00:00:(k+1) and IP 10.0.0.(k+1).
/// Scenario files can name these addresses in ACL rules without spelling
/// out an address plan.
std::uint64_t node_mac(std::size_t node_index);
IpAddr node_ip(std::size_t node_index);

/// Position of `node` in Topology::nodes(); throws NotFoundError.
std::size_t node_index(const Topology& topo, const NodeId& node);

/// IPv4 header template for a src→dst flow with synthesized addresses.
/// Throws NotFoundError on unknown nodes.
FrameSpec flow_frame_spec(const Topology& topo, const NodeId& src, const NodeId& dst,
                          std::uint8_t ip_protocol,
                          std::optional<L4Header> l4 = std::nullopt);

}  // namespace aclsim
