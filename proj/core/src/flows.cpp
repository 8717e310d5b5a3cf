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

#include "aclsim/flows.hpp"

#include <algorithm>

#include "aclsim/errors.hpp"

namespace aclsim {

std::uint64_t node_mac(std::size_t node_index) {
    return 0x020000000000ull | static_cast<std::uint64_t>(node_index + 1);
}

IpAddr node_ip(std::size_t node_index) {
    IpAddr addr;
    addr.version = 4;
    addr.hi = 0;
    addr.lo = (10ull << 24) | static_cast<std::uint64_t>(node_index + 1);
    return addr;
}

std::size_t node_index(const Topology& topo, const NodeId& node) {
    const auto& nodes = topo.nodes();
    auto it = std::find(nodes.begin(), nodes.end(), node);
    if (it == nodes.end()) throw NotFoundError("unknown node: " + node);
    return static_cast<std::size_t>(it - nodes.begin());
}

FrameSpec flow_frame_spec(const Topology& topo, const NodeId& src, const NodeId& dst,
                          std::uint8_t ip_protocol, std::optional<L4Header> l4) {
    const std::size_t si = node_index(topo, src);
    const std::size_t di = node_index(topo, dst);
    FrameSpec spec;
    spec.ethertype = kEthertypeIpv4;
    spec.src_mac = node_mac(si);
    spec.dst_mac = node_mac(di);
    IpHeader ip;
    ip.version = 4;
    ip.src = node_ip(si);
    ip.dst = node_ip(di);
    ip.protocol = ip_protocol;
    spec.ip = ip;
    spec.l4 = l4;
    return spec;
}

}  // namespace aclsim
