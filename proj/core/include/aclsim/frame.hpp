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

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "aclsim/sim_time.hpp"

namespace aclsim {

inline constexpr std::uint32_t kMinFrameBytes = 64;
inline constexpr std::uint32_t kMaxFrameBytes = 1518;
inline constexpr std::uint32_t kMaxTaggedFrameBytes = 1522;
inline constexpr std::uint32_t kMinIcmpFrameBytes = 74;
/// Preamble + SFD (8 bytes) and inter-frame gap (12 bytes).
inline constexpr std::uint32_t kWireOverheadBytes = 20;

inline constexpr std::uint8_t kIpProtoIcmp = 1;
inline constexpr std::uint8_t kIpProtoTcp = 6;
inline constexpr std::uint8_t kIpProtoUdp = 17;
inline constexpr std::uint16_t kEthertypeIpv4 = 0x0800;
inline constexpr std::uint16_t kEthertypeIpv6 = 0x86DD;

inline constexpr std::uint16_t kMaxVlanId = 4095;
inline constexpr std::uint8_t kMaxDscp = 63;
inline constexpr std::uint8_t kMaxPcp = 7;
inline constexpr std::uint8_t kMaxPriority = 7;

/// IPv4 or IPv6 address as two big-endian 64-bit words.
/// v4 addresses live in the low 32 bits of `lo` with `hi` zero.
struct IpAddr {
    std::uint8_t version = 4;
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    static IpAddr v4(std::uint32_t addr) { return IpAddr{4, 0, addr}; }
    static IpAddr v6(std::uint64_t hi, std::uint64_t lo) { return IpAddr{6, hi, lo}; }

    friend bool operator==(const IpAddr&, const IpAddr&) = default;
};

/// Bitwise AND of address bits; version follows the left operand.
inline IpAddr operator&(const IpAddr& a, const IpAddr& b) {
    return IpAddr{a.version, a.hi & b.hi, a.lo & b.lo};
}

/// Mask covering the first `prefix` bits of a v4/v6 address.
IpAddr prefix_mask(std::uint8_t version, int prefix);

std::string format_ip(const IpAddr& addr);
IpAddr parse_ip(const std::string& text);  // throws ValidationError

std::string format_mac(std::uint64_t mac);
std::uint64_t parse_mac(const std::string& text);  // throws ValidationError

struct VlanTag {
    std::uint16_t outer_id = 0;  // 0..4095
    std::optional<std::uint16_t> inner_id;
    std::uint8_t pcp = 0;  // 0..7

    friend bool operator==(const VlanTag&, const VlanTag&) = default;
};

struct IpHeader {
    std::uint8_t version = 4;  // 4 or 6, must agree with the addresses
    IpAddr src;
    IpAddr dst;
    std::uint8_t protocol = 0;
    std::uint8_t dscp = 0;  // 0..63

    friend bool operator==(const IpHeader&, const IpHeader&) = default;
};

struct L4Header {
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    std::uint8_t tcp_flags = 0;

    friend bool operator==(const L4Header&, const L4Header&) = default;
};

/// A simulated Ethernet/IP frame. Headers are symbolic field structs;
/// frames are immutable once built and safe to move across threads.
struct Frame {
    std::uint64_t frame_id = 0;
    std::uint32_t size_bytes = kMinFrameBytes;  // on-wire bytes, no preamble/IFG
    std::uint16_t ethertype = 0;
    std::uint64_t src_mac = 0;  // low 48 bits
    std::uint64_t dst_mac = 0;
    std::optional<VlanTag> vlan;
    std::optional<IpHeader> ip;
    std::optional<L4Header> l4;
    std::uint8_t priority = 0;  // derived: VLAN PCP, else DSCP high bits, else 0
    std::uint64_t flow_id = 0;
    SimTime created_at = 0;
    SimTime last_hop_arrival = 0;
};

/// Header template for make_frame.
struct FrameSpec {
    std::uint16_t ethertype = kEthertypeIpv4;
    std::uint64_t src_mac = 0;
    std::uint64_t dst_mac = 0;
    std::optional<VlanTag> vlan;
    std::optional<IpHeader> ip;
    std::optional<L4Header> l4;
    std::uint64_t frame_id = 0;
    std::uint64_t flow_id = 0;
};

/// Builds a frame and derives its priority.
/// Throws ValidationError (names the offending field) or SizeError.
Frame make_frame(const FrameSpec& spec, std::uint32_t size_bytes, SimTime created_at);

/// Throws if any frame invariant is violated. make_frame calls this;
/// property tests call it directly.
void validate_frame(const Frame& f);

/// Bits occupying the wire: payload bytes plus preamble/SFD and IFG.
inline std::uint64_t wire_bits_for_size(std::uint32_t size_bytes) {
    return static_cast<std::uint64_t>(size_bytes + kWireOverheadBytes) * 8u;
}

inline std::uint64_t wire_bits(const Frame& f) { return wire_bits_for_size(f.size_bytes); }

}  // namespace aclsim
