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

#include "aclsim/frame.hpp"

#include <arpa/inet.h>

#include <cstdio>
#include <cstring>

#include "aclsim/errors.hpp"

namespace aclsim {

namespace {

constexpr std::uint64_t kMacMask = 0xFFFF'FFFF'FFFFULL;

void require(bool ok, const char* field, const std::string& detail) {
    if (!ok) throw ValidationError(std::string(field) + ": " + detail);
}

}  // namespace

IpAddr prefix_mask(std::uint8_t version, int prefix) {
    const int width = version == 4 ? 32 : 128;
    if (prefix < 0 || prefix > width)
        throw ValidationError("prefix: out of range for IPv" + std::to_string(version));
    IpAddr m{version, 0, 0};
    if (version == 4) {
        m.lo = prefix == 0 ? 0 : (0xFFFFFFFFULL << (32 - prefix)) & 0xFFFFFFFFULL;
        return m;
    }
    const int hi_bits = prefix > 64 ? 64 : prefix;
    const int lo_bits = prefix > 64 ? prefix - 64 : 0;
    m.hi = hi_bits == 0 ? 0 : ~0ULL << (64 - hi_bits);
    m.lo = lo_bits == 0 ? 0 : ~0ULL << (64 - lo_bits);
    return m;
}

std::string format_ip(const IpAddr& addr) {
    char buf[INET6_ADDRSTRLEN] = {};
    if (addr.version == 4) {
        const std::uint32_t be = htonl(static_cast<std::uint32_t>(addr.lo));
        inet_ntop(AF_INET, &be, buf, sizeof buf);
    } else {
        unsigned char bytes[16];
        for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(addr.hi >> (56 - 8 * i));
        for (int i = 0; i < 8; ++i)
            bytes[8 + i] = static_cast<unsigned char>(addr.lo >> (56 - 8 * i));
        inet_ntop(AF_INET6, bytes, buf, sizeof buf);
    }
    return buf;
}

IpAddr parse_ip(const std::string& text) {
    if (text.find(':') == std::string::npos) {
        std::uint32_t be = 0;
        if (inet_pton(AF_INET, text.c_str(), &be) != 1)
            throw ValidationError("ip: cannot parse '" + text + "'");
        return IpAddr::v4(ntohl(be));
    }
    unsigned char bytes[16];
    if (inet_pton(AF_INET6, text.c_str(), bytes) != 1)
        throw ValidationError("ip: cannot parse '" + text + "'");
    std::uint64_t hi = 0, lo = 0;
    for (int i = 0; i < 8; ++i) hi = hi << 8 | bytes[i];
    for (int i = 0; i < 8; ++i) lo = lo << 8 | bytes[8 + i];
    return IpAddr::v6(hi, lo);
}

std::string format_mac(std::uint64_t mac) {
    char buf[18];
    std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x",
                  static_cast<unsigned>(mac >> 40 & 0xFF), static_cast<unsigned>(mac >> 32 & 0xFF),
                  static_cast<unsigned>(mac >> 24 & 0xFF), static_cast<unsigned>(mac >> 16 & 0xFF),
                  static_cast<unsigned>(mac >> 8 & 0xFF), static_cast<unsigned>(mac & 0xFF));
    return buf;
}

std::uint64_t parse_mac(const std::string& text) {
    unsigned b[6];
    char tail = 0;
    if (std::sscanf(text.c_str(), "%x:%x:%x:%x:%x:%x%c", &b[0], &b[1], &b[2], &b[3], &b[4], &b[5],
                    &tail) != 6)
        throw ValidationError("mac: cannot parse '" + text + "'");
    std::uint64_t mac = 0;
    for (unsigned v : b) {
        if (v > 0xFF) throw ValidationError("mac: octet out of range in '" + text + "'");
        mac = mac << 8 | v;
    }
    return mac;
}

void validate_frame(const Frame& f) {
    if (f.size_bytes < kMinFrameBytes)
        throw SizeError("size_bytes: below minimum " + std::to_string(kMinFrameBytes));
    const std::uint32_t max = f.vlan ? kMaxTaggedFrameBytes : kMaxFrameBytes;
    if (f.size_bytes > max) {
        if (f.size_bytes <= kMaxTaggedFrameBytes)
            throw SizeError("size_bytes: above 1518 requires a VLAN tag");
        throw SizeError("size_bytes: above maximum " + std::to_string(kMaxTaggedFrameBytes));
    }
    require((f.src_mac & ~kMacMask) == 0, "src_mac", "more than 48 bits");
    require((f.dst_mac & ~kMacMask) == 0, "dst_mac", "more than 48 bits");
    if (f.vlan) {
        require(f.vlan->outer_id <= 4095, "vlan.outer_id", "above 4095");
        if (f.vlan->inner_id) require(*f.vlan->inner_id <= 4095, "vlan.inner_id", "above 4095");
        require(f.vlan->pcp <= 7, "vlan.pcp", "above 7");
    }
    if (f.ip) {
        require(f.ip->version == 4 || f.ip->version == 6, "ip.version", "must be 4 or 6");
        require(f.ip->src.version == f.ip->version, "ip.src_addr", "version mismatch");
        require(f.ip->dst.version == f.ip->version, "ip.dst_addr", "version mismatch");
        if (f.ip->version == 4) {
            require(f.ip->src.hi == 0 && f.ip->src.lo <= 0xFFFFFFFFULL, "ip.src_addr",
                    "not a 32-bit address");
            require(f.ip->dst.hi == 0 && f.ip->dst.lo <= 0xFFFFFFFFULL, "ip.dst_addr",
                    "not a 32-bit address");
        }
        require(f.ip->dscp <= 63, "ip.dscp", "above 63");
        if (f.ip->protocol == kIpProtoIcmp && f.size_bytes < kMinIcmpFrameBytes)
            throw SizeError("size_bytes: ICMP frame below " + std::to_string(kMinIcmpFrameBytes) +
                            " bytes");
    }
    if (f.l4 && !f.ip) throw ValidationError("l4: present without an ip header");
    require(f.priority <= 7, "priority", "above 7");
}

Frame make_frame(const FrameSpec& spec, std::uint32_t size_bytes, SimTime created_at) {
    Frame f;
    f.frame_id = spec.frame_id;
    f.size_bytes = size_bytes;
    f.ethertype = spec.ethertype;
    f.src_mac = spec.src_mac;
    f.dst_mac = spec.dst_mac;
    f.vlan = spec.vlan;
    f.ip = spec.ip;
    f.l4 = spec.l4;
    f.flow_id = spec.flow_id;
    f.created_at = created_at;
    f.last_hop_arrival = created_at;
    if (f.vlan)
        f.priority = f.vlan->pcp;
    else if (f.ip)
        f.priority = static_cast<std::uint8_t>(f.ip->dscp >> 3);
    else
        f.priority = 0;
    validate_frame(f);
    return f;
}

}  // namespace aclsim
