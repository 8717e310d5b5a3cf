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

// Reference classifier and randomized inputs for checking the production
// rule engine. The matcher below is written straight from the rule
// semantics (AND of per-kind predicates, first match wins, implicit deny)
// with no code shared with the engine.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "aclsim/acl.hpp"
#include "aclsim/frame.hpp"

namespace aclsim::testing {

inline bool oracle_field(const MatchField& field, const Frame& f, const PortId& port) {
    if (const auto* m = std::get_if<EthertypeMatch>(&field)) return f.ethertype == m->value;
    if (const auto* m = std::get_if<IpProtocolMatch>(&field))
        return f.ip.has_value() && f.ip->protocol == m->value;
    if (const auto* m = std::get_if<PacketLengthMatch>(&field))
        return f.size_bytes >= m->min && f.size_bytes <= m->max;
    if (const auto* m = std::get_if<VlanOuterMatch>(&field))
        return f.vlan.has_value() && f.vlan->outer_id == m->id;
    if (const auto* m = std::get_if<VlanInnerMatch>(&field))
        return f.vlan.has_value() && f.vlan->inner_id.has_value() && *f.vlan->inner_id == m->id;
    if (const auto* m = std::get_if<SrcMacMatch>(&field)) return (f.src_mac & m->mask) == m->value;
    if (const auto* m = std::get_if<DstMacMatch>(&field)) return (f.dst_mac & m->mask) == m->value;
    if (const auto* m = std::get_if<SrcIpMatch>(&field)) {
        if (!f.ip || f.ip->src.version != m->value.version) return false;
        return (f.ip->src.hi & m->mask.hi) == m->value.hi &&
               (f.ip->src.lo & m->mask.lo) == m->value.lo;
    }
    if (const auto* m = std::get_if<DstIpMatch>(&field)) {
        if (!f.ip || f.ip->dst.version != m->value.version) return false;
        return (f.ip->dst.hi & m->mask.hi) == m->value.hi &&
               (f.ip->dst.lo & m->mask.lo) == m->value.lo;
    }
    if (const auto* m = std::get_if<IngressPortMatch>(&field)) return port == m->port;
    if (const auto* m = std::get_if<L4SrcPortMatch>(&field))
        return f.l4.has_value() && f.l4->src_port >= m->min && f.l4->src_port <= m->max;
    if (const auto* m = std::get_if<L4DstPortMatch>(&field))
        return f.l4.has_value() && f.l4->dst_port >= m->min && f.l4->dst_port <= m->max;
    if (const auto* m = std::get_if<TcpControlMatch>(&field))
        return f.l4.has_value() && f.ip.has_value() && f.ip->protocol == kIpProtoTcp &&
               (f.l4->tcp_flags & m->flags_mask) == m->flags_value;
    const auto& m = std::get<DscpMatch>(field);
    return f.ip.has_value() && f.ip->dscp == m.value;
}

inline Verdict oracle_classify(const Frame& f, const PortId& port,
                               const std::vector<AclRule>& rules, double link_load) {
    for (const AclRule& r : rules) {
        bool all = true;
        for (const MatchField& field : r.fields)
            if (!oracle_field(field, f, port)) {
                all = false;
                break;
            }
        if (!all) continue;

        Verdict v;
        v.matched_seq = r.seq;
        if (std::holds_alternative<DenyAction>(r.action)) {
            v.kind = Verdict::Kind::Deny;
        } else if (const auto* g = std::get_if<ThresholdGuard>(&r.action)) {
            if (link_load > g->link_load_threshold) {
                v.kind = Verdict::Kind::Guard;
                v.guard = *g;
            } else {
                v.kind = Verdict::Kind::Permit;
            }
        } else {
            v.kind = Verdict::Kind::Permit;
            if (const auto* p = std::get_if<PolicedPermitAction>(&r.action)) v.policer = p->policer;
        }
        return v;
    }
    return Verdict{};
}

inline bool verdicts_equal(const Verdict& a, const Verdict& b) {
    return a.kind == b.kind && a.matched_seq == b.matched_seq && a.guard == b.guard &&
           a.policer == b.policer;
}

// ---------------------------------------------------------------------------
// Randomized inputs. Values are drawn from small overlapping pools so random
// rules actually hit random frames; wide-open rules and implicit denies both
// occur.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::uint64_t pick_mac(Rng& rng) {
    static const std::uint64_t pool[] = {0x020000000001ULL, 0x020000000002ULL, 0x020000000003ULL,
                                         0x0A1B2C3D4E5FULL};
    return pool[rng() % 4];
}

inline std::uint64_t pick_mac_mask(Rng& rng) {
    static const std::uint64_t pool[] = {0xFFFFFFFFFFFFULL, 0xFFFFFF000000ULL, 0xFF0000000000ULL,
                                         0x0000000000FFULL};
    return pool[rng() % 4];
}

inline IpAddr pick_ip(Rng& rng) {
    return IpAddr::v4(0x0A000000u + static_cast<std::uint32_t>(rng() % 4) + 1);
}

inline Frame random_frame(Rng& rng) {
    FrameSpec s;
    s.ethertype = (rng() % 8 == 0) ? 0x0806 : kEthertypeIpv4;
    s.src_mac = pick_mac(rng);
    s.dst_mac = pick_mac(rng);
    if (rng() % 3 == 0) {
        VlanTag tag;
        tag.outer_id = static_cast<std::uint16_t>(rng() % 3 + 1);
        if (rng() % 2) tag.inner_id = static_cast<std::uint16_t>(rng() % 3 + 1);
        tag.pcp = static_cast<std::uint8_t>(rng() % 8);
        s.vlan = tag;
    }
    bool has_ip = s.ethertype == kEthertypeIpv4;
    std::uint32_t min_size = kMinFrameBytes;
    if (has_ip) {
        IpHeader ip;
        ip.src = pick_ip(rng);
        ip.dst = pick_ip(rng);
        static const std::uint8_t protos[] = {kIpProtoIcmp, kIpProtoTcp, kIpProtoUdp, 50};
        ip.protocol = protos[rng() % 4];
        static const std::uint8_t dscps[] = {0, 8, 46, 63};
        ip.dscp = dscps[rng() % 4];
        s.ip = ip;
        if (ip.protocol == kIpProtoTcp || ip.protocol == kIpProtoUdp) {
            L4Header l4;
            l4.src_port = static_cast<std::uint16_t>(1000 + rng() % 4);
            l4.dst_port = static_cast<std::uint16_t>(2000 + rng() % 4);
            l4.tcp_flags = ip.protocol == kIpProtoTcp ? static_cast<std::uint8_t>(rng() % 64)
                                                      : std::uint8_t{0};
            s.l4 = l4;
        }
        if (ip.protocol == kIpProtoIcmp) min_size = kMinIcmpFrameBytes;
    }
    std::uint32_t max_size = s.vlan ? kMaxTaggedFrameBytes : kMaxFrameBytes;
    std::uint32_t size = min_size + static_cast<std::uint32_t>(rng() % (max_size - min_size + 1));
    return make_frame(s, size, 0);
}

inline MatchField random_field(Rng& rng, FieldKind kind) {
    switch (kind) {
        case FieldKind::Ethertype:
            return EthertypeMatch{static_cast<std::uint16_t>(rng() % 4 == 0 ? 0x0806
                                                                            : kEthertypeIpv4)};
        case FieldKind::IpProtocol: {
            static const std::uint8_t protos[] = {kIpProtoIcmp, kIpProtoTcp, kIpProtoUdp, 50};
            return IpProtocolMatch{protos[rng() % 4]};
        }
        case FieldKind::PacketLength: {
            std::uint32_t a = 64 + static_cast<std::uint32_t>(rng() % 1459);
            std::uint32_t b = 64 + static_cast<std::uint32_t>(rng() % 1459);
            return PacketLengthMatch{std::min(a, b), std::max(a, b)};
        }
        case FieldKind::VlanOuter:
            return VlanOuterMatch{static_cast<std::uint16_t>(rng() % 3 + 1)};
        case FieldKind::VlanInner:
            return VlanInnerMatch{static_cast<std::uint16_t>(rng() % 3 + 1)};
        case FieldKind::SrcMac: {
            std::uint64_t mask = pick_mac_mask(rng);
            return SrcMacMatch{pick_mac(rng) & mask, mask};
        }
        case FieldKind::DstMac: {
            std::uint64_t mask = pick_mac_mask(rng);
            return DstMacMatch{pick_mac(rng) & mask, mask};
        }
        case FieldKind::SrcIp: {
            static const int prefixes[] = {32, 30, 24, 0};
            IpAddr mask = prefix_mask(4, prefixes[rng() % 4]);
            return SrcIpMatch{pick_ip(rng) & mask, mask};
        }
        case FieldKind::DstIp: {
            static const int prefixes[] = {32, 30, 24, 0};
            IpAddr mask = prefix_mask(4, prefixes[rng() % 4]);
            return DstIpMatch{pick_ip(rng) & mask, mask};
        }
        case FieldKind::IngressPort:
            return IngressPortMatch{rng() % 2 ? "n1:0" : "n1:1"};
        case FieldKind::L4SrcPort: {
            std::uint16_t a = static_cast<std::uint16_t>(1000 + rng() % 4);
            std::uint16_t b = static_cast<std::uint16_t>(1000 + rng() % 4);
            return L4SrcPortMatch{std::min(a, b), std::max(a, b)};
        }
        case FieldKind::L4DstPort: {
            std::uint16_t a = static_cast<std::uint16_t>(2000 + rng() % 4);
            std::uint16_t b = static_cast<std::uint16_t>(2000 + rng() % 4);
            return L4DstPortMatch{std::min(a, b), std::max(a, b)};
        }
        case FieldKind::TcpControl: {
            std::uint8_t mask = static_cast<std::uint8_t>(rng() % 64);
            return TcpControlMatch{static_cast<std::uint8_t>(rng() & mask), mask};
        }
        case FieldKind::Dscp: {
            static const std::uint8_t dscps[] = {0, 8, 46, 63};
            return DscpMatch{dscps[rng() % 4]};
        }
    }
    return EthertypeMatch{kEthertypeIpv4};
}

inline AclRule random_rule(Rng& rng, std::uint32_t seq) {
    AclRule r;
    r.seq = seq;
    // Up to three field kinds per rule; zero fields gives a match-all rule.
    std::size_t nfields = rng() % 4;
    std::vector<FieldKind> kinds;
    while (kinds.size() < nfields) {
        FieldKind k = static_cast<FieldKind>(rng() % 14);
        bool dup = false;
        for (FieldKind seen : kinds)
            if (seen == k) dup = true;
        if (!dup) kinds.push_back(k);
    }
    for (FieldKind k : kinds) r.fields.push_back(random_field(rng, k));

    switch (rng() % 6) {
        case 0:
        case 1:
            r.action = PermitAction{};
            break;
        case 2:
        case 3:
            r.action = DenyAction{};
            break;
        case 4:
            r.action = PolicedPermitAction{{1e6, 50000, 100000}};
            break;
        default: {
            ThresholdGuard g;
            g.link_load_threshold = 0.5 + 0.1 * static_cast<double>(rng() % 5);
            g.on_exceed = static_cast<GuardAction>(rng() % 3);
            g.min_protected_priority =
                g.on_exceed == GuardAction::DropByPriority ? static_cast<std::uint8_t>(rng() % 8)
                                                           : std::uint8_t{0};
            r.action = g;
            break;
        }
    }
    return r;
}

inline std::vector<AclRule> random_rules(Rng& rng, std::size_t max_rules) {
    std::size_t n = 1 + rng() % max_rules;
    std::vector<AclRule> rules;
    for (std::size_t i = 0; i < n; ++i) rules.push_back(random_rule(rng, (i + 1) * 10));
    return rules;
}

}  // namespace aclsim::testing
