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

#include "aclsim/acl.hpp"

#include <algorithm>
#include <set>

#include "aclsim/errors.hpp"

namespace aclsim {

namespace {

constexpr std::uint64_t kMacBits = 0xFFFFFFFFFFFFULL;

bool ip_masked_equal(const IpAddr& addr, const IpAddr& value, const IpAddr& mask) {
    if (addr.version != value.version) return false;
    return (addr & mask) == value;
}

}  // namespace

FieldKind field_kind(const MatchField& f) {
    return static_cast<FieldKind>(f.index());
}

bool field_matches(const MatchField& field, const Frame& frame, const PortId& ingress_port) {
    return std::visit(
        [&](const auto& m) -> bool {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, EthertypeMatch>) {
                return frame.ethertype == m.value;
            } else if constexpr (std::is_same_v<T, IpProtocolMatch>) {
                return frame.ip && frame.ip->protocol == m.value;
            } else if constexpr (std::is_same_v<T, PacketLengthMatch>) {
                return frame.size_bytes >= m.min && frame.size_bytes <= m.max;
            } else if constexpr (std::is_same_v<T, VlanOuterMatch>) {
                return frame.vlan && frame.vlan->outer_id == m.id;
            } else if constexpr (std::is_same_v<T, VlanInnerMatch>) {
                return frame.vlan && frame.vlan->inner_id && *frame.vlan->inner_id == m.id;
            } else if constexpr (std::is_same_v<T, SrcMacMatch>) {
                return (frame.src_mac & m.mask) == m.value;
            } else if constexpr (std::is_same_v<T, DstMacMatch>) {
                return (frame.dst_mac & m.mask) == m.value;
            } else if constexpr (std::is_same_v<T, SrcIpMatch>) {
                return frame.ip && ip_masked_equal(frame.ip->src, m.value, m.mask);
            } else if constexpr (std::is_same_v<T, DstIpMatch>) {
                return frame.ip && ip_masked_equal(frame.ip->dst, m.value, m.mask);
            } else if constexpr (std::is_same_v<T, IngressPortMatch>) {
                return ingress_port == m.port;
            } else if constexpr (std::is_same_v<T, L4SrcPortMatch>) {
                return frame.l4 && frame.l4->src_port >= m.min && frame.l4->src_port <= m.max;
            } else if constexpr (std::is_same_v<T, L4DstPortMatch>) {
                return frame.l4 && frame.l4->dst_port >= m.min && frame.l4->dst_port <= m.max;
            } else if constexpr (std::is_same_v<T, TcpControlMatch>) {
                return frame.l4 && frame.ip && frame.ip->protocol == kIpProtoTcp &&
                       (frame.l4->tcp_flags & m.flags_mask) == m.flags_value;
            } else {
                static_assert(std::is_same_v<T, DscpMatch>);
                return frame.ip && frame.ip->dscp == m.value;
            }
        },
        field);
}

void validate_field(const MatchField& field) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, PacketLengthMatch>) {
                if (m.min > m.max) throw ValidationError("packet length range has min > max");
            } else if constexpr (std::is_same_v<T, VlanOuterMatch> ||
                                 std::is_same_v<T, VlanInnerMatch>) {
                if (m.id > kMaxVlanId) throw ValidationError("vlan id out of range");
            } else if constexpr (std::is_same_v<T, SrcMacMatch> || std::is_same_v<T, DstMacMatch>) {
                if ((m.mask & ~kMacBits) != 0) throw ValidationError("mac mask wider than 48 bits");
                if ((m.value & ~m.mask) != 0)
                    throw ValidationError("mac value has bits outside its mask");
            } else if constexpr (std::is_same_v<T, SrcIpMatch> || std::is_same_v<T, DstIpMatch>) {
                if (m.value.version != m.mask.version)
                    throw ValidationError("ip value and mask version differ");
                if ((m.value & m.mask) != m.value)
                    throw ValidationError("ip value has bits outside its mask");
            } else if constexpr (std::is_same_v<T, IngressPortMatch>) {
                if (m.port.empty()) throw ValidationError("ingress port match is empty");
            } else if constexpr (std::is_same_v<T, L4SrcPortMatch> ||
                                 std::is_same_v<T, L4DstPortMatch>) {
                if (m.min > m.max) throw ValidationError("port range has min > max");
            } else if constexpr (std::is_same_v<T, TcpControlMatch>) {
                if ((m.flags_value & ~m.flags_mask) != 0)
                    throw ValidationError("tcp flags value has bits outside its mask");
            } else if constexpr (std::is_same_v<T, DscpMatch>) {
                if (m.value > kMaxDscp) throw ValidationError("dscp out of range");
            }
            // EthertypeMatch, IpProtocolMatch: full-width, nothing to check.
        },
        field);
}

void validate_rule(const AclRule& rule) {
    std::set<FieldKind> seen;
    for (const auto& f : rule.fields) {
        validate_field(f);
        if (!seen.insert(field_kind(f)).second)
            throw ValidationError("rule " + std::to_string(rule.seq) +
                                  " repeats a match field kind");
    }
    if (const auto* guard = std::get_if<ThresholdGuard>(&rule.action)) {
        if (!(guard->link_load_threshold > 0.0) || guard->link_load_threshold > 1.0)
            throw ValidationError("guard threshold must be in (0, 1]");
        if (guard->min_protected_priority > kMaxPriority)
            throw ValidationError("guard protected priority out of range");
    }
    if (const auto* policed = std::get_if<PolicedPermitAction>(&rule.action)) {
        const auto& p = policed->policer;
        if (p.cir_bps <= 0) throw ValidationError("policer cir must be positive");
        if (p.excess_burst_bits < p.normal_burst_bits)
            throw ValidationError("policer excess burst below normal burst");
    }
}

void AclStack::bind(PortId port, LinkId link) {
    if (rules_.empty()) throw BindingError("cannot bind empty stack \"" + stack_id_ + "\"");
    bound_ = Binding{std::move(port), std::move(link)};
}

void AclStack::insert_rule(AclRule rule) {
    validate_rule(rule);
    auto pos = std::lower_bound(rules_.begin(), rules_.end(), rule.seq,
                                [](const AclRule& r, std::uint32_t s) { return r.seq < s; });
    if (pos != rules_.end() && pos->seq == rule.seq)
        throw EditError("duplicate rule seq " + std::to_string(rule.seq));
    rules_.insert(pos, std::move(rule));
}

void AclStack::delete_rule(std::uint32_t seq) {
    auto pos = std::find_if(rules_.begin(), rules_.end(),
                            [seq](const AclRule& r) { return r.seq == seq; });
    if (pos == rules_.end()) throw EditError("no rule with seq " + std::to_string(seq));
    if (bound_ && rules_.size() == 1)
        throw EmptinessError("deleting the last rule of bound stack \"" + stack_id_ + "\"");
    rules_.erase(pos);
}

void AclStack::reorder(const std::vector<std::uint32_t>& new_seq_order) {
    if (new_seq_order.size() != rules_.size())
        throw EditError("reorder list size does not match rule count");
    std::vector<AclRule> next;
    next.reserve(rules_.size());
    std::set<std::uint32_t> used;
    for (std::uint32_t seq : new_seq_order) {
        if (!used.insert(seq).second)
            throw EditError("reorder repeats seq " + std::to_string(seq));
        const AclRule* r = find(seq);
        if (!r) throw EditError("reorder names unknown seq " + std::to_string(seq));
        next.push_back(*r);
    }
    // Relabel with the original ascending seq set so numbering stays stable.
    std::vector<std::uint32_t> labels;
    labels.reserve(rules_.size());
    for (const auto& r : rules_) labels.push_back(r.seq);
    for (std::size_t i = 0; i < next.size(); ++i) next[i].seq = labels[i];
    rules_ = std::move(next);
}

const AclRule* AclStack::find(std::uint32_t seq) const {
    for (const auto& r : rules_)
        if (r.seq == seq) return &r;
    return nullptr;
}

Verdict classify(const Frame& frame, const PortId& ingress_port, const AclStack& stack,
                 double link_load) {
    if (stack.bound_to() && stack.bound_to()->port != ingress_port)
        throw BindingError("stack \"" + stack.stack_id() + "\" is bound to " +
                           stack.bound_to()->port + ", not " + ingress_port);

    for (const AclRule& rule : stack.rules()) {
        bool all = true;
        for (const auto& f : rule.fields) {
            if (!field_matches(f, frame, ingress_port)) {
                all = false;
                break;
            }
        }
        if (!all) continue;

        Verdict v;
        v.matched_seq = rule.seq;
        if (std::holds_alternative<PermitAction>(rule.action)) {
            v.kind = Verdict::Kind::Permit;
        } else if (std::holds_alternative<DenyAction>(rule.action)) {
            v.kind = Verdict::Kind::Deny;
        } else if (const auto* policed = std::get_if<PolicedPermitAction>(&rule.action)) {
            v.kind = Verdict::Kind::Permit;
            v.policer = policed->policer;
        } else {
            const auto& guard = std::get<ThresholdGuard>(rule.action);
            if (link_load > guard.link_load_threshold) {
                v.kind = Verdict::Kind::Guard;
                v.guard = guard;
            } else {
                v.kind = Verdict::Kind::Permit;
            }
        }
        return v;
    }
    return Verdict{};  // implicit deny, no matched_seq
}

namespace {

// Containment per field kind: does `wide`'s constraint accept everything
// `narrow`'s accepts? Both fields are the same kind.
bool field_covers(const MatchField& wide, const MatchField& narrow) {
    return std::visit(
        [&](const auto& w) -> bool {
            using T = std::decay_t<decltype(w)>;
            const auto& n = std::get<T>(narrow);
            if constexpr (std::is_same_v<T, EthertypeMatch> ||
                          std::is_same_v<T, IpProtocolMatch> || std::is_same_v<T, DscpMatch>) {
                return w.value == n.value;
            } else if constexpr (std::is_same_v<T, PacketLengthMatch> ||
                                 std::is_same_v<T, L4SrcPortMatch> ||
                                 std::is_same_v<T, L4DstPortMatch>) {
                return w.min <= n.min && w.max >= n.max;
            } else if constexpr (std::is_same_v<T, VlanOuterMatch> ||
                                 std::is_same_v<T, VlanInnerMatch>) {
                return w.id == n.id;
            } else if constexpr (std::is_same_v<T, SrcMacMatch> || std::is_same_v<T, DstMacMatch> ||
                                 std::is_same_v<T, TcpControlMatch>) {
                // Wide covers narrow iff wide's cared bits are a subset of
                // narrow's and agree on values.
                auto wv = [&] {
                    if constexpr (std::is_same_v<T, TcpControlMatch>)
                        return std::pair<std::uint64_t, std::uint64_t>{w.flags_value,
                                                                       w.flags_mask};
                    else
                        return std::pair<std::uint64_t, std::uint64_t>{w.value, w.mask};
                }();
                auto nv = [&] {
                    if constexpr (std::is_same_v<T, TcpControlMatch>)
                        return std::pair<std::uint64_t, std::uint64_t>{n.flags_value,
                                                                       n.flags_mask};
                    else
                        return std::pair<std::uint64_t, std::uint64_t>{n.value, n.mask};
                }();
                return (nv.second & wv.second) == wv.second &&
                       (nv.first & wv.second) == wv.first;
            } else if constexpr (std::is_same_v<T, SrcIpMatch> || std::is_same_v<T, DstIpMatch>) {
                if (w.value.version != n.value.version) return false;
                IpAddr inter = n.mask & w.mask;
                if (!(inter == w.mask)) return false;
                return (n.value & w.mask) == w.value;
            } else {
                static_assert(std::is_same_v<T, IngressPortMatch>);
                return w.port == n.port;
            }
        },
        wide);
}

}  // namespace

bool rule_covers(const AclRule& wide, const AclRule& narrow) {
    for (const auto& wf : wide.fields) {
        FieldKind kind = field_kind(wf);
        const MatchField* nf = nullptr;
        for (const auto& cand : narrow.fields) {
            if (field_kind(cand) == kind) {
                nf = &cand;
                break;
            }
        }
        // Wide constrains a kind narrow leaves open: narrow admits frames of
        // any value there, so coverage fails.
        if (!nf) return false;
        if (!field_covers(wf, *nf)) return false;
    }
    return true;
}

std::vector<ShadowWarning> lint_specific_before_general(const AclStack& stack) {
    std::vector<ShadowWarning> out;
    const auto& rules = stack.rules();
    for (std::size_t j = 1; j < rules.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (rule_covers(rules[i], rules[j])) {
                out.push_back({rules[j].seq, rules[i].seq,
                               "rule " + std::to_string(rules[j].seq) +
                                   " is shadowed by earlier rule " +
                                   std::to_string(rules[i].seq)});
                break;  // first shadowing rule is enough
            }
        }
    }
    return out;
}

}  // namespace aclsim
