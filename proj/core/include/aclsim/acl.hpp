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
#include <string>
#include <variant>
#include <vector>

#include "aclsim/frame.hpp"

namespace aclsim {

using PortId = std::string;  // "node:index"
using LinkId = std::string;

// ---------------------------------------------------------------------------
// Match fields. A rule holds at most one field of each kind; all fields of a
// rule must match for the rule to match (AND). Masked fields are canonical:
// value bits outside the mask are zero.
// ---------------------------------------------------------------------------

struct EthertypeMatch {
    std::uint16_t value = 0;
};
struct IpProtocolMatch {
    std::uint8_t value = 0;
};
struct PacketLengthMatch {
    std::uint32_t min = 0;
    std::uint32_t max = 0;
};
struct VlanOuterMatch {
    std::uint16_t id = 0;
};
struct VlanInnerMatch {
    std::uint16_t id = 0;
};
struct SrcMacMatch {
    std::uint64_t value = 0;
    std::uint64_t mask = 0;
};
struct DstMacMatch {
    std::uint64_t value = 0;
    std::uint64_t mask = 0;
};
struct SrcIpMatch {
    IpAddr value;
    IpAddr mask;
};
struct DstIpMatch {
    IpAddr value;
    IpAddr mask;
};
struct IngressPortMatch {
    PortId port;
};
struct L4SrcPortMatch {
    std::uint16_t min = 0;
    std::uint16_t max = 0;
};
struct L4DstPortMatch {
    std::uint16_t min = 0;
    std::uint16_t max = 0;
};
struct TcpControlMatch {
    std::uint8_t flags_value = 0;
    std::uint8_t flags_mask = 0;
};
struct DscpMatch {
    std::uint8_t value = 0;
};

using MatchField =
    std::variant<EthertypeMatch, IpProtocolMatch, PacketLengthMatch, VlanOuterMatch,
                 VlanInnerMatch, SrcMacMatch, DstMacMatch, SrcIpMatch, DstIpMatch,
                 IngressPortMatch, L4SrcPortMatch, L4DstPortMatch, TcpControlMatch, DscpMatch>;

enum class FieldKind {
    Ethertype,
    IpProtocol,
    PacketLength,
    VlanOuter,
    VlanInner,
    SrcMac,
    DstMac,
    SrcIp,
    DstIp,
    IngressPort,
    L4SrcPort,
    L4DstPort,
    TcpControl,
    Dscp,
};

FieldKind field_kind(const MatchField& f);

/// True when `field` accepts the frame arriving on `ingress_port`.
bool field_matches(const MatchField& field, const Frame& frame, const PortId& ingress_port);

/// Throws ValidationError unless the field is canonical (masked values have
/// no bits outside the mask, ranges have min <= max).
void validate_field(const MatchField& field);

// ---------------------------------------------------------------------------
// Actions
// ---------------------------------------------------------------------------

enum class GuardAction { AlertOnly, Reroute, DropByPriority };

/// The link-load guard: when the bound link's measured load exceeds the
/// threshold, the rule yields its on-exceed action instead of a plain permit.
struct ThresholdGuard {
    double link_load_threshold = 0.9;  // fraction in (0, 1]
    GuardAction on_exceed = GuardAction::AlertOnly;
    std::uint8_t min_protected_priority = 0;  // DropByPriority only

    friend bool operator==(const ThresholdGuard&, const ThresholdGuard&) = default;
};

struct PolicerConfig {
    double cir_bps = 0;
    std::uint64_t normal_burst_bits = 0;
    std::uint64_t excess_burst_bits = 0;

    friend bool operator==(const PolicerConfig&, const PolicerConfig&) = default;
};

struct PermitAction {
    friend bool operator==(const PermitAction&, const PermitAction&) = default;
};
struct DenyAction {
    friend bool operator==(const DenyAction&, const DenyAction&) = default;
};
struct PolicedPermitAction {
    PolicerConfig policer;
    friend bool operator==(const PolicedPermitAction&, const PolicedPermitAction&) = default;
};

using RuleAction = std::variant<PermitAction, DenyAction, PolicedPermitAction, ThresholdGuard>;

// ---------------------------------------------------------------------------
// Rules and stacks
// ---------------------------------------------------------------------------

struct AclRule {
    std::uint32_t seq = 0;
    std::vector<MatchField> fields;  // AND; at most one per kind
    RuleAction action = PermitAction{};
};

/// Throws ValidationError on duplicate field kinds, non-canonical fields, or
/// a bad guard/policer configuration.
void validate_rule(const AclRule& rule);

/// Ordered first-match rule list, optionally bound to one ingress port and
/// its associated link. Mutations happen only between simulation events;
/// classification sees an immutable snapshot.
class AclStack {
public:
    AclStack() = default;
    explicit AclStack(std::string id) : stack_id_(std::move(id)) {}

    const std::string& stack_id() const { return stack_id_; }
    const std::vector<AclRule>& rules() const { return rules_; }
    bool empty() const { return rules_.empty(); }

    struct Binding {
        PortId port;
        LinkId link;
        friend bool operator==(const Binding&, const Binding&) = default;
    };
    const std::optional<Binding>& bound_to() const { return bound_; }

    /// Binding requires at least one rule.
    void bind(PortId port, LinkId link);
    void unbind() { bound_.reset(); }

    /// Insert keeping seq order. Throws EditError on duplicate seq.
    void insert_rule(AclRule rule);

    /// Throws EditError when seq is missing, EmptinessError when removing the
    /// last rule of a bound stack.
    void delete_rule(std::uint32_t seq);

    /// Rearranges rules into the evaluation order given by `new_seq_order`
    /// (a permutation of the current seq values) and relabels them with the
    /// original ascending seq set. Throws EditError on a non-permutation.
    void reorder(const std::vector<std::uint32_t>& new_seq_order);

    const AclRule* find(std::uint32_t seq) const;

private:
    std::string stack_id_;
    std::vector<AclRule> rules_;  // ascending seq
    std::optional<Binding> bound_;
};

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct Verdict {
    enum class Kind { Permit, Deny, Guard };
    Kind kind = Kind::Deny;
    std::optional<std::uint32_t> matched_seq;  // absent on implicit deny
    std::optional<ThresholdGuard> guard;       // set when kind == Guard
    std::optional<PolicerConfig> policer;      // set when the matched rule is policed
};

/// First-match classification. Rules are evaluated in seq order; a matched
/// guard rule compares `link_load` against its threshold and behaves as a
/// permit when at or below it. No match is an implicit deny.
/// Throws BindingError when the stack is bound to a different port.
Verdict classify(const Frame& frame, const PortId& ingress_port, const AclStack& stack,
                 double link_load);

// ---------------------------------------------------------------------------
// Lint
// ---------------------------------------------------------------------------

struct ShadowWarning {
    std::uint32_t shadowed_seq = 0;
    std::uint32_t by_seq = 0;
    std::string message;
};

/// Flags rules that can never match because an earlier rule's field-wise
/// coverage contains theirs. Advisory; field-wise containment is sound but
/// does not chase cross-field implications.
std::vector<ShadowWarning> lint_specific_before_general(const AclStack& stack);

/// True when every frame matched by `narrow` is also matched by `wide`,
/// judged field-kind by field-kind.
bool rule_covers(const AclRule& wide, const AclRule& narrow);

}  // namespace aclsim
