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

#include "aclsim/acl_text.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "aclsim/errors.hpp"

namespace aclsim {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
    throw SchemaError(msg, static_cast<int>(line_no));
}

std::uint64_t parse_uint(const std::string& s, std::size_t line_no, const char* what,
                         std::uint64_t max, int base = 10) {
    std::uint64_t v = 0;
    const char* begin = s.c_str();
    const char* end = begin + s.size();
    if (base == 16 && s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) begin += 2;
    auto [p, ec] = std::from_chars(begin, end, v, base);
    if (ec != std::errc{} || p != end) fail(line_no, std::string("bad ") + what + " \"" + s + "\"");
    if (v > max) fail(line_no, std::string(what) + " out of range: " + s);
    return v;
}

double parse_double(const std::string& s, std::size_t line_no, const char* what) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.c_str(), s.c_str() + s.size(), v);
    if (ec != std::errc{} || p != s.c_str() + s.size())
        fail(line_no, std::string("bad ") + what + " \"" + s + "\"");
    return v;
}

std::pair<std::string, std::string> split_slash(const std::string& s, std::size_t line_no,
                                                const char* what) {
    auto pos = s.find('/');
    if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size())
        fail(line_no, std::string(what) + " needs <value>/<mask> form: \"" + s + "\"");
    return {s.substr(0, pos), s.substr(pos + 1)};
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s, std::size_t line_no,
                                                    const char* what, std::uint64_t max) {
    auto pos = s.find('-');
    if (pos == std::string::npos)
        fail(line_no, std::string(what) + " needs <min>-<max> form: \"" + s + "\"");
    std::uint64_t lo = parse_uint(s.substr(0, pos), line_no, what, max);
    std::uint64_t hi = parse_uint(s.substr(pos + 1), line_no, what, max);
    if (lo > hi) fail(line_no, std::string(what) + " range has min > max: \"" + s + "\"");
    return {lo, hi};
}

MatchField parse_ip_field(const std::string& arg, std::size_t line_no, bool src) {
    auto [addr_s, prefix_s] = split_slash(arg, line_no, src ? "srcip" : "dstip");
    IpAddr addr;
    try {
        addr = parse_ip(addr_s);
    } catch (const ValidationError& e) {
        fail(line_no, e.what());
    }
    std::uint64_t max_prefix = addr.version == 4 ? 32 : 128;
    auto prefix =
        static_cast<std::uint8_t>(parse_uint(prefix_s, line_no, "prefix length", max_prefix));
    IpAddr mask = prefix_mask(addr.version, prefix);
    if (!((addr & mask) == addr))
        fail(line_no, "address " + addr_s + " has bits beyond /" + prefix_s);
    if (src) return SrcIpMatch{addr, mask};
    return DstIpMatch{addr, mask};
}

MatchField parse_mac_field(const std::string& arg, std::size_t line_no, bool src) {
    auto [mac_s, mask_s] = split_slash(arg, line_no, src ? "srcmac" : "dstmac");
    std::uint64_t value = 0;
    std::uint64_t mask = 0;
    try {
        value = parse_mac(mac_s);
        mask = parse_mac(mask_s);
    } catch (const ValidationError& e) {
        fail(line_no, e.what());
    }
    if ((value & ~mask) != 0) fail(line_no, "mac " + mac_s + " has bits outside mask " + mask_s);
    if (src) return SrcMacMatch{value, mask};
    return DstMacMatch{value, mask};
}

// Shortest decimal form that round-trips the double.
std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string format_rate(double v) {
    if (v == static_cast<double>(static_cast<long long>(v)) && v > 0)
        return std::to_string(static_cast<long long>(v));
    return format_double(v);
}

int prefix_from_mask(const IpAddr& mask, std::uint32_t rule_seq) {
    int bits = mask.version == 4 ? 32 : 128;
    // Walk the 128-bit (hi,lo) pair from the top; v4 lives in the low 32.
    unsigned __int128 m = (static_cast<unsigned __int128>(mask.hi) << 64) | mask.lo;
    int shift = mask.version == 4 ? 32 : 128;
    int prefix = 0;
    bool in_zeros = false;
    for (int i = shift - 1; i >= 0; --i) {
        bool bit = (m >> i) & 1;
        if (bit) {
            if (in_zeros)
                throw SchemaError("rule " + std::to_string(rule_seq) +
                                  ": ip mask is not a prefix");
            ++prefix;
        } else {
            in_zeros = true;
        }
    }
    (void)bits;
    return prefix;
}

}  // namespace

AclRule parse_acl_rule(const std::string& line, std::size_t line_no) {
    auto toks = tokenize(line);
    if (toks.size() < 2) fail(line_no, "rule needs at least <seq> <permit|deny|guard>");

    AclRule rule;
    rule.seq = static_cast<std::uint32_t>(parse_uint(toks[0], line_no, "seq", 0xFFFFFFFFu));

    const std::string& verb = toks[1];
    bool saw_threshold = false;
    bool saw_police = false;
    ThresholdGuard guard;
    PolicerConfig police;

    std::size_t i = 2;
    auto need = [&](std::size_t n, const std::string& kw) {
        if (i + n > toks.size()) fail(line_no, "\"" + kw + "\" is missing its argument");
    };

    auto add_field = [&](MatchField f) { rule.fields.push_back(std::move(f)); };

    while (i < toks.size()) {
        const std::string kw = toks[i++];
        if (kw == "ethertype") {
            need(1, kw);
            add_field(EthertypeMatch{
                static_cast<std::uint16_t>(parse_uint(toks[i], line_no, "ethertype", 0xFFFF, 16))});
            ++i;
        } else if (kw == "proto") {
            need(1, kw);
            add_field(IpProtocolMatch{
                static_cast<std::uint8_t>(parse_uint(toks[i], line_no, "proto", 255))});
            ++i;
        } else if (kw == "len") {
            need(1, kw);
            auto [lo, hi] = parse_range(toks[i], line_no, "len", kMaxTaggedFrameBytes);
            add_field(PacketLengthMatch{static_cast<std::uint32_t>(lo),
                                        static_cast<std::uint32_t>(hi)});
            ++i;
        } else if (kw == "vlan") {
            need(1, kw);
            add_field(VlanOuterMatch{
                static_cast<std::uint16_t>(parse_uint(toks[i], line_no, "vlan", kMaxVlanId))});
            ++i;
        } else if (kw == "vlan-inner") {
            need(1, kw);
            add_field(VlanInnerMatch{static_cast<std::uint16_t>(
                parse_uint(toks[i], line_no, "vlan-inner", kMaxVlanId))});
            ++i;
        } else if (kw == "srcip" || kw == "dstip") {
            need(1, kw);
            add_field(parse_ip_field(toks[i], line_no, kw == "srcip"));
            ++i;
        } else if (kw == "srcmac" || kw == "dstmac") {
            need(1, kw);
            add_field(parse_mac_field(toks[i], line_no, kw == "srcmac"));
            ++i;
        } else if (kw == "inport") {
            need(1, kw);
            add_field(IngressPortMatch{toks[i]});
            ++i;
        } else if (kw == "sport" || kw == "dport") {
            need(1, kw);
            auto [lo, hi] = parse_range(toks[i], line_no, kw.c_str(), 0xFFFF);
            if (kw == "sport")
                add_field(L4SrcPortMatch{static_cast<std::uint16_t>(lo),
                                         static_cast<std::uint16_t>(hi)});
            else
                add_field(L4DstPortMatch{static_cast<std::uint16_t>(lo),
                                         static_cast<std::uint16_t>(hi)});
            ++i;
        } else if (kw == "tcpflags") {
            need(1, kw);
            auto [val_s, mask_s] = split_slash(toks[i], line_no, "tcpflags");
            auto val = static_cast<std::uint8_t>(parse_uint(val_s, line_no, "tcpflags", 0xFF, 16));
            auto mask =
                static_cast<std::uint8_t>(parse_uint(mask_s, line_no, "tcpflags mask", 0xFF, 16));
            if ((val & ~mask) != 0)
                fail(line_no, "tcpflags value has bits outside its mask: \"" + toks[i] + "\"");
            add_field(TcpControlMatch{val, mask});
            ++i;
        } else if (kw == "dscp") {
            need(1, kw);
            add_field(
                DscpMatch{static_cast<std::uint8_t>(parse_uint(toks[i], line_no, "dscp", 63))});
            ++i;
        } else if (kw == "threshold") {
            need(1, kw);
            saw_threshold = true;
            guard.link_load_threshold = parse_double(toks[i], line_no, "threshold");
            if (!(guard.link_load_threshold > 0.0) || guard.link_load_threshold > 1.0)
                fail(line_no, "threshold must be in (0, 1]");
            ++i;
            need(2, "threshold action");
            if (toks[i] != "action") fail(line_no, "threshold must be followed by \"action\"");
            ++i;
            const std::string& act = toks[i++];
            if (act == "alert") {
                guard.on_exceed = GuardAction::AlertOnly;
            } else if (act == "reroute") {
                guard.on_exceed = GuardAction::Reroute;
            } else if (act == "prio-drop") {
                need(1, "prio-drop");
                guard.on_exceed = GuardAction::DropByPriority;
                guard.min_protected_priority = static_cast<std::uint8_t>(
                    parse_uint(toks[i], line_no, "prio-drop priority", kMaxPriority));
                ++i;
            } else {
                fail(line_no, "unknown guard action \"" + act + "\"");
            }
        } else if (kw == "police") {
            saw_police = true;
            need(6, kw);
            if (toks[i] != "cir") fail(line_no, "police clause must start with \"cir\"");
            police.cir_bps = parse_double(toks[i + 1], line_no, "police cir");
            if (police.cir_bps <= 0) fail(line_no, "police cir must be positive");
            if (toks[i + 2] != "nb") fail(line_no, "police clause needs \"nb <bits>\"");
            police.normal_burst_bits =
                parse_uint(toks[i + 3], line_no, "police nb", UINT64_MAX);
            if (toks[i + 4] != "eb") fail(line_no, "police clause needs \"eb <bits>\"");
            police.excess_burst_bits =
                parse_uint(toks[i + 5], line_no, "police eb", UINT64_MAX);
            if (police.excess_burst_bits < police.normal_burst_bits)
                fail(line_no, "police eb below nb");
            i += 6;
        } else {
            fail(line_no, "unknown keyword \"" + kw + "\"");
        }
    }

    if (verb == "permit") {
        if (saw_threshold) fail(line_no, "threshold clause requires the guard verb");
        if (saw_police)
            rule.action = PolicedPermitAction{police};
        else
            rule.action = PermitAction{};
    } else if (verb == "deny") {
        if (saw_threshold) fail(line_no, "threshold clause requires the guard verb");
        if (saw_police) fail(line_no, "police clause requires the permit verb");
        rule.action = DenyAction{};
    } else if (verb == "guard") {
        if (!saw_threshold) fail(line_no, "guard rule needs a threshold clause");
        if (saw_police) fail(line_no, "police clause requires the permit verb");
        rule.action = guard;
    } else {
        fail(line_no, "unknown verb \"" + verb + "\"");
    }

    try {
        validate_rule(rule);
    } catch (const ValidationError& e) {
        fail(line_no, e.what());
    }
    return rule;
}

std::vector<AclRule> parse_acl_text(const std::string& text) {
    std::vector<AclRule> rules;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::uint32_t prev_seq = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        AclRule rule = parse_acl_rule(line, line_no);
        if (!first && rule.seq <= prev_seq)
            throw SchemaError("seq " + std::to_string(rule.seq) + " does not increase (previous " +
                                  std::to_string(prev_seq) + ")",
                              static_cast<int>(line_no));
        prev_seq = rule.seq;
        first = false;
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::string print_acl_rule(const AclRule& rule) {
    std::string out = std::to_string(rule.seq);
    if (std::holds_alternative<DenyAction>(rule.action))
        out += " deny";
    else if (std::holds_alternative<ThresholdGuard>(rule.action))
        out += " guard";
    else
        out += " permit";

    // Clauses appear in the grammar's order regardless of field storage order.
    static constexpr FieldKind kPrintOrder[] = {
        FieldKind::Ethertype, FieldKind::IpProtocol, FieldKind::PacketLength,
        FieldKind::VlanOuter, FieldKind::VlanInner,  FieldKind::SrcIp,
        FieldKind::DstIp,     FieldKind::SrcMac,     FieldKind::DstMac,
        FieldKind::IngressPort, FieldKind::L4SrcPort, FieldKind::L4DstPort,
        FieldKind::TcpControl, FieldKind::Dscp,
    };

    char buf[64];
    for (FieldKind kind : kPrintOrder) {
        const MatchField* f = nullptr;
        for (const auto& cand : rule.fields)
            if (field_kind(cand) == kind) {
                f = &cand;
                break;
            }
        if (!f) continue;
        switch (kind) {
            case FieldKind::Ethertype:
                std::snprintf(buf, sizeof buf, " ethertype 0x%04x",
                              std::get<EthertypeMatch>(*f).value);
                out += buf;
                break;
            case FieldKind::IpProtocol:
                out += " proto " + std::to_string(std::get<IpProtocolMatch>(*f).value);
                break;
            case FieldKind::PacketLength: {
                const auto& m = std::get<PacketLengthMatch>(*f);
                out += " len " + std::to_string(m.min) + "-" + std::to_string(m.max);
                break;
            }
            case FieldKind::VlanOuter:
                out += " vlan " + std::to_string(std::get<VlanOuterMatch>(*f).id);
                break;
            case FieldKind::VlanInner:
                out += " vlan-inner " + std::to_string(std::get<VlanInnerMatch>(*f).id);
                break;
            case FieldKind::SrcIp: {
                const auto& m = std::get<SrcIpMatch>(*f);
                out += " srcip " + format_ip(m.value) + "/" +
                       std::to_string(prefix_from_mask(m.mask, rule.seq));
                break;
            }
            case FieldKind::DstIp: {
                const auto& m = std::get<DstIpMatch>(*f);
                out += " dstip " + format_ip(m.value) + "/" +
                       std::to_string(prefix_from_mask(m.mask, rule.seq));
                break;
            }
            case FieldKind::SrcMac: {
                const auto& m = std::get<SrcMacMatch>(*f);
                out += " srcmac " + format_mac(m.value) + "/" + format_mac(m.mask);
                break;
            }
            case FieldKind::DstMac: {
                const auto& m = std::get<DstMacMatch>(*f);
                out += " dstmac " + format_mac(m.value) + "/" + format_mac(m.mask);
                break;
            }
            case FieldKind::IngressPort:
                out += " inport " + std::get<IngressPortMatch>(*f).port;
                break;
            case FieldKind::L4SrcPort: {
                const auto& m = std::get<L4SrcPortMatch>(*f);
                out += " sport " + std::to_string(m.min) + "-" + std::to_string(m.max);
                break;
            }
            case FieldKind::L4DstPort: {
                const auto& m = std::get<L4DstPortMatch>(*f);
                out += " dport " + std::to_string(m.min) + "-" + std::to_string(m.max);
                break;
            }
            case FieldKind::TcpControl: {
                const auto& m = std::get<TcpControlMatch>(*f);
                std::snprintf(buf, sizeof buf, " tcpflags 0x%02x/0x%02x", m.flags_value,
                              m.flags_mask);
                out += buf;
                break;
            }
            case FieldKind::Dscp:
                out += " dscp " + std::to_string(std::get<DscpMatch>(*f).value);
                break;
        }
    }

    if (const auto* guard = std::get_if<ThresholdGuard>(&rule.action)) {
        out += " threshold " + format_double(guard->link_load_threshold) + " action ";
        switch (guard->on_exceed) {
            case GuardAction::AlertOnly:
                out += "alert";
                break;
            case GuardAction::Reroute:
                out += "reroute";
                break;
            case GuardAction::DropByPriority:
                out += "prio-drop " + std::to_string(guard->min_protected_priority);
                break;
        }
    } else if (const auto* policed = std::get_if<PolicedPermitAction>(&rule.action)) {
        const auto& p = policed->policer;
        out += " police cir " + format_rate(p.cir_bps) + " nb " +
               std::to_string(p.normal_burst_bits) + " eb " +
               std::to_string(p.excess_burst_bits);
    }
    return out;
}

std::string print_acl_text(const std::vector<AclRule>& rules) {
    std::string out;
    for (const auto& r : rules) {
        out += print_acl_rule(r);
        out += '\n';
    }
    return out;
}

}  // namespace aclsim
