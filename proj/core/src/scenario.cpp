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

#include "aclsim/scenario.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "aclsim/acl_text.hpp"
#include "aclsim/errors.hpp"
#include "aclsim/flows.hpp"
#include "aclsim/text_format.hpp"

namespace aclsim {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
    throw SchemaError(msg, line_no);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

double parse_double(const std::string& tok, std::size_t line_no, const std::string& what) {
    double v = 0;
    const char* end = tok.data() + tok.size();
    const auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || p != end) fail(line_no, what + ": not a number: " + tok);
    return v;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line_no, const std::string& what,
                         std::uint64_t max) {
    std::uint64_t v = 0;
    const char* end = tok.data() + tok.size();
    const auto [p, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || p != end) fail(line_no, what + ": not a non-negative integer: " + tok);
    if (v > max) fail(line_no, what + ": " + tok + " exceeds " + std::to_string(max));
    return v;
}

std::uint8_t parse_proto(const std::string& tok, std::size_t line_no) {
    if (tok == "tcp") return kIpProtoTcp;
    if (tok == "udp") return kIpProtoUdp;
    if (tok == "icmp") return kIpProtoIcmp;
    return static_cast<std::uint8_t>(parse_uint(tok, line_no, "proto", 255));
}

IpAddr parse_ip_tok(const std::string& tok, std::size_t line_no) {
    try {
        return parse_ip(tok);
    } catch (const ValidationError& e) {
        fail(line_no, e.what());
    }
}

// One key-value clause of a flow line; returns tokens consumed (always 2).
void apply_flow_clause(ScenarioFlow& f, const std::string& key, const std::string& val,
                       std::size_t line_no) {
    if (key == "load") {
        if (f.kind != GeneratorKind::Constant) fail(line_no, "load applies to constant flows");
        f.load = parse_double(val, line_no, "load");
    } else if (key == "size") {
        f.size = static_cast<std::uint32_t>(parse_uint(val, line_no, "size", kMaxTaggedFrameBytes));
    } else if (key == "count") {
        if (f.kind != GeneratorKind::PeriodicBurst) fail(line_no, "count applies to burst flows");
        f.count = parse_uint(val, line_no, "count", UINT32_MAX);
    } else if (key == "period") {
        if (f.kind != GeneratorKind::PeriodicBurst) fail(line_no, "period applies to burst flows");
        f.period_s = parse_double(val, line_no, "period");
    } else if (key == "pace") {
        if (f.kind != GeneratorKind::PeriodicBurst) fail(line_no, "pace applies to burst flows");
        f.pace = parse_double(val, line_no, "pace");
    } else if (key == "phase") {
        if (f.kind != GeneratorKind::PeriodicBurst) fail(line_no, "phase applies to burst flows");
        f.phase = parse_double(val, line_no, "phase");
    } else if (key == "start") {
        f.start_s = parse_double(val, line_no, "start");
    } else if (key == "duration") {
        f.duration_s = parse_double(val, line_no, "duration");
    } else if (key == "srcip") {
        f.src_ip = parse_ip_tok(val, line_no);
    } else if (key == "dstip") {
        f.dst_ip = parse_ip_tok(val, line_no);
    } else if (key == "proto") {
        f.ip_proto = parse_proto(val, line_no);
    } else if (key == "sport") {
        f.sport = static_cast<std::uint16_t>(parse_uint(val, line_no, "sport", 65535));
    } else if (key == "dport") {
        f.dport = static_cast<std::uint16_t>(parse_uint(val, line_no, "dport", 65535));
    } else if (key == "dscp") {
        f.dscp = static_cast<std::uint8_t>(parse_uint(val, line_no, "dscp", kMaxDscp));
    } else if (key == "vlan") {
        f.vlan_id = static_cast<std::uint16_t>(parse_uint(val, line_no, "vlan", kMaxVlanId));
    } else if (key == "pcp") {
        f.pcp = static_cast<std::uint8_t>(parse_uint(val, line_no, "pcp", kMaxPcp));
    } else {
        fail(line_no, "unknown flow clause: " + key);
    }
}

ScenarioFlow parse_flow_line(const std::vector<std::string>& toks, std::size_t line_no) {
    if (toks.size() < 5) fail(line_no, "flow needs: flow <name> <src> <dst> <constant|burst>");
    ScenarioFlow f;
    f.name = toks[1];
    f.src = toks[2];
    f.dst = toks[3];
    if (toks[4] == "constant")
        f.kind = GeneratorKind::Constant;
    else if (toks[4] == "burst")
        f.kind = GeneratorKind::PeriodicBurst;
    else
        fail(line_no, "flow kind must be constant or burst, got " + toks[4]);
    if ((toks.size() - 5) % 2 != 0) fail(line_no, "flow clauses come in key value pairs");
    std::set<std::string> seen;
    for (std::size_t i = 5; i < toks.size(); i += 2) {
        if (!seen.insert(toks[i]).second) fail(line_no, "duplicate flow clause: " + toks[i]);
        apply_flow_clause(f, toks[i], toks[i + 1], line_no);
    }
    return f;
}

/// Tracks one-shot directives so a scenario cannot silently override itself.
class OnceSet {
public:
    void mark(const std::string& key, std::size_t line_no) {
        if (!seen_.insert(key).second) fail(line_no, "duplicate directive: " + key);
    }

private:
    std::set<std::string> seen_;
};

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    s.loads.clear();   // defaults re-established at the end when left unset
    s.sizes.clear();
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::string section;
    std::size_t topology_line = 1;
    bool saw_rate = false;
    OnceSet once;

    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto toks = tokenize(raw);
        if (toks.empty()) continue;

        if (toks[0].front() == '[') {
            if (toks.size() != 1 || toks[0].back() != ']')
                fail(line_no, "malformed section header: " + raw);
            section = toks[0].substr(1, toks[0].size() - 2);
            static const std::set<std::string> kSections = {
                "topology", "generators", "acl", "thresholds", "schedule", "run", "output"};
            if (!kSections.count(section)) fail(line_no, "unknown section: " + section);
            once.mark("[" + section + "]", line_no);
            if (section == "topology") topology_line = line_no;
            continue;
        }
        if (section.empty()) fail(line_no, "directive before any section: " + toks[0]);

        const std::string& key = toks[0];
        auto need = [&](std::size_t n) {
            if (toks.size() != n + 1)
                fail(line_no, key + " takes " + std::to_string(n) + " value(s)");
        };

        if (section == "topology") {
            if (key == "preset") {
                need(1);
                once.mark("preset", line_no);
                s.preset = toks[1];
            } else if (key == "rate") {
                need(1);
                once.mark("rate", line_no);
                s.default_rate_bps = parse_double(toks[1], line_no, "rate");
                saw_rate = true;
            } else if (key == "node" || key == "link" || key == "subnet") {
                std::string joined = key;
                for (std::size_t i = 1; i < toks.size(); ++i) joined += " " + toks[i];
                if (!s.inline_topology.empty()) s.inline_topology += '\n';
                s.inline_topology += joined;
            } else {
                fail(line_no, "unknown topology directive: " + key);
            }
        } else if (section == "generators") {
            if (key != "flow") fail(line_no, "unknown generators directive: " + key);
            s.flows.push_back(parse_flow_line(toks, line_no));
        } else if (section == "acl") {
            if (key != "bind") fail(line_no, "unknown acl directive: " + key);
            need(3);
            s.bindings.push_back({toks[1], toks[2], toks[3]});
        } else if (section == "thresholds") {
            once.mark(key, line_no);
            if (key == "link_util") {
                need(1);
                s.thresholds.link_util = parse_double(toks[1], line_no, key);
            } else if (key == "clear_margin") {
                need(1);
                s.thresholds.clear_margin = parse_double(toks[1], line_no, key);
            } else if (key == "port_util") {
                need(1);
                s.thresholds.port_util = parse_double(toks[1], line_no, key);
            } else if (key == "subnet_avg_util") {
                need(1);
                s.thresholds.subnet_avg_util = parse_double(toks[1], line_no, key);
            } else if (key == "guard_load") {
                need(1);
                if (toks[1] == "offered")
                    s.thresholds.guard_uses_offered = true;
                else if (toks[1] == "carried")
                    s.thresholds.guard_uses_offered = false;
                else
                    fail(line_no, "guard_load must be carried or offered");
            } else {
                fail(line_no, "unknown thresholds directive: " + key);
            }
        } else if (section == "schedule") {
            once.mark(key, line_no);
            need(1);
            if (key == "start_delay")
                s.start_delay_s = parse_double(toks[1], line_no, key);
            else if (key == "duration")
                s.duration_s = parse_double(toks[1], line_no, key);
            else if (key == "drain")
                s.drain_s = parse_double(toks[1], line_no, key);
            else
                fail(line_no, "unknown schedule directive: " + key);
        } else if (section == "run") {
            once.mark(key, line_no);
            if (key == "mode") {
                need(1);
                static const std::set<std::string> kModes = {"trial", "frameloss", "throughput",
                                                             "guard-compare"};
                if (!kModes.count(toks[1])) fail(line_no, "unknown mode: " + toks[1]);
                s.mode = toks[1];
            } else if (key == "seed") {
                need(1);
                s.seed = parse_uint(toks[1], line_no, key, UINT64_MAX);
            } else if (key == "trials") {
                need(1);
                s.trials = static_cast<std::uint32_t>(parse_uint(toks[1], line_no, key, 100000));
            } else if (key == "loads") {
                if (toks.size() < 2) fail(line_no, "loads needs at least one value");
                for (std::size_t i = 1; i < toks.size(); ++i)
                    s.loads.push_back(parse_double(toks[i], line_no, key));
            } else if (key == "sizes") {
                if (toks.size() < 2) fail(line_no, "sizes needs at least one value");
                for (std::size_t i = 1; i < toks.size(); ++i)
                    s.sizes.push_back(static_cast<std::uint32_t>(
                        parse_uint(toks[i], line_no, key, kMaxTaggedFrameBytes)));
            } else if (key == "window") {
                need(1);
                s.window_s = parse_double(toks[1], line_no, key);
            } else if (key == "queue_capacity") {
                need(1);
                s.queue_capacity =
                    static_cast<std::uint32_t>(parse_uint(toks[1], line_no, key, 1u << 24));
            } else if (key == "guard") {
                need(1);
                if (toks[1] == "on")
                    s.guard_on = true;
                else if (toks[1] == "off")
                    s.guard_on = false;
                else
                    fail(line_no, "guard must be on or off");
            } else {
                fail(line_no, "unknown run directive: " + key);
            }
        } else if (section == "output") {
            once.mark(key, line_no);
            need(1);
            if (key == "dir")
                s.out_dir = toks[1];
            else if (key == "format") {
                if (toks[1] != "csv" && toks[1] != "json")
                    fail(line_no, "format must be csv or json");
                s.format = toks[1];
            } else if (key == "prefix")
                s.prefix = toks[1];
            else
                fail(line_no, "unknown output directive: " + key);
        }
    }

    if (s.preset.empty() == s.inline_topology.empty())
        fail(topology_line, "scenario needs exactly one topology source (preset or inline)");
    if (saw_rate && !(s.default_rate_bps > 0)) fail(topology_line, "rate must be positive");
    if (s.loads.empty()) s.loads = {100, 90, 80, 70, 60, 50, 40, 30, 20, 10};
    if (s.sizes.empty()) s.sizes = {512, 1024, 1280, 1518};
    return s;
}

namespace {

std::string print_flow(const ScenarioFlow& f) {
    std::string out = "flow " + f.name + " " + f.src + " " + f.dst;
    if (f.kind == GeneratorKind::Constant) {
        out += " constant load " + format_number(f.load) + " size " + std::to_string(f.size);
    } else {
        out += " burst count " + std::to_string(f.count) + " period " + format_number(f.period_s) +
               " size " + std::to_string(f.size) + " pace " + format_number(f.pace) + " phase " +
               format_number(f.phase);
    }
    if (f.start_s) out += " start " + format_number(*f.start_s);
    if (f.duration_s) out += " duration " + format_number(*f.duration_s);
    if (f.src_ip) out += " srcip " + format_ip(*f.src_ip);
    if (f.dst_ip) out += " dstip " + format_ip(*f.dst_ip);
    if (f.ip_proto) out += " proto " + std::to_string(*f.ip_proto);
    if (f.sport) out += " sport " + std::to_string(*f.sport);
    if (f.dport) out += " dport " + std::to_string(*f.dport);
    if (f.dscp) out += " dscp " + std::to_string(*f.dscp);
    if (f.vlan_id) out += " vlan " + std::to_string(*f.vlan_id);
    if (f.pcp) out += " pcp " + std::to_string(*f.pcp);
    return out;
}

}  // namespace

std::string print_scenario(const Scenario& s) {
    std::string out = "[topology]\n";
    if (!s.preset.empty())
        out += "preset " + s.preset + '\n';
    else
        out += s.inline_topology + '\n';
    if (s.default_rate_bps != 1e9) out += "rate " + format_number(s.default_rate_bps) + '\n';

    if (!s.flows.empty()) {
        out += "\n[generators]\n";
        for (const auto& f : s.flows) out += print_flow(f) + '\n';
    }
    if (!s.bindings.empty()) {
        out += "\n[acl]\n";
        for (const auto& b : s.bindings)
            out += "bind " + b.port + " " + b.link + " " + b.acl_file + '\n';
    }

    out += "\n[thresholds]\n";
    out += "link_util " + format_number(s.thresholds.link_util) + '\n';
    out += "clear_margin " + format_number(s.thresholds.clear_margin) + '\n';
    if (s.thresholds.port_util) out += "port_util " + format_number(*s.thresholds.port_util) + '\n';
    if (s.thresholds.subnet_avg_util)
        out += "subnet_avg_util " + format_number(*s.thresholds.subnet_avg_util) + '\n';
    if (s.thresholds.guard_uses_offered) out += "guard_load offered\n";

    out += "\n[schedule]\n";
    out += "start_delay " + format_number(s.start_delay_s) + '\n';
    out += "duration " + format_number(s.duration_s) + '\n';
    out += "drain " + format_number(s.drain_s) + '\n';

    out += "\n[run]\n";
    out += "mode " + s.mode + '\n';
    out += "seed " + std::to_string(s.seed) + '\n';
    out += "trials " + std::to_string(s.trials) + '\n';
    out += "loads";
    for (const auto l : s.loads) out += " " + format_number(l);
    out += "\nsizes";
    for (const auto z : s.sizes) out += " " + std::to_string(z);
    out += '\n';
    out += "window " + format_number(s.window_s) + '\n';
    out += "queue_capacity " + std::to_string(s.queue_capacity) + '\n';
    out += std::string("guard ") + (s.guard_on ? "on" : "off") + '\n';

    out += "\n[output]\n";
    if (!s.out_dir.empty()) out += "dir " + s.out_dir + '\n';
    out += "format " + s.format + '\n';
    out += "prefix " + s.prefix + '\n';
    return out;
}

namespace {

GeneratorSpec build_generator(const Topology& topo, const ScenarioFlow& f, double scale) {
    try {
        GeneratorSpec g;
        g.flow = f.name;
        g.src = f.src;
        g.dst = f.dst;
        g.kind = f.kind;
        g.load_percent = f.load;
        g.frame_size_bytes = f.size;
        g.burst_period = seconds_to_ps(f.period_s * scale);
        g.burst_count = static_cast<std::uint32_t>(f.count);
        g.pace_fraction = f.pace;
        g.phase_frac = f.phase;
        if (f.start_s) g.start_delay = seconds_to_ps(*f.start_s);
        if (f.duration_s) g.duration = seconds_to_ps(*f.duration_s * scale);

        const std::uint8_t proto = f.ip_proto.value_or(
            f.kind == GeneratorKind::Constant ? kIpProtoUdp : kIpProtoIcmp);
        std::optional<L4Header> l4;
        if (proto == kIpProtoUdp || proto == kIpProtoTcp) l4 = L4Header{1000, 2000, 0};
        if (f.sport || f.dport) {
            if (!l4) l4 = L4Header{1000, 2000, 0};
            if (f.sport) l4->src_port = *f.sport;
            if (f.dport) l4->dst_port = *f.dport;
        }
        g.frame = flow_frame_spec(topo, f.src, f.dst, proto, l4);
        if (f.src_ip) g.frame.ip->src = *f.src_ip;
        if (f.dst_ip) g.frame.ip->dst = *f.dst_ip;
        if (f.dscp) g.frame.ip->dscp = *f.dscp;
        if (f.vlan_id || f.pcp) {
            if (!f.vlan_id) throw ConfigError("pcp requires a vlan clause");
            VlanTag tag;
            tag.outer_id = *f.vlan_id;
            tag.pcp = f.pcp.value_or(0);
            g.frame.vlan = tag;
        }

        validate_generator(g);
        (void)make_frame(g.frame, g.frame_size_bytes, 0);  // early template check
        return g;
    } catch (const Error& e) {
        throw ConfigError("flow " + f.name + ": " + e.what());
    }
}

AclStack build_stack(const Topology& topo, const ScenarioBinding& b,
                     const std::string& base_dir) {
    const Link* lk = nullptr;
    try {
        lk = &topo.link(b.link);
    } catch (const NotFoundError&) {
        throw ConfigError("binding " + b.port + ": unknown link " + b.link);
    }
    if (lk->a.port != b.port && lk->b.port != b.port)
        throw ConfigError("port " + b.port + " is not an endpoint of link " + b.link);

    std::filesystem::path path(b.acl_file);
    if (!path.is_absolute()) path = std::filesystem::path(base_dir) / path;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read acl file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();

    try {
        AclStack stack;
        for (auto& rule : parse_acl_text(buf.str())) stack.insert_rule(std::move(rule));
        stack.bind(b.port, b.link);
        return stack;
    } catch (const Error& e) {
        throw ConfigError(b.acl_file + ": " + e.what());
    }
}

}  // namespace

RunPlan resolve_scenario(const Scenario& s, const std::string& base_dir,
                         const RunOverrides& overrides) {
    if (!(overrides.duration_scale > 0)) throw ConfigError("duration_scale must be positive");
    RunPlan plan;
    const std::string doc = !s.preset.empty() ? preset_document(s.preset) : s.inline_topology;
    plan.topo = load_topology(doc, s.default_rate_bps);

    plan.schedule.start_delay = seconds_to_ps(s.start_delay_s);
    plan.schedule.duration = seconds_to_ps(s.duration_s * overrides.duration_scale);
    plan.schedule.drain = seconds_to_ps(s.drain_s);
    plan.options.window = seconds_to_ps(s.window_s);
    plan.options.queue_capacity_frames = s.queue_capacity;
    plan.options.guards_enabled = overrides.guard_on.value_or(s.guard_on);
    plan.thresholds = s.thresholds;
    validate_thresholds(plan.thresholds);

    for (const auto& f : s.flows)
        plan.generators.push_back(build_generator(plan.topo, f, overrides.duration_scale));

    std::set<PortId> bound_ports;
    for (const auto& b : s.bindings) {
        if (!bound_ports.insert(b.port).second)
            throw ConfigError("port " + b.port + " bound more than once");
        plan.stacks.push_back(build_stack(plan.topo, b, base_dir));
    }

    plan.mode = s.mode;
    plan.seed = overrides.seed.value_or(s.seed);
    plan.trials = s.trials;
    plan.loads = s.loads;
    plan.sizes = s.sizes;
    plan.out_dir = s.out_dir;
    plan.format = s.format;
    plan.prefix = s.prefix;
    return plan;
}

}  // namespace aclsim
