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
#include <vector>

#include "aclsim/bench.hpp"

namespace aclsim {

// A scenario is a line-oriented sectioned text file ('#' comments):
//
//   [topology]
//   preset paper10            # or inline node/link/subnet directives
//   rate 1e9                  # default link rate (optional)
//
//   [generators]
//   flow main n01 n10 constant load 85 size 512
//   flow cross n03 n09 burst count 150 period 10 size 1518 pace 0.0475 phase 0
//   # optional clauses on either kind: start <s> duration <s> (absolute start,
//   # scaled duration), srcip/dstip <ip>, proto <n|tcp|udp|icmp>,
//   # sport/dport <n>, dscp <n>, vlan <id>, pcp <n>
//
//   [acl]
//   bind n09:0 L02 guards.acl # port, link, rule file (relative to scenario)
//
//   [thresholds]              # link_util, clear_margin, port_util,
//                             # subnet_avg_util, guard_load carried|offered
//   [schedule]                # start_delay, duration, drain (seconds)
//   [run]                     # mode trial|frameloss|throughput|guard-compare,
//                             # seed, trials, loads, sizes, window,
//                             # queue_capacity, guard on|off
//   [output]                  # dir, format csv|json, prefix

struct ScenarioFlow {
    std::string name;
    NodeId src;
    NodeId dst;
    GeneratorKind kind = GeneratorKind::Constant;

    double load = 50.0;          // constant
    std::uint32_t size = 512;

    std::uint64_t count = 1;     // burst
    double period_s = 10.0;
    double pace = 1.0;
    double phase = 0.0;

    std::optional<double> start_s;
    std::optional<double> duration_s;
    std::optional<IpAddr> src_ip;
    std::optional<IpAddr> dst_ip;
    std::optional<std::uint8_t> ip_proto;
    std::optional<std::uint16_t> sport;
    std::optional<std::uint16_t> dport;
    std::optional<std::uint8_t> dscp;
    std::optional<std::uint16_t> vlan_id;
    std::optional<std::uint8_t> pcp;

    friend bool operator==(const ScenarioFlow&, const ScenarioFlow&) = default;
};

struct ScenarioBinding {
    PortId port;
    LinkId link;
    std::string acl_file;

    friend bool operator==(const ScenarioBinding&, const ScenarioBinding&) = default;
};

struct Scenario {
    std::string preset;           // exactly one of preset / inline_topology
    std::string inline_topology;  // node/link/subnet directives, one per line
    double default_rate_bps = 1e9;

    std::vector<ScenarioFlow> flows;
    std::vector<ScenarioBinding> bindings;
    Thresholds thresholds;

    double start_delay_s = 2.0;
    double duration_s = 100.0;
    double drain_s = 15.0;

    std::string mode = "trial";
    std::uint64_t seed = 1;
    std::uint32_t trials = 4;
    std::vector<double> loads = {100, 90, 80, 70, 60, 50, 40, 30, 20, 10};
    std::vector<std::uint32_t> sizes = {512, 1024, 1280, 1518};
    double window_s = 0.1;
    std::uint32_t queue_capacity = 128;
    bool guard_on = true;

    std::string out_dir;  // empty: resolved by the caller (flag, env, cwd)
    std::string format = "csv";
    std::string prefix = "run";

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws SchemaError with the offending line number.
Scenario parse_scenario(const std::string& text);

/// Canonical form: fixed section order, explicit scalars, optional clauses
/// only when set. parse_scenario(print_scenario(s)) == s.
std::string print_scenario(const Scenario& s);

/// CLI overrides applied while resolving. duration_scale multiplies the
/// trial duration and burst periods, leaving start/drain alone.
struct RunOverrides {
    std::optional<std::uint64_t> seed;
    double duration_scale = 1.0;
    std::optional<bool> guard_on;
};

/// Everything needed to execute a scenario.
struct RunPlan {
    Topology topo;
    std::vector<GeneratorSpec> generators;
    std::vector<AclStack> stacks;
    Thresholds thresholds;
    Schedule schedule;
    SimOptions options;

    std::string mode;
    std::uint64_t seed = 1;
    std::uint32_t trials = 4;
    std::vector<double> loads;
    std::vector<std::uint32_t> sizes;

    std::string out_dir;
    std::string format;
    std::string prefix;
};

/// Loads the topology, synthesizes flow headers, reads and binds ACL files
/// (paths relative to base_dir). Throws ConfigError naming the entity on any
/// unresolved reference, invalid frame template, or unreadable/unparseable
/// ACL file.
RunPlan resolve_scenario(const Scenario& s, const std::string& base_dir,
                         const RunOverrides& overrides);

}  // namespace aclsim
