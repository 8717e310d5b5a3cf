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

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "aclsim/errors.hpp"
#include "aclsim/frame.hpp"
#include "aclsim/report.hpp"
#include "aclsim/scenario.hpp"

using namespace aclsim;

namespace {

const char* kFullScenario =
    "[topology]\n"
    "preset paper10\n"
    "\n"
    "[generators]\n"
    "flow main n01 n10 constant load 85 size 512\n"
    "flow cross-n03 n03 n09 burst count 150 period 0.1 size 1518 pace 0.0475 phase 0\n"
    "\n"
    "[acl]\n"
    "bind n09:0 L02 guard.acl\n"
    "\n"
    "[thresholds]\n"
    "link_util 0.9\n"
    "clear_margin 0.1\n"
    "\n"
    "[schedule]\n"
    "duration 1\n"
    "\n"
    "[run]\n"
    "mode frameloss\n"
    "seed 1\n"
    "trials 4\n"
    "loads 95 85\n"
    "sizes 512 1024 1280 1518\n"
    "guard off\n"
    "\n"
    "[output]\n"
    "prefix fl\n";

/// Scratch directory with a guard rule file, for resolve tests.
struct ScratchDir {
    std::filesystem::path dir;
    ScratchDir() {
        dir = std::filesystem::temp_directory_path() / "aclsim_scenario_test";
        std::filesystem::create_directories(dir);
        write_text_file((dir / "guard.acl").string(),
                        "10 guard srcip 10.0.0.1/32 threshold 0.9 action reroute\n"
                        "20 permit\n");
    }
    ~ScratchDir() { std::filesystem::remove_all(dir); }
};

}  // namespace

TEST_CASE("a scenario survives a parse, print, parse round trip") {
    Scenario s = parse_scenario(kFullScenario);
    CHECK(s.preset == "paper10");
    CHECK(s.flows.size() == 2);
    CHECK(s.flows[0].kind == GeneratorKind::Constant);
    CHECK(s.flows[0].load == 85.0);
    CHECK(s.flows[1].kind == GeneratorKind::PeriodicBurst);
    CHECK(s.flows[1].count == 150);
    CHECK(s.flows[1].size == 1518);
    CHECK(s.bindings.size() == 1);
    CHECK(s.mode == "frameloss");
    CHECK(s.loads == std::vector<double>{95, 85});
    CHECK(s.guard_on == false);
    CHECK(s.prefix == "fl");

    std::string printed = print_scenario(s);
    Scenario reparsed = parse_scenario(printed);
    CHECK(reparsed == s);
    CHECK(print_scenario(reparsed) == printed);
}

TEST_CASE("defaulted sections round trip too") {
    Scenario s = parse_scenario(
        "[topology]\n"
        "preset chain3\n"
        "[generators]\n"
        "flow main c1 c3 constant load 50 size 512\n");
    CHECK(s.mode == "trial");
    CHECK(s.trials == 4);
    Scenario reparsed = parse_scenario(print_scenario(s));
    CHECK(reparsed == s);
}

TEST_CASE("optional flow clauses parse and round trip") {
    Scenario s = parse_scenario(
        "[topology]\n"
        "preset chain3\n"
        "[generators]\n"
        "flow a c1 c3 constant load 10 size 512 start 3 duration 0.5 proto tcp "
        "sport 1234 dport 80 dscp 46 vlan 100 pcp 5\n"
        "flow b c1 c3 constant load 10 size 512 srcip 10.9.9.9 dstip 10.8.8.8\n");
    const ScenarioFlow& a = s.flows[0];
    CHECK(a.start_s == 3.0);
    CHECK(a.duration_s == 0.5);
    CHECK(a.ip_proto == 6);
    CHECK(a.sport == 1234);
    CHECK(a.dport == 80);
    CHECK(a.dscp == 46);
    CHECK(a.vlan_id == 100);
    CHECK(a.pcp == 5);
    CHECK(s.flows[1].src_ip == parse_ip("10.9.9.9"));
    Scenario reparsed = parse_scenario(print_scenario(s));
    CHECK(reparsed == s);
}

TEST_CASE("parse errors carry the offending line") {
    auto expect_line = [](const std::string& text, int line) {
        try {
            parse_scenario(text);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_line("[nosuch]\n", 1);
    expect_line("[topology]\npreset chain3\npreset twopath\n", 3);  // duplicate
    expect_line("[topology]\npreset chain3\n[run]\nmode dance\n", 4);
    expect_line("[topology]\npreset chain3\n[run]\ntrials zero\n", 4);
    // No topology section at all: reported against the start of the file.
    expect_line("[generators]\nflow main c1 c3 constant load 85 size 512\n", 1);
}

TEST_CASE("exactly one topology source is required") {
    CHECK_THROWS_AS(parse_scenario("[generators]\nflow m a b constant load 1 size 64\n"),
                    SchemaError);
    CHECK_THROWS_AS(parse_scenario("[topology]\npreset chain3\nnode a\n"), SchemaError);
}

TEST_CASE("resolve builds runnable plans and scales durations") {
    ScratchDir scratch;
    Scenario s = parse_scenario(kFullScenario);

    RunOverrides plain;
    RunPlan plan = resolve_scenario(s, scratch.dir.string(), plain);
    CHECK(plan.topo.nodes().size() == 10);
    REQUIRE(plan.generators.size() == 2);
    CHECK(plan.generators[0].kind == GeneratorKind::Constant);
    CHECK(plan.generators[1].burst_period == seconds_to_ps(0.1));
    CHECK(plan.schedule.duration == seconds_to_ps(1.0));
    REQUIRE(plan.stacks.size() == 1);
    CHECK(plan.stacks[0].bound_to()->port == "n09:0");
    CHECK(plan.stacks[0].bound_to()->link == "L02");
    CHECK(plan.stacks[0].rules().size() == 2);
    CHECK(plan.seed == 1);
    CHECK(plan.mode == "frameloss");
    CHECK(!plan.options.guards_enabled);  // guard off in the file

    RunOverrides scaled;
    scaled.seed = 7;
    scaled.duration_scale = 0.5;
    scaled.guard_on = true;
    RunPlan half = resolve_scenario(s, scratch.dir.string(), scaled);
    CHECK(half.seed == 7);
    CHECK(half.schedule.duration == seconds_to_ps(0.5));
    CHECK(half.generators[1].burst_period == seconds_to_ps(0.05));
    CHECK(half.options.guards_enabled);

    RunOverrides bad;
    bad.duration_scale = 0.0;
    CHECK_THROWS_AS(resolve_scenario(s, scratch.dir.string(), bad), ConfigError);
}

TEST_CASE("flow start times stay absolute under duration scaling") {
    ScratchDir scratch;
    Scenario s = parse_scenario(
        "[topology]\n"
        "preset chain3\n"
        "[generators]\n"
        "flow main c1 c3 constant load 50 size 512 start 3 duration 0.4\n");
    RunOverrides half;
    half.duration_scale = 0.5;
    RunPlan plan = resolve_scenario(s, scratch.dir.string(), half);
    CHECK(plan.generators[0].start_delay == seconds_to_ps(3.0));   // absolute
    CHECK(plan.generators[0].duration == seconds_to_ps(0.2));      // scaled
}

TEST_CASE("resolve reports unresolved references through ConfigError") {
    ScratchDir scratch;

    Scenario bad_flow = parse_scenario(
        "[topology]\npreset chain3\n[generators]\nflow m c1 c9 constant load 10 size 512\n");
    CHECK_THROWS_AS(resolve_scenario(bad_flow, scratch.dir.string(), RunOverrides{}),
                    ConfigError);

    Scenario bad_link = parse_scenario(
        "[topology]\npreset chain3\n"
        "[generators]\nflow m c1 c3 constant load 10 size 512\n"
        "[acl]\nbind c2:0 K9 guard.acl\n");
    CHECK_THROWS_AS(resolve_scenario(bad_link, scratch.dir.string(), RunOverrides{}),
                    ConfigError);

    Scenario bad_port = parse_scenario(
        "[topology]\npreset chain3\n"
        "[generators]\nflow m c1 c3 constant load 10 size 512\n"
        "[acl]\nbind c3:7 K2 guard.acl\n");
    CHECK_THROWS_AS(resolve_scenario(bad_port, scratch.dir.string(), RunOverrides{}),
                    ConfigError);

    Scenario missing_file = parse_scenario(
        "[topology]\npreset chain3\n"
        "[generators]\nflow m c1 c3 constant load 10 size 512\n"
        "[acl]\nbind c2:0 K1 nofile.acl\n");
    CHECK_THROWS_AS(resolve_scenario(missing_file, scratch.dir.string(), RunOverrides{}),
                    ConfigError);

    Scenario pcp_no_vlan = parse_scenario(
        "[topology]\npreset chain3\n"
        "[generators]\nflow m c1 c3 constant load 10 size 512 pcp 3\n");
    CHECK_THROWS_AS(resolve_scenario(pcp_no_vlan, scratch.dir.string(), RunOverrides{}),
                    ConfigError);

    // Two stacks on one port cannot both answer for it.
    Scenario dup_port = parse_scenario(
        "[topology]\npreset chain3\n"
        "[generators]\nflow m c1 c3 constant load 10 size 512\n"
        "[acl]\nbind c2:0 K1 guard.acl\nbind c2:0 K1 guard.acl\n");
    CHECK_THROWS_AS(resolve_scenario(dup_port, scratch.dir.string(), RunOverrides{}),
                    ConfigError);
}

TEST_CASE("resolved flows carry synthesized addressing") {
    ScratchDir scratch;
    Scenario s = parse_scenario(
        "[topology]\npreset chain3\n[generators]\nflow m c1 c3 constant load 10 size 512\n");
    RunPlan plan = resolve_scenario(s, scratch.dir.string(), RunOverrides{});
    const FrameSpec& f = plan.generators[0].frame;
    REQUIRE(f.ip.has_value());
    CHECK(format_ip(f.ip->src) == "10.0.0.1");
    CHECK(format_ip(f.ip->dst) == "10.0.0.3");
    CHECK(f.ip->protocol == kIpProtoUdp);  // constant flows default to UDP
}
