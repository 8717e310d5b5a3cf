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

// Hot-path costs: full-stack classification, token-bucket policing, the
// pathfinder on the ten-node preset, and one short end-to-end trial.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "aclsim/acl.hpp"
#include "aclsim/bench.hpp"
#include "aclsim/frame.hpp"
#include "aclsim/policer.hpp"
#include "aclsim/reroute.hpp"
#include "aclsim/sim.hpp"
#include "aclsim/topology.hpp"

namespace {

using namespace aclsim;

Frame bench_frame() {
    FrameSpec s;
    s.src_mac = 0x0A0B0C0D0E01;
    s.dst_mac = 0x0A0B0C0D0E02;
    s.ip = IpHeader{4, IpAddr::v4(0x0A000001), IpAddr::v4(0x0A000063), kIpProtoUdp, 0};
    s.l4 = L4Header{1000, 2000, 0};
    return make_frame(s, 512, 0);
}

/// A stack the benchmark frame only matches at the last rule, so every
/// classification walks all `n` rules.
AclStack full_scan_stack(std::uint32_t n) {
    AclStack stack("bench");
    for (std::uint32_t i = 1; i < n; ++i) {
        AclRule r;
        r.seq = i * 10;
        r.fields = {L4DstPortMatch{static_cast<std::uint16_t>(3000 + i),
                                   static_cast<std::uint16_t>(3000 + i)}};
        r.action = DenyAction{};
        stack.insert_rule(r);
    }
    AclRule last;
    last.seq = n * 10;
    last.action = PermitAction{};
    stack.insert_rule(last);
    return stack;
}

void BM_ClassifyFullScan(benchmark::State& state) {
    AclStack stack = full_scan_stack(static_cast<std::uint32_t>(state.range(0)));
    Frame f = bench_frame();
    for (auto _ : state) {
        Verdict v = classify(f, "n1:0", stack, 0.5);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClassifyFullScan)->Arg(8)->Arg(40);

void BM_PolicerPolice(benchmark::State& state) {
    Policer p(PolicerConfig{1e9, 1'000'000, 2'000'000});
    Frame f = bench_frame();
    SimTime now = 0;
    for (auto _ : state) {
        now += 4'256'000;  // one 512-byte frame time at 1 Gbps
        benchmark::DoNotOptimize(p.police(f, now));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PolicerPolice);

void BM_ShortestPathTenNodes(benchmark::State& state) {
    Topology topo = load_topology("preset paper10", 1e9);
    for (auto _ : state) {
        auto p = shortest_path(topo, "n01", "n10");
        benchmark::DoNotOptimize(p);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ShortestPathTenNodes);

void BM_TrialThreeNodeChain(benchmark::State& state) {
    SweepConfig cfg = preset_sweep_config("chain3", 0.001, false, 1);
    for (auto _ : state) {
        TrialResult r = run_trial(cfg.topo, cfg.generators, cfg.stacks, cfg.thresholds, 1,
                                  cfg.schedule, cfg.options);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_TrialThreeNodeChain)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
