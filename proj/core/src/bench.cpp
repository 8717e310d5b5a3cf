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

#include "aclsim/bench.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <utility>

#include "aclsim/errors.hpp"
#include "aclsim/flows.hpp"

namespace aclsim {

namespace {

struct Cell {
    std::uint32_t size;
    double load;
};

struct TrialOutcome {
    std::uint64_t tx = 0;
    std::uint64_t rx = 0;
    std::uint64_t lost = 0;
    std::uint64_t oversub = 0;
    std::uint64_t reroutes = 0;
    double loss_pct = 0;
    double jitter_us = 0;
    bool conservation_ok = false;
};

std::vector<GeneratorSpec> patched_generators(const SweepConfig& cfg, std::uint32_t size,
                                              double load) {
    auto gens = cfg.generators;
    if (!gens.empty()) {
        gens[0].frame_size_bytes = size;
        gens[0].load_percent = load;
    }
    return gens;
}

TrialOutcome one_trial(const SweepConfig& cfg, std::uint32_t size, double load, std::uint32_t t) {
    const auto gens = patched_generators(cfg, size, load);
    const TrialResult r = run_trial(cfg.topo, gens, cfg.stacks, cfg.thresholds,
                                    cfg.base_seed + t, cfg.schedule, cfg.options);
    TrialOutcome o;
    o.tx = r.total_tx();
    o.rx = r.total_rx();
    o.lost = r.total_lost();
    o.oversub = r.total_oversub_frames();
    o.reroutes = r.reroute_count;
    o.loss_pct = r.aggregate_loss_pct();
    o.jitter_us = r.flows.empty() ? 0.0 : r.flows[0].max_jitter_us;
    o.conservation_ok = r.conservation_ok;
    return o;
}

/// Total frames lost in one trial of a sweep cell.
std::uint64_t trial_lost(const SweepConfig& cfg, std::uint32_t size, double load,
                         std::uint32_t t) {
    const auto gens = patched_generators(cfg, size, load);
    return run_trial(cfg.topo, gens, cfg.stacks, cfg.thresholds, cfg.base_seed + t,
                     cfg.schedule, cfg.options)
        .total_lost();
}

bool zero_loss(const SweepConfig& cfg, std::uint32_t size, double load) {
    for (std::uint32_t t = 0; t < cfg.trials; ++t)
        if (trial_lost(cfg, size, load, t) != 0) return false;
    return true;
}

GeneratorSpec constant_flow(const Topology& topo, std::string name, NodeId src, NodeId dst,
                            double load, std::uint16_t dst_port) {
    GeneratorSpec g;
    g.flow = std::move(name);
    g.kind = GeneratorKind::Constant;
    g.load_percent = load;
    g.frame_size_bytes = 512;
    g.frame = flow_frame_spec(topo, src, dst, kIpProtoUdp, L4Header{1000, dst_port, 0});
    g.src = std::move(src);
    g.dst = std::move(dst);
    return g;
}

GeneratorSpec burst_flow(const Topology& topo, std::string name, NodeId src, NodeId dst,
                         double period_s) {
    GeneratorSpec g;
    g.flow = std::move(name);
    g.kind = GeneratorKind::PeriodicBurst;
    // Full-size frames at a low frame rate: the shared queue stays dominated
    // by foreground frames, so its absorption capacity in bits (128 times the
    // foreground wire size) sets the loss, falling as frames grow.
    g.frame_size_bytes = 1518;
    g.burst_period = seconds_to_ps(period_s);
    // Two such sources add just under a tenth of the line rate while they
    // burst, so 85% foreground stays loss free and 95% overflows the queue.
    g.burst_count = 150;
    g.pace_fraction = 0.0475;
    g.phase_frac = 0.0;
    g.frame = flow_frame_spec(topo, src, dst, kIpProtoIcmp);
    g.src = std::move(src);
    g.dst = std::move(dst);
    return g;
}

/// Guard stack for the flow whose source address is guarded_src: reroute it
/// when the bound link runs above 90%, pass everything else through.
AclStack reroute_guard_stack(const Topology& topo, const LinkId& link, const NodeId& at,
                             const IpAddr& guarded_src) {
    AclStack stack;
    AclRule guard;
    guard.seq = 10;
    guard.fields.push_back(SrcIpMatch{guarded_src, prefix_mask(4, 32)});
    ThresholdGuard tg;
    tg.link_load_threshold = 0.9;
    tg.on_exceed = GuardAction::Reroute;
    guard.action = tg;
    stack.insert_rule(std::move(guard));
    AclRule rest;
    rest.seq = 20;
    rest.action = PermitAction{};
    stack.insert_rule(std::move(rest));
    stack.bind(Topology::endpoint_on(topo.link(link), at).port, link);
    return stack;
}

std::vector<double> descending(double hi, double lo, double step) {
    std::vector<double> out;
    for (double v = hi; v > lo - 1e-9; v -= step) out.push_back(v);
    return out;
}

}  // namespace

void validate_sweep(const SweepConfig& cfg) {
    if (cfg.load_percents.empty()) throw ValidationError("load_percents must not be empty");
    for (std::size_t i = 0; i < cfg.load_percents.size(); ++i) {
        const double l = cfg.load_percents[i];
        if (!(l > 0.0) || l > 100.0) throw ValidationError("load_percents must be in (0, 100]");
        if (i > 0 && !(l < cfg.load_percents[i - 1]))
            throw ValidationError("load_percents must be strictly descending");
    }
    if (cfg.frame_sizes.empty()) throw ValidationError("frame_sizes must not be empty");
    for (const auto s : cfg.frame_sizes)
        if (s < kMinFrameBytes || s > kMaxTaggedFrameBytes)
            throw ValidationError("frame_sizes entries must be valid frame sizes");
    if (cfg.trials == 0) throw ValidationError("trials must be positive");
    if (!cfg.generators.empty() && cfg.generators[0].kind != GeneratorKind::Constant)
        throw ValidationError("the flow under test must be a constant-rate generator");
}

SweepConfig preset_sweep_config(const std::string& preset, double duration_scale, bool guard_on,
                                std::uint64_t base_seed) {
    if (!(duration_scale > 0.0)) throw ConfigError("duration_scale must be positive");
    SweepConfig cfg;
    cfg.topo = load_topology(preset_document(preset));
    cfg.schedule.duration = seconds_to_ps(100.0 * duration_scale);
    cfg.options.guards_enabled = guard_on;
    cfg.base_seed = base_seed;

    if (preset == "paper10") {
        cfg.generators.push_back(constant_flow(cfg.topo, "main", "n01", "n10", 85.0, 2000));
        cfg.generators.push_back(
            burst_flow(cfg.topo, "cross-n03", "n03", "n09", 10.0 * duration_scale));
        cfg.generators.push_back(
            burst_flow(cfg.topo, "cross-n05", "n05", "n09", 10.0 * duration_scale));
        cfg.stacks.push_back(reroute_guard_stack(cfg.topo, "L02", "n09",
                                                 node_ip(node_index(cfg.topo, "n01"))));
    } else if (preset == "twopath") {
        // Foreground plus a constant 85% cross load saturate the primary
        // path; the guard's reroute is what the comparison measures.
        cfg.generators.push_back(constant_flow(cfg.topo, "main", "t1", "t4", 70.0, 2000));
        cfg.generators.push_back(constant_flow(cfg.topo, "cross-t2", "t2", "t4", 85.0, 2001));
        cfg.stacks.push_back(
            reroute_guard_stack(cfg.topo, "P2", "t4", node_ip(node_index(cfg.topo, "t1"))));
        cfg.load_percents = {70};
        cfg.frame_sizes = {512};
    } else if (preset == "chain3") {
        // A 12% constant cross load puts the zero-loss boundary between the
        // 85 and 90 grid points for every frame size.
        cfg.generators.push_back(constant_flow(cfg.topo, "main", "c1", "c3", 85.0, 2000));
        cfg.generators.push_back(constant_flow(cfg.topo, "cross-c2", "c2", "c3", 12.0, 2001));
        cfg.load_percents = descending(100, 50, 5);
    } else {
        throw NotFoundError("unknown preset: " + preset);
    }
    return cfg;
}

SweepResult frame_loss_sweep(const SweepConfig& cfg) {
    validate_sweep(cfg);
    std::vector<Cell> cells;
    cells.reserve(cfg.frame_sizes.size() * cfg.load_percents.size());
    for (const auto size : cfg.frame_sizes)
        for (const auto load : cfg.load_percents) cells.push_back({size, load});

    const std::size_t trials = cfg.trials;
    const std::size_t jobs = cells.size() * trials;
    std::vector<TrialOutcome> outcomes(jobs);
    const unsigned par = cfg.max_parallel != 0
                             ? cfg.max_parallel
                             : std::max(1u, std::thread::hardware_concurrency());
    auto run_job = [&cfg, &cells, trials](std::size_t j) {
        const Cell& c = cells[j / trials];
        return one_trial(cfg, c.size, c.load, static_cast<std::uint32_t>(j % trials));
    };
    if (par <= 1 || jobs <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) outcomes[j] = run_job(j);
    } else {
        // Waves of independent trials; results land by index, so completion
        // order never changes the report.
        std::size_t next = 0;
        while (next < jobs) {
            const std::size_t batch = std::min<std::size_t>(par, jobs - next);
            std::vector<std::future<TrialOutcome>> futs;
            futs.reserve(batch);
            for (std::size_t k = 0; k < batch; ++k)
                futs.push_back(std::async(std::launch::async, run_job, next + k));
            for (std::size_t k = 0; k < batch; ++k) outcomes[next + k] = futs[k].get();
            next += batch;
        }
    }

    SweepResult res;
    res.rows.reserve(cells.size());
    res.trial_rows.reserve(jobs);
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        BenchRow row;
        row.nodes = static_cast<std::uint32_t>(cfg.topo.nodes().size());
        row.links = static_cast<std::uint32_t>(cfg.topo.links().size());
        row.frame_size_bytes = cells[ci].size;
        row.load_pct = cells[ci].load;
        double loss_sum = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const TrialOutcome& o = outcomes[ci * trials + t];
            loss_sum += o.loss_pct;
            row.max_jitter_us = std::max(row.max_jitter_us, o.jitter_us);
            row.oversub_frames += o.oversub;
            row.reroute_count += o.reroutes;
            TrialRow tr;
            tr.load_pct = cells[ci].load;
            tr.frame_size = cells[ci].size;
            tr.trial = static_cast<std::uint32_t>(t + 1);
            tr.tx_frames = o.tx;
            tr.rx_frames = o.rx;
            tr.frames_lost = o.lost;
            tr.oversub_frames = o.oversub;
            tr.reroute_count = o.reroutes;
            tr.conservation_ok = o.conservation_ok;
            res.trial_rows.push_back(tr);
        }
        row.frame_loss_pct = loss_sum / static_cast<double>(trials);
        res.rows.push_back(row);
    }
    return res;
}

std::vector<ThroughputPoint> throughput_test(const SweepConfig& cfg) {
    validate_sweep(cfg);
    const auto& loads = cfg.load_percents;
    const std::size_t n = loads.size();
    std::vector<ThroughputPoint> out;
    out.reserve(cfg.frame_sizes.size());
    for (const auto size : cfg.frame_sizes) {
        ThroughputPoint p;
        p.frame_size = size;
        if (zero_loss(cfg, size, loads[0])) {
            p.max_zero_loss_load_pct = loads[0];
        } else if (n > 1 && zero_loss(cfg, size, loads[n - 1])) {
            // Loss is monotone in load, so bisect the descending list:
            // lossy at lo, clean at hi.
            std::size_t lo = 0;
            std::size_t hi = n - 1;
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (zero_loss(cfg, size, loads[mid]))
                    hi = mid;
                else
                    lo = mid;
            }
            p.max_zero_loss_load_pct = loads[hi];
        }
        out.push_back(p);
    }
    return out;
}

std::vector<ThroughputPoint> throughput_test_exhaustive(const SweepConfig& cfg) {
    validate_sweep(cfg);
    std::vector<ThroughputPoint> out;
    out.reserve(cfg.frame_sizes.size());
    for (const auto size : cfg.frame_sizes) {
        ThroughputPoint p;
        p.frame_size = size;
        for (const auto load : cfg.load_percents) {
            if (!zero_loss(cfg, size, load)) continue;
            if (!p.max_zero_loss_load_pct || load > *p.max_zero_loss_load_pct)
                p.max_zero_loss_load_pct = load;
        }
        out.push_back(p);
    }
    return out;
}

GuardComparison guard_comparison(const SweepConfig& cfg) {
    SweepConfig off = cfg;
    off.options.guards_enabled = false;
    SweepConfig on = cfg;
    on.options.guards_enabled = true;
    return {frame_loss_sweep(off), frame_loss_sweep(on)};
}

}  // namespace aclsim
