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

#include "aclsim/sim.hpp"

namespace aclsim {

/// One full sweep setup. generators[0] is the flow under test; each sweep
/// cell patches its frame size and load percent, leaving cross traffic
/// untouched. Trial t runs with seed base_seed + t.
struct SweepConfig {
    Topology topo;
    std::vector<GeneratorSpec> generators;
    std::vector<AclStack> stacks;
    Thresholds thresholds;
    Schedule schedule;
    SimOptions options;

    std::vector<double> load_percents = {100, 90, 80, 70, 60, 50, 40, 30, 20, 10};
    std::vector<std::uint32_t> frame_sizes = {512, 1024, 1280, 1518};
    std::uint32_t trials = 4;
    std::uint64_t base_seed = 1;
    unsigned max_parallel = 0;  // 0: one task per hardware thread
};

/// Throws ValidationError on empty/duplicate/ascending loads, empty sizes,
/// or zero trials.
void validate_sweep(const SweepConfig& cfg);

/// Canonical sweep setup for a topology preset ("paper10", "twopath",
/// "chain3"): the main flow plus the preset's background traffic, guard
/// stacks bound on the contended path, desk-scale schedule when
/// duration_scale < 1. guard_on toggles options.guards_enabled only; the
/// bindings themselves are identical either way.
SweepConfig preset_sweep_config(const std::string& preset, double duration_scale, bool guard_on,
                                std::uint64_t base_seed);

/// One row of the loss table (either output format emits the first six
/// fields; the rest feed the guard comparison).
struct BenchRow {
    std::uint32_t nodes = 0;
    std::uint32_t links = 0;
    std::uint32_t frame_size_bytes = 0;
    double load_pct = 0;
    double frame_loss_pct = 0;  // mean over trials, all flows aggregated
    double max_jitter_us = 0;   // max over trials, flow under test
    std::uint64_t oversub_frames = 0;  // sum over trials
    std::uint64_t reroute_count = 0;   // sum over trials
};

/// Per-trial frame counts for one sweep cell.
struct TrialRow {
    double load_pct = 0;
    std::uint32_t frame_size = 0;
    std::uint32_t trial = 0;  // 1-based
    std::uint64_t tx_frames = 0;
    std::uint64_t rx_frames = 0;
    std::uint64_t frames_lost = 0;
    std::uint64_t oversub_frames = 0;
    std::uint64_t reroute_count = 0;
    bool conservation_ok = false;  // tx == rx + lost with nothing in flight
};

struct SweepResult {
    std::vector<BenchRow> rows;        // frame-size major, loads in spec order
    std::vector<TrialRow> trial_rows;  // same order, trials innermost
};

/// Runs trials for every (frame_size, load) cell. Cells run in parallel;
/// the output order is fixed by the config, not completion order.
SweepResult frame_loss_sweep(const SweepConfig& cfg);

struct ThroughputPoint {
    std::uint32_t frame_size = 0;
    std::optional<double> max_zero_loss_load_pct;  // empty: lossy at every load
};

/// Highest configured load with zero loss across all trials, per frame size,
/// found by bisecting the descending load list (loss is monotone in load).
std::vector<ThroughputPoint> throughput_test(const SweepConfig& cfg);

/// Same answer by brute force: measures every load in the list. This is the
/// reference the bisecting search is checked against.
std::vector<ThroughputPoint> throughput_test_exhaustive(const SweepConfig& cfg);

struct GuardComparison {
    SweepResult baseline;  // guards_enabled = false
    SweepResult guarded;   // guards_enabled = true
};

/// Runs the sweep twice with identical seeds, guard off then on.
GuardComparison guard_comparison(const SweepConfig& cfg);

}  // namespace aclsim
