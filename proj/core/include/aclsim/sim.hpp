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
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "aclsim/acl.hpp"
#include "aclsim/congestion.hpp"
#include "aclsim/frame.hpp"
#include "aclsim/reroute.hpp"
#include "aclsim/sim_time.hpp"
#include "aclsim/topology.hpp"

namespace aclsim {

struct Schedule {
    SimTime start_delay = seconds_to_ps(2.0);
    SimTime duration = seconds_to_ps(100.0);
    SimTime drain = seconds_to_ps(15.0);
};

struct SimOptions {
    std::uint32_t queue_capacity_frames = 128;
    SimTime window = seconds_to_ps(0.1);
    // With guards disabled a matched guard rule always behaves as Permit;
    // classification work is identical, so on/off comparisons are fair.
    bool guards_enabled = true;
};

enum class GeneratorKind { Constant, PeriodicBurst };

/// A traffic source. Constant generators emit fixed-size frames at
/// load_percent of the first-hop line rate with one seeded uniform phase
/// offset; burst generators emit burst_count frames every burst_period,
/// paced at pace_fraction of the first-hop line rate, with a deterministic
/// phase_frac offset.
struct GeneratorSpec {
    std::string flow;
    NodeId src;
    NodeId dst;
    GeneratorKind kind = GeneratorKind::Constant;

    double load_percent = 50.0;          // Constant only
    std::uint32_t frame_size_bytes = 512;

    SimTime burst_period = seconds_to_ps(10.0);  // PeriodicBurst only
    std::uint32_t burst_count = 1;
    double pace_fraction = 1.0;
    double phase_frac = 0.0;  // fraction of burst_period

    std::optional<SimTime> start_delay;  // defaults to Schedule.start_delay
    std::optional<SimTime> duration;     // defaults to Schedule.duration

    FrameSpec frame;  // addressing template; size comes from frame_size_bytes
};

/// Throws ValidationError on out-of-range load, frame size, or burst shape.
void validate_generator(const GeneratorSpec& g);

// ---------------------------------------------------------------------------
// Egress queue, exposed for direct testing.
// ---------------------------------------------------------------------------

struct QueuedEntry {
    std::uint64_t frame_id = 0;
    std::uint8_t priority = 0;
    std::uint64_t wire_bits = 0;
    std::uint32_t flight = 0;  // simulator bookkeeping, opaque to the queue
};

struct PortQueue {
    PortId port;
    std::uint32_t capacity_frames = 128;
    std::deque<QueuedEntry> fifo;  // waiting frames; the one on the wire is
                                   // tracked by the engine, not the queue
};

struct GuardContext {
    bool active = false;
    std::uint8_t min_protected_priority = 0;
};

struct EnqueueOutcome {
    enum class Kind { Enqueued, DroppedTail, DroppedPriority };
    Kind kind = Kind::Enqueued;
    std::vector<QueuedEntry> evicted;  // entries removed to make room
};

/// Appends when there is room. On a full queue: with an active DropByPriority
/// guard, evicts per priority_drop_decision and admits the frame when that
/// freed space; otherwise tail-drops the arrival.
EnqueueOutcome enqueue_or_drop(PortQueue& q, const QueuedEntry& entry, const GuardContext& guard);

// ---------------------------------------------------------------------------
// Trial results
// ---------------------------------------------------------------------------

struct FlowStats {
    std::string flow;
    std::uint64_t tx_frames = 0;
    std::uint64_t rx_frames = 0;
    std::uint64_t dropped_tail = 0;
    std::uint64_t dropped_priority = 0;
    std::uint64_t dropped_policer = 0;
    std::uint64_t filtered = 0;  // Deny verdicts, not counted as loss
    std::uint64_t oversub_frames = 0;
    double max_jitter_us = 0.0;
    std::uint64_t jitter_samples = 0;

    std::uint64_t frames_lost() const {
        return dropped_tail + dropped_priority + dropped_policer;
    }
    double loss_pct() const {
        return tx_frames == 0 ? 0.0
                              : 100.0 * static_cast<double>(frames_lost()) /
                                    static_cast<double>(tx_frames);
    }
};

struct LinkDirStats {
    std::uint64_t offered_frames = 0;
    std::uint64_t carried_frames = 0;
    std::uint64_t dropped_frames = 0;
};

struct TrialResult {
    std::vector<FlowStats> flows;         // generator order
    std::vector<LinkDirStats> link_dirs;  // link_index * 2 + direction
    std::vector<std::string> alert_lines;
    std::vector<std::string> reroute_lines;
    std::uint64_t reroute_count = 0;
    std::uint64_t revert_count = 0;
    double max_oversub_ratio = 0.0;
    bool conservation_ok = false;

    std::uint64_t total_tx() const;
    std::uint64_t total_rx() const;
    std::uint64_t total_lost() const;
    std::uint64_t total_filtered() const;
    std::uint64_t total_oversub_frames() const;
    /// Loss over all flows, percent.
    double aggregate_loss_pct() const;
};

/// One deterministic discrete-event trial. Stacks must each be bound to an
/// ingress port of the topology. Throws BindingError on a malformed binding
/// and ConfigError on disconnected generator endpoints.
TrialResult run_trial(const Topology& topo, const std::vector<GeneratorSpec>& generators,
                      const std::vector<AclStack>& stacks, const Thresholds& thresholds,
                      std::uint64_t seed, const Schedule& schedule, const SimOptions& options);

}  // namespace aclsim
