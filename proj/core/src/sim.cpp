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

#include "aclsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <set>

#include "aclsim/errors.hpp"
#include "aclsim/policer.hpp"

namespace aclsim {

void validate_generator(const GeneratorSpec& g) {
    if (g.flow.empty()) throw ValidationError("generator needs a flow name");
    if (g.src == g.dst) throw ValidationError("generator src and dst must differ");
    if (g.frame_size_bytes < kMinFrameBytes || g.frame_size_bytes > kMaxTaggedFrameBytes)
        throw ValidationError("generator frame size out of range");
    if (g.kind == GeneratorKind::Constant) {
        if (!(g.load_percent > 0.0) || g.load_percent > 100.0)
            throw ValidationError("load_percent must be in (0, 100]");
    } else {
        if (g.burst_period == 0) throw ValidationError("burst_period must be positive");
        if (g.burst_count == 0) throw ValidationError("burst_count must be positive");
        if (!(g.pace_fraction > 0.0) || g.pace_fraction > 1.0)
            throw ValidationError("pace_fraction must be in (0, 1]");
        if (g.phase_frac < 0.0 || g.phase_frac >= 1.0)
            throw ValidationError("phase_frac must be in [0, 1)");
    }
}

EnqueueOutcome enqueue_or_drop(PortQueue& q, const QueuedEntry& entry, const GuardContext& guard) {
    if (q.fifo.size() < q.capacity_frames) {
        q.fifo.push_back(entry);
        return {EnqueueOutcome::Kind::Enqueued, {}};
    }
    if (!guard.active) return {EnqueueOutcome::Kind::DroppedTail, {}};

    std::vector<QueuedFrameView> snapshot;
    snapshot.reserve(q.fifo.size());
    for (const auto& e : q.fifo) snapshot.push_back({e.frame_id, e.priority, e.wire_bits});
    auto drop_ids =
        priority_drop_decision(snapshot, entry.wire_bits, guard.min_protected_priority);
    if (drop_ids.empty()) return {EnqueueOutcome::Kind::DroppedPriority, {}};

    std::set<std::uint64_t> drop_set(drop_ids.begin(), drop_ids.end());
    EnqueueOutcome out{EnqueueOutcome::Kind::Enqueued, {}};
    std::deque<QueuedEntry> kept;
    for (auto& e : q.fifo) {
        if (drop_set.count(e.frame_id))
            out.evicted.push_back(e);
        else
            kept.push_back(e);
    }
    q.fifo = std::move(kept);
    q.fifo.push_back(entry);
    return out;
}

std::uint64_t TrialResult::total_tx() const {
    std::uint64_t s = 0;
    for (const auto& f : flows) s += f.tx_frames;
    return s;
}
std::uint64_t TrialResult::total_rx() const {
    std::uint64_t s = 0;
    for (const auto& f : flows) s += f.rx_frames;
    return s;
}
std::uint64_t TrialResult::total_lost() const {
    std::uint64_t s = 0;
    for (const auto& f : flows) s += f.frames_lost();
    return s;
}
std::uint64_t TrialResult::total_filtered() const {
    std::uint64_t s = 0;
    for (const auto& f : flows) s += f.filtered;
    return s;
}
std::uint64_t TrialResult::total_oversub_frames() const {
    std::uint64_t s = 0;
    for (const auto& f : flows) s += f.oversub_frames;
    return s;
}
double TrialResult::aggregate_loss_pct() const {
    std::uint64_t tx = total_tx();
    return tx == 0 ? 0.0 : 100.0 * static_cast<double>(total_lost()) / static_cast<double>(tx);
}

namespace {

enum class EvKind : std::uint8_t {
    Arrival,
    SerializationDone,
    GeneratorTick,
    WindowBoundary,
    TrialEnd,
};

struct Event {
    SimTime t = 0;
    std::uint64_t seq = 0;
    EvKind kind = EvKind::TrialEnd;
    std::uint32_t arg = 0;
};

struct EventAfter {
    bool operator()(const Event& x, const Event& y) const {
        if (x.t != y.t) return x.t > y.t;
        return x.seq > y.seq;
    }
};

struct Flight {
    Frame frame;
    std::shared_ptr<const Path> path;
    std::uint32_t hop = 0;  // next link ordinal in path->links
    std::uint32_t gen = 0;
    SimTime final_ser_start = 0;
    GuardContext guard_ctx;
    bool alive = false;
};

struct GenState {
    const GeneratorSpec* spec = nullptr;
    SimTime start = 0;
    SimTime end = 0;
    SimTime jitter = 0;   // Constant: seeded phase offset
    double gap_ps = 0;    // Constant: inter-frame gap
    SimTime pace_ps = 0;  // PeriodicBurst: intra-burst spacing
    SimTime phase_ps = 0;
    std::uint64_t k = 0;  // Constant: next frame ordinal
    std::uint64_t m = 0;  // PeriodicBurst: burst ordinal
    std::uint32_t j = 0;  // PeriodicBurst: frame within burst
    std::shared_ptr<const Path> route;
    std::uint64_t route_epoch = 0;
    FrameSpec frame_template;
    std::uint32_t frame_size = 0;
    bool has_prev_latency = false;
    SimTime prev_latency = 0;
};

struct LinkDirState {
    PortQueue q;
    std::optional<std::uint32_t> serving;
    std::size_t link_idx = 0;
    int dir = 0;
    double rate_bps = 0;
};

std::string direction_label(const Link& l, int dir) {
    const NodeId& from = dir == 0 ? l.a.node : l.b.node;
    const NodeId& to = dir == 0 ? l.b.node : l.a.node;
    return l.id + ":" + from + "->" + to;
}

class Engine {
public:
    Engine(const Topology& topo, const std::vector<GeneratorSpec>& generators,
           const std::vector<AclStack>& stacks, const Thresholds& thresholds, std::uint64_t seed,
           const Schedule& schedule, const SimOptions& options)
        : topo_(topo),
          stacks_(stacks),
          options_(options),
          schedule_(schedule),
          monitor_(topo, thresholds, options.window) {
        trial_end_ = schedule.start_delay + schedule.duration + schedule.drain;
        setup_linkdirs();
        setup_stacks();
        setup_generators(generators, seed);
        schedule_initial_events();
    }

    TrialResult run() {
        while (!events_.empty()) {
            Event ev = events_.top();
            events_.pop();
            switch (ev.kind) {
                case EvKind::GeneratorTick:
                    on_generator_tick(ev.arg, ev.t);
                    break;
                case EvKind::SerializationDone:
                    on_serialization_done(ev.arg, ev.t);
                    break;
                case EvKind::Arrival:
                    on_arrival(ev.arg, ev.t);
                    break;
                case EvKind::WindowBoundary:
                    on_window_boundary(ev.t);
                    break;
                case EvKind::TrialEnd:
                    finalize();
                    return std::move(result_);
            }
        }
        finalize();
        return std::move(result_);
    }

private:
    void push_event(SimTime t, EvKind kind, std::uint32_t arg) {
        events_.push(Event{t, next_event_seq_++, kind, arg});
    }

    void setup_linkdirs() {
        const auto& links = topo_.links();
        linkdirs_.resize(links.size() * 2);
        for (std::size_t li = 0; li < links.size(); ++li) {
            for (int dir = 0; dir < 2; ++dir) {
                LinkDirState& ld = linkdirs_[li * 2 + static_cast<std::size_t>(dir)];
                ld.link_idx = li;
                ld.dir = dir;
                ld.rate_bps = links[li].rate_bps;
                ld.q.port = dir == 0 ? links[li].a.port : links[li].b.port;
                ld.q.capacity_frames = options_.queue_capacity_frames;
            }
        }
        result_.link_dirs.assign(linkdirs_.size(), {});
    }

    void setup_stacks() {
        stack_has_guard_.assign(stacks_.size(), false);
        for (std::size_t si = 0; si < stacks_.size(); ++si) {
            const AclStack& st = stacks_[si];
            if (!st.bound_to())
                throw BindingError("stack \"" + st.stack_id() + "\" is not bound to a port");
            const auto& b = *st.bound_to();
            const Link& l = topo_.link(b.link);  // NotFoundError on unknown link
            if (l.a.port != b.port && l.b.port != b.port)
                throw BindingError("stack \"" + st.stack_id() + "\" binds port " + b.port +
                                   " which is not an endpoint of link " + b.link);
            if (!stack_by_port_.emplace(b.port, si).second)
                throw BindingError("two stacks bound to port " + b.port);
            for (const AclRule& r : st.rules())
                if (std::holds_alternative<ThresholdGuard>(r.action)) stack_has_guard_[si] = true;
        }
    }

    void setup_generators(const std::vector<GeneratorSpec>& generators, std::uint64_t seed) {
        gens_specs_ = generators;
        std::mt19937_64 engine(seed);
        gens_.resize(gens_specs_.size());
        result_.flows.resize(gens_specs_.size());

        for (std::size_t gi = 0; gi < gens_specs_.size(); ++gi) {
            const GeneratorSpec& spec = gens_specs_[gi];
            validate_generator(spec);
            GenState& gs = gens_[gi];
            gs.spec = &spec;
            result_.flows[gi].flow = spec.flow;

            if (!table_.has_route(spec.src, spec.dst)) {
                auto p = shortest_path(topo_, spec.src, spec.dst);
                if (!p)
                    throw ConfigError("generator \"" + spec.flow + "\": no path " + spec.src +
                                      " -> " + spec.dst);
                table_.set_route(topo_, spec.src, spec.dst, std::move(*p));
            }
            const auto& entry = table_.entry(spec.src, spec.dst);
            gs.route = std::make_shared<const Path>(entry.current);
            gs.route_epoch = entry.epoch;

            gs.start = spec.start_delay.value_or(schedule_.start_delay);
            gs.end = gs.start + spec.duration.value_or(schedule_.duration);
            if (gs.end > schedule_.start_delay + schedule_.duration)
                throw ConfigError("generator \"" + spec.flow +
                                  "\" emits past the schedule's transmission phase");

            double first_hop_rate = topo_.link(gs.route->links.front()).rate_bps;
            std::uint64_t wire = wire_bits_for_size(spec.frame_size_bytes);
            gs.frame_size = spec.frame_size_bytes;
            gs.frame_template = spec.frame;
            gs.frame_template.flow_id = gi;

            if (spec.kind == GeneratorKind::Constant) {
                gs.gap_ps = static_cast<double>(wire) * 1e12 /
                            (first_hop_rate * spec.load_percent / 100.0);
                // One uniform draw per constant generator, in generator
                // order; bursts are phase-deterministic.
                double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
                gs.jitter = static_cast<SimTime>(std::llround(u * gs.gap_ps));
            } else {
                gs.pace_ps = serialization_ps(
                    wire, first_hop_rate * spec.pace_fraction);
                gs.phase_ps = static_cast<SimTime>(
                    std::llround(spec.phase_frac * static_cast<double>(spec.burst_period)));
            }
        }
    }

    void schedule_initial_events() {
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            GenState& gs = gens_[gi];
            SimTime first = gs.spec->kind == GeneratorKind::Constant
                                ? gs.start + gs.jitter
                                : gs.start + gs.phase_ps;
            if (first < gs.end) push_event(first, EvKind::GeneratorTick,
                                           static_cast<std::uint32_t>(gi));
        }
        if (options_.window < trial_end_)
            push_event(options_.window, EvKind::WindowBoundary, 0);
        push_event(trial_end_, EvKind::TrialEnd, 0);
    }

    std::uint32_t alloc_flight() {
        if (!free_flights_.empty()) {
            std::uint32_t idx = free_flights_.back();
            free_flights_.pop_back();
            return idx;
        }
        flights_.emplace_back();
        return static_cast<std::uint32_t>(flights_.size() - 1);
    }

    void free_flight(std::uint32_t idx) {
        flights_[idx].alive = false;
        flights_[idx].path.reset();
        free_flights_.push_back(idx);
    }

    void on_generator_tick(std::uint32_t gi, SimTime now) {
        GenState& gs = gens_[gi];
        const GeneratorSpec& spec = *gs.spec;

        const auto& entry = table_.entry(spec.src, spec.dst);
        if (entry.epoch != gs.route_epoch) {
            gs.route = std::make_shared<const Path>(entry.current);
            gs.route_epoch = entry.epoch;
        }

        gs.frame_template.frame_id = next_frame_id_++;
        std::uint32_t idx = alloc_flight();
        Flight& fl = flights_[idx];
        fl.frame = make_frame(gs.frame_template, gs.frame_size, now);
        fl.path = gs.route;
        fl.hop = 0;
        fl.gen = gi;
        fl.guard_ctx = {};
        fl.alive = true;
        ++result_.flows[gi].tx_frames;
        offer_to_next_link(idx, now);

        SimTime next = 0;
        if (spec.kind == GeneratorKind::Constant) {
            ++gs.k;
            next = gs.start + gs.jitter +
                   static_cast<SimTime>(std::llround(static_cast<double>(gs.k) * gs.gap_ps));
        } else {
            ++gs.j;
            if (gs.j >= spec.burst_count) {
                gs.j = 0;
                ++gs.m;
            }
            next = gs.start + gs.phase_ps + gs.m * spec.burst_period + gs.j * gs.pace_ps;
        }
        if (next < gs.end) push_event(next, EvKind::GeneratorTick, gi);
    }

    void offer_to_next_link(std::uint32_t idx, SimTime now) {
        Flight& fl = flights_[idx];
        const NodeId& at = fl.path->nodes[fl.hop];
        std::size_t li = topo_.link_index(fl.path->links[fl.hop]);
        const Link& l = topo_.links()[li];
        int dir = Topology::direction_from(l, at);
        std::size_t ldi = li * 2 + static_cast<std::size_t>(dir);
        LinkDirState& ld = linkdirs_[ldi];

        std::uint64_t wire = wire_bits(fl.frame);
        monitor_.record_offered(li, dir, static_cast<double>(wire), now);
        ++result_.link_dirs[ldi].offered_frames;
        if (monitor_.carried(li, dir, now) >= 1.0 - 1e-9)
            ++result_.flows[fl.gen].oversub_frames;

        QueuedEntry entry{fl.frame.frame_id, fl.frame.priority, wire, idx};
        EnqueueOutcome out = enqueue_or_drop(ld.q, entry, fl.guard_ctx);
        for (const QueuedEntry& ev : out.evicted) {
            ++result_.flows[flights_[ev.flight].gen].dropped_priority;
            ++result_.link_dirs[ldi].dropped_frames;
            free_flight(ev.flight);
        }
        switch (out.kind) {
            case EnqueueOutcome::Kind::Enqueued:
                if (!ld.serving) start_serialization(ldi, now);
                break;
            case EnqueueOutcome::Kind::DroppedTail:
                ++result_.flows[fl.gen].dropped_tail;
                ++result_.link_dirs[ldi].dropped_frames;
                free_flight(idx);
                break;
            case EnqueueOutcome::Kind::DroppedPriority:
                ++result_.flows[fl.gen].dropped_priority;
                ++result_.link_dirs[ldi].dropped_frames;
                free_flight(idx);
                break;
        }
    }

    void start_serialization(std::size_t ldi, SimTime now) {
        LinkDirState& ld = linkdirs_[ldi];
        QueuedEntry entry = ld.q.fifo.front();
        ld.q.fifo.pop_front();
        ld.serving = entry.flight;

        Flight& fl = flights_[entry.flight];
        SimTime ser = serialization_ps(entry.wire_bits, ld.rate_bps);
        monitor_.record_carried(ld.link_idx, ld.dir, static_cast<double>(entry.wire_bits), now,
                                now + ser);
        ++result_.link_dirs[ldi].carried_frames;
        if (fl.hop + 1 == fl.path->links.size()) fl.final_ser_start = now;
        push_event(now + ser, EvKind::SerializationDone, static_cast<std::uint32_t>(ldi));
    }

    void on_serialization_done(std::uint32_t ldi, SimTime now) {
        LinkDirState& ld = linkdirs_[ldi];
        std::uint32_t idx = *ld.serving;
        ld.serving.reset();
        if (!ld.q.fifo.empty()) start_serialization(ldi, now);
        push_event(now, EvKind::Arrival, idx);
    }

    void on_arrival(std::uint32_t idx, SimTime now) {
        Flight& fl = flights_[idx];
        const Path& path = *fl.path;
        std::size_t li = topo_.link_index(path.links[fl.hop]);
        const Link& l = topo_.links()[li];
        const NodeId& from = path.nodes[fl.hop];
        const NodeId& to = path.nodes[fl.hop + 1];
        int in_dir = Topology::direction_from(l, from);
        const PortId& in_port = Topology::endpoint_on(l, to).port;
        ++fl.hop;
        fl.guard_ctx = {};
        fl.frame.last_hop_arrival = now;

        auto sit = stack_by_port_.find(in_port);
        if (sit != stack_by_port_.end()) {
            std::size_t si = sit->second;
            double load =
                stack_has_guard_[si] ? monitor_.guard_load(li, in_dir, now) : 0.0;
            Verdict v = classify(fl.frame, in_port, stacks_[si], load);

            if (v.kind == Verdict::Kind::Deny) {
                ++result_.flows[fl.gen].filtered;
                free_flight(idx);
                return;
            }
            if (v.policer) {
                auto key = std::make_pair(si, *v.matched_seq);
                auto pit = policers_.find(key);
                if (pit == policers_.end())
                    pit = policers_.emplace(key, Policer(*v.policer)).first;
                if (pit->second.police(fl.frame, now) == PoliceResult::Violate) {
                    ++result_.flows[fl.gen].dropped_policer;
                    free_flight(idx);
                    return;
                }
            }
            if (v.kind == Verdict::Kind::Guard && options_.guards_enabled &&
                !handle_guard(idx, *v.guard, *v.matched_seq, si, li, in_dir, load, now))
                return;  // frame consumed (priority-dropped)
        }

        if (fl.hop == path.links.size()) {
            deliver(idx, now);
            return;
        }
        offer_to_next_link(idx, now);
    }

    // Returns false when the frame was dropped by the guard.
    bool handle_guard(std::uint32_t idx, const ThresholdGuard& guard, std::uint32_t seq,
                      std::size_t si, std::size_t li, int in_dir, double load, SimTime now) {
        Flight& fl = flights_[idx];
        switch (guard.on_exceed) {
            case GuardAction::AlertOnly: {
                auto key = std::make_pair(si, seq);
                std::uint64_t window_idx = now / options_.window;
                auto it = guard_alert_window_.find(key);
                if (it == guard_alert_window_.end() || it->second != window_idx) {
                    guard_alert_window_[key] = window_idx;
                    Alert a{now, AlertScope::Link, direction_label(topo_.links()[li], in_dir),
                            load, guard.link_load_threshold};
                    result_.alert_lines.push_back(alert_json_line(a));
                }
                return true;
            }
            case GuardAction::Reroute: {
                const GeneratorSpec& spec = *gens_[fl.gen].spec;
                const auto& entry = table_.entry(spec.src, spec.dst);
                bool on_hot_link = false;
                for (std::size_t i = 0; i < entry.current.links.size(); ++i) {
                    if (entry.current.links[i] == topo_.links()[li].id &&
                        entry.current.nodes[i] ==
                            (in_dir == 0 ? topo_.links()[li].a.node : topo_.links()[li].b.node)) {
                        on_hot_link = true;
                        break;
                    }
                }
                if (on_hot_link) {
                    std::vector<LinkId> old_links = entry.current.links;
                    auto loads = [&](const Link& cand, int dir) {
                        return monitor_.carried(topo_.link_index(cand.id), dir, now);
                    };
                    RerouteOutcome rr = reroute(table_, topo_, spec.src, spec.dst, loads,
                                                guard.link_load_threshold);
                    if (rr.kind == RerouteOutcome::Kind::NewPath) {
                        ++result_.reroute_count;
                        result_.reroute_lines.push_back(
                            reroute_json_line(now, spec.flow, old_links, rr.path.links));
                    }
                }
                return true;
            }
            case GuardAction::DropByPriority: {
                if (fl.frame.priority < guard.min_protected_priority) {
                    ++result_.flows[fl.gen].dropped_priority;
                    free_flight(idx);
                    return false;
                }
                fl.guard_ctx = {true, guard.min_protected_priority};
                return true;
            }
        }
        return true;
    }

    void deliver(std::uint32_t idx, SimTime now) {
        Flight& fl = flights_[idx];
        FlowStats& fs = result_.flows[fl.gen];
        ++fs.rx_frames;
        // Cut-through latency: first bit in (creation) to first bit out of
        // the final hop (its serialization start).
        SimTime latency = fl.final_ser_start - fl.frame.created_at;
        GenState& gs = gens_[fl.gen];
        if (gs.has_prev_latency) {
            double delta_us = std::abs(static_cast<double>(latency) -
                                       static_cast<double>(gs.prev_latency)) /
                              1e6;
            fs.max_jitter_us = std::max(fs.max_jitter_us, delta_us);
            ++fs.jitter_samples;
        }
        gs.prev_latency = latency;
        gs.has_prev_latency = true;
        (void)now;
        free_flight(idx);
    }

    void on_window_boundary(SimTime t) {
        for (const Alert& a : monitor_.evaluate_thresholds(t))
            result_.alert_lines.push_back(alert_json_line(a));

        for (std::size_t ldi = 0; ldi < linkdirs_.size(); ++ldi) {
            double r = monitor_.offered(linkdirs_[ldi].link_idx, linkdirs_[ldi].dir, t);
            result_.max_oversub_ratio = std::max(result_.max_oversub_ratio, r);
        }

        if (options_.guards_enabled) check_reverts(t);

        if (t + options_.window < trial_end_)
            push_event(t + options_.window, EvKind::WindowBoundary, 0);
    }

    void check_reverts(SimTime t) {
        for (const GenState& gs : gens_) {
            const GeneratorSpec& spec = *gs.spec;
            const auto& entry = table_.entry(spec.src, spec.dst);
            if (entry.current == entry.original) continue;
            bool all_clear = true;
            for (std::size_t i = 0; i < entry.original.links.size() && all_clear; ++i) {
                std::size_t li = topo_.link_index(entry.original.links[i]);
                int dir = Topology::direction_from(topo_.links()[li], entry.original.nodes[i]);
                if (monitor_.direction_above(li, dir)) all_clear = false;
            }
            if (!all_clear) continue;
            std::vector<LinkId> old_links = entry.current.links;
            std::vector<LinkId> new_links = entry.original.links;
            table_.revert(spec.src, spec.dst);
            ++result_.revert_count;
            result_.reroute_lines.push_back(
                reroute_json_line(t, spec.flow, old_links, new_links));
        }
    }

    void finalize() {
        bool ok = true;
        for (const FlowStats& f : result_.flows)
            if (f.tx_frames != f.rx_frames + f.frames_lost() + f.filtered) ok = false;
        for (const Flight& fl : flights_)
            if (fl.alive) ok = false;
        result_.conservation_ok = ok;
    }

    const Topology& topo_;
    std::vector<AclStack> stacks_;
    SimOptions options_;
    Schedule schedule_;
    CongestionMonitor monitor_;
    RouteTable table_;
    SimTime trial_end_ = 0;

    std::vector<GeneratorSpec> gens_specs_;
    std::vector<GenState> gens_;
    std::vector<LinkDirState> linkdirs_;
    std::map<PortId, std::size_t> stack_by_port_;
    std::vector<bool> stack_has_guard_;
    std::map<std::pair<std::size_t, std::uint32_t>, Policer> policers_;
    std::map<std::pair<std::size_t, std::uint32_t>, std::uint64_t> guard_alert_window_;

    std::vector<Flight> flights_;
    std::vector<std::uint32_t> free_flights_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
    std::uint64_t next_event_seq_ = 0;
    std::uint64_t next_frame_id_ = 1;

    TrialResult result_;
};

}  // namespace

TrialResult run_trial(const Topology& topo, const std::vector<GeneratorSpec>& generators,
                      const std::vector<AclStack>& stacks, const Thresholds& thresholds,
                      std::uint64_t seed, const Schedule& schedule, const SimOptions& options) {
    Engine engine(topo, generators, stacks, thresholds, seed, schedule, options);
    return engine.run();
}

}  // namespace aclsim
