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

#include "aclsim/sim_time.hpp"
#include "aclsim/topology.hpp"

namespace aclsim {

struct Thresholds {
    double link_util = 0.9;
    std::optional<double> port_util;
    std::optional<double> subnet_avg_util;
    double clear_margin = 0.1;
    // When set, guards compare against the offered ratio instead of carried
    // utilization. Off by default: carried load is what the link measures.
    bool guard_uses_offered = false;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Throws ValidationError when link_util is outside (0,1] or the clear
/// threshold link_util - clear_margin is not positive.
void validate_thresholds(const Thresholds& t);

/// Tumbling-window bit meter for one direction of one link. Carried bits are
/// attributed pro rata over the serialization interval, so a completed
/// window never exceeds rate × window. Offered bits are point events and
/// unbounded above.
class UtilizationMeter {
public:
    UtilizationMeter(double rate_bps, SimTime window);

    /// Serialization interval [start, end). Throws ClockError when start
    /// precedes the previous record's start.
    void record_carried(double bits, SimTime start, SimTime end);
    void record_offered(double bits, SimTime at);

    /// Utilization of the most recently completed window at time `at`:
    /// window floor(at/W) - 1. Zero before the first completed window.
    double carried_utilization(SimTime at) const;
    /// Offered bits over capacity for the same window; may exceed 1.
    double offered_ratio(SimTime at) const;

    double carried_window_bits(SimTime at) const;
    SimTime window() const { return window_; }
    double rate_bps() const { return rate_bps_; }

private:
    struct Channel {
        std::uint64_t cur_idx = 0;
        double cur_bits = 0;
        std::uint64_t done_idx = 0;
        bool done_valid = false;
        double done_bits = 0;

        void add(std::uint64_t idx, double bits);
        double bits_for(std::uint64_t idx) const;
    };

    double window_capacity_bits() const;

    double rate_bps_;
    SimTime window_;
    Channel carried_;
    Channel offered_;
    SimTime last_start_ = 0;
};

enum class AlertScope { Link, Port, Subnet };

struct Alert {
    SimTime t = 0;
    AlertScope scope = AlertScope::Link;
    std::string id;
    double util = 0;
    double threshold = 0;
};

/// One JSON line: {"t":..., "scope":"link|port|subnet", "id":..., "util":...,
/// "threshold":...}. Number formatting is the shortest round-trip form, so
/// logs are byte-stable for a given trace.
std::string alert_json_line(const Alert& a);

/// Per-link-direction meters plus the threshold/hysteresis automaton. State
/// flips only inside evaluate_thresholds, which the simulation calls at every
/// window boundary.
class CongestionMonitor {
public:
    CongestionMonitor(const Topology& topo, const Thresholds& thresholds, SimTime window);

    void record_carried(std::size_t link_idx, int dir, double bits, SimTime start, SimTime end);
    void record_offered(std::size_t link_idx, int dir, double bits, SimTime at);

    double carried(std::size_t link_idx, int dir, SimTime at) const;
    double offered(std::size_t link_idx, int dir, SimTime at) const;
    /// What a guard compares against its threshold (carried unless
    /// guard_uses_offered is set).
    double guard_load(std::size_t link_idx, int dir, SimTime at) const;

    /// `boundary` is a multiple of the window length. Emits one alert per
    /// below→above crossing (link/port strictly above, subnet mean at or
    /// above) and clears state only below threshold - clear_margin.
    std::vector<Alert> evaluate_thresholds(SimTime boundary);

    bool direction_above(std::size_t link_idx, int dir) const;
    bool subnet_congested(const std::string& name) const;

    const std::vector<Alert>& alert_log() const { return alert_log_; }
    SimTime window() const { return window_; }
    const Thresholds& thresholds() const { return thresholds_; }

private:
    const Topology* topo_;
    Thresholds thresholds_;
    SimTime window_;
    std::vector<UtilizationMeter> meters_;      // link_idx * 2 + dir
    std::vector<bool> dir_above_;               // hysteresis per direction
    std::vector<bool> port_above_;              // per direction's egress port
    std::vector<std::string> subnet_names_;     // declaration order
    std::vector<bool> subnet_congested_;
    std::vector<Alert> alert_log_;
};

}  // namespace aclsim
