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

#include "aclsim/congestion.hpp"

#include <algorithm>
#include <charconv>

#include "aclsim/errors.hpp"

namespace aclsim {

namespace {

std::string format_number(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string direction_id(const Link& l, int dir) {
    const NodeId& from = dir == 0 ? l.a.node : l.b.node;
    const NodeId& to = dir == 0 ? l.b.node : l.a.node;
    return l.id + ":" + from + "->" + to;
}

const PortId& egress_port(const Link& l, int dir) {
    return dir == 0 ? l.a.port : l.b.port;
}

}  // namespace

void validate_thresholds(const Thresholds& t) {
    if (!(t.link_util > 0.0) || t.link_util > 1.0)
        throw ValidationError("link_util must be in (0, 1]");
    if (t.clear_margin < 0.0) throw ValidationError("clear_margin must be non-negative");
    if (!(t.link_util - t.clear_margin > 0.0))
        throw ValidationError("clear threshold link_util - clear_margin must be positive");
    for (const auto& opt : {t.port_util, t.subnet_avg_util})
        if (opt && (!(*opt > 0.0) || *opt > 1.0))
            throw ValidationError("optional thresholds must be in (0, 1]");
}

void UtilizationMeter::Channel::add(std::uint64_t idx, double bits) {
    if (idx == cur_idx) {
        cur_bits += bits;
        return;
    }
    if (idx < cur_idx) throw ClockError("meter window index moved backwards");
    done_idx = cur_idx;
    done_bits = cur_bits;
    done_valid = true;
    cur_idx = idx;
    cur_bits = bits;
}

double UtilizationMeter::Channel::bits_for(std::uint64_t idx) const {
    if (idx == cur_idx) return cur_bits;
    if (done_valid && idx == done_idx) return done_bits;
    return 0.0;
}

UtilizationMeter::UtilizationMeter(double rate_bps, SimTime window)
    : rate_bps_(rate_bps), window_(window) {
    if (rate_bps <= 0) throw ValidationError("meter rate must be positive");
    if (window == 0) throw ValidationError("meter window must be positive");
}

double UtilizationMeter::window_capacity_bits() const {
    return rate_bps_ * ps_to_seconds(window_);
}

void UtilizationMeter::record_carried(double bits, SimTime start, SimTime end) {
    if (start < last_start_) throw ClockError("meter time moved backwards");
    last_start_ = start;
    if (end <= start) {
        carried_.add(start / window_, bits);
        return;
    }
    std::uint64_t first = start / window_;
    std::uint64_t last = (end - 1) / window_;
    double span = static_cast<double>(end - start);
    for (std::uint64_t w = first; w <= last; ++w) {
        SimTime w_start = w * window_;
        SimTime w_end = w_start + window_;
        SimTime lo = std::max(start, w_start);
        SimTime hi = std::min(end, w_end);
        carried_.add(w, bits * static_cast<double>(hi - lo) / span);
    }
}

void UtilizationMeter::record_offered(double bits, SimTime at) {
    offered_.add(at / window_, bits);
}

double UtilizationMeter::carried_utilization(SimTime at) const {
    if (at < window_) return 0.0;
    // Serialization intervals never overlap, so a completed window holds at
    // most rate * window bits; min() squashes float summation residue.
    return std::min(1.0, carried_.bits_for(at / window_ - 1) / window_capacity_bits());
}

double UtilizationMeter::offered_ratio(SimTime at) const {
    if (at < window_) return 0.0;
    return offered_.bits_for(at / window_ - 1) / window_capacity_bits();
}

double UtilizationMeter::carried_window_bits(SimTime at) const {
    if (at < window_) return 0.0;
    return std::min(carried_.bits_for(at / window_ - 1), window_capacity_bits());
}

std::string alert_json_line(const Alert& a) {
    const char* scope = a.scope == AlertScope::Link    ? "link"
                        : a.scope == AlertScope::Port ? "port"
                                                      : "subnet";
    return std::string("{\"t\":") + format_number(ps_to_seconds(a.t)) + ",\"scope\":\"" + scope +
           "\",\"id\":\"" + escape_json(a.id) + "\",\"util\":" + format_number(a.util) +
           ",\"threshold\":" + format_number(a.threshold) + "}";
}

CongestionMonitor::CongestionMonitor(const Topology& topo, const Thresholds& thresholds,
                                     SimTime window)
    : topo_(&topo), thresholds_(thresholds), window_(window) {
    validate_thresholds(thresholds_);
    meters_.reserve(topo.links().size() * 2);
    for (const Link& l : topo.links()) {
        meters_.emplace_back(l.rate_bps, window);
        meters_.emplace_back(l.rate_bps, window);
    }
    dir_above_.assign(meters_.size(), false);
    port_above_.assign(meters_.size(), false);
    for (const auto& [name, members] : topo.subnetworks()) subnet_names_.push_back(name);
    subnet_congested_.assign(subnet_names_.size(), false);
}

void CongestionMonitor::record_carried(std::size_t link_idx, int dir, double bits, SimTime start,
                                       SimTime end) {
    meters_[link_idx * 2 + static_cast<std::size_t>(dir)].record_carried(bits, start, end);
}

void CongestionMonitor::record_offered(std::size_t link_idx, int dir, double bits, SimTime at) {
    meters_[link_idx * 2 + static_cast<std::size_t>(dir)].record_offered(bits, at);
}

double CongestionMonitor::carried(std::size_t link_idx, int dir, SimTime at) const {
    return meters_[link_idx * 2 + static_cast<std::size_t>(dir)].carried_utilization(at);
}

double CongestionMonitor::offered(std::size_t link_idx, int dir, SimTime at) const {
    return meters_[link_idx * 2 + static_cast<std::size_t>(dir)].offered_ratio(at);
}

double CongestionMonitor::guard_load(std::size_t link_idx, int dir, SimTime at) const {
    return thresholds_.guard_uses_offered ? offered(link_idx, dir, at)
                                          : carried(link_idx, dir, at);
}

std::vector<Alert> CongestionMonitor::evaluate_thresholds(SimTime boundary) {
    std::vector<Alert> out;
    const auto& links = topo_->links();

    for (std::size_t li = 0; li < links.size(); ++li) {
        for (int dir = 0; dir < 2; ++dir) {
            std::size_t mi = li * 2 + static_cast<std::size_t>(dir);
            double u = meters_[mi].carried_utilization(boundary);
            if (!dir_above_[mi] && u > thresholds_.link_util) {
                dir_above_[mi] = true;
                out.push_back(
                    {boundary, AlertScope::Link, direction_id(links[li], dir), u,
                     thresholds_.link_util});
            } else if (dir_above_[mi] && u < thresholds_.link_util - thresholds_.clear_margin) {
                dir_above_[mi] = false;
            }
        }
    }

    if (thresholds_.port_util) {
        for (std::size_t li = 0; li < links.size(); ++li) {
            for (int dir = 0; dir < 2; ++dir) {
                std::size_t mi = li * 2 + static_cast<std::size_t>(dir);
                double u = meters_[mi].carried_utilization(boundary);
                if (!port_above_[mi] && u > *thresholds_.port_util) {
                    port_above_[mi] = true;
                    out.push_back({boundary, AlertScope::Port, egress_port(links[li], dir), u,
                                   *thresholds_.port_util});
                } else if (port_above_[mi] &&
                           u < *thresholds_.port_util - thresholds_.clear_margin) {
                    port_above_[mi] = false;
                }
            }
        }
    }

    if (thresholds_.subnet_avg_util) {
        for (std::size_t si = 0; si < subnet_names_.size(); ++si) {
            const auto& members = topo_->subnetworks().at(subnet_names_[si]);
            double sum = 0;
            for (const LinkId& id : members) {
                std::size_t li = topo_->link_index(id);
                // A full-duplex link is as utilized as its busier direction.
                sum += std::max(meters_[li * 2].carried_utilization(boundary),
                                meters_[li * 2 + 1].carried_utilization(boundary));
            }
            double mean = members.empty() ? 0.0 : sum / static_cast<double>(members.size());
            if (!subnet_congested_[si] && mean >= *thresholds_.subnet_avg_util) {
                subnet_congested_[si] = true;
                out.push_back({boundary, AlertScope::Subnet, subnet_names_[si], mean,
                               *thresholds_.subnet_avg_util});
            } else if (subnet_congested_[si] &&
                       mean < *thresholds_.subnet_avg_util - thresholds_.clear_margin) {
                subnet_congested_[si] = false;
            }
        }
    }

    alert_log_.insert(alert_log_.end(), out.begin(), out.end());
    return out;
}

bool CongestionMonitor::direction_above(std::size_t link_idx, int dir) const {
    return dir_above_[link_idx * 2 + static_cast<std::size_t>(dir)];
}

bool CongestionMonitor::subnet_congested(const std::string& name) const {
    for (std::size_t i = 0; i < subnet_names_.size(); ++i)
        if (subnet_names_[i] == name) return subnet_congested_[i];
    throw NotFoundError("unknown subnetwork \"" + name + "\"");
}

}  // namespace aclsim
