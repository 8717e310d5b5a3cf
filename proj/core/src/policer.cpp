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

#include "aclsim/policer.hpp"

#include <algorithm>

#include "aclsim/errors.hpp"

namespace aclsim {

Policer::Policer(const PolicerConfig& cfg)
    : cfg_(cfg), tokens_(static_cast<double>(cfg.normal_burst_bits)) {}

PoliceResult Policer::police(const Frame& frame, SimTime now) {
    if (now < last_update_) throw ClockError("policer clock moved backwards");
    double replenished = cfg_.cir_bps * ps_to_seconds(now - last_update_);
    tokens_ = std::min(tokens_ + replenished, static_cast<double>(cfg_.excess_burst_bits));
    last_update_ = now;

    double bits = static_cast<double>(wire_bits(frame));
    if (bits <= std::min(tokens_, static_cast<double>(cfg_.normal_burst_bits))) {
        tokens_ -= bits;
        return PoliceResult::Conform;
    }
    if (bits <= tokens_) {
        tokens_ -= bits;
        return PoliceResult::Exceed;
    }
    return PoliceResult::Violate;
}

}  // namespace aclsim
