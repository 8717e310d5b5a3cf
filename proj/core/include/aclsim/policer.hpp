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

#include "aclsim/acl.hpp"
#include "aclsim/frame.hpp"
#include "aclsim/sim_time.hpp"

namespace aclsim {

enum class PoliceResult { Conform, Exceed, Violate };

/// Token-bucket rate policer. Tokens replenish continuously at cir_bps and
/// are capped at excess_burst_bits; a frame conforms when its wire bits fit
/// under both the bucket and the normal burst, exceeds when they fit under
/// the bucket alone, and violates otherwise (debiting nothing).
class Policer {
public:
    explicit Policer(const PolicerConfig& cfg);

    /// Throws ClockError when `now` precedes the previous call.
    PoliceResult police(const Frame& frame, SimTime now);

    double tokens() const { return tokens_; }
    const PolicerConfig& config() const { return cfg_; }

private:
    PolicerConfig cfg_;
    double tokens_;  // bits
    SimTime last_update_ = 0;
};

}  // namespace aclsim
