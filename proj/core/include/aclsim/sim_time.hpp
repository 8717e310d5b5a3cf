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

#include <cmath>
#include <cstdint>

namespace aclsim {

/// Simulated time in integer picoseconds. Integer time keeps window
/// boundaries and event ordering exact; doubles appear only at the
/// input (config seconds) and output (report seconds/us) edges.
using SimTime = std::uint64_t;

inline constexpr SimTime kPsPerSecond = 1'000'000'000'000ULL;
inline constexpr SimTime kPsPerMicrosecond = 1'000'000ULL;

inline SimTime seconds_to_ps(double s) {
    return static_cast<SimTime>(std::llround(s * static_cast<double>(kPsPerSecond)));
}

inline double ps_to_seconds(SimTime t) {
    return static_cast<double>(t) / static_cast<double>(kPsPerSecond);
}

inline double ps_to_us(SimTime t) {
    return static_cast<double>(t) / static_cast<double>(kPsPerMicrosecond);
}

/// Time to serialize `bits` onto a link running at `rate_bps`.
inline SimTime serialization_ps(std::uint64_t bits, double rate_bps) {
    return static_cast<SimTime>(
        std::llround(static_cast<double>(bits) * static_cast<double>(kPsPerSecond) / rate_bps));
}

}  // namespace aclsim
