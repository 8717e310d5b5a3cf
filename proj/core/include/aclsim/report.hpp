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

#include <string>
#include <vector>

#include "aclsim/bench.hpp"

namespace aclsim {

/// All writers emit '\n' line endings and shortest round-trip numbers, so a
/// repeated run with the same seed produces byte-identical files.

/// Header: nodes,links,frame_size_bytes,load_pct,frame_loss_pct,max_jitter_us
std::string frameloss_csv(const std::vector<BenchRow>& rows);
std::string frameloss_json(const std::vector<BenchRow>& rows);

/// Header: trial,frame_size,tx_frames,rx_frames,frames_lost
/// One table covers one load level; filter with trial_rows_at.
std::string trial_counts_csv(const std::vector<TrialRow>& rows);
std::string trial_counts_json(const std::vector<TrialRow>& rows);

std::vector<TrialRow> trial_rows_at(const SweepResult& result, double load_pct);

/// Header: frame_size_bytes,max_zero_loss_load_pct (empty cell / null when
/// every load lost frames)
std::string throughput_csv(const std::vector<ThroughputPoint>& points);
std::string throughput_json(const std::vector<ThroughputPoint>& points);

/// Side-by-side rows of a guard on/off pair, one per sweep cell. Header:
/// frame_size_bytes,load_pct,baseline_loss_pct,guarded_loss_pct,
/// baseline_oversub_frames,guarded_oversub_frames,reroutes
std::string guard_comparison_csv(const GuardComparison& cmp);
std::string guard_comparison_json(const GuardComparison& cmp);

/// Joins pre-rendered JSON objects into one object per line.
std::string jsonl(const std::vector<std::string>& lines);

/// Creates parent directories, then writes text verbatim.
/// Throws Error on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace aclsim
