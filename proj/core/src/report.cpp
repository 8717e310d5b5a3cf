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

#include "aclsim/report.hpp"

#include <filesystem>
#include <fstream>

#include "aclsim/errors.hpp"
#include "aclsim/text_format.hpp"

namespace aclsim {

std::string frameloss_csv(const std::vector<BenchRow>& rows) {
    std::string out = "nodes,links,frame_size_bytes,load_pct,frame_loss_pct,max_jitter_us\n";
    for (const auto& r : rows) {
        out += std::to_string(r.nodes) + ',' + std::to_string(r.links) + ',' +
               std::to_string(r.frame_size_bytes) + ',' + format_number(r.load_pct) + ',' +
               format_number(r.frame_loss_pct) + ',' + format_number(r.max_jitter_us) + '\n';
    }
    return out;
}

std::string frameloss_json(const std::vector<BenchRow>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i > 0) out += ',';
        out += "{\"nodes\":" + std::to_string(r.nodes) + ",\"links\":" + std::to_string(r.links) +
               ",\"frame_size_bytes\":" + std::to_string(r.frame_size_bytes) +
               ",\"load_pct\":" + format_number(r.load_pct) +
               ",\"frame_loss_pct\":" + format_number(r.frame_loss_pct) +
               ",\"max_jitter_us\":" + format_number(r.max_jitter_us) + "}";
    }
    out += "]\n";
    return out;
}

std::string trial_counts_csv(const std::vector<TrialRow>& rows) {
    std::string out = "trial,frame_size,tx_frames,rx_frames,frames_lost\n";
    for (const auto& r : rows) {
        out += std::to_string(r.trial) + ',' + std::to_string(r.frame_size) + ',' +
               std::to_string(r.tx_frames) + ',' + std::to_string(r.rx_frames) + ',' +
               std::to_string(r.frames_lost) + '\n';
    }
    return out;
}

std::string trial_counts_json(const std::vector<TrialRow>& rows) {
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i > 0) out += ',';
        out += "{\"trial\":" + std::to_string(r.trial) +
               ",\"frame_size\":" + std::to_string(r.frame_size) +
               ",\"tx_frames\":" + std::to_string(r.tx_frames) +
               ",\"rx_frames\":" + std::to_string(r.rx_frames) +
               ",\"frames_lost\":" + std::to_string(r.frames_lost) + "}";
    }
    out += "]\n";
    return out;
}

std::vector<TrialRow> trial_rows_at(const SweepResult& result, double load_pct) {
    std::vector<TrialRow> out;
    for (const auto& r : result.trial_rows)
        if (r.load_pct == load_pct) out.push_back(r);
    return out;
}

std::string throughput_csv(const std::vector<ThroughputPoint>& points) {
    std::string out = "frame_size_bytes,max_zero_loss_load_pct\n";
    for (const auto& p : points) {
        out += std::to_string(p.frame_size) + ',';
        if (p.max_zero_loss_load_pct) out += format_number(*p.max_zero_loss_load_pct);
        out += '\n';
    }
    return out;
}

std::string throughput_json(const std::vector<ThroughputPoint>& points) {
    std::string out = "[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (i > 0) out += ',';
        out += "{\"frame_size_bytes\":" + std::to_string(p.frame_size) +
               ",\"max_zero_loss_load_pct\":";
        out += p.max_zero_loss_load_pct ? format_number(*p.max_zero_loss_load_pct) : "null";
        out += "}";
    }
    out += "]\n";
    return out;
}

namespace {

void check_aligned(const GuardComparison& cmp) {
    if (cmp.baseline.rows.size() != cmp.guarded.rows.size())
        throw ValidationError("guard comparison tables have different shapes");
}

}  // namespace

std::string guard_comparison_csv(const GuardComparison& cmp) {
    check_aligned(cmp);
    std::string out =
        "frame_size_bytes,load_pct,baseline_loss_pct,guarded_loss_pct,"
        "baseline_oversub_frames,guarded_oversub_frames,reroutes\n";
    for (std::size_t i = 0; i < cmp.baseline.rows.size(); ++i) {
        const auto& b = cmp.baseline.rows[i];
        const auto& g = cmp.guarded.rows[i];
        out += std::to_string(b.frame_size_bytes) + ',' + format_number(b.load_pct) + ',' +
               format_number(b.frame_loss_pct) + ',' + format_number(g.frame_loss_pct) + ',' +
               std::to_string(b.oversub_frames) + ',' + std::to_string(g.oversub_frames) + ',' +
               std::to_string(g.reroute_count) + '\n';
    }
    return out;
}

std::string guard_comparison_json(const GuardComparison& cmp) {
    check_aligned(cmp);
    std::string out = "[";
    for (std::size_t i = 0; i < cmp.baseline.rows.size(); ++i) {
        const auto& b = cmp.baseline.rows[i];
        const auto& g = cmp.guarded.rows[i];
        if (i > 0) out += ',';
        out += "{\"frame_size_bytes\":" + std::to_string(b.frame_size_bytes) +
               ",\"load_pct\":" + format_number(b.load_pct) +
               ",\"baseline_loss_pct\":" + format_number(b.frame_loss_pct) +
               ",\"guarded_loss_pct\":" + format_number(g.frame_loss_pct) +
               ",\"baseline_oversub_frames\":" + std::to_string(b.oversub_frames) +
               ",\"guarded_oversub_frames\":" + std::to_string(g.oversub_frames) +
               ",\"reroutes\":" + std::to_string(g.reroute_count) + "}";
    }
    out += "]\n";
    return out;
}

std::string jsonl(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw Error("cannot create directory " + p.parent_path().string());
    }
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot open " + path + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    f.flush();
    if (!f) throw Error("write failed: " + path);
}

}  // namespace aclsim
