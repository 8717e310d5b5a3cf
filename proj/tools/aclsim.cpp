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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aclsim/acl_text.hpp"
#include "aclsim/bench.hpp"
#include "aclsim/errors.hpp"
#include "aclsim/report.hpp"
#include "aclsim/scenario.hpp"
#include "aclsim/text_format.hpp"

namespace fs = std::filesystem;
using namespace aclsim;

namespace {

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int check_acl(const std::string& path) {
    const auto text = read_file(path);
    if (!text) {
        std::cerr << "aclsim: file not found: " << path << '\n';
        return 1;
    }
    std::vector<AclRule> rules;
    try {
        rules = parse_acl_text(*text);
    } catch (const SchemaError& e) {
        std::cerr << "aclsim: " << path << ": " << e.what() << '\n';
        return 1;
    }
    std::cout << rules.size() << " rules\n";
    if (rules.empty()) {
        std::cout << "note: an empty rule list cannot be bound to a port; "
                     "binding requires at least one rule\n";
        return 0;
    }
    std::cout << print_acl_text(rules);
    AclStack stack;
    for (const auto& r : rules) stack.insert_rule(r);
    for (const auto& w : lint_specific_before_general(stack))
        std::cout << "warning: " << w.message << '\n';
    return 0;
}

struct RunFlags {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    double duration_scale = 1.0;
    std::string guard;
    std::string out_dir;
    std::string format;
};

void emit(const std::string& path, const std::string& text) {
    write_text_file(path, text);
    std::cout << "wrote " << path << '\n';
}

void run_single_trials(const RunPlan& plan, const std::string& out_dir,
                       const std::string& format) {
    std::string csv =
        "trial,flow,tx_frames,rx_frames,frames_lost,filtered,oversub_frames,max_jitter_us\n";
    std::string json = "[";
    std::vector<std::string> alerts;
    std::vector<std::string> reroutes;
    bool first = true;
    for (std::uint32_t t = 0; t < plan.trials; ++t) {
        const TrialResult r = run_trial(plan.topo, plan.generators, plan.stacks, plan.thresholds,
                                        plan.seed + t, plan.schedule, plan.options);
        for (const auto& f : r.flows) {
            csv += std::to_string(t + 1) + ',' + f.flow + ',' + std::to_string(f.tx_frames) +
                   ',' + std::to_string(f.rx_frames) + ',' + std::to_string(f.frames_lost()) +
                   ',' + std::to_string(f.filtered) + ',' + std::to_string(f.oversub_frames) +
                   ',' + format_number(f.max_jitter_us) + '\n';
            if (!first) json += ',';
            first = false;
            json += "{\"trial\":" + std::to_string(t + 1) + ",\"flow\":\"" + f.flow +
                    "\",\"tx_frames\":" + std::to_string(f.tx_frames) +
                    ",\"rx_frames\":" + std::to_string(f.rx_frames) +
                    ",\"frames_lost\":" + std::to_string(f.frames_lost()) +
                    ",\"filtered\":" + std::to_string(f.filtered) +
                    ",\"oversub_frames\":" + std::to_string(f.oversub_frames) +
                    ",\"max_jitter_us\":" + format_number(f.max_jitter_us) + "}";
        }
        alerts.insert(alerts.end(), r.alert_lines.begin(), r.alert_lines.end());
        reroutes.insert(reroutes.end(), r.reroute_lines.begin(), r.reroute_lines.end());
    }
    json += "]\n";
    const fs::path dir(out_dir);
    if (format == "json")
        emit((dir / (plan.prefix + "_flows.json")).string(), json);
    else
        emit((dir / (plan.prefix + "_flows.csv")).string(), csv);
    emit((dir / (plan.prefix + "_alerts.jsonl")).string(), jsonl(alerts));
    emit((dir / (plan.prefix + "_reroutes.jsonl")).string(), jsonl(reroutes));
}

SweepConfig sweep_from_plan(const RunPlan& plan) {
    SweepConfig cfg;
    cfg.topo = plan.topo;
    cfg.generators = plan.generators;
    cfg.stacks = plan.stacks;
    cfg.thresholds = plan.thresholds;
    cfg.schedule = plan.schedule;
    cfg.options = plan.options;
    cfg.load_percents = plan.loads;
    cfg.frame_sizes = plan.sizes;
    cfg.trials = plan.trials;
    cfg.base_seed = plan.seed;
    return cfg;
}

int run_scenario(const RunFlags& fl) {
    const auto text = read_file(fl.scenario_path);
    if (!text) {
        std::cerr << "aclsim: file not found: " << fl.scenario_path << '\n';
        return 1;
    }
    Scenario sc;
    try {
        sc = parse_scenario(*text);
    } catch (const SchemaError& e) {
        std::cerr << "aclsim: " << fl.scenario_path << ": " << e.what() << '\n';
        return 1;
    }

    RunOverrides ov;
    ov.seed = fl.seed;
    ov.duration_scale = fl.duration_scale;
    if (fl.guard == "on") ov.guard_on = true;
    if (fl.guard == "off") ov.guard_on = false;

    try {
        const RunPlan plan =
            resolve_scenario(sc, fs::path(fl.scenario_path).parent_path().string(), ov);

        std::string out_dir = !fl.out_dir.empty() ? fl.out_dir : plan.out_dir;
        if (out_dir.empty())
            if (const char* env = std::getenv("ACLSIM_OUT")) out_dir = env;
        if (out_dir.empty()) out_dir = ".";
        const std::string format = !fl.format.empty() ? fl.format : plan.format;
        const char* ext = format == "json" ? ".json" : ".csv";
        const fs::path dir(out_dir);

        if (plan.mode == "trial") {
            run_single_trials(plan, out_dir, format);
        } else if (plan.mode == "frameloss") {
            const SweepResult res = frame_loss_sweep(sweep_from_plan(plan));
            emit((dir / (plan.prefix + ext)).string(),
                 format == "json" ? frameloss_json(res.rows) : frameloss_csv(res.rows));
            for (const auto load : plan.loads) {
                const auto rows = trial_rows_at(res, load);
                const std::string base = plan.prefix + "_trials_load" + format_number(load) + ext;
                emit((dir / base).string(),
                     format == "json" ? trial_counts_json(rows) : trial_counts_csv(rows));
            }
        } else if (plan.mode == "throughput") {
            const auto points = throughput_test(sweep_from_plan(plan));
            emit((dir / (plan.prefix + "_throughput" + ext)).string(),
                 format == "json" ? throughput_json(points) : throughput_csv(points));
        } else {  // guard-compare
            const GuardComparison cmp = guard_comparison(sweep_from_plan(plan));
            emit((dir / (plan.prefix + "_guard_compare" + ext)).string(),
                 format == "json" ? guard_comparison_json(cmp) : guard_comparison_csv(cmp));
        }
    } catch (const Error& e) {
        std::cerr << "aclsim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic frame-level network simulator with load-guarded ACLs"};
    app.require_subcommand(1);

    RunFlags fl;
    std::uint64_t seed_val = 0;
    auto* run = app.add_subcommand("run", "execute a scenario file");
    run->add_option("scenario", fl.scenario_path, "scenario file")->required();
    auto* seed_opt = run->add_option("--seed", seed_val, "override the scenario seed");
    run->add_option("--duration-scale", fl.duration_scale,
                    "scale trial duration and burst periods")
        ->check(CLI::PositiveNumber);
    run->add_option("--guard", fl.guard, "force threshold guards on or off")
        ->check(CLI::IsMember({"on", "off"}));
    run->add_option("--out", fl.out_dir,
                    "output directory (default: scenario's, then $ACLSIM_OUT, then .)");
    run->add_option("--format", fl.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string acl_path;
    auto* chk = app.add_subcommand("acl-check", "parse, canonical-print, and lint an ACL file");
    chk->add_option("file", acl_path, "ACL rule file")->required();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) fl.seed = seed_val;
    if (run->parsed()) return run_scenario(fl);
    return check_acl(acl_path);
}
