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

// Acceptance gate for the simulator. Eight criteria, one line each:
//
//   A1  85% load on the ten-node preset loses nothing at any frame size.
//   A2  95% load loses frames at every size, non-increasing as frames grow.
//   A3  classify agrees with a sequential reference on 100k random cases.
//   A4  policer verdicts match closed-form token arithmetic exactly.
//   A5  guarded runs lose strictly less than baseline on the two-path preset.
//   A6  every trial conserves frames; same-seed reruns are byte-identical.
//   A7  shortest_path matches exhaustive enumeration; reroutes respect the
//       load threshold.
//   A8  the bisecting throughput search equals the exhaustive sweep.
//
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aclsim/acl.hpp"
#include "aclsim/bench.hpp"
#include "aclsim/frame.hpp"
#include "aclsim/policer.hpp"
#include "aclsim/report.hpp"
#include "aclsim/reroute.hpp"
#include "aclsim/topology.hpp"

#include "oracle_acl.hpp"
#include "oracle_bucket.hpp"
#include "oracle_paths.hpp"

using namespace aclsim;
using namespace aclsim::testing;

namespace {

int g_failures = 0;
std::vector<TrialRow> g_trials;  // accumulated for A6

void report(int n, bool ok, const std::string& detail) {
    std::printf("A%d %s - %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void collect(const SweepResult& res) {
    g_trials.insert(g_trials.end(), res.trial_rows.begin(), res.trial_rows.end());
}

std::string loss_by_size(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    for (const BenchRow& r : rows) {
        if (out.tellp() > 0) out << " ";
        out << r.frame_size_bytes << ":" << r.frame_loss_pct << "%";
    }
    return out.str();
}

// --- A1 / A2: frame-loss pattern on the ten-node preset ---------------------

void a1_zero_loss_at_85() {
    auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = preset_sweep_config("paper10", 0.01, false, 1);
    cfg.load_percents = {85.0};
    cfg.trials = 4;
    SweepResult res = frame_loss_sweep(cfg);
    collect(res);

    bool ok = res.rows.size() == 4;
    for (const BenchRow& r : res.rows) ok = ok && r.frame_loss_pct == 0.0;
    double dt = elapsed_s(t0);
    ok = ok && dt < 60.0;

    std::ostringstream d;
    d << "85% load, 4 seeds: " << loss_by_size(res.rows) << " (" << dt << " s)";
    report(1, ok, d.str());
}

void a2_ordered_loss_at_95(SweepResult& out_res) {
    auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = preset_sweep_config("paper10", 0.01, false, 1);
    cfg.load_percents = {95.0};
    cfg.trials = 4;
    SweepResult res = frame_loss_sweep(cfg);
    collect(res);

    bool ok = res.rows.size() == 4;
    for (const BenchRow& r : res.rows) ok = ok && r.frame_loss_pct > 0.0;
    for (std::size_t i = 1; i < res.rows.size(); ++i)
        ok = ok && res.rows[i].frame_loss_pct <= res.rows[i - 1].frame_loss_pct;  // ties allowed
    double dt = elapsed_s(t0);
    ok = ok && dt < 60.0;

    std::ostringstream d;
    d << "95% load, 4 seeds: " << loss_by_size(res.rows) << " (" << dt << " s)";
    report(2, ok, d.str());
    out_res = std::move(res);
}

// --- A3: classification against the sequential reference --------------------

void a3_classifier_oracle() {
    Rng rng(10101);
    std::uint64_t checked = 0;
    std::uint64_t agreed = 0;
    for (int iter = 0; iter < 2500; ++iter) {
        std::vector<AclRule> rules = random_rules(rng, 40);
        AclStack stack("a3");
        for (const AclRule& r : rules) stack.insert_rule(r);
        for (int j = 0; j < 40; ++j) {
            Frame f = random_frame(rng);
            PortId port = rng() % 2 ? "n1:0" : "n1:1";
            double load = 0.1 * static_cast<double>(rng() % 11);
            Verdict got = classify(f, port, stack, load);
            Verdict want = oracle_classify(f, port, rules, load);
            ++checked;
            if (verdicts_equal(got, want)) ++agreed;
        }
    }
    std::ostringstream d;
    d << agreed << "/" << checked << " verdicts agree (stacks of up to 40 rules)";
    report(3, checked >= 100000 && agreed == checked, d.str());
}

// --- A4: policer against closed-form token arithmetic -----------------------

void a4_policer_closed_form() {
    // 512-byte frames: 4256 wire bits each, against a 1 Mb/s policer whose
    // normal and excess burst both hold ten frames plus change.
    const PolicerConfig cfg{1e6, 43000, 43000};
    const double bits = 4256.0;
    auto schedule = [&](std::size_t n, SimTime gap) {
        std::vector<std::pair<SimTime, double>> arrivals;
        SimTime t = 1'000'000;  // first arrival; replenish time is immaterial at start
        for (std::size_t i = 0; i < n; ++i, t += gap) arrivals.emplace_back(t, bits);
        return arrivals;
    };

    // Gaps for offered rates of 2x, 1x, and 0.5x the committed rate.
    const SimTime gap_2x = 2'128'000'000;
    const SimTime gap_1x = 4'256'000'000;
    const SimTime gap_half = 8'512'000'000;

    bool ok = true;
    std::uint64_t compared = 0;
    FrameSpec spec;
    spec.src_mac = 1;
    spec.dst_mac = 2;
    spec.ip = IpHeader{4, IpAddr::v4(0x0A000001), IpAddr::v4(0x0A000002), kIpProtoUdp, 0};
    spec.l4 = L4Header{1000, 2000, 0};
    auto run = [&](const std::vector<std::pair<SimTime, double>>& arrivals) {
        BucketTrace want = closed_form_bucket(cfg, arrivals);
        Policer p(cfg);
        for (std::size_t i = 0; i < arrivals.size(); ++i) {
            Frame f = make_frame(spec, 512, arrivals[i].first);
            PoliceResult got = p.police(f, arrivals[i].first);
            ok = ok && got == want.results[i] && p.tokens() == want.tokens_after[i];
            ++compared;
        }
        return want;
    };

    BucketTrace over = run(schedule(40, gap_2x));
    run(schedule(40, gap_1x));
    run(schedule(30, gap_half));

    // The 2x schedule must actually overload: first violation at frame 19,
    // then conform/violate alternation as one frame's tokens accrue per gap.
    ok = ok && over.results[18] == PoliceResult::Conform &&
         over.results[19] == PoliceResult::Violate;
    for (std::size_t i = 20; i < over.results.size(); ++i)
        ok = ok && over.results[i] ==
                       (i % 2 == 0 ? PoliceResult::Conform : PoliceResult::Violate);

    std::ostringstream d;
    d << compared << " verdicts at 2x/1x/0.5x the committed rate, tokens exact";
    report(4, ok, d.str());
}

// --- A5: guarded rerouting beats the baseline on the two-path preset --------

void a5_guard_reduces_loss(GuardComparison& out_cmp) {
    auto t0 = std::chrono::steady_clock::now();
    SweepConfig cfg = preset_sweep_config("twopath", 0.01, false, 1);
    cfg.trials = 4;
    GuardComparison cmp = guard_comparison(cfg);
    collect(cmp.baseline);
    collect(cmp.guarded);

    bool ok = cmp.baseline.trial_rows.size() == 4 &&
              cmp.guarded.trial_rows.size() == cmp.baseline.trial_rows.size();
    int better = 0;
    bool never_worse = true;
    for (std::size_t i = 0; ok && i < cmp.baseline.trial_rows.size(); ++i) {
        const TrialRow& base = cmp.baseline.trial_rows[i];
        const TrialRow& gd = cmp.guarded.trial_rows[i];
        if (gd.frames_lost < base.frames_lost && gd.oversub_frames <= base.oversub_frames)
            ++better;
        if (gd.frames_lost > base.frames_lost) never_worse = false;
    }
    double dt = elapsed_s(t0);
    ok = ok && better >= 3 && never_worse && dt < 120.0;

    std::ostringstream d;
    d << better << "/4 seeds improved";
    if (!cmp.baseline.rows.empty() && !cmp.guarded.rows.empty())
        d << ", loss " << cmp.baseline.rows[0].frame_loss_pct << "% -> "
          << cmp.guarded.rows[0].frame_loss_pct << "%, reroutes "
          << cmp.guarded.rows[0].reroute_count;
    d << " (" << dt << " s)";
    report(5, ok, d.str());
    out_cmp = std::move(cmp);
}

// --- A6: conservation everywhere, byte-identical reruns ---------------------

void a6_conservation_and_determinism(const SweepResult& loss_res, const GuardComparison& cmp) {
    bool conserved = !g_trials.empty();
    for (const TrialRow& row : g_trials) conserved = conserved && row.conservation_ok;

    SweepConfig cfg = preset_sweep_config("paper10", 0.01, false, 1);
    cfg.load_percents = {95.0};
    cfg.trials = 4;
    SweepResult again = frame_loss_sweep(cfg);
    bool sweep_stable = frameloss_csv(again.rows) == frameloss_csv(loss_res.rows) &&
                        trial_counts_csv(again.trial_rows) ==
                            trial_counts_csv(loss_res.trial_rows) &&
                        frameloss_json(again.rows) == frameloss_json(loss_res.rows);

    SweepConfig gcfg = preset_sweep_config("twopath", 0.01, false, 1);
    gcfg.trials = 4;
    GuardComparison gagain = guard_comparison(gcfg);
    bool guard_stable = guard_comparison_csv(gagain) == guard_comparison_csv(cmp) &&
                        guard_comparison_json(gagain) == guard_comparison_json(cmp);

    std::ostringstream d;
    d << g_trials.size() << " trials conserve frames; same-seed reruns byte-identical "
      << "(csv and json)";
    report(6, conserved && sweep_stable && guard_stable, d.str());
}

// --- A7: pathfinder against exhaustive enumeration --------------------------

void a7_pathfinder_oracle() {
    std::mt19937_64 rng(70707);
    int graphs = 0;
    int agreed = 0;
    int reroutes = 0;
    bool over_threshold = false;

    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 3 + rng() % 8;  // 3..10 nodes
        Topology topo = load_topology(random_graph_document(rng, n), 1e9);
        const std::vector<NodeId>& nodes = topo.nodes();
        NodeId src = nodes[rng() % nodes.size()];
        NodeId dst = nodes[rng() % nodes.size()];
        while (dst == src) dst = nodes[rng() % nodes.size()];

        ++graphs;
        std::optional<Path> got = shortest_path(topo, src, dst);
        std::optional<Path> want = oracle_best_path(topo, src, dst, base_weight_fn());
        bool same = got.has_value() == want.has_value();
        if (same && got)
            same = got->nodes == want->nodes && got->links == want->links &&
                   std::abs(got->cost - want->cost) < 1e-9;
        if (same) ++agreed;

        if (!got) continue;

        // Random link loads; a reroute must never pick a loaded direction.
        std::map<std::pair<LinkId, int>, double> load;
        for (const Link& l : topo.links())
            for (int dir = 0; dir < 2; ++dir)
                load[{l.id, dir}] = static_cast<double>(rng() % 100) / 100.0;
        const double threshold = 0.9;
        LoadFn loads = [&](const Link& l, int dir) { return load[{l.id, dir}]; };

        RouteTable table;
        table.set_route(topo, src, dst, *got);
        RerouteOutcome out = reroute(table, topo, src, dst, loads, threshold);
        if (out.kind == RerouteOutcome::Kind::NewPath) {
            ++reroutes;
            for (std::size_t i = 0; i < out.path.links.size(); ++i) {
                const Link& l = topo.link(out.path.links[i]);
                int dir = Topology::direction_from(l, out.path.nodes[i]);
                if (loads(l, dir) > threshold) over_threshold = true;
            }
        }
    }

    std::ostringstream d;
    d << agreed << "/" << graphs << " graphs agree with enumeration; " << reroutes
      << " reroutes, none over threshold";
    report(7, agreed == graphs && graphs == 200 && reroutes > 0 && !over_threshold, d.str());
}

// --- A8: throughput search against the exhaustive sweep ---------------------

void a8_throughput_search() {
    SweepConfig cfg = preset_sweep_config("chain3", 0.005, false, 1);
    cfg.trials = 2;
    std::vector<ThroughputPoint> fast = throughput_test(cfg);
    std::vector<ThroughputPoint> full = throughput_test_exhaustive(cfg);

    bool ok = fast.size() == 4 && full.size() == fast.size();
    std::ostringstream d;
    for (std::size_t i = 0; ok && i < fast.size(); ++i) {
        ok = fast[i].frame_size == full[i].frame_size &&
             fast[i].max_zero_loss_load_pct == full[i].max_zero_loss_load_pct;
        if (i) d << " ";
        d << fast[i].frame_size << ":";
        if (fast[i].max_zero_loss_load_pct)
            d << *fast[i].max_zero_loss_load_pct << "%";
        else
            d << "none";
    }
    report(8, ok, "bisection equals exhaustive sweep: " + d.str());
}

}  // namespace

int main() {
    SweepResult loss_res;
    GuardComparison cmp;

    a1_zero_loss_at_85();
    a2_ordered_loss_at_95(loss_res);
    a3_classifier_oracle();
    a4_policer_closed_form();
    a5_guard_reduces_loss(cmp);
    a6_conservation_and_determinism(loss_res, cmp);
    a7_pathfinder_oracle();
    a8_throughput_search();

    if (g_failures == 0) std::printf("all acceptance criteria hold\n");
    return g_failures;
}
