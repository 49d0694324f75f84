// Acceptance gate: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL] line with the measured numbers. Run with
// a criterion number or "all"; C9 additionally needs --tool <cli-path>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "motifstream/motifstream.hpp"
#include "support/brute.hpp"
#include "support/stats.hpp"

using namespace motifstream;
namespace fs = std::filesystem;

namespace {

struct Ctx {
    std::string tool;
};

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0;
    double se = 0.0;
};

MeanVar mean_var(const std::vector<double>& xs) {
    MeanVar r;
    r.mean = teststat::mean(xs);
    r.var = teststat::sample_variance(xs);
    r.se = std::sqrt(r.var / static_cast<double>(xs.size()));
    return r;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- C1

// Every estimator reproduces the exact count at every step while its
// capacity exceeds the stream length.
bool c1_exactness(const Ctx&, std::string& detail) {
    const double t0 = now_s();
    const auto recs = generate_ba(500, 5, 101);

    ExactOracle oracle(CountLevel::Cliques5);
    std::vector<double> truth4, truth5;
    truth4.reserve(recs.size());
    truth5.reserve(recs.size());
    for (const auto& r : recs) {
        oracle.insert(r.u, r.v);
        truth4.push_back(static_cast<double>(oracle.cliques4()));
        truth5.push_back(static_cast<double>(oracle.cliques5()));
    }

    const EstimatorKind kinds[] = {EstimatorKind::FourEst, EstimatorKind::Ts4c1,
                                   EstimatorKind::Ts4c2,   EstimatorKind::Ats4c,
                                   EstimatorKind::Ts5c,    EstimatorKind::FiveEst};
    std::uint64_t mismatches = 0;
    for (EstimatorKind k : kinds) {
        EstimatorParams p;
        p.memory = 400000;  // all tiers larger than anything the stream holds
        p.split = 0.5;
        if (k == EstimatorKind::FourEst || k == EstimatorKind::FiveEst ||
            k == EstimatorKind::Ats4c)
            p.split = 0.0;
        auto est = make_estimator(k, p);
        const bool five = k == EstimatorKind::Ts5c || k == EstimatorKind::FiveEst;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            est->process(recs[i].u, recs[i].v);
            if (est->estimate() != (five ? truth5[i] : truth4[i])) ++mismatches;
        }
    }
    const double dt = now_s() - t0;
    detail = "6 estimators x " + std::to_string(recs.size()) + " steps, mismatches " +
             std::to_string(mismatches) + ", " + fmt(dt) + "s (budget 10s)";
    return mismatches == 0 && dt < 10.0;
}

// ---------------------------------------------------------------- C2

// Sample means over many seeds sit within 4 standard errors of the exact
// count; the approximate-probability 5-clique estimator is held to 10%.
bool c2_unbiased(const Ctx&, std::string& detail) {
    const double t0 = now_s();
    const auto recs = generate_ba(300, 8, 202);
    ExactOracle oracle(CountLevel::Cliques4);
    for (const auto& r : recs) oracle.insert(r.u, r.v);
    const double truth4 = static_cast<double>(oracle.cliques4());

    struct Cfg {
        EstimatorKind kind;
        std::uint64_t memory;
        double split;
    };
    const Cfg cfgs[] = {{EstimatorKind::FourEst, 500, 0.0},
                        {EstimatorKind::Ts4c1, 500, 0.8},
                        {EstimatorKind::Ts4c2, 500, 2.0 / 3.0},
                        {EstimatorKind::Ats4c, 500, 0.0}};
    std::ostringstream d;
    bool ok = true;
    for (const Cfg& c : cfgs) {
        EstimatorParams p;
        p.memory = c.memory;
        p.split = c.split;
        p.seed = 1;
        const auto rows = run_trials(recs, c.kind, p, 2000, 1);
        const auto mv = mean_var(final_estimates(rows));
        const double dev = std::fabs(mv.mean - truth4) / mv.se;
        d << kind_name(c.kind) << " " << fmt(dev) << "se ";
        if (dev > 4.0) ok = false;
    }

    // Five-clique analog on a small dense graph: 56 five-cliques.
    std::vector<StreamRecord> k8;
    for (VertexId i = 0; i < 8; ++i)
        for (VertexId j = i + 1; j < 8; ++j) k8.push_back(StreamRecord{i, j, std::nullopt});
    const double truth5 = 56.0;

    {
        EstimatorParams p;
        p.memory = 12;
        p.seed = 1;
        const auto rows = run_trials(k8, EstimatorKind::FiveEst, p, 2000, 1);
        const auto mv = mean_var(final_estimates(rows));
        const double dev = std::fabs(mv.mean - truth5) / mv.se;
        d << "fiveest " << fmt(dev) << "se ";
        if (dev > 4.0) ok = false;
    }
    {
        EstimatorParams p;
        p.memory = 24;
        p.split = 0.75;
        p.seed = 1;
        const auto rows = run_trials(k8, EstimatorKind::Ts5c, p, 2000, 1);
        const auto mv = mean_var(final_estimates(rows));
        const double rel = std::fabs(mv.mean - truth5) / truth5;
        d << "ts5c rel " << fmt(rel);
        if (rel > 0.10) ok = false;
    }

    const double dt = now_s() - t0;
    detail = d.str() + ", " + fmt(dt) + "s (budget 1200s)";
    return ok && dt < 1200.0;
}

// ---------------------------------------------------------------- C3

// Monte-Carlo detection frequencies match every closed-form kernel branch.
bool c3_kernels(const Ctx&, std::string& detail) {
    const double t0 = now_s();
    const auto results = validate_builtin(1000000, 424242);
    double max_z = 0.0;
    std::string worst;
    for (const auto& r : results) {
        if (std::fabs(r.z) > std::fabs(max_z)) {
            max_z = r.z;
            worst = r.name;
        }
    }
    const double dt = now_s() - t0;
    detail = std::to_string(results.size()) + " fixtures x 1e6 runs, max |z| " + fmt(max_z) +
             " (" + worst + "), " + fmt(dt) + "s (budget 1800s)";
    return std::fabs(max_z) <= 3.0 && dt < 1800.0;
}

// ---------------------------------------------------------------- C4

// With 5% memory the tiered estimators beat the single reservoir on
// trajectory error for large skewed graphs, in at least 4 of 5 repetitions.
bool c4_accuracy(const Ctx&, std::string& detail) {
    const double t0 = now_s();
    std::ostringstream d;
    bool ok = true;
    for (std::uint64_t m : {std::uint64_t{50}, std::uint64_t{100}}) {
        const auto base = generate_ba(2000, m, 1000 + m);
        int wins1 = 0, wins2 = 0;
        for (int rep = 0; rep < 5; ++rep) {
            auto recs = base;
            shuffle_records(recs, 500 + rep);
            const std::uint64_t n = recs.size();
            const std::uint64_t stride = n / 20;
            const std::uint64_t memory = n / 20;  // 5% of the stream
            const auto points = report_points(n, stride);
            const auto truth = truth_at_points(recs, EstimatorKind::FourEst, points);

            auto mean_mape = [&](EstimatorKind k, double split) {
                EstimatorParams p;
                p.memory = memory;
                p.split = split;
                p.seed = 1;
                const auto series = run_trial_series(recs, k, p, stride, 10, 1);
                return teststat::mean(series_mape(series, truth));
            };
            const double e_four = mean_mape(EstimatorKind::FourEst, 0.0);
            const double e_t1 = mean_mape(EstimatorKind::Ts4c1, 0.0);
            const double e_t2 = mean_mape(EstimatorKind::Ts4c2, 0.0);
            if (e_t1 < e_four) ++wins1;
            if (e_t2 < e_four) ++wins2;
        }
        d << "m=" << m << " wins " << wins1 << "/5 and " << wins2 << "/5 ";
        if (wins1 < 4 || wins2 < 4) ok = false;
    }
    const double dt = now_s() - t0;
    detail = d.str() + ", " + fmt(dt) + "s (budget 1800s)";
    return ok && dt < 1800.0;
}

// ---------------------------------------------------------------- C5

// Empirical variance stays under the closed-form bound evaluated with
// exact graph statistics.
bool c5_variance(const Ctx&, std::string& detail) {
    const auto recs = generate_ba(200, 6, 77);
    ExactOracle oracle(CountLevel::Cliques4);
    for (const auto& r : recs) oracle.insert(r.u, r.v);
    const auto overlap = oracle.count_overlap_pairs();
    GraphCliqueStats g;
    g.cliques4 = static_cast<double>(oracle.cliques4());
    g.pairs_one = static_cast<double>(overlap.one_edge);
    g.pairs_tri = static_cast<double>(overlap.three_edges);
    const std::uint64_t n = recs.size();
    const std::uint64_t tau = oracle.triangles();

    EstimatorParams p;
    p.memory = 200;
    p.seed = 1;
    const auto four = run_trials(recs, EstimatorKind::FourEst, p, 1500, 1);
    const double var_four = mean_var(final_estimates(four)).var;
    const double bound_four = variance_bound_fourest(g, n, 200);

    p.split = 0.8;
    const auto t1 = run_trials(recs, EstimatorKind::Ts4c1, p, 1500, 1);
    const double var_t1 = mean_var(final_estimates(t1)).var;
    const double bound_t1 = variance_bound_ts4c1(g, n, 160, 40, tau);

    detail = "fourest " + fmt(var_four) + " <= " + fmt(bound_four) + ", tiered " + fmt(var_t1) +
             " <= " + fmt(bound_t1) + " (q4 " + fmt(g.cliques4) + ")";
    return g.cliques4 > 0 && var_four <= bound_four && var_t1 <= bound_t1;
}

// ---------------------------------------------------------------- C6

// The reservoir itself: size law, uniform occupancy, joint inclusion.
bool c6_reservoir(const Ctx&, std::string& detail) {
    // Size never exceeds min(seen, capacity).
    bool size_ok = true;
    for (const auto& [cap, n] : std::vector<std::pair<std::size_t, std::uint64_t>>{
             {20, 100}, {7, 3}, {5, 5}}) {
        RngHandle rng(1);
        Reservoir<std::uint64_t> res(cap);
        for (std::uint64_t t = 1; t <= n; ++t) {
            res.offer(t, rng);
            if (res.size() != std::min<std::uint64_t>(t, cap)) size_ok = false;
        }
    }

    // Occupancy of each stream position across seeds is uniform.
    const int seeds = 20000;
    const std::uint64_t t_total = 100;
    const std::size_t cap = 20;
    std::vector<std::uint64_t> occupancy(t_total, 0);
    for (int s = 0; s < seeds; ++s) {
        RngHandle rng(900000 + s);
        Reservoir<std::uint64_t> res(cap);
        for (std::uint64_t t = 1; t <= t_total; ++t) res.offer(t, rng);
        for (const auto& item : res.items()) ++occupancy[item - 1];
    }
    const double expected = static_cast<double>(seeds) * cap / t_total;
    double chi2 = 0.0;
    for (std::uint64_t o : occupancy) {
        const double dev = static_cast<double>(o) - expected;
        chi2 += dev * dev / expected;
    }
    const double pval = teststat::chi_square_pvalue(chi2, t_total - 1);

    // Joint residence of the first k arrivals matches the closed form.
    double max_z = 0.0;
    const int runs = 100000;
    for (std::uint64_t k = 1; k <= 3; ++k) {
        RngHandle rng(777 + k);
        int hits = 0;
        for (int r = 0; r < runs; ++r) {
            Reservoir<std::uint64_t> res(10);
            for (std::uint64_t t = 1; t <= 30; ++t) res.offer(t, rng);
            int present = 0;
            for (const auto& item : res.items())
                if (item <= k) ++present;
            if (static_cast<std::uint64_t>(present) == k) ++hits;
        }
        const double pexp = joint_inclusion_prob(k, 30, 10);
        const double z = teststat::binom_z(hits, runs, pexp);
        max_z = std::max(max_z, std::fabs(z));
    }

    detail = "size law " + std::string(size_ok ? "ok" : "violated") + ", occupancy p " +
             fmt(pval) + ", joint-inclusion max |z| " + fmt(max_z);
    return size_ok && pval >= 0.01 && max_z <= 3.0;
}

// ---------------------------------------------------------------- C7

// The incremental oracle agrees with subset enumeration on random graphs,
// and 4-clique pairs only ever share one or three edges.
bool c7_oracle(const Ctx&, std::string& detail) {
    std::uint64_t graphs = 0, bad = 0, cliques_seen = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 4 + static_cast<std::size_t>(i % 11);
        const double pr = 0.25 + 0.05 * static_cast<double>(i % 10);
        const auto edges = testbrute::make_er(n, pr, 3000 + i);
        if (edges.empty()) continue;
        ++graphs;
        const auto brute = testbrute::brute_counts(edges);
        ExactOracle o(CountLevel::Cliques5);
        for (const auto& [u, v] : edges) o.insert(u, v);
        cliques_seen += o.cliques4();
        if (o.triangles() != brute.triangles || o.cliques4() != brute.cliques4 ||
            o.cliques5() != brute.cliques5) {
            ++bad;
            continue;
        }
        const auto direct = testbrute::brute_overlap(o.clique4_list());
        const auto ov = o.count_overlap_pairs();
        if (ov.one_edge != direct.by_shared_edges[1] ||
            ov.three_edges != direct.by_shared_edges[3] || direct.by_shared_edges[2] != 0 ||
            direct.by_shared_edges[4] != 0 || direct.by_shared_edges[5] != 0)
            ++bad;
    }

    // A 5-clique decomposes into ten triangle-sharing 4-clique pairs.
    ExactOracle k5(CountLevel::Cliques4);
    for (VertexId i = 0; i < 5; ++i)
        for (VertexId j = i + 1; j < 5; ++j) k5.insert(i, j);
    const auto ov5 = k5.count_overlap_pairs();
    const bool k5_ok = ov5.one_edge == 0 && ov5.three_edges == 10;

    detail = std::to_string(graphs) + " graphs, " + std::to_string(cliques_seen) +
             " 4-cliques, disagreements " + std::to_string(bad) + ", K5 pairs " +
             (k5_ok ? "ok" : "wrong");
    return graphs >= 190 && bad == 0 && k5_ok;
}

// ---------------------------------------------------------------- C8

// Sustained throughput of the tiered estimator at web-graph scale.
bool c8_throughput(const Ctx&, std::string& detail) {
    const auto recs = generate_ba(100000, 10, 55);
    EstimatorParams p;
    p.memory = 100000;
    p.split = 0.8;
    p.seed = 1;
    Ts4c1Estimator est(p);
    const double t0 = now_s();
    for (const auto& r : recs) est.process(r.u, r.v);
    const double dt = now_s() - t0;
    const double rate = static_cast<double>(recs.size()) / dt;
    detail = fmt(rate) + " edges/s over " + std::to_string(recs.size()) + " edges (soft 1e4 " +
             (rate >= 1e4 ? "met" : "missed") + ", floor 5e3)";
    return rate >= 5e3;
}

// ---------------------------------------------------------------- C9

namespace c9 {

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_dir_bytes(const fs::path& a, const fs::path& b, std::string& why) {
    std::map<std::string, std::string> fa, fb;
    for (const auto& e : fs::directory_iterator(a)) fa[e.path().filename().string()] = slurp(e.path());
    for (const auto& e : fs::directory_iterator(b)) fb[e.path().filename().string()] = slurp(e.path());
    if (fa.size() != fb.size()) {
        why = "file sets differ";
        return false;
    }
    for (const auto& [name, bytes] : fa) {
        auto it = fb.find(name);
        if (it == fb.end() || it->second != bytes) {
            why = "mismatch in " + name;
            return false;
        }
    }
    if (fa.empty()) {
        why = "no artifacts produced";
        return false;
    }
    return true;
}

}  // namespace c9

// Identical inputs, seeds and thread caps yield identical bytes from the
// command-line tool, and the worker cap cannot leak into results.
bool c9_reproducible(const Ctx& ctx, std::string& detail) {
    if (ctx.tool.empty()) {
        detail = "needs --tool <cli-path>";
        return false;
    }
    const fs::path root = fs::temp_directory_path() / "motifstream_c9";
    std::error_code ec;
    fs::remove_all(root, ec);
    fs::create_directories(root / "a");
    fs::create_directories(root / "b");

    const std::string tool = ctx.tool;
    const std::string gen_a = tool + " generate --n 400 --m 5 --seed 7 --out " +
                              (root / "a" / "g.txt").string() + " 2>/dev/null";
    const std::string gen_b = tool + " generate --n 400 --m 5 --seed 7 --out " +
                              (root / "b" / "g.txt").string() + " 2>/dev/null";
    if (c9::run_cmd(gen_a) != 0 || c9::run_cmd(gen_b) != 0) {
        detail = "generate failed";
        return false;
    }

    auto run_into = [&](const fs::path& dir, const std::string& threads_env,
                        const std::string& threads_flag) {
        const std::string cmd = "MOTIFSTREAM_THREADS=" + threads_env + " " + tool +
                                " run --estimator ts4c2 --in " +
                                (root / "a" / "g.txt").string() +
                                " --memory 200 --trials 6 --truth --threads " + threads_flag +
                                " --seed 11 --stride 300 --out-dir " + dir.string() +
                                " >/dev/null 2>&1";
        return c9::run_cmd(cmd);
    };
    fs::create_directories(root / "run1");
    fs::create_directories(root / "run2");
    // Same seed, opposite thread caps: one worker vs four.
    if (run_into(root / "run1", "1", "4") != 0 || run_into(root / "run2", "8", "4") != 0) {
        detail = "run failed";
        return false;
    }

    const std::string va = tool + " validate-prob --runs 5000 --seed 3 --out " +
                           (root / "a" / "v.csv").string() + " >/dev/null 2>&1";
    const std::string vb = tool + " validate-prob --runs 5000 --seed 3 --out " +
                           (root / "b" / "v.csv").string() + " >/dev/null 2>&1";
    const int ra = c9::run_cmd(va);
    const int rb = c9::run_cmd(vb);
    if (ra != rb) {
        detail = "validate-prob exit codes differ";
        return false;
    }

    const std::string ea = tool + " exact --in " + (root / "a" / "g.txt").string() +
                           " --level 4 --overlap > " + (root / "a" / "e.txt").string() +
                           " 2>/dev/null";
    const std::string eb = tool + " exact --in " + (root / "b" / "g.txt").string() +
                           " --level 4 --overlap > " + (root / "b" / "e.txt").string() +
                           " 2>/dev/null";
    if (c9::run_cmd(ea) != 0 || c9::run_cmd(eb) != 0) {
        detail = "exact failed";
        return false;
    }

    std::string why;
    if (!c9::same_dir_bytes(root / "a", root / "b", why) ||
        !c9::same_dir_bytes(root / "run1", root / "run2", why)) {
        detail = why;
        return false;
    }
    std::size_t artifacts = 0;
    for (const auto& d : {root / "a", root / "run1"})
        for (const auto& e : fs::directory_iterator(d)) {
            (void)e;
            ++artifacts;
        }
    fs::remove_all(root, ec);
    detail = std::to_string(artifacts) + " artifacts byte-identical across reruns and thread caps";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::string which = "all";
    Ctx ctx;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--tool" && i + 1 < argc)
            ctx.tool = argv[++i];
        else
            which = arg;
    }

    using Fn = std::function<bool(const Ctx&, std::string&)>;
    const std::vector<std::pair<std::string, Fn>> criteria = {
        {"exactness without eviction", c1_exactness},
        {"unbiased estimates", c2_unbiased},
        {"detection kernels vs simulation", c3_kernels},
        {"tiered beats single at 5% memory", c4_accuracy},
        {"variance under closed-form bound", c5_variance},
        {"reservoir uniformity", c6_reservoir},
        {"oracle vs subset enumeration", c7_oracle},
        {"throughput floor", c8_throughput},
        {"byte-reproducible tool output", c9_reproducible},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int num = static_cast<int>(i) + 1;
        if (which != "all" && which != std::to_string(num)) continue;
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].second(ctx, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] C%d %s: %s\n", pass ? "PASS" : "FAIL", num, criteria[i].first.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
