// Command-line front end: synthetic stream generation, dedup, exact
// counting, estimator runs with CSV output, estimator comparisons, and the
// Monte-Carlo check of the detection-probability kernels.
//
// CSV artifacts go to files (or stdout when no output path is given) and
// are byte-stable for a fixed seed; human-readable progress and timing go
// to stderr.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motifstream/motifstream.hpp"

namespace ms = motifstream;

namespace {

std::ofstream open_binary(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

std::vector<ms::StreamRecord> load_records(const std::string& path,
                                           std::optional<std::uint64_t> shuffle_seed,
                                           bool sort_by_ts) {
    ms::StreamOptions opts;
    opts.shuffle_seed = shuffle_seed;
    opts.sort_by_timestamp = sort_by_ts;
    ms::StreamSource src = ms::read_stream(path, opts);
    return ms::drain_records(src);
}

class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }
    ~Stopwatch() {
        if (!enabled_) return;
        std::cerr << "elapsed_ms=" << static_cast<long long>(seconds() * 1000.0) << "\n";
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point t0_;
};

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-pass clique-count estimation over edge streams"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file");

    std::uint64_t seed = 1;
    std::string out_dir;
    std::uint64_t stride = 0;
    bool timing = false;
    app.add_option("--seed", seed, "base random seed")->capture_default_str();
    app.add_option("--out-dir", out_dir, "directory for CSV artifacts");
    app.add_option("--stride", stride, "trajectory reading interval (0: final only)")
        ->capture_default_str();
    app.add_flag("--timing", timing, "report wall time to stderr");

    int exit_code = 0;

    // --- generate ---
    auto* gen = app.add_subcommand("generate", "emit a preferential-attachment edge stream");
    gen->fallthrough();
    std::uint64_t gen_n = 1000, gen_m = 5;
    std::string gen_out = "-";
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--m", gen_m, "edges per new vertex")->required();
    gen->add_option("--out", gen_out, "output path (- for stdout)")->capture_default_str();
    gen->callback([&] {
        Stopwatch sw(timing);
        auto recs = ms::generate_ba(gen_n, gen_m, seed);
        if (gen_out == "-") {
            ms::write_edge_list(std::cout, recs);
        } else {
            auto f = open_binary(gen_out);
            ms::write_edge_list(f, recs);
        }
        std::cerr << "edges=" << recs.size() << "\n";
    });

    // --- dedup ---
    auto* dd = app.add_subcommand("dedup", "drop repeated edges, keeping first occurrences");
    dd->fallthrough();
    std::string dd_in, dd_out;
    dd->add_option("--in", dd_in, "input edge list")->required();
    dd->add_option("--out", dd_out, "output edge list")->required();
    dd->callback([&] {
        Stopwatch sw(timing);
        const std::uint64_t removed = ms::dedup_stream_files(dd_in, dd_out);
        std::cout << "removed=" << removed << "\n";
    });

    // --- exact ---
    auto* ex = app.add_subcommand("exact", "count motifs exactly");
    ex->fallthrough();
    std::string ex_in;
    int ex_level = 5;
    ex->add_option("--in", ex_in, "input edge list (- for stdin)")->required();
    ex->add_option("--level", ex_level, "count up to triangles (3), 4-cliques (4) or 5-cliques (5)")
        ->check(CLI::IsMember({3, 4, 5}))
        ->capture_default_str();
    bool ex_overlap = false;
    ex->add_flag("--overlap", ex_overlap,
                 "also classify 4-clique pairs by shared edges (needs level >= 4)");
    ex->callback([&] {
        Stopwatch sw(timing);
        ms::StreamSource src = ms::read_stream(ex_in);
        ms::ExactOracle oracle(static_cast<ms::CountLevel>(ex_level));
        while (auto e = src.next()) oracle.insert(e->u, e->v);
        std::cout << "triangles=" << oracle.triangles();
        if (ex_level >= 4) std::cout << " cliques4=" << oracle.cliques4();
        if (ex_level >= 5) std::cout << " cliques5=" << oracle.cliques5();
        if (ex_overlap) {
            const auto ov = oracle.count_overlap_pairs();
            std::cout << " a=" << ov.one_edge << " b=" << ov.three_edges;
        }
        std::cout << "\n";
    });

    // --- run ---
    auto* run = app.add_subcommand("run", "run an estimator over a stream");
    run->fallthrough();
    std::string run_est, run_in;
    std::uint64_t run_memory = 1000, run_trials = 1;
    double run_split = 0.0;
    bool run_truth = false, run_sort_ts = false;
    unsigned run_threads = 1;
    std::optional<std::uint64_t> run_shuffle;
    run->add_option("--estimator", run_est,
                    "fourest | ts4c1 | ts4c2 | ats4c | ts5c | fiveest")
        ->required();
    run->add_option("--in", run_in, "input edge list (- for stdin)")->required();
    run->add_option("--memory", run_memory, "total reservoir slots")->capture_default_str();
    run->add_option("--split", run_split, "edge-tier share (0: estimator default)")
        ->capture_default_str();
    run->add_option("--trials", run_trials, "independent repetitions")->capture_default_str();
    run->add_flag("--truth", run_truth, "co-run the exact oracle");
    run->add_option("--threads", run_threads, "worker threads for multi-trial runs")
        ->capture_default_str();
    run->add_option("--shuffle-seed", run_shuffle, "shuffle the stream with this seed");
    run->add_flag("--sort-by-ts", run_sort_ts, "order the stream by its timestamp column");
    run->callback([&] {
        Stopwatch sw(timing);
        const ms::EstimatorKind kind = ms::parse_kind(run_est);
        const auto records = load_records(run_in, run_shuffle, run_sort_ts);
        ms::EstimatorParams params;
        params.memory = run_memory;
        params.split = run_split;
        params.seed = seed;
        if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

        if (run_trials <= 1) {
            const auto traj = ms::run_trajectory(records, kind, params, stride, run_truth);
            if (out_dir.empty()) {
                ms::write_trajectory_csv(std::cout, traj);
            } else {
                auto f = open_binary(out_dir + "/trajectory.csv");
                ms::write_trajectory_csv(f, traj);
            }
            std::cerr << "final_estimate=" << ms::format_double(traj.estimate.back());
            if (run_truth && !traj.truth.empty())
                std::cerr << " truth=" << ms::format_double(traj.truth.back())
                          << " mape=" << ms::format_double(ms::compute_mape(traj.estimate,
                                                                            traj.truth));
            std::cerr << "\n";
            return;
        }

        const auto series = ms::run_trial_series(records, kind, params, stride, run_trials,
                                                 run_threads);
        std::vector<ms::TrialOutcome> outcomes(run_trials);
        for (std::uint64_t i = 0; i < run_trials; ++i)
            outcomes[i] = ms::TrialOutcome{i, series.seeds[i], series.estimate[i].back()};

        std::optional<double> truth_final;
        std::vector<double> truth_pts;
        if (run_truth) {
            truth_pts = ms::truth_at_points(records, kind, series.t);
            truth_final = truth_pts.back();
        }

        auto emit_summary = [&](std::ostream& os) {
            if (run_truth && stride > 0)
                ms::write_summary_csv(os, outcomes, ms::series_mape(series, truth_pts));
            else
                ms::write_summary_csv(os, outcomes, truth_final);
        };
        if (out_dir.empty()) {
            emit_summary(std::cout);
        } else {
            auto f = open_binary(out_dir + "/summary.csv");
            emit_summary(f);
            if (stride > 0) {
                for (std::uint64_t i = 0; i < run_trials; ++i) {
                    ms::Trajectory traj;
                    traj.t = series.t;
                    traj.estimate = series.estimate[i];
                    traj.truth = truth_pts;
                    char name[32];
                    std::snprintf(name, sizeof name, "/trial_%04llu.csv",
                                  static_cast<unsigned long long>(i));
                    auto tf = open_binary(out_dir + name);
                    ms::write_trajectory_csv(tf, traj);
                }
            }
        }

        double mean = 0.0, m2 = 0.0;
        for (const auto& o : outcomes) mean += o.estimate;
        mean /= static_cast<double>(outcomes.size());
        for (const auto& o : outcomes) m2 += (o.estimate - mean) * (o.estimate - mean);
        const double var =
            outcomes.size() > 1 ? m2 / static_cast<double>(outcomes.size() - 1) : 0.0;
        std::cerr << "trials=" << run_trials << " mean_estimate=" << ms::format_double(mean)
                  << " variance=" << ms::format_double(var);
        if (truth_final) {
            const double mm =
                stride > 0
                    ? [&] {
                          const auto per = ms::series_mape(series, truth_pts);
                          double s = 0.0;
                          for (double v : per) s += v;
                          return s / static_cast<double>(per.size());
                      }()
                    : ms::compute_mape(ms::final_estimates(outcomes), *truth_final);
            std::cerr << " truth=" << ms::format_double(*truth_final)
                      << " mean_mape=" << ms::format_double(mm);
        }
        const double secs = sw.seconds();
        if (secs > 0.0)
            std::cerr << " edges_per_sec="
                      << ms::format_double(static_cast<double>(records.size()) *
                                           static_cast<double>(run_trials) / secs);
        std::cerr << "\n";
    });

    // --- mape ---
    auto* mp = app.add_subcommand(
        "mape", "recompute error from a trajectory CSV with estimate and truth columns");
    mp->fallthrough();
    std::string mp_in;
    mp->add_option("--in", mp_in, "trajectory CSV (t,estimate,truth)")->required();
    mp->callback([&] {
        Stopwatch sw(timing);
        std::ifstream f(mp_in, std::ios::binary);
        if (!f.is_open()) throw std::runtime_error("cannot open: " + mp_in);
        std::string line;
        if (!std::getline(f, line)) throw std::runtime_error("empty CSV: " + mp_in);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto header = split_csv_row(line);
        std::size_t est_col = header.size(), truth_col = header.size();
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == "estimate" || header[i] == "final_estimate") est_col = i;
            if (header[i] == "truth") truth_col = i;
        }
        if (est_col == header.size() || truth_col == header.size())
            throw std::runtime_error("CSV needs estimate and truth columns: " + mp_in);
        std::vector<double> est, truth;
        std::size_t lineno = 1;
        while (std::getline(f, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            const auto row = split_csv_row(line);
            if (row.size() != header.size())
                throw std::runtime_error("CSV row " + std::to_string(lineno) +
                                         " has wrong field count");
            est.push_back(std::stod(row[est_col]));
            truth.push_back(std::stod(row[truth_col]));
        }
        std::cout << "mape=" << ms::format_double(ms::compute_mape(est, truth)) << "\n";
    });

    // --- validate-prob ---
    auto* vp = app.add_subcommand("validate-prob",
                                  "replay the sampling process against the detection formulas");
    vp->fallthrough();
    std::uint64_t vp_runs = 1000000;
    std::string vp_out;
    vp->add_option("--runs", vp_runs, "Monte-Carlo repetitions per fixture")
        ->capture_default_str();
    vp->add_option("--out", vp_out, "CSV output path (default stdout)");
    vp->callback([&] {
        Stopwatch sw(timing);
        const auto results = ms::validate_builtin(vp_runs, seed);
        std::unique_ptr<std::ofstream> file;
        if (!vp_out.empty()) file = std::make_unique<std::ofstream>(open_binary(vp_out));
        std::ostream& os = file ? *file : std::cout;
        os << "name,branch,runs,expected,observed,z,ok\n";
        bool all_ok = true;
        double max_z = 0.0;
        for (const auto& r : results) {
            const bool ok = std::fabs(r.z) <= 3.0;
            all_ok = all_ok && ok;
            max_z = std::max(max_z, std::fabs(r.z));
            os << r.name << ',' << r.branch << ',' << r.runs << ','
               << ms::format_double(r.expected) << ',' << ms::format_double(r.observed) << ','
               << ms::format_double(r.z) << ',' << (ok ? 1 : 0) << '\n';
        }
        std::cerr << "fixtures=" << results.size() << " max_abs_z=" << ms::format_double(max_z)
                  << "\n";
        if (!all_ok) exit_code = 2;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
