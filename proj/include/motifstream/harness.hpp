#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "motifstream/core.hpp"
#include "motifstream/factory.hpp"
#include "motifstream/oracle.hpp"

// Experiment plumbing: replaying a stream through an estimator with
// periodic readings, exact-truth co-runs, repeated trials with derived
// seeds, and the CSV output formats. All text output is written through
// these helpers so results are byte-stable for a fixed seed.

namespace motifstream {

inline CountLevel level_for(EstimatorKind k) {
    return (k == EstimatorKind::Ts5c || k == EstimatorKind::FiveEst) ? CountLevel::Cliques5
                                                                     : CountLevel::Cliques4;
}

inline double target_truth(const ExactOracle& o, EstimatorKind k) {
    return (k == EstimatorKind::Ts5c || k == EstimatorKind::FiveEst)
               ? static_cast<double>(o.cliques5())
               : static_cast<double>(o.cliques4());
}

// Report grid: stride, 2*stride, ... plus the final step (always included).
inline std::vector<std::uint64_t> report_points(std::uint64_t n, std::uint64_t stride) {
    std::vector<std::uint64_t> out;
    if (stride > 0)
        for (std::uint64_t t = stride; t < n; t += stride) out.push_back(t);
    if (n > 0) out.push_back(n);
    return out;
}

struct Trajectory {
    std::vector<std::uint64_t> t;
    std::vector<double> estimate;
    std::vector<double> truth;  // empty when truth was not co-run
};

// Exact target counts at the given report points.
inline std::vector<double> truth_at_points(const std::vector<StreamRecord>& recs,
                                           EstimatorKind k,
                                           const std::vector<std::uint64_t>& points) {
    ExactOracle oracle(level_for(k));
    std::vector<double> out;
    out.reserve(points.size());
    std::size_t pi = 0;
    std::uint64_t t = 0;
    for (const auto& r : recs) {
        oracle.insert(r.u, r.v);
        ++t;
        while (pi < points.size() && points[pi] == t) {
            out.push_back(target_truth(oracle, k));
            ++pi;
        }
    }
    return out;
}

inline Trajectory run_trajectory(const std::vector<StreamRecord>& recs, EstimatorKind k,
                                 const EstimatorParams& p, std::uint64_t stride,
                                 bool with_truth) {
    const auto points = report_points(recs.size(), stride);
    Trajectory tr;
    tr.t = points;
    tr.estimate.reserve(points.size());
    auto est = make_estimator(k, p);
    std::size_t pi = 0;
    std::uint64_t t = 0;
    for (const auto& r : recs) {
        est->process(r.u, r.v);
        ++t;
        while (pi < points.size() && points[pi] == t) {
            tr.estimate.push_back(est->estimate());
            ++pi;
        }
    }
    if (with_truth) tr.truth = truth_at_points(recs, k, points);
    return tr;
}

struct TrialOutcome {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    double estimate = 0.0;
};

// Estimates of every trial at a shared report grid: estimate[i] is trial
// i's reading at each grid point (last point = final step).
struct TrialSeries {
    std::vector<std::uint64_t> t;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<double>> estimate;
};

// Effective worker count: the request is clamped by the MOTIFSTREAM_THREADS
// environment variable when it is set.
inline unsigned thread_cap(unsigned requested) {
    unsigned cap = requested == 0 ? 1 : requested;
    if (const char* env = std::getenv("MOTIFSTREAM_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            cap = static_cast<unsigned>(std::min<unsigned long>(cap, v));
    }
    return cap;
}

// Runs `trials` independent passes with seeds base+0 .. base+trials-1,
// reading each trial at the shared report grid. Each trial's randomness is
// a pure function of its own seed and results land in pre-sized slots, so
// the worker count cannot affect any output byte.
inline TrialSeries run_trial_series(const std::vector<StreamRecord>& recs, EstimatorKind k,
                                    const EstimatorParams& base, std::uint64_t stride,
                                    std::uint64_t trials, unsigned threads = 1) {
    TrialSeries out;
    out.t = report_points(recs.size(), stride);
    out.seeds.resize(trials);
    out.estimate.resize(trials);
    const unsigned workers = std::max<unsigned>(
        1, static_cast<unsigned>(std::min<std::uint64_t>(thread_cap(threads),
                                                         trials == 0 ? 1 : trials)));
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= trials) return;
            EstimatorParams p = base;
            p.seed = base.seed + i;
            auto est = make_estimator(k, p);
            auto& series = out.estimate[i];
            series.reserve(out.t.size());
            std::size_t pi = 0;
            std::uint64_t t = 0;
            for (const auto& r : recs) {
                est->process(r.u, r.v);
                ++t;
                while (pi < out.t.size() && out.t[pi] == t) {
                    series.push_back(est->estimate());
                    ++pi;
                }
            }
            out.seeds[i] = p.seed;
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return out;
}

inline std::vector<TrialOutcome> run_trials(const std::vector<StreamRecord>& recs,
                                            EstimatorKind k, const EstimatorParams& base,
                                            std::uint64_t trials, unsigned threads = 1) {
    const TrialSeries s = run_trial_series(recs, k, base, 0, trials, threads);
    std::vector<TrialOutcome> out(trials);
    for (std::uint64_t i = 0; i < trials; ++i)
        out[i] = TrialOutcome{i, s.seeds[i], s.estimate[i].empty() ? 0.0 : s.estimate[i].back()};
    return out;
}

// Per-trial error of a series against the matching truth series.
inline std::vector<double> series_mape(const TrialSeries& s, const std::vector<double>& truth) {
    std::vector<double> out;
    out.reserve(s.estimate.size());
    for (const auto& est : s.estimate) out.push_back(compute_mape(est, truth));
    return out;
}

// Shortest round-trippable decimal form, identical across runs.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    const bool with_truth = !tr.truth.empty();
    os << (with_truth ? "t,estimate,truth\n" : "t,estimate\n");
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        os << tr.t[i] << ',' << format_double(tr.estimate[i]);
        if (with_truth) os << ',' << format_double(tr.truth[i]);
        os << '\n';
    }
}

inline void write_summary_csv(std::ostream& os, const std::vector<TrialOutcome>& rows,
                              std::optional<double> truth) {
    os << (truth ? "trial,seed,final_estimate,mape\n" : "trial,seed,final_estimate\n");
    for (const auto& r : rows) {
        os << r.trial << ',' << r.seed << ',' << format_double(r.estimate);
        if (truth) {
            const double ape = *truth != 0.0
                                   ? std::fabs(r.estimate - *truth) / std::fabs(*truth)
                                   : std::fabs(r.estimate);
            os << ',' << format_double(ape);
        }
        os << '\n';
    }
}

// Summary with a per-trial error column supplied by the caller (typically
// series_mape over a strided report grid).
inline void write_summary_csv(std::ostream& os, const std::vector<TrialOutcome>& rows,
                              const std::vector<double>& mape) {
    if (mape.size() != rows.size())
        throw std::invalid_argument("write_summary_csv: error column length mismatch");
    os << "trial,seed,final_estimate,mape\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        os << rows[i].trial << ',' << rows[i].seed << ',' << format_double(rows[i].estimate)
           << ',' << format_double(mape[i]) << '\n';
}

inline std::vector<double> final_estimates(const std::vector<TrialOutcome>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.estimate);
    return out;
}

}  // namespace motifstream
