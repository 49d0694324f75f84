#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "motifstream/clique_prob.hpp"
#include "motifstream/core.hpp"
#include "motifstream/reservoir.hpp"

// Monte-Carlo check of the detection-probability kernels. Each fixture pins
// a concrete arrival pattern (tracked edges at fixed steps among anonymous
// filler edges, plus filler triangle offers to reach a fixed observation
// count) and replays the actual sampling process many times; the observed
// detection frequency must agree with the closed-form kernel value.

namespace motifstream {

enum class FixtureKind { FourEst, FiveEst, Ts4c1, Ts4c2 };

struct ProbFixture {
    std::string name;
    FixtureKind kind = FixtureKind::FourEst;
    std::uint64_t M_e = 0;
    std::uint64_t M_tri = 0;  // unused for the single-tier kinds
    std::uint64_t tau = 0;    // triangle observations before t6 (ts4c kinds)
    std::uint64_t t6 = 0;     // closing-edge arrival
    // Role-ordered tracked arrivals:
    //   FourEst: the five earlier clique edges
    //   FiveEst: the nine earlier clique edges
    //   Ts4c1:   three triangle edges, then the two companion edges
    //   Ts4c2:   shared edge, first pair, second pair
    std::vector<std::uint64_t> arrivals;
    double expected = 0.0;  // kernel value for this pattern
    int branch = 0;         // kernel dispatch case (0 for single-tier kinds)
};

struct ValidationResult {
    std::string name;
    int branch = 0;
    std::uint64_t runs = 0;
    std::uint64_t hits = 0;
    double expected = 0.0;
    double observed = 0.0;
    double z = 0.0;
};

namespace detail {

// Reservoir over anonymous items where a few tracked ones have their
// residency maintained as flags: tracked ids are >= 0, fillers are -1.
class TrackedReservoir {
public:
    TrackedReservoir(std::size_t capacity, std::size_t tracked)
        : res_(capacity), resident_(tracked, 0) {}

    void offer(std::int32_t id, RngHandle& rng) {
        auto r = res_.offer(id, rng);
        if (!r.inserted) return;
        if (r.evicted && *r.evicted >= 0) resident_[static_cast<std::size_t>(*r.evicted)] = 0;
        if (id >= 0) resident_[static_cast<std::size_t>(id)] = 1;
    }

    bool resident(std::size_t id) const { return resident_[id] != 0; }

    void reset() {
        res_ = Reservoir<std::int32_t>(res_.capacity());
        std::fill(resident_.begin(), resident_.end(), 0);
    }

private:
    Reservoir<std::int32_t> res_;
    std::vector<char> resident_;
};

}  // namespace detail

// One replay of the sampling process for a fixture; true when the
// detection event fires at step t6.
inline bool simulate_detection(const ProbFixture& f, const std::vector<std::int32_t>& step_role,
                               RngHandle& rng) {
    const bool tiered = f.kind == FixtureKind::Ts4c1 || f.kind == FixtureKind::Ts4c2;
    detail::TrackedReservoir edges(f.M_e, f.arrivals.size());
    detail::TrackedReservoir tris(tiered ? f.M_tri : 1, 2);

    // Closing steps and member ids of the tracked triangles.
    std::uint64_t close1 = 0, close2 = 0;
    std::size_t m1[3] = {0, 1, 2}, m2[3] = {0, 3, 4};
    std::size_t n_tracked_tris = 0;
    if (f.kind == FixtureKind::Ts4c1) {
        close1 = std::max({f.arrivals[0], f.arrivals[1], f.arrivals[2]});
        n_tracked_tris = 1;
    } else if (f.kind == FixtureKind::Ts4c2) {
        close1 = std::max({f.arrivals[0], f.arrivals[1], f.arrivals[2]});
        close2 = std::max({f.arrivals[0], f.arrivals[3], f.arrivals[4]});
        n_tracked_tris = 2;
    }

    auto observed = [&](const std::size_t (&mem)[3], std::uint64_t close) {
        // the two non-closing edges must be resident when the closer arrives
        bool ok = true;
        for (std::size_t id : mem)
            if (f.arrivals[id] != close && !edges.resident(id)) ok = false;
        return ok;
    };

    for (std::uint64_t s = 1; s < f.t6; ++s) {
        if (tiered) {
            const bool hit1 = n_tracked_tris >= 1 && s == close1 && observed(m1, close1);
            const bool hit2 = n_tracked_tris >= 2 && s == close2 && observed(m2, close2);
            if (hit1) tris.offer(0, rng);
            if (hit2) tris.offer(1, rng);
        }
        edges.offer(step_role[static_cast<std::size_t>(s)], rng);
    }
    if (tiered) {
        const std::uint64_t fillers = f.tau - n_tracked_tris;
        for (std::uint64_t i = 0; i < fillers; ++i) tris.offer(-1, rng);
    }

    switch (f.kind) {
        case FixtureKind::FourEst:
        case FixtureKind::FiveEst: {
            for (std::size_t id = 0; id < f.arrivals.size(); ++id)
                if (!edges.resident(id)) return false;
            return true;
        }
        case FixtureKind::Ts4c1:
            return tris.resident(0) && edges.resident(3) && edges.resident(4);
        case FixtureKind::Ts4c2:
            return tris.resident(0) && tris.resident(1);
    }
    return false;
}

inline ValidationResult validate_fixture(const ProbFixture& f, std::uint64_t runs,
                                         std::uint64_t seed) {
    if (f.t6 < 2 || f.arrivals.empty())
        throw std::invalid_argument("validate_fixture: malformed fixture");
    for (std::uint64_t a : f.arrivals)
        if (a < 1 || a >= f.t6) throw std::invalid_argument("validate_fixture: bad arrival");
    const bool tiered = f.kind == FixtureKind::Ts4c1 || f.kind == FixtureKind::Ts4c2;
    const std::uint64_t min_tau = f.kind == FixtureKind::Ts4c2 ? 2 : 1;
    if (tiered && f.tau < min_tau)
        throw std::invalid_argument("validate_fixture: tau below tracked triangle count");

    std::vector<std::int32_t> step_role(static_cast<std::size_t>(f.t6), -1);
    for (std::size_t id = 0; id < f.arrivals.size(); ++id)
        step_role[static_cast<std::size_t>(f.arrivals[id])] = static_cast<std::int32_t>(id);

    RngHandle rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < runs; ++r)
        if (simulate_detection(f, step_role, rng)) ++hits;

    ValidationResult out;
    out.name = f.name;
    out.branch = f.branch;
    out.runs = runs;
    out.hits = hits;
    out.expected = f.expected;
    out.observed = static_cast<double>(hits) / static_cast<double>(runs);
    const double se = std::sqrt(f.expected * (1.0 - f.expected) / static_cast<double>(runs));
    out.z = se > 0.0 ? (out.observed - f.expected) / se : 0.0;
    return out;
}

// The built-in fixture set: every dispatch case of both tiered kernels plus
// the two single-tier kernels. Expected values are the kernel outputs for
// the pinned arrival patterns; the simulation is the independent check.
inline std::vector<ProbFixture> builtin_fixtures() {
    std::vector<ProbFixture> out;

    {
        ProbFixture f;
        f.name = "fourest";
        f.kind = FixtureKind::FourEst;
        f.M_e = 10;
        f.t6 = 21;
        f.arrivals = {1, 2, 3, 4, 5};
        f.expected = prob_clique_fourest(f.t6, f.M_e);
        out.push_back(f);
    }
    {
        ProbFixture f;
        f.name = "fiveest";
        f.kind = FixtureKind::FiveEst;
        f.M_e = 12;
        f.t6 = 20;
        f.arrivals = {1, 2, 3, 4, 5, 6, 7, 8, 9};
        f.expected = prob_clique_fiveest(f.t6, f.M_e);
        out.push_back(f);
    }

    struct K1 {
        std::uint64_t Me, Mtri, tau, t6;
        std::uint64_t a[5];
    };
    const K1 k1s[] = {
        {100, 50, 150, 90, {3, 5, 8, 10, 12}},    // everything deterministic but retention
        {12, 8, 16, 60, {3, 5, 8, 20, 30}},       // both companions after completion
        {12, 8, 16, 60, {14, 16, 20, 10, 35}},    // companions straddle completion
        {12, 8, 16, 60, {14, 16, 20, 6, 10}},     // both companions before completion
    };
    for (const auto& k : k1s) {
        ProbFixture f;
        f.kind = FixtureKind::Ts4c1;
        f.M_e = k.Me;
        f.M_tri = k.Mtri;
        f.tau = k.tau;
        f.t6 = k.t6;
        f.arrivals = {k.a[0], k.a[1], k.a[2], k.a[3], k.a[4]};
        Ts4c1Timestamps in{k.a[0], k.a[1], k.a[2], k.a[3], k.a[4],
                           k.t6,   k.Me,   k.Mtri, k.tau};
        const auto d = prob_clique_ts4c1_detail(in);
        f.expected = d.p;
        f.branch = d.branch;
        f.name = "ts4c1-case" + std::to_string(d.branch);
        out.push_back(f);
    }

    // (t1, t2, t4, t3, t5) patterns hitting each dispatch case once.
    const std::uint64_t k2s[][5] = {
        {3, 5, 4, 20, 8},      {30, 15, 13, 16, 14}, {24, 14, 13, 40, 15},
        {13, 30, 14, 45, 15},  {20, 14, 13, 40, 30}, {13, 18, 14, 45, 30},
        {25, 40, 13, 15, 14},  {10, 40, 5, 9, 7},    {13, 45, 14, 30, 15},
        {4, 45, 5, 10, 6},     {20, 40, 30, 14, 13}, {13, 45, 30, 20, 14},
        {4, 35, 20, 9, 6},
    };
    for (const auto& a : k2s) {
        ProbFixture f;
        f.kind = FixtureKind::Ts4c2;
        f.M_e = 12;
        f.M_tri = 8;
        f.tau = 16;
        f.t6 = 60;
        f.arrivals = {a[0], a[1], a[2], a[3], a[4]};
        Ts4c2Timestamps in{a[0], a[1], a[2], a[3], a[4], f.t6, f.M_e, f.M_tri, f.tau};
        const auto d = prob_clique_ts4c2_detail(in);
        f.expected = d.p;
        f.branch = d.branch;
        f.name = "ts4c2-case" + std::to_string(d.branch);
        out.push_back(f);
    }

    return out;
}

inline std::vector<ValidationResult> validate_builtin(std::uint64_t runs, std::uint64_t seed) {
    std::vector<ValidationResult> out;
    std::uint64_t s = seed;
    for (const auto& f : builtin_fixtures()) out.push_back(validate_fixture(f, runs, s++));
    return out;
}

}  // namespace motifstream
