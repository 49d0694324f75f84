#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "motifstream/ats4c.hpp"
#include "motifstream/estimators.hpp"
#include "motifstream/oracle.hpp"
#include "motifstream/synthgen.hpp"

using namespace motifstream;

namespace {

std::vector<std::pair<VertexId, VertexId>> complete_bipartite(VertexId a, VertexId b) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId i = 0; i < a; ++i)
        for (VertexId j = a; j < a + b; ++j) edges.emplace_back(i, j);
    return edges;
}

}  // namespace

TEST_CASE("without triangles the adaptive estimator never leaves phase one") {
    const auto edges = complete_bipartite(12, 12);  // 144 edges, no triangles
    EstimatorParams p;
    p.memory = 40;
    p.seed = 7;
    Ats4cEstimator ad(p);
    FourEstimator plain(p);
    for (const auto& [u, v] : edges) {
        ad.process(u, v);
        plain.process(u, v);
        // Lockstep with the single-reservoir estimator, eviction included.
        REQUIRE(ad.edge_sample().size() == plain.edge_sample().size());
    }
    CHECK_FALSE(ad.switched());
    CHECK(ad.alpha() == 1.0);
    CHECK(ad.tau() == 0);
    CHECK(ad.estimate() == 0.0);
    CHECK(ad.edge_sample().capacity() == 40);
    const auto& ra = ad.edge_sample().reservoir().items();
    const auto& rb = plain.edge_sample().reservoir().items();
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].u == rb[i].u);
        CHECK(ra[i].v == rb[i].v);
        CHECK(ra[i].t == rb[i].t);
    }
}

TEST_CASE("phase one matches the single-reservoir estimator while it lasts") {
    const auto recs = generate_ba(400, 4, 17);
    EstimatorParams p;
    p.memory = 60;
    p.seed = 3;
    Ats4cEstimator ad(p);
    FourEstimator plain(p);
    for (const auto& r : recs) {
        if (ad.switched()) break;
        ad.process(r.u, r.v);
        plain.process(r.u, r.v);
        CHECK(ad.estimate() == plain.estimate());
    }
}

namespace {

// A stream built to walk the estimator through its whole life cycle with a
// 60-slot budget: a handful of standalone triangles land inside the first
// window, a triangle-free matching then starves the single-tier detection
// rate until the split wins with a small triangle share, and a dense block
// at the end floods the sampled triangle count so later windows keep
// moving slots toward the triangle tier.
std::vector<std::pair<VertexId, VertexId>> phased_stream() {
    std::vector<std::pair<VertexId, VertexId>> e;
    for (VertexId k = 0; k < 6; ++k) {
        const VertexId b = 3 * k;
        e.emplace_back(b, b + 1);
        e.emplace_back(b + 1, b + 2);
        e.emplace_back(b, b + 2);
    }
    for (VertexId k = 0; k < 170; ++k) e.emplace_back(100 + 2 * k, 101 + 2 * k);
    std::vector<std::pair<VertexId, VertexId>> hub;
    for (VertexId i = 700; i < 760; ++i)
        for (VertexId j = i + 1; j < 760; ++j) hub.emplace_back(i, j);
    RngHandle rng(5);
    for (std::size_t i = hub.size(); i > 1; --i)
        std::swap(hub[i - 1], hub[rng.uniform_int(i)]);
    e.insert(e.end(), hub.begin(), hub.end());
    return e;
}

}  // namespace

TEST_CASE("a lean triangle sample triggers the switch") {
    const auto edges = phased_stream();
    EstimatorParams p;
    p.memory = 60;
    p.seed = 9;
    Ats4cEstimator est(p);
    std::uint64_t switch_step = 0;
    std::uint64_t t = 0;
    for (const auto& [u, v] : edges) {
        est.process(u, v);
        ++t;
        if (est.switched() && switch_step == 0) switch_step = t;
        // Slot accounting: the tiers always partition the budget.
        std::size_t total = est.edge_sample().capacity();
        if (est.triangle_tier()) total += est.triangle_tier()->capacity();
        if (est.pending_tier()) total += est.pending_tier()->capacity();
        REQUIRE(total == 60);
    }
    REQUIRE(est.switched());
    CHECK(switch_step == 120);  // second window boundary
    CHECK(est.alpha() >= 2.0 / 3.0 - 1e-12);
    CHECK(est.alpha() < 1.0);
    CHECK(est.edge_sample().capacity() ==
          static_cast<std::size_t>(std::llround(est.alpha() * 60.0)));
    CHECK(est.estimate() > 0.0);
    CHECK(est.tau() > 0);
}

TEST_CASE("later windows can move slots and then absorb the new region") {
    const auto edges = phased_stream();
    EstimatorParams p;
    p.memory = 60;
    p.seed = 2;
    Ats4cEstimator est(p);
    bool saw_pending = false;
    bool merged_back = false;
    std::vector<double> alphas;
    for (const auto& [u, v] : edges) {
        est.process(u, v);
        if (est.pending_tier())
            saw_pending = true;
        else if (saw_pending)
            merged_back = true;
        if (alphas.empty() || alphas.back() != est.alpha()) alphas.push_back(est.alpha());
    }
    REQUIRE(est.switched());
    CHECK(saw_pending);
    CHECK(merged_back);
    // The edge share only ever moves down, in distinct steps.
    for (std::size_t i = 1; i < alphas.size(); ++i) CHECK(alphas[i] < alphas[i - 1]);
    CHECK(alphas.size() >= 3);  // initial 1.0, first split, at least one reopt
}

TEST_CASE("exact while the whole stream fits") {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId i = 0; i < 6; ++i)
        for (VertexId j = i + 1; j < 6; ++j) edges.emplace_back(i, j);
    EstimatorParams p;
    p.memory = 200;
    Ats4cEstimator est(p);
    for (const auto& [u, v] : edges) est.process(u, v);
    CHECK_FALSE(est.switched());
    CHECK(est.estimate() == 15.0);
}

TEST_CASE("adaptive estimate lands near the exact count across seeds") {
    // In a regime where the split fires mid-stream the phase transition is
    // corrected only approximately (seeded triangles enter the tier through
    // a different path than streamed ones), so the average is held to a
    // band rather than a standard-error test.
    const auto recs = generate_ba(60, 4, 11);
    ExactOracle oracle(CountLevel::Cliques4);
    for (const auto& r : recs) oracle.insert(r.u, r.v);
    const double truth = static_cast<double>(oracle.cliques4());
    REQUIRE(truth > 0.0);

    const int runs = 400;
    double sum = 0.0;
    for (int i = 0; i < runs; ++i) {
        EstimatorParams p;
        p.memory = 40;
        p.seed = 7000 + i;
        Ats4cEstimator est(p);
        for (const auto& r : recs) est.process(r.u, r.v);
        sum += est.estimate();
    }
    const double mean = sum / runs;
    INFO("mean " << mean << " truth " << truth);
    CHECK(std::fabs(mean - truth) / truth < 0.30);
}
