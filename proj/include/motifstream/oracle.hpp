#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "motifstream/core.hpp"

// Exact motif counting and the analytical helpers that depend on it
// (variance bounds and memory sizing for the tiered 4-clique estimator).

namespace motifstream {

// How far up the motif ladder the oracle counts. Higher levels cost more
// per edge; level Cliques4 skips the 5-clique scan entirely.
enum class CountLevel { Triangles = 3, Cliques4 = 4, Cliques5 = 5 };

// Incremental exact counter over an insertion-only edge stream. Neighbor
// lists are kept sorted; inserting (u, v) intersects the two neighborhoods
// and classifies every clique the new edge completes.
class ExactOracle {
public:
    static constexpr std::size_t kMaxStoredCliques = 100000;

    explicit ExactOracle(CountLevel level = CountLevel::Cliques5)
        : level_(static_cast<int>(level)) {}

    void insert(VertexId u, VertexId v) {
        if (u == v) throw std::invalid_argument("oracle: self-loop");
        if (!edges_.insert(PairKey(u, v)).second)
            throw std::invalid_argument("oracle: duplicate edge");
        auto& nu = adj_[u];
        auto& nv = adj_[v];

        common_.clear();
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                              std::back_inserter(common_));
        triangles_ += common_.size();

        if (level_ >= 4 && common_.size() >= 2) {
            adj_pairs_.clear();
            const std::size_t c = common_.size();
            for (std::size_t i = 0; i < c; ++i)
                for (std::size_t j = i + 1; j < c; ++j) {
                    if (!edges_.count(PairKey(common_[i], common_[j]))) continue;
                    ++cliques4_;
                    record_clique(u, v, common_[i], common_[j]);
                    if (level_ >= 5) adj_pairs_.push_back({i, j});
                }
            if (level_ >= 5) {
                for (const auto& [i, j] : adj_pairs_)
                    for (std::size_t k = j + 1; k < c; ++k)
                        if (edges_.count(PairKey(common_[i], common_[k])) &&
                            edges_.count(PairKey(common_[j], common_[k])))
                            ++cliques5_;
            }
        }

        nu.insert(std::lower_bound(nu.begin(), nu.end(), v), v);
        nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    }

    std::uint64_t triangles() const { return triangles_; }
    std::uint64_t cliques4() const { return cliques4_; }
    std::uint64_t cliques5() const { return cliques5_; }
    std::uint64_t n_edges() const { return edges_.size(); }
    std::uint64_t n_vertices() const { return adj_.size(); }
    bool has_edge(VertexId u, VertexId v) const { return edges_.count(PairKey(u, v)) > 0; }
    std::size_t degree(VertexId v) const {
        auto it = adj_.find(v);
        return it == adj_.end() ? 0 : it->second.size();
    }

    bool clique_list_truncated() const { return c4_overflow_; }
    const std::vector<std::array<VertexId, 4>>& clique4_list() const { return clique4_list_; }

    // Unordered pairs of distinct 4-cliques, classified by how many edges
    // they share. Two distinct 4-cliques overlap in 0, 1 or 3 edges
    // according to whether they share <2, 2 or 3 vertices.
    struct OverlapCounts {
        std::uint64_t one_edge = 0;
        std::uint64_t three_edges = 0;
    };

    OverlapCounts count_overlap_pairs() const {
        if (level_ < 4) throw std::logic_error("oracle: counting level below 4-cliques");
        if (c4_overflow_) throw std::runtime_error("oracle: 4-clique list truncated");
        // A pair sharing 2 vertices contributes one common vertex pair; a
        // pair sharing 3 vertices contributes three pairs and one triple.
        std::unordered_map<PairKey, std::uint64_t, PairKeyHash> by_pair;
        std::unordered_map<std::uint64_t, std::uint64_t> by_triple;
        for (const auto& q : clique4_list_) {
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) ++by_pair[PairKey(q[i], q[j])];
            for (int skip = 0; skip < 4; ++skip) {
                std::uint64_t h = 0x9e3779b97f4a7c15ULL;
                for (int i = 0; i < 4; ++i) {
                    if (i == skip) continue;
                    h ^= q[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                }
                ++by_triple[h];
            }
        }
        std::uint64_t sum_pair = 0, sum_triple = 0;
        for (const auto& [k, m] : by_pair) sum_pair += m * (m - 1) / 2;
        for (const auto& [k, m] : by_triple) sum_triple += m * (m - 1) / 2;
        OverlapCounts out;
        out.three_edges = sum_triple;
        out.one_edge = sum_pair - 3 * sum_triple;
        return out;
    }

private:
    void record_clique(VertexId a, VertexId b, VertexId c, VertexId d) {
        if (clique4_list_.size() >= kMaxStoredCliques) {
            c4_overflow_ = true;
            return;
        }
        std::array<VertexId, 4> q{a, b, c, d};
        std::sort(q.begin(), q.end());
        clique4_list_.push_back(q);
    }

    int level_;
    std::unordered_map<VertexId, std::vector<VertexId>> adj_;
    std::unordered_set<PairKey, PairKeyHash> edges_;
    std::uint64_t triangles_ = 0;
    std::uint64_t cliques4_ = 0;
    std::uint64_t cliques5_ = 0;
    std::vector<std::array<VertexId, 4>> clique4_list_;
    bool c4_overflow_ = false;
    // scratch buffers reused across inserts
    std::vector<VertexId> common_;
    std::vector<std::pair<std::size_t, std::size_t>> adj_pairs_;
};

// --- analysis helpers -------------------------------------------------------

// Inputs shared by the variance bounds: the exact 4-clique count and the
// overlap pair counts of the final graph.
struct GraphCliqueStats {
    double cliques4 = 0.0;   // number of 4-cliques
    double pairs_one = 0.0;  // 4-clique pairs sharing one edge
    double pairs_tri = 0.0;  // 4-clique pairs sharing three edges
};

// Upper bound on the variance of the single-reservoir 4-clique estimate
// after t steps with capacity M.
inline double variance_bound_fourest(const GraphCliqueStats& g, std::uint64_t t,
                                     std::uint64_t M) {
    if (M < 5) throw std::domain_error("variance_bound_fourest: M < 5");
    const double r = std::max(1.0, static_cast<double>(t - 1) / static_cast<double>(M));
    const double r5 = r * r * r * r * r;
    const double r3 = r * r * r;
    return g.cliques4 * (r5 - 1.0) + g.pairs_one * (r - 1.0) + g.pairs_tri * (r3 - 1.0);
}

// Upper bound on the variance of the tiered 4-clique estimate (one triangle
// plus two edges) after t steps, with tau triangles observed in total.
inline double variance_bound_ts4c1(const GraphCliqueStats& g, std::uint64_t t,
                                   std::uint64_t M_e, std::uint64_t M_tri,
                                   std::uint64_t tau) {
    if (M_e < 5) throw std::domain_error("variance_bound_ts4c1: M_e < 5");
    if (M_tri < 1) throw std::domain_error("variance_bound_ts4c1: M_tri < 1");
    const double me = static_cast<double>(M_e);
    const double c = (me * me * me) / ((me - 1.0) * (me - 2.0) * (me - 3.0));
    const double re = std::max(1.0, static_cast<double>(t - 1) / me);
    const double rt = std::max(1.0, static_cast<double>(tau) / static_cast<double>(M_tri));
    const double term_c = g.cliques4 * (c * re * re * re * re * rt - 1.0);
    const double term_a = 2.0 * g.pairs_one * (c * re - 1.0);
    const double term_b =
        2.0 * g.pairs_tri * (c * re * re * (0.25 * rt + 0.75 * re) - 1.0);
    return std::max(0.0, term_c) + std::max(0.0, term_a) + std::max(0.0, term_b);
}

// Total slot budget sufficient for the tiered 4-clique estimator to be
// within eps relative error with probability 1 - delta on a stream with the
// given clique statistics, t edges and tau observed triangles. Four fifths
// of the budget are assumed to go to the edge tier; the constant c depends
// weakly on that share, so one fixed-point refinement is applied.
inline double required_memory_ts4c1(const GraphCliqueStats& g, std::uint64_t t,
                                    std::uint64_t tau, double delta, double eps) {
    if (g.cliques4 <= 0.0)
        throw std::domain_error("required_memory_ts4c1: needs a positive 4-clique count");
    if (!(delta > 0.0 && delta < 1.0) || !(eps > 0.0))
        throw std::domain_error("required_memory_ts4c1: bad delta/eps");
    const double T = static_cast<double>(t);
    const double tu = static_cast<double>(tau);
    const double d2 = delta * eps * eps;
    const double q4 = g.cliques4;

    auto bound = [&](double c) {
        const double m1 =
            1.25 * std::pow(12.0 * c * std::pow(T - 1.0, 4.0) * tu / (d2 * q4), 0.2);
        const double m2 = 15.0 * c * g.pairs_one * (T - 1.0) / (d2 * q4 * q4);
        const double m3 = 1.25 * std::cbrt(3.0 * g.pairs_tri * c * (T - 1.0) * (T - 1.0) *
                                           (4.0 * tu + 3.0 * (T - 1.0)) / (2.0 * d2 * q4 * q4));
        return std::max({m1, m2, m3});
    };

    double m = bound(1.1);
    const double me = std::max(5.0, 0.8 * m);
    const double c = (me * me * me) / ((me - 1.0) * (me - 2.0) * (me - 3.0));
    return bound(c);
}

// Mean absolute percentage error of a set of final estimates against the
// exact count.
inline double compute_mape(const std::vector<double>& estimates, double truth) {
    if (estimates.empty()) throw std::invalid_argument("compute_mape: no estimates");
    if (truth == 0.0) throw std::invalid_argument("compute_mape: zero truth");
    double s = 0.0;
    for (double e : estimates) s += std::fabs(e - truth) / std::fabs(truth);
    return s / static_cast<double>(estimates.size());
}

// Mean absolute percentage error along matched series. Steps whose
// reference value is zero carry no percentage information and are skipped.
inline double compute_mape(const std::vector<double>& estimates,
                           const std::vector<double>& truths) {
    if (estimates.size() != truths.size())
        throw std::invalid_argument("compute_mape: series length mismatch");
    double s = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (truths[i] == 0.0) continue;
        s += std::fabs(estimates[i] - truths[i]) / std::fabs(truths[i]);
        ++used;
    }
    if (used == 0) throw std::invalid_argument("compute_mape: no nonzero reference values");
    return s / static_cast<double>(used);
}

}  // namespace motifstream
