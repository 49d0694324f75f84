#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "motifstream/clique_prob.hpp"
#include "motifstream/core.hpp"
#include "motifstream/estimator.hpp"
#include "motifstream/sample.hpp"

// The fixed-tier estimators. Every step runs in the same order: estimate
// update against the current samples, then substructure observation, then
// the edge offer. The estimate update therefore never sees structures
// created at the current step, which is what the detection-probability
// formulas assume.

namespace motifstream {

namespace detail {

inline std::size_t edge_slots(const EstimatorParams& p, double dflt, std::size_t min_edge,
                              std::size_t min_rest, const char* who) {
    if (p.split < 0.0)
        throw std::invalid_argument(std::string(who) + ": split must be in (0, 1)");
    const double split = p.split > 0.0 ? p.split : dflt;
    if (!(split > 0.0 && split < 1.0))
        throw std::invalid_argument(std::string(who) + ": split must be in (0, 1)");
    const auto me = static_cast<std::size_t>(std::llround(split * static_cast<double>(p.memory)));
    if (me < min_edge || p.memory < me + min_rest)
        throw std::invalid_argument(std::string(who) + ": memory too small for split");
    return me;
}

}  // namespace detail

// Single edge reservoir; a 4-clique is counted when its last edge arrives
// while the five earlier ones are all resident.
class FourEstimator final : public Estimator {
public:
    explicit FourEstimator(const EstimatorParams& p)
        : M_(p.memory), rng_(p.seed), edges_(p.memory) {
        if (M_ < 5) throw std::invalid_argument("fourest: memory must be >= 5");
    }

    void process(VertexId u, VertexId v) override {
        if (u == v) throw std::invalid_argument("fourest: self-loop");
        const std::uint64_t t = ++t_;
        const auto common = edges_.common_neighbors(u, v);
        if (common.size() >= 2 && t >= 6) {
            const double inv_p = 1.0 / prob_clique_fourest(t, M_);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j)
                    if (edges_.contains(common[i].w, common[j].w)) kappa_ += inv_p;
        }
        edges_.offer(u, v, t, rng_);
    }

    double estimate() const override { return kappa_; }
    EstimatorKind kind() const override { return EstimatorKind::FourEst; }
    std::uint64_t steps() const override { return t_; }

    const EdgeSample& edge_sample() const { return edges_; }

private:
    std::uint64_t M_;
    RngHandle rng_;
    EdgeSample edges_;
    double kappa_ = 0.0;
    std::uint64_t t_ = 0;
};

// Single edge reservoir; a 5-clique is counted when its last edge arrives
// while the nine earlier ones are all resident.
class FiveEstimator final : public Estimator {
public:
    explicit FiveEstimator(const EstimatorParams& p)
        : M_(p.memory), rng_(p.seed), edges_(p.memory) {
        if (M_ < 9) throw std::invalid_argument("fiveest: memory must be >= 9");
    }

    void process(VertexId u, VertexId v) override {
        if (u == v) throw std::invalid_argument("fiveest: self-loop");
        const std::uint64_t t = ++t_;
        const auto common = edges_.common_neighbors(u, v);
        if (common.size() >= 3 && t >= 10) {
            const double inv_p = 1.0 / prob_clique_fiveest(t, M_);
            const std::size_t n = common.size();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (!edges_.contains(common[i].w, common[j].w)) continue;
                    for (std::size_t k = j + 1; k < n; ++k)
                        if (edges_.contains(common[i].w, common[k].w) &&
                            edges_.contains(common[j].w, common[k].w))
                            kappa_ += inv_p;
                }
        }
        edges_.offer(u, v, t, rng_);
    }

    double estimate() const override { return kappa_; }
    EstimatorKind kind() const override { return EstimatorKind::FiveEst; }
    std::uint64_t steps() const override { return t_; }

    const EdgeSample& edge_sample() const { return edges_; }

private:
    std::uint64_t M_;
    RngHandle rng_;
    EdgeSample edges_;
    double kappa_ = 0.0;
    std::uint64_t t_ = 0;
};

// Edge tier plus triangle tier; a 4-clique is counted through a resident
// triangle on three of its vertices plus two resident edges reaching the
// fourth. Each closing edge admits two such paths, hence the 1/2 weight.
class Ts4c1Estimator final : public Estimator {
public:
    explicit Ts4c1Estimator(const EstimatorParams& p)
        : Me_(detail::edge_slots(p, 0.8, 5, 1, "ts4c1")),
          Mtri_(p.memory - Me_),
          rng_(p.seed),
          edges_(Me_),
          tri_(Mtri_) {}

    void process(VertexId u, VertexId v) override {
        if (u == v) throw std::invalid_argument("ts4c1: self-loop");
        const std::uint64_t t = ++t_;
        detect(u, v, t);
        detect(v, u, t);
        observe_triangles(u, v, t);
        edges_.offer(u, v, t, rng_);
    }

    double estimate() const override { return kappa_; }
    EstimatorKind kind() const override { return EstimatorKind::Ts4c1; }
    std::uint64_t steps() const override { return t_; }

    std::uint64_t tau() const { return tau_; }
    const EdgeSample& edge_sample() const { return edges_; }
    const TriangleSample& triangle_sample() const { return tri_; }

private:
    // Triangles containing a, joined to b by two resident edges.
    void detect(VertexId a, VertexId b, std::uint64_t t) {
        const auto* slots = tri_.slots_with_vertex(a);
        if (!slots) return;
        for (std::size_t s : *slots) {
            const TriangleRecord& rec = tri_.at(s);
            if (rec.contains(b)) continue;
            const int ia = rec.index_of(a);
            const VertexId w = rec.v[(ia + 1) % 3];
            const VertexId x = rec.v[(ia + 2) % 3];
            const auto tbw = edges_.arrival(b, w);
            if (!tbw) continue;
            const auto tbx = edges_.arrival(b, x);
            if (!tbx) continue;
            Ts4c1Timestamps in;
            in.tri_a = rec.ets[0];
            in.tri_b = rec.ets[1];
            in.tri_c = rec.ets[2];
            in.comp_a = *tbw;
            in.comp_b = *tbx;
            in.t6 = t;
            in.M_e = Me_;
            in.M_tri = Mtri_;
            in.tau = tau_;
            kappa_ += 0.5 / prob_clique_ts4c1(in);
        }
    }

    void observe_triangles(VertexId u, VertexId v, std::uint64_t t) {
        for (const auto& cn : edges_.common_neighbors(u, v)) {
            ++tau_;
            tri_.offer(TriangleRecord::make(u, v, cn.w, cn.t_vw, cn.t_uw, t), rng_);
        }
    }

    std::uint64_t Me_;
    std::uint64_t Mtri_;
    RngHandle rng_;
    EdgeSample edges_;
    TriangleSample tri_;
    double kappa_ = 0.0;
    std::uint64_t t_ = 0;
    std::uint64_t tau_ = 0;
};

// Edge tier plus triangle tier; a 4-clique is counted through two resident
// triangles that share the edge opposite the closing pair. Each closing
// edge admits exactly one such unordered triangle pair.
class Ts4c2Estimator final : public Estimator {
public:
    explicit Ts4c2Estimator(const EstimatorParams& p)
        : Me_(detail::edge_slots(p, 2.0 / 3.0, 5, 2, "ts4c2")),
          Mtri_(p.memory - Me_),
          rng_(p.seed),
          edges_(Me_),
          tri_(Mtri_) {}

    void process(VertexId u, VertexId v) override {
        if (u == v) throw std::invalid_argument("ts4c2: self-loop");
        const std::uint64_t t = ++t_;
        detect(u, v, t);
        observe_triangles(u, v, t);
        edges_.offer(u, v, t, rng_);
    }

    double estimate() const override { return kappa_; }
    EstimatorKind kind() const override { return EstimatorKind::Ts4c2; }
    std::uint64_t steps() const override { return t_; }

    std::uint64_t tau() const { return tau_; }
    const EdgeSample& edge_sample() const { return edges_; }
    const TriangleSample& triangle_sample() const { return tri_; }

private:
    void detect(VertexId u, VertexId v, std::uint64_t t) {
        const auto* su = tri_.slots_with_vertex(u);
        if (!su) return;
        for (std::size_t sa : *su) {
            const TriangleRecord& A = tri_.at(sa);
            if (A.contains(v)) continue;
            const int iu = A.index_of(u);
            const VertexId w = A.v[(iu + 1) % 3];
            const VertexId x = A.v[(iu + 2) % 3];
            const auto* sp = tri_.slots_with_pair(w, x);
            if (!sp) continue;
            for (std::size_t sb : *sp) {
                if (sb == sa) continue;
                const TriangleRecord& B = tri_.at(sb);
                const int iv = B.index_of(v);
                if (iv < 0) continue;
                Ts4c2Timestamps in;
                in.t1 = A.ets[iu];  // shared edge (w, x)
                in.t2 = A.ets[A.index_of(w)];
                in.t4 = A.ets[A.index_of(x)];
                in.t3 = B.ets[B.index_of(w)];
                in.t5 = B.ets[B.index_of(x)];
                in.t6 = t;
                in.M_e = Me_;
                in.M_tri = Mtri_;
                in.tau = tau_;
                kappa_ += 1.0 / prob_clique_ts4c2(in);
            }
        }
    }

    void observe_triangles(VertexId u, VertexId v, std::uint64_t t) {
        for (const auto& cn : edges_.common_neighbors(u, v)) {
            ++tau_;
            tri_.offer(TriangleRecord::make(u, v, cn.w, cn.t_vw, cn.t_uw, t), rng_);
        }
    }

    std::uint64_t Me_;
    std::uint64_t Mtri_;
    RngHandle rng_;
    EdgeSample edges_;
    TriangleSample tri_;
    double kappa_ = 0.0;
    std::uint64_t t_ = 0;
    std::uint64_t tau_ = 0;
};

// Edge tier plus 4-clique tier; a 5-clique is counted through a resident
// 4-clique on four of its vertices plus three resident edges reaching the
// fifth. Each closing edge admits two such paths, hence the 1/2 weight.
class Ts5cEstimator final : public Estimator {
public:
    explicit Ts5cEstimator(const EstimatorParams& p)
        : Me_(detail::edge_slots(p, 0.8, 9, 1, "ts5c")),
          Mc_(p.memory - Me_),
          rng_(p.seed),
          edges_(Me_),
          cliques_(Mc_) {}

    void process(VertexId u, VertexId v) override {
        if (u == v) throw std::invalid_argument("ts5c: self-loop");
        const std::uint64_t t = ++t_;
        detect(u, v, t);
        detect(v, u, t);
        observe_cliques(u, v, t);
        edges_.offer(u, v, t, rng_);
    }

    double estimate() const override { return kappa_; }
    EstimatorKind kind() const override { return EstimatorKind::Ts5c; }
    std::uint64_t steps() const override { return t_; }

    std::uint64_t cliques_observed() const { return tc_; }
    const EdgeSample& edge_sample() const { return edges_; }
    const CliqueSample& clique_sample() const { return cliques_; }

private:
    // Resident 4-cliques containing a, joined to b by three resident edges.
    void detect(VertexId a, VertexId b, std::uint64_t t) {
        const auto* slots = cliques_.slots_with_vertex(a);
        if (!slots) return;
        for (std::size_t s : *slots) {
            const CliqueRecord& rec = cliques_.at(s);
            if (rec.contains(b)) continue;
            bool all = true;
            for (VertexId x : rec.v) {
                if (x == a) continue;
                if (!edges_.contains(b, x)) {
                    all = false;
                    break;
                }
            }
            if (!all) continue;
            kappa_ += 0.5 / prob_clique_ts5c(t, rec.t_obs, tc_, Me_, Mc_);
        }
    }

    void observe_cliques(VertexId u, VertexId v, std::uint64_t t) {
        const auto common = edges_.common_neighbors(u, v);
        if (common.size() < 2) return;
        for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j) {
                if (!edges_.contains(common[i].w, common[j].w)) continue;
                ++tc_;
                cliques_.offer(CliqueRecord::make(u, v, common[i].w, common[j].w, t), rng_);
            }
    }

    std::uint64_t Me_;
    std::uint64_t Mc_;
    RngHandle rng_;
    EdgeSample edges_;
    CliqueSample cliques_;
    double kappa_ = 0.0;
    std::uint64_t t_ = 0;
    std::uint64_t tc_ = 0;
};

}  // namespace motifstream
