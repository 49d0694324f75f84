#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "motifstream/clique_prob.hpp"
#include "motifstream/core.hpp"
#include "motifstream/estimator.hpp"
#include "motifstream/sample.hpp"

namespace motifstream {

// Adaptive two-phase 4-clique estimator over a fixed slot budget M.
//
// Phase one spends all slots on a single edge reservoir (the plain
// 4-clique count) while tracking how many triangles the resident sample
// closes. At every M-th step it compares the single-tier detection rate
// against the best rate achievable by an edge/triangle split; once a split
// wins, the triangle tier is seeded with the triangles of the current
// sample and the edge tier is uniformly downsampled to its share.
//
// Phase two runs two-triangle detections. Later windows may move further
// slots from the edge tier to the triangle tier: moved slots fill as a
// separate region that receives all new triangle offers while the main
// region is frozen; the regions are merged once the new one's retention
// probability has dropped to the main one's level.
class Ats4cEstimator final : public Estimator {
public:
    explicit Ats4cEstimator(const EstimatorParams& p)
        : M_(p.memory), rng_(p.seed), edges_(p.memory) {
        if (M_ < 15) throw std::invalid_argument("ats4c: memory must be >= 15");
    }

    void process(VertexId u, VertexId v) override {
        if (u == v) throw std::invalid_argument("ats4c: self-loop");
        const std::uint64_t t = ++t_;
        if (!tri_)
            step_single(u, v, t);
        else
            step_tiered(u, v, t);
        if (t % M_ == 0) window_boundary(t);
    }

    double estimate() const override { return kappa_; }
    EstimatorKind kind() const override { return EstimatorKind::Ats4c; }
    std::uint64_t steps() const override { return t_; }

    bool switched() const { return tri_.has_value(); }
    double alpha() const { return alpha_; }
    std::uint64_t tau() const { return tau_; }
    const EdgeSample& edge_sample() const { return edges_; }
    const TriangleSample* triangle_tier() const { return tri_ ? &*tri_ : nullptr; }
    const TriangleSample* pending_tier() const { return pending_ ? &*pending_ : nullptr; }

private:
    static double pow_int(double x, int k) {
        double r = 1.0;
        while (k-- > 0) r *= x;
        return r;
    }

    // Detection rate of an alpha-split at step t with tau triangles seen.
    double split_rate(double alpha, double t, double tau) const {
        if (tau <= 0.0) return 0.0;
        const double m = static_cast<double>(M_);
        const double a = std::min(1.0, alpha * m / t);
        const double b = std::min(1.0, (1.0 - alpha) * m / tau);
        return pow_int(a, 4) * pow_int(b, 2);
    }

    // Best split fraction over the candidate grid [2/3, 1) in steps of 0.01;
    // ties resolve to the smaller fraction.
    std::pair<double, double> best_split(double t, double tau) const {
        double best_a = 2.0 / 3.0;
        double best_p = split_rate(best_a, t, tau);
        for (int k = 1;; ++k) {
            const double a = 2.0 / 3.0 + 0.01 * k;
            if (a >= 1.0) break;
            const double p = split_rate(a, t, tau);
            if (p > best_p) {
                best_p = p;
                best_a = a;
            }
        }
        return {best_a, best_p};
    }

    void step_single(VertexId u, VertexId v, std::uint64_t t) {
        const auto common = edges_.common_neighbors(u, v);
        if (common.size() >= 2 && t >= 6) {
            const double inv_p = 1.0 / prob_clique_fourest(t, M_);
            for (std::size_t i = 0; i < common.size(); ++i)
                for (std::size_t j = i + 1; j < common.size(); ++j)
                    if (edges_.contains(common[i].w, common[j].w)) kappa_ += inv_p;
        }
        tau_ += common.size();
        edges_.offer(u, v, t, rng_);
    }

    void step_tiered(VertexId u, VertexId v, std::uint64_t t) {
        detect_tiered(u, v, t);
        for (const auto& cn : edges_.common_neighbors(u, v)) {
            ++tau_;
            const TriangleRecord rec = TriangleRecord::make(u, v, cn.w, cn.t_vw, cn.t_uw, t);
            if (pending_)
                pending_->offer(rec, rng_);
            else
                tri_->offer(rec, rng_);
        }
        edges_.offer(u, v, t, rng_);
    }

    double region_single(const TriangleSample& r) const {
        const double s = static_cast<double>(std::max<std::uint64_t>(r.seen(), 1));
        return std::min(1.0, static_cast<double>(r.capacity()) / s);
    }

    double region_pair(const TriangleSample& r) const {
        const double c = static_cast<double>(r.capacity());
        const double s = static_cast<double>(std::max<std::uint64_t>(r.seen(), 1));
        double f = std::min(1.0, c / s);
        if (s >= 2.0) f *= std::min(1.0, (c - 1.0) / (s - 1.0));
        return f;
    }

    void detect_tiered(VertexId u, VertexId v, std::uint64_t t) {
        const TriangleSample* regions[2] = {&*tri_, pending_ ? &*pending_ : nullptr};
        for (int ra = 0; ra < 2; ++ra) {
            if (!regions[ra]) continue;
            const auto* su = regions[ra]->slots_with_vertex(u);
            if (!su) continue;
            for (std::size_t sa : *su) {
                const TriangleRecord& A = regions[ra]->at(sa);
                if (A.contains(v)) continue;
                const int iu = A.index_of(u);
                const VertexId w = A.v[(iu + 1) % 3];
                const VertexId x = A.v[(iu + 2) % 3];
                for (int rb = 0; rb < 2; ++rb) {
                    if (!regions[rb]) continue;
                    const auto* sp = regions[rb]->slots_with_pair(w, x);
                    if (!sp) continue;
                    for (std::size_t sb : *sp) {
                        if (rb == ra && sb == sa) continue;
                        const TriangleRecord& B = regions[rb]->at(sb);
                        if (!B.contains(v)) continue;
                        Ts4c2Timestamps in;
                        in.t1 = A.ets[iu];
                        in.t2 = A.ets[A.index_of(w)];
                        in.t4 = A.ets[A.index_of(x)];
                        in.t3 = B.ets[B.index_of(w)];
                        in.t5 = B.ets[B.index_of(x)];
                        in.t6 = t;
                        in.M_e = edges_.capacity();
                        in.M_tri = 2;  // placeholder; retention handled below
                        in.tau = 0;
                        const double ep = prob_clique_ts4c2_edges_only(in).p;
                        const double tf = (ra == rb)
                                              ? region_pair(*regions[ra])
                                              : region_single(*regions[ra]) *
                                                    region_single(*regions[rb]);
                        kappa_ += 1.0 / (ep * tf);
                    }
                }
            }
        }
    }

    void window_boundary(std::uint64_t t) {
        if (!tri_) {
            const double ps =
                pow_int(std::min(1.0, static_cast<double>(M_) / static_cast<double>(t)), 5);
            const auto [astar, palpha] =
                best_split(static_cast<double>(t), static_cast<double>(tau_));
            if (palpha > ps) do_switch(astar);
        } else {
            maintain_tiers(t);
        }
        tau_last_win_ = tau_;
    }

    std::size_t clamp_edge_slots(double alpha) const {
        auto me = static_cast<std::size_t>(std::llround(alpha * static_cast<double>(M_)));
        me = std::max<std::size_t>(me, 5);
        me = std::min<std::size_t>(me, M_ - 2);
        return me;
    }

    void do_switch(double alpha) {
        const std::size_t me = clamp_edge_slots(alpha);
        const std::size_t mtri = M_ - me;
        // Seed the triangle tier with the triangles of the current sample,
        // each enumerated once at its latest resident edge.
        std::vector<TriangleRecord> found;
        for (const Edge& e : edges_.reservoir().items()) {
            for (const auto& cn : edges_.common_neighbors(e.u, e.v)) {
                if (cn.t_uw > e.t || cn.t_vw > e.t) continue;
                found.push_back(TriangleRecord::make(e.u, e.v, cn.w, cn.t_vw, cn.t_uw, e.t));
            }
        }
        tri_.emplace(mtri);
        for (const auto& rec : found) tri_->offer(rec, rng_);
        edges_.shrink(me, rng_);
        alpha_ = static_cast<double>(me) / static_cast<double>(M_);
    }

    void maintain_tiers(std::uint64_t t) {
        if (pending_) {
            const double pm = region_single(*tri_);
            const double pp = region_single(*pending_);
            if (pp <= pm) merge_tiers(pp);
            return;
        }
        if (!tri_->full()) return;
        if (3 * tri_->capacity() >= M_) return;  // tier at its ceiling
        // Predict the next window's triangle count from the last two
        // boundaries and re-optimize the split for it.
        const double tau_next =
            2.0 * static_cast<double>(tau_) - static_cast<double>(tau_last_win_);
        const auto [astar, pa] =
            best_split(static_cast<double>(t + M_), tau_next);
        (void)pa;
        const std::size_t me_new = clamp_edge_slots(astar);
        if (me_new >= edges_.capacity()) return;
        const std::size_t freed = edges_.capacity() - me_new;
        pending_.emplace(freed);
        edges_.shrink(me_new, rng_);
        alpha_ = static_cast<double>(me_new) / static_cast<double>(M_);
    }

    void merge_tiers(double pp) {
        const double pm = region_single(*tri_);
        const double keep = pm > 0.0 ? std::min(1.0, pp / pm) : 1.0;
        std::vector<TriangleRecord> merged;
        for (const auto& rec : tri_->reservoir().items())
            if (rng_.bernoulli(keep)) merged.push_back(rec);
        for (const auto& rec : pending_->reservoir().items()) merged.push_back(rec);
        const std::size_t cap = tri_->capacity() + pending_->capacity();
        const auto seen = static_cast<std::uint64_t>(
            std::llround(static_cast<double>(cap) / std::max(pp, 1e-300)));
        tri_.emplace(Reservoir<TriangleRecord>::from_state(cap, std::move(merged), seen));
        pending_.reset();
    }

    std::uint64_t M_;
    RngHandle rng_;
    EdgeSample edges_;
    std::optional<TriangleSample> tri_;
    std::optional<TriangleSample> pending_;
    double alpha_ = 1.0;
    double kappa_ = 0.0;
    std::uint64_t t_ = 0;
    std::uint64_t tau_ = 0;
    std::uint64_t tau_last_win_ = 0;
};

}  // namespace motifstream
