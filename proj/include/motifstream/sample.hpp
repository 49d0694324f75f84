#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "motifstream/core.hpp"
#include "motifstream/reservoir.hpp"

// Sample tiers used by the estimators: a reservoir of edges with a hash
// adjacency view, and reservoirs of triangle / 4-clique records with slot
// indexes by vertex (and by vertex pair for triangles). The indexes are kept
// in sync with reservoir evictions so per-edge scans touch only resident
// structures that can actually participate in a detection.

namespace motifstream {

class EdgeSample {
public:
    // neighbor -> arrival index of the connecting edge
    using AdjMap = std::unordered_map<VertexId, std::uint64_t>;

    explicit EdgeSample(std::size_t capacity) : res_(capacity) {}

    // Offers the edge (u, v) arrived at step t; true when it was inserted.
    bool offer(VertexId u, VertexId v, std::uint64_t t, RngHandle& rng) {
        auto r = res_.offer(Edge{u, v, t}, rng);
        if (!r.inserted) return false;
        if (r.evicted) unlink(r.evicted->u, r.evicted->v);
        adj_[u].emplace(v, t);
        adj_[v].emplace(u, t);
        return true;
    }

    const AdjMap* neighbors(VertexId v) const {
        auto it = adj_.find(v);
        return it == adj_.end() ? nullptr : &it->second;
    }

    std::optional<std::uint64_t> arrival(VertexId u, VertexId v) const {
        auto it = adj_.find(u);
        if (it == adj_.end()) return std::nullopt;
        auto jt = it->second.find(v);
        if (jt == it->second.end()) return std::nullopt;
        return jt->second;
    }

    bool contains(VertexId u, VertexId v) const { return arrival(u, v).has_value(); }

    struct CommonNeighbor {
        VertexId w;
        std::uint64_t t_uw;
        std::uint64_t t_vw;
    };

    // Resident vertices adjacent to both u and v, with the arrivals of the
    // two connecting edges. Scans the smaller neighbor map.
    std::vector<CommonNeighbor> common_neighbors(VertexId u, VertexId v) const {
        std::vector<CommonNeighbor> out;
        const AdjMap* mu = neighbors(u);
        const AdjMap* mv = neighbors(v);
        if (!mu || !mv) return out;
        const bool flipped = mu->size() > mv->size();
        if (flipped) std::swap(mu, mv);
        for (const auto& [w, ts] : *mu) {
            auto jt = mv->find(w);
            if (jt == mv->end()) continue;
            if (flipped)
                out.push_back(CommonNeighbor{w, jt->second, ts});
            else
                out.push_back(CommonNeighbor{w, ts, jt->second});
        }
        return out;
    }

    // Uniformly evicts residents down to new_capacity and continues with the
    // reduced capacity.
    void shrink(std::size_t new_capacity, RngHandle& rng) {
        res_.shrink_capacity(new_capacity, rng,
                             [this](const Edge& e) { unlink(e.u, e.v); });
    }

    const Reservoir<Edge>& reservoir() const { return res_; }
    std::size_t capacity() const { return res_.capacity(); }
    std::size_t size() const { return res_.size(); }
    std::uint64_t seen() const { return res_.seen(); }

private:
    void unlink(VertexId u, VertexId v) {
        auto it = adj_.find(u);
        if (it != adj_.end()) {
            it->second.erase(v);
            if (it->second.empty()) adj_.erase(it);
        }
        auto jt = adj_.find(v);
        if (jt != adj_.end()) {
            jt->second.erase(u);
            if (jt->second.empty()) adj_.erase(jt);
        }
    }

    Reservoir<Edge> res_;
    std::unordered_map<VertexId, AdjMap> adj_;
};

// A resident triangle. Vertices are sorted ascending; ets[i] is the arrival
// index of the edge joining the other two vertices (the edge opposite v[i]).
struct TriangleRecord {
    std::array<VertexId, 3> v{};
    std::array<std::uint64_t, 3> ets{};

    // Builds a sorted record from an arbitrary labeling: t_bc is the arrival
    // of the edge opposite a, t_ac opposite b, t_ab opposite c.
    static TriangleRecord make(VertexId a, VertexId b, VertexId c,
                               std::uint64_t t_bc, std::uint64_t t_ac, std::uint64_t t_ab) {
        std::array<std::pair<VertexId, std::uint64_t>, 3> z{
            {{a, t_bc}, {b, t_ac}, {c, t_ab}}};
        std::sort(z.begin(), z.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        TriangleRecord rec;
        for (int i = 0; i < 3; ++i) {
            rec.v[i] = z[i].first;
            rec.ets[i] = z[i].second;
        }
        return rec;
    }

    int index_of(VertexId x) const {
        for (int i = 0; i < 3; ++i)
            if (v[i] == x) return i;
        return -1;
    }

    bool contains(VertexId x) const { return index_of(x) >= 0; }

    std::uint64_t max_arrival() const { return std::max({ets[0], ets[1], ets[2]}); }
};

class TriangleSample {
public:
    explicit TriangleSample(std::size_t capacity) : res_(capacity) {}

    // Rebuilds the indexes over an externally assembled reservoir (used when
    // two regions of a partitioned triangle tier are merged).
    explicit TriangleSample(Reservoir<TriangleRecord>&& res) : res_(std::move(res)) {
        for (std::size_t s = 0; s < res_.size(); ++s) add_index(res_.item(s), s);
    }

    void offer(const TriangleRecord& rec, RngHandle& rng) {
        auto r = res_.offer(rec, rng);
        if (!r.inserted) return;
        if (r.evicted) drop_index(*r.evicted, r.slot);
        add_index(rec, r.slot);
    }

    const std::vector<std::size_t>* slots_with_vertex(VertexId x) const {
        auto it = vindex_.find(x);
        return it == vindex_.end() ? nullptr : &it->second;
    }

    const std::vector<std::size_t>* slots_with_pair(VertexId a, VertexId b) const {
        auto it = pindex_.find(PairKey(a, b));
        return it == pindex_.end() ? nullptr : &it->second;
    }

    const TriangleRecord& at(std::size_t slot) const { return res_.item(slot); }
    const Reservoir<TriangleRecord>& reservoir() const { return res_; }
    std::size_t capacity() const { return res_.capacity(); }
    std::size_t size() const { return res_.size(); }
    std::uint64_t seen() const { return res_.seen(); }
    bool full() const { return res_.full(); }

private:
    static void drop_slot(std::vector<std::size_t>& slots, std::size_t slot) {
        auto it = std::find(slots.begin(), slots.end(), slot);
        if (it != slots.end()) {
            *it = slots.back();
            slots.pop_back();
        }
    }

    void add_index(const TriangleRecord& rec, std::size_t slot) {
        for (VertexId x : rec.v) vindex_[x].push_back(slot);
        pindex_[PairKey(rec.v[0], rec.v[1])].push_back(slot);
        pindex_[PairKey(rec.v[0], rec.v[2])].push_back(slot);
        pindex_[PairKey(rec.v[1], rec.v[2])].push_back(slot);
    }

    void drop_index(const TriangleRecord& rec, std::size_t slot) {
        for (VertexId x : rec.v) {
            auto it = vindex_.find(x);
            if (it == vindex_.end()) continue;
            drop_slot(it->second, slot);
            if (it->second.empty()) vindex_.erase(it);
        }
        const PairKey keys[3] = {PairKey(rec.v[0], rec.v[1]), PairKey(rec.v[0], rec.v[2]),
                                 PairKey(rec.v[1], rec.v[2])};
        for (const PairKey& k : keys) {
            auto it = pindex_.find(k);
            if (it == pindex_.end()) continue;
            drop_slot(it->second, slot);
            if (it->second.empty()) pindex_.erase(it);
        }
    }

    Reservoir<TriangleRecord> res_;
    std::unordered_map<VertexId, std::vector<std::size_t>> vindex_;
    std::unordered_map<PairKey, std::vector<std::size_t>, PairKeyHash> pindex_;
};

// A resident 4-clique: sorted vertices plus the step at which it was
// observed (its closing edge's arrival).
struct CliqueRecord {
    std::array<VertexId, 4> v{};
    std::uint64_t t_obs = 0;

    static CliqueRecord make(VertexId a, VertexId b, VertexId c, VertexId d,
                             std::uint64_t t_obs) {
        CliqueRecord rec;
        rec.v = {a, b, c, d};
        std::sort(rec.v.begin(), rec.v.end());
        rec.t_obs = t_obs;
        return rec;
    }

    bool contains(VertexId x) const {
        return std::find(v.begin(), v.end(), x) != v.end();
    }
};

class CliqueSample {
public:
    explicit CliqueSample(std::size_t capacity) : res_(capacity) {}

    void offer(const CliqueRecord& rec, RngHandle& rng) {
        auto r = res_.offer(rec, rng);
        if (!r.inserted) return;
        if (r.evicted) drop_index(*r.evicted, r.slot);
        add_index(rec, r.slot);
    }

    const std::vector<std::size_t>* slots_with_vertex(VertexId x) const {
        auto it = vindex_.find(x);
        return it == vindex_.end() ? nullptr : &it->second;
    }

    const CliqueRecord& at(std::size_t slot) const { return res_.item(slot); }
    const Reservoir<CliqueRecord>& reservoir() const { return res_; }
    std::size_t capacity() const { return res_.capacity(); }
    std::size_t size() const { return res_.size(); }
    std::uint64_t seen() const { return res_.seen(); }

private:
    void add_index(const CliqueRecord& rec, std::size_t slot) {
        for (VertexId x : rec.v) vindex_[x].push_back(slot);
    }

    void drop_index(const CliqueRecord& rec, std::size_t slot) {
        for (VertexId x : rec.v) {
            auto it = vindex_.find(x);
            if (it == vindex_.end()) continue;
            auto jt = std::find(it->second.begin(), it->second.end(), slot);
            if (jt != it->second.end()) {
                *jt = it->second.back();
                it->second.pop_back();
            }
            if (it->second.empty()) vindex_.erase(it);
        }
    }

    Reservoir<CliqueRecord> res_;
    std::unordered_map<VertexId, std::vector<std::size_t>> vindex_;
};

}  // namespace motifstream
