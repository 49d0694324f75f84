#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "motifstream/core.hpp"

namespace motifstream {

// Fixed-capacity uniform sample of an unbounded insertion stream.
//
// The first M offered items are stored outright. From then on the i-th item
// replaces a uniformly chosen resident with probability M/i, so after any
// number of offers the resident set is a uniform M-subset of everything seen.
// Draw discipline per saturated offer: first one uniform01() coin, then, only
// if it accepts, one uniform_int(M) victim index. Callers that need
// reproducible runs rely on that fixed order.
template <typename Item>
class Reservoir {
public:
    explicit Reservoir(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) throw std::invalid_argument("Reservoir: capacity must be > 0");
        items_.reserve(capacity);
    }

    struct OfferResult {
        bool inserted = false;
        std::size_t slot = 0;            // valid only when inserted
        std::optional<Item> evicted;     // set when an insert displaced a resident
    };

    OfferResult offer(Item item, RngHandle& rng) {
        ++seen_;
        OfferResult r;
        if (items_.size() < capacity_) {
            r.inserted = true;
            r.slot = items_.size();
            items_.push_back(std::move(item));
            return r;
        }
        const double keep_p = static_cast<double>(capacity_) / static_cast<double>(seen_);
        if (rng.uniform01() < keep_p) {
            const std::size_t victim = static_cast<std::size_t>(rng.uniform_int(capacity_));
            r.inserted = true;
            r.slot = victim;
            r.evicted = std::exchange(items_[victim], std::move(item));
        }
        return r;
    }

    // Uniformly discards residents until `new_capacity` remain, invoking
    // `on_evict(item)` for each casualty. The survivors are a uniform
    // new_capacity-subset of the old residents, so the reservoir law carries
    // over to the reduced capacity unchanged.
    template <typename OnEvict>
    void shrink_capacity(std::size_t new_capacity, RngHandle& rng, OnEvict&& on_evict) {
        if (new_capacity == 0 || new_capacity > capacity_)
            throw std::invalid_argument("Reservoir: bad shrink capacity");
        while (items_.size() > new_capacity) {
            const std::size_t victim = static_cast<std::size_t>(rng.uniform_int(items_.size()));
            on_evict(items_[victim]);
            items_[victim] = std::move(items_.back());
            items_.pop_back();
        }
        capacity_ = new_capacity;
    }

    // Rebuilds a reservoir from externally assembled state (used when two
    // regions of a partitioned sample are merged). `seen` must be the
    // effective offer count consistent with the retention probability of the
    // provided items.
    static Reservoir from_state(std::size_t capacity, std::vector<Item> items, std::uint64_t seen) {
        if (items.size() > capacity) throw std::invalid_argument("Reservoir: items exceed capacity");
        Reservoir r(capacity);
        r.items_ = std::move(items);
        r.seen_ = seen < r.items_.size() ? r.items_.size() : seen;
        return r;
    }

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return items_.size(); }
    std::uint64_t seen() const { return seen_; }
    bool full() const { return items_.size() == capacity_; }

    const Item& item(std::size_t slot) const { return items_[slot]; }
    Item& item(std::size_t slot) { return items_[slot]; }
    const std::vector<Item>& items() const { return items_; }

private:
    std::size_t capacity_;
    std::uint64_t seen_ = 0;
    std::vector<Item> items_;
};

// Probability that k specific items, all offered among the first t, are
// simultaneously resident after t offers with capacity M:
//   1                                  if t <= M
//   prod_{i=0}^{k-1} (M - i) / (t - i) otherwise.
inline double joint_inclusion_prob(std::size_t k, std::uint64_t t, std::size_t M) {
    const std::uint64_t cap = static_cast<std::uint64_t>(M);
    if (k == 0 || k > M || k > t)
        throw std::domain_error("joint_inclusion_prob: need 1 <= k <= min(M, t)");
    if (t <= cap) return 1.0;
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        p *= static_cast<double>(cap - i) / static_cast<double>(t - i);
    return p;
}

}  // namespace motifstream
