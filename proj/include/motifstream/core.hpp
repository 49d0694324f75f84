#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

namespace motifstream {

using VertexId = std::uint64_t;

// An undirected edge as it appears on the stream. `t` is the 1-based arrival
// index assigned by the stream reader; `src_ts` carries an optional timestamp
// column from the input file (used only for ordering, never by estimators).
struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    std::uint64_t t = 0;
};

struct StreamRecord {
    VertexId u = 0;
    VertexId v = 0;
    std::optional<std::int64_t> src_ts;
};

// Canonical key for an unordered vertex pair.
struct PairKey {
    VertexId a;
    VertexId b;

    PairKey(VertexId x, VertexId y) : a(x < y ? x : y), b(x < y ? y : x) {}
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        // splitmix64-style mix of both halves; stable across runs.
        std::uint64_t h = k.a * 0x9e3779b97f4a7c15ULL;
        h ^= (h >> 30);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= k.b + 0x94d049bb133111ebULL + (h << 6) + (h >> 2);
        h ^= (h >> 27);
        h *= 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

// Seeded random source with a pinned draw discipline so that identical seeds
// give identical draw sequences on any platform. All randomness in the
/// library flows through this wrapper; no std::*_distribution is used because
// their outputs are not specified bit-exactly.
class RngHandle {
public:
    explicit RngHandle(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, n); rejection on the low remainder.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_int: n must be > 0");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace motifstream
