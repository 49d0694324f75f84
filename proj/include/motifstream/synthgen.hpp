#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "motifstream/core.hpp"

namespace motifstream {

// Preferential-attachment edge stream: a complete seed clique on m+1
// vertices (edges in lexicographic order), then one vertex per step
// attaching to m distinct existing vertices drawn proportionally to degree.
// Targets of one batch are drawn from the degrees as they were before the
// batch, with rejection of duplicates. Vertices are labeled 0..n-1 and the
// stream has C(m+1,2) + m*(n-m-1) edges, none repeated.
inline std::vector<StreamRecord> generate_ba(std::uint64_t n, std::uint64_t m,
                                             std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("generate_ba: m must be >= 1");
    if (n < m + 2) throw std::invalid_argument("generate_ba: n must be >= m + 2");
    RngHandle rng(seed);
    std::vector<StreamRecord> out;
    out.reserve(static_cast<std::size_t>(m * (m + 1) / 2 + m * (n - m - 1)));
    // One entry per edge endpoint; sampling an index uniformly picks a
    // vertex with probability proportional to its degree.
    std::vector<VertexId> ends;
    ends.reserve(2 * out.capacity());

    for (VertexId u = 0; u <= m; ++u)
        for (VertexId v = u + 1; v <= m; ++v) {
            out.push_back(StreamRecord{u, v, std::nullopt});
            ends.push_back(u);
            ends.push_back(v);
        }

    std::vector<VertexId> chosen;
    chosen.reserve(m);
    for (VertexId v = m + 1; v < n; ++v) {
        const std::size_t frozen = ends.size();
        chosen.clear();
        while (chosen.size() < m) {
            const VertexId w = ends[rng.uniform_int(frozen)];
            bool dup = false;
            for (VertexId c : chosen)
                if (c == w) {
                    dup = true;
                    break;
                }
            if (!dup) chosen.push_back(w);
        }
        for (VertexId w : chosen) {
            out.push_back(StreamRecord{v, w, std::nullopt});
            ends.push_back(v);
            ends.push_back(w);
        }
    }
    return out;
}

}  // namespace motifstream
