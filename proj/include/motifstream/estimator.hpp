#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "motifstream/core.hpp"

namespace motifstream {

enum class EstimatorKind { FourEst, Ts4c1, Ts4c2, Ats4c, Ts5c, FiveEst };

inline const char* kind_name(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::FourEst: return "fourest";
        case EstimatorKind::Ts4c1: return "ts4c1";
        case EstimatorKind::Ts4c2: return "ts4c2";
        case EstimatorKind::Ats4c: return "ats4c";
        case EstimatorKind::Ts5c: return "ts5c";
        case EstimatorKind::FiveEst: return "fiveest";
    }
    return "?";
}

inline EstimatorKind parse_kind(std::string_view s) {
    if (s == "fourest") return EstimatorKind::FourEst;
    if (s == "ts4c1") return EstimatorKind::Ts4c1;
    if (s == "ts4c2") return EstimatorKind::Ts4c2;
    if (s == "ats4c") return EstimatorKind::Ats4c;
    if (s == "ts5c") return EstimatorKind::Ts5c;
    if (s == "fiveest") return EstimatorKind::FiveEst;
    throw std::invalid_argument("unknown estimator: " + std::string(s));
}

// Runtime knobs shared by all estimators. `memory` is the total slot budget
// across tiers; `split` is the fraction of slots given to the edge tier for
// the tiered estimators (0 selects the per-kind default).
struct EstimatorParams {
    std::uint64_t memory = 1000;
    double split = 0.0;
    std::uint64_t seed = 1;
};

// Single-pass clique-count estimator. `process` consumes one stream edge;
// arrival indexes are assigned internally in call order, starting at 1.
// `estimate` may be read at any point of the stream.
class Estimator {
public:
    virtual ~Estimator() = default;
    virtual void process(VertexId u, VertexId v) = 0;
    virtual double estimate() const = 0;
    virtual EstimatorKind kind() const = 0;
    virtual std::uint64_t steps() const = 0;
};

}  // namespace motifstream
