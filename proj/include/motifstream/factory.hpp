#pragma once

#include <memory>

#include "motifstream/ats4c.hpp"
#include "motifstream/estimator.hpp"
#include "motifstream/estimators.hpp"

namespace motifstream {

inline std::unique_ptr<Estimator> make_estimator(EstimatorKind k, const EstimatorParams& p) {
    switch (k) {
        case EstimatorKind::FourEst: return std::make_unique<FourEstimator>(p);
        case EstimatorKind::Ts4c1: return std::make_unique<Ts4c1Estimator>(p);
        case EstimatorKind::Ts4c2: return std::make_unique<Ts4c2Estimator>(p);
        case EstimatorKind::Ats4c: return std::make_unique<Ats4cEstimator>(p);
        case EstimatorKind::Ts5c: return std::make_unique<Ts5cEstimator>(p);
        case EstimatorKind::FiveEst: return std::make_unique<FiveEstimator>(p);
    }
    throw std::invalid_argument("make_estimator: bad kind");
}

}  // namespace motifstream
