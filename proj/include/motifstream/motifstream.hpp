#pragma once

// Umbrella header for the streaming clique-count estimation library.

#include "motifstream/ats4c.hpp"
#include "motifstream/clique_prob.hpp"
#include "motifstream/core.hpp"
#include "motifstream/estimator.hpp"
#include "motifstream/estimators.hpp"
#include "motifstream/factory.hpp"
#include "motifstream/harness.hpp"
#include "motifstream/oracle.hpp"
#include "motifstream/reservoir.hpp"
#include "motifstream/sample.hpp"
#include "motifstream/stream.hpp"
#include "motifstream/synthgen.hpp"
#include "motifstream/validate.hpp"
