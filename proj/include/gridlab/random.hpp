#pragma once

#include <cstdint>
#include <random>

#include "gridlab/geometry.hpp"

namespace gridlab {

// Valid unit arrangement with n segments on a coarse lattice (multiples of
// 1/denominator), so that ties between endpoints are common.
Representation random_unit_arrangement(int n, std::mt19937_64& rng, int denominator = 4);

}  // namespace gridlab
