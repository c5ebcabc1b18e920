#pragma once

#include <cstdint>
#include <vector>

#include "gradlab/types.hpp"

namespace gradlab {

/// Deterministic seeded sampling: uniform in a box, uniform in a ball
/// (gaussian direction scaled by radius * U^(1/dim)). Reproducible
/// bit-for-bit for a fixed (domain, count, seed).
std::vector<Vec> sample_points(const Domain& domain, int count, std::uint64_t seed);

}  // namespace gradlab
