#pragma once

#include <functional>
#include <vector>

#include "clipcone/scalar.hpp"

namespace clipcone {

// Uniform integer vectors of [-box, box]^dim; deterministic in the seed.
std::vector<IntVec> box_samples(long dim, long count, long box, unsigned long seed);

// Interior-biased rational samples: draws an integer perturbation delta of
// [-box, box]^dim and returns M*base + delta for the smallest power of two M
// that satisfies the predicate.  base itself must satisfy it.  Throws
// IterationCap when M reaches 2^40 without success (degenerate predicate).
std::vector<RatVec> predicate_samples(const std::function<bool(const RatVec&)>& inside,
                                      const RatVec& base, long count, long box,
                                      unsigned long seed);

}  // namespace clipcone
