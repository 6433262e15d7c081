#pragma once

#include <cstddef>

#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/rng.hpp"

namespace dtlab {

/// Random partial function on 1..max_points distinct points of the cube,
/// labels uniform.
PartialFn random_partial_fn(CounterRng& rng, std::size_t width, std::size_t max_points);

/// Random monotone total function on the cube: the up-closure of a few random
/// generators (possibly none, giving constant 0).
PartialFn random_monotone_fn(CounterRng& rng, std::size_t width);

/// Random tree grown by splitting uniformly chosen leaves on coordinates not
/// yet queried along their path. Leaf labels are uniform.
DecisionTree random_tree(CounterRng& rng, std::size_t width, std::size_t leaves);

/// The path restriction of a random tree, evaluated at x.
Restriction random_path_restriction(CounterRng& rng, const BitVector& x, std::size_t max_fixed);

}  // namespace dtlab
