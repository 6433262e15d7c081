#include "dtlab/generate.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dtlab/errors.hpp"

namespace dtlab {

namespace {

BitVector from_mask(std::uint64_t v, std::size_t width) {
  BitVector x(width);
  for (std::size_t i = 0; i < width; ++i) {
    if ((v >> i) & 1U) x.set(i, true);
  }
  return x;
}

template <typename T>
void shuffle(std::vector<T>& items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

}  // namespace

PartialFn random_partial_fn(CounterRng& rng, std::size_t width, std::size_t max_points) {
  if (width == 0 || width > 20) throw Error(ErrorCode::InvalidArgument, "random functions need width in [1, 20]");
  std::vector<std::uint64_t> all(std::size_t{1} << width);
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  shuffle(all, rng);
  const std::size_t count = 1 + rng.below(std::min(max_points, all.size()));
  std::vector<Point> points;
  for (std::size_t i = 0; i < count; ++i) points.push_back({from_mask(all[i], width), rng.coin()});
  return PartialFn(width, std::move(points));
}

PartialFn random_monotone_fn(CounterRng& rng, std::size_t width) {
  if (width == 0 || width > 20) throw Error(ErrorCode::InvalidArgument, "random functions need width in [1, 20]");
  const std::size_t generators = rng.below(width + 1);
  std::vector<BitVector> gens;
  for (std::size_t g = 0; g < generators; ++g) {
    BitVector x(width);
    for (std::size_t i = 0; i < width; ++i) {
      if (rng.below(3) == 0) x.set(i, true);
    }
    gens.push_back(std::move(x));
  }
  return PartialFn::full_cube(width, [&](const BitVector& x) {
    return std::any_of(gens.begin(), gens.end(), [&](const BitVector& g) { return g.is_below(x); });
  });
}

DecisionTree random_tree(CounterRng& rng, std::size_t width, std::size_t leaves) {
  DecisionTree t = DecisionTree::leaf(rng.coin());
  for (std::size_t attempts = 0; t.size() < leaves && attempts < 4 * leaves; ++attempts) {
    const auto ids = t.leaves();
    const auto id = ids[rng.below(ids.size())];
    const Restriction path = t.path_to(id);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < width; ++i) {
      if (!path.contains(i)) free.push_back(i);
    }
    if (free.empty()) continue;
    auto [a, b] = t.split_leaf(id, free[rng.below(free.size())]);
    t.set_label(a, rng.coin());
    t.set_label(b, rng.coin());
  }
  return t;
}

Restriction random_path_restriction(CounterRng& rng, const BitVector& x, std::size_t max_fixed) {
  std::vector<std::size_t> coords(x.width());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
  shuffle(coords, rng);
  const std::size_t depth = rng.below(std::min(max_fixed, coords.size()) + 1);
  Restriction rho;
  for (std::size_t i = 0; i < depth; ++i) rho.assign(coords[i], x[coords[i]]);
  return rho;
}

}  // namespace dtlab
