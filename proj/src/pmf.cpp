#include "dtlab/pmf.hpp"

#include <algorithm>
#include <limits>

#include "dtlab/errors.hpp"

namespace dtlab {

Pmf::Pmf(std::vector<Mass> support) {
  if (support.empty()) throw Error(ErrorCode::InvalidArgument, "pmf with empty support");
  width_ = support.front().x.width();
  std::sort(support.begin(), support.end(), [](const Mass& a, const Mass& b) { return a.x < b.x; });
  Rational total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& m = support[i];
    if (m.x.width() != width_) throw Error(ErrorCode::InvalidArgument, "pmf support has mixed widths");
    if (m.p <= 0) throw Error(ErrorCode::InvalidArgument, "nonpositive mass at " + m.x.to_string());
    if (i > 0 && support[i - 1].x == m.x) {
      throw Error(ErrorCode::InvalidArgument, "pmf lists " + m.x.to_string() + " twice");
    }
    total += m.p;
  }
  if (total != 1) throw Error(ErrorCode::InvalidArgument, "pmf masses sum to " + to_string(total));
  support_ = std::move(support);
}

Rational Pmf::mass(const BitVector& x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x,
                             [](const Mass& m, const BitVector& v) { return m.x < v; });
  if (it != support_.end() && it->x == x) return it->p;
  return 0;
}

bool Pmf::supported_by(const PartialFn& f) const {
  if (f.width() != width_) return false;
  return std::all_of(support_.begin(), support_.end(), [&](const Mass& m) { return f.contains(m.x); });
}

PartialFn Pmf::restrict_domain(const PartialFn& f) const {
  std::vector<Point> points;
  points.reserve(support_.size());
  for (const auto& m : support_) {
    auto v = f.find(m.x);
    if (!v) throw Error(ErrorCode::SupportMismatch, m.x.to_string() + " has mass but no label");
    points.push_back({m.x, *v});
  }
  return PartialFn(width_, std::move(points));
}

Pmf product_pmf(const Pmf& pmf, std::size_t r, std::size_t cap) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "product of zero factors");
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (total > cap / pmf.size()) throw Error(ErrorCode::SizeCap, "product support exceeds cap");
    total *= pmf.size();
  }
  std::vector<Mass> current(pmf.support().begin(), pmf.support().end());
  for (std::size_t b = 1; b < r; ++b) {
    std::vector<Mass> next;
    next.reserve(current.size() * pmf.size());
    for (const auto& a : current) {
      for (const auto& c : pmf.support()) next.push_back({a.x.concat(c.x), a.p * c.p});
    }
    current = std::move(next);
  }
  return Pmf(std::move(current));
}

Sampler::Sampler(const Pmf& pmf, std::size_t r) : width_(pmf.width()), r_(r) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "sampler needs r >= 1");
  BigInt common = 1;
  for (const auto& m : pmf.support()) common = boost::multiprecision::lcm(common, denominator_of(m.p));
  if (common > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::SizeCap, "pmf denominators too large for exact sampling");
  }
  std::uint64_t running = 0;
  for (const auto& m : pmf.support()) {
    const BigInt w = numerator_of(m.p) * (common / denominator_of(m.p));
    running += w.convert_to<std::uint64_t>();
    points_.push_back(m.x);
    cumulative_.push_back(running);
  }
}

std::size_t Sampler::draw_index(CounterRng& rng) const {
  const std::uint64_t u = rng.below(cumulative_.back());
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                  cumulative_.begin());
}

BitVector Sampler::operator()(CounterRng& rng) const {
  BitVector x = points_[draw_index(rng)];
  for (std::size_t b = 1; b < r_; ++b) x = x.concat(points_[draw_index(rng)]);
  return x;
}

}  // namespace dtlab
