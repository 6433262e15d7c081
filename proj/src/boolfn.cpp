#include "dtlab/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "dtlab/errors.hpp"

namespace dtlab {

// ---------------------------------------------------------------------------
// Restriction

void Restriction::assign(std::size_t index, bool bit) {
  auto it = std::lower_bound(items_.begin(), items_.end(), index,
                             [](const auto& item, std::size_t i) { return item.first < i; });
  if (it != items_.end() && it->first == index) {
    if (it->second != bit) {
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate " + std::to_string(index + 1) + " assigned both values");
    }
    return;
  }
  items_.insert(it, {index, bit});
}

std::optional<bool> Restriction::value(std::size_t index) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), index,
                             [](const auto& item, std::size_t i) { return item.first < i; });
  if (it != items_.end() && it->first == index) return it->second;
  return std::nullopt;
}

bool Restriction::consistent_with(const BitVector& x) const {
  for (const auto& [i, b] : items_) {
    if (i >= x.width() || x[i] != b) return false;
  }
  return true;
}

bool Restriction::consistent_with(const Restriction& other) const {
  for (const auto& [i, b] : items_) {
    auto v = other.value(i);
    if (v && *v != b) return false;
  }
  return true;
}

Restriction Restriction::merged(const Restriction& other) const {
  Restriction out = *this;
  for (const auto& [i, b] : other.items_) out.assign(i, b);
  return out;
}

// ---------------------------------------------------------------------------
// PartialFn

struct PartialFn::Impl {
  std::size_t width = 0;
  std::vector<Point> points;
  std::unordered_map<BitVector, std::size_t, BitVectorHash> index;
  std::size_t ones = 0;
};

PartialFn::PartialFn(std::size_t width, std::vector<Point> points) {
  auto impl = std::make_shared<Impl>();
  impl->width = width;
  for (const auto& p : points) {
    if (p.x.width() != width) {
      throw Error(ErrorCode::InvalidArgument, "point " + p.x.to_string() + " does not have width " +
                                                  std::to_string(width));
    }
  }
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  impl->index.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].x == points[i - 1].x) {
      throw Error(ErrorCode::InvalidArgument, "point " + points[i].x.to_string() + " listed twice");
    }
    impl->index.emplace(points[i].x, i);
    if (points[i].label) ++impl->ones;
  }
  impl->points = std::move(points);
  impl_ = std::move(impl);
}

PartialFn PartialFn::full_cube(std::size_t width, const std::function<bool(const BitVector&)>& pred,
                               std::size_t cap) {
  if (width > cap) {
    throw Error(ErrorCode::SizeCap, "full cube of width " + std::to_string(width) + " exceeds cap " +
                                        std::to_string(cap));
  }
  std::vector<Point> points;
  points.reserve(std::size_t{1} << width);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
    BitVector x(width);
    for (std::size_t i = 0; i < width; ++i) {
      if ((v >> (width - 1 - i)) & 1U) x.set(i, true);
    }
    const bool label = pred(x);
    points.push_back({std::move(x), label});
  }
  return PartialFn(width, std::move(points));
}

std::size_t PartialFn::width() const noexcept { return impl_->width; }
std::size_t PartialFn::size() const noexcept { return impl_->points.size(); }
bool PartialFn::empty() const noexcept { return impl_->points.empty(); }
std::span<const Point> PartialFn::points() const noexcept { return impl_->points; }

std::optional<bool> PartialFn::find(const BitVector& x) const {
  auto it = impl_->index.find(x);
  if (it == impl_->index.end()) return std::nullopt;
  return impl_->points[it->second].label;
}

bool PartialFn::at(const BitVector& x) const {
  auto v = find(x);
  if (!v) throw Error(ErrorCode::OutOfDomain, x.to_string() + " is not in the domain");
  return *v;
}

bool PartialFn::is_constant() const noexcept {
  return impl_->ones == 0 || impl_->ones == impl_->points.size();
}

std::optional<bool> PartialFn::constant_value() const noexcept {
  if (impl_->points.empty()) return std::nullopt;
  if (impl_->ones == 0) return false;
  if (impl_->ones == impl_->points.size()) return true;
  return std::nullopt;
}

std::vector<BitVector> PartialFn::ones() const {
  std::vector<BitVector> out;
  for (const auto& p : impl_->points) {
    if (p.label) out.push_back(p.x);
  }
  return out;
}

std::vector<BitVector> PartialFn::zeros() const {
  std::vector<BitVector> out;
  for (const auto& p : impl_->points) {
    if (!p.label) out.push_back(p.x);
  }
  return out;
}

bool operator==(const PartialFn& a, const PartialFn& b) {
  if (a.width() != b.width() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.points()[i].x != b.points()[i].x || a.points()[i].label != b.points()[i].label) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Measures

PartialFn restrict(const PartialFn& f, const Restriction& rho) {
  for (const auto& [i, b] : rho.items()) {
    if (i >= f.width()) {
      throw Error(ErrorCode::InvalidArgument, "restriction index " + std::to_string(i + 1) +
                                                  " exceeds width " + std::to_string(f.width()));
    }
  }
  if (rho.empty()) return f;
  std::vector<Point> kept;
  for (const auto& p : f.points()) {
    if (rho.consistent_with(p.x)) kept.push_back(p);
  }
  return PartialFn(f.width(), std::move(kept));
}

std::vector<BitVector> sensitivity_set(const PartialFn& f, const BitVector& x) {
  const bool label = f.at(x);
  std::vector<BitVector> out;
  BitVector y = x;
  for (std::size_t i = 0; i < x.width(); ++i) {
    y.flip(i);
    auto v = f.find(y);
    if (v && *v != label) out.push_back(y);
    y.flip(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t max_sensitivity(const PartialFn& f) {
  std::size_t best = 0;
  for (const auto& p : f.points()) best = std::max(best, sensitivity_set(f, p.x).size());
  return best;
}

namespace {

using Mask = std::uint64_t;

struct HittingSearch {
  std::vector<Mask> masks;
  std::size_t width = 0;
  std::vector<std::size_t> chosen;

  // Greedy count of pairwise disjoint unhit masks, restricted to coordinates
  // that are still selectable. Each needs its own coordinate.
  std::size_t disjoint_bound(Mask hit_coords, Mask selectable) const {
    std::size_t count = 0;
    Mask used = 0;
    for (Mask m : masks) {
      if (m & hit_coords) continue;
      const Mask avail = m & selectable;
      if ((avail & used) == 0) {
        ++count;
        used |= avail;
      }
    }
    return count;
  }

  bool dfs(std::size_t next, Mask hit_coords, std::size_t budget) {
    const Mask selectable = next >= 64 ? 0 : (~Mask{0} << next);
    // Any unhit mask bounds how far the next choice may skip ahead.
    std::size_t limit = width;
    bool any_unhit = false;
    for (Mask m : masks) {
      if (m & hit_coords) continue;
      any_unhit = true;
      const Mask avail = m & selectable;
      if (avail == 0) return false;
      limit = std::min<std::size_t>(limit, 63 - static_cast<std::size_t>(std::countl_zero(avail)));
    }
    if (!any_unhit) return true;
    if (budget == 0) return false;
    if (disjoint_bound(hit_coords, selectable) > budget) return false;
    for (std::size_t c = next; c <= limit; ++c) {
      chosen.push_back(c);
      if (dfs(c + 1, hit_coords | (Mask{1} << c), budget - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

std::vector<std::size_t> min_certificate(const PartialFn& f, const BitVector& x) {
  const bool label = f.at(x);
  if (f.width() > kCertificateWidthCap) {
    throw Error(ErrorCode::SizeCap, "certificate search is limited to width " +
                                        std::to_string(kCertificateWidthCap));
  }
  HittingSearch search;
  search.width = f.width();
  for (const auto& p : f.points()) {
    if (p.label == label) continue;
    Mask m = 0;
    for (std::size_t i = 0; i < f.width(); ++i) {
      if (p.x[i] != x[i]) m |= Mask{1} << i;
    }
    search.masks.push_back(m);
  }
  // A superset of another mask is hit whenever the subset is.
  std::sort(search.masks.begin(), search.masks.end(), [](Mask a, Mask b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  search.masks.erase(std::unique(search.masks.begin(), search.masks.end()), search.masks.end());
  std::vector<Mask> minimal;
  for (Mask m : search.masks) {
    bool dominated = false;
    for (Mask k : minimal) {
      if ((k & m) == k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(m);
  }
  search.masks = std::move(minimal);
  for (std::size_t budget = 0; budget <= f.width(); ++budget) {
    search.chosen.clear();
    if (search.dfs(0, 0, budget)) return search.chosen;
  }
  // Unreachable: fixing every coordinate isolates x.
  throw Error(ErrorCode::InvalidArgument, "certificate search failed");
}

std::size_t certificate_complexity(const PartialFn& f, const BitVector& x) {
  return min_certificate(f, x).size();
}

Restriction restriction_from(const BitVector& x, std::span<const std::size_t> coords) {
  Restriction rho;
  for (std::size_t i : coords) rho.assign(i, x[i]);
  return rho;
}

PartialFn xor_product(std::span<const PartialFn> factors, std::size_t cap) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "xor of zero functions");
  std::size_t total = 1;
  std::size_t width = 0;
  for (const auto& f : factors) {
    if (f.size() != 0 && total > cap / f.size()) {
      throw Error(ErrorCode::SizeCap, "product domain exceeds cap " + std::to_string(cap));
    }
    total *= f.size();
    width += f.width();
  }
  if (total > cap) throw Error(ErrorCode::SizeCap, "product domain exceeds cap " + std::to_string(cap));
  std::vector<Point> current(factors[0].points().begin(), factors[0].points().end());
  for (std::size_t b = 1; b < factors.size(); ++b) {
    std::vector<Point> next;
    next.reserve(current.size() * factors[b].size());
    for (const auto& p : current) {
      for (const auto& q : factors[b].points()) next.push_back({p.x.concat(q.x), p.label != q.label});
    }
    current = std::move(next);
  }
  return PartialFn(width, std::move(current));
}

PartialFn xor_power(const PartialFn& f, std::size_t r, std::size_t cap) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "xor power needs r >= 1");
  std::vector<PartialFn> copies(r, f);
  return xor_product(copies, cap);
}

bool is_monotone(const PartialFn& f) {
  for (const auto& a : f.points()) {
    if (a.label) continue;
    for (const auto& b : f.points()) {
      if (b.label && b.x.is_below(a.x)) return false;
    }
  }
  return true;
}

std::vector<BitVector> minterms(const PartialFn& f) {
  if (!is_monotone(f)) throw Error(ErrorCode::NotMonotone, "minterms need a monotone function");
  std::vector<BitVector> out;
  for (const auto& p : f.points()) {
    if (!p.label) continue;
    bool minimal = true;
    for (const auto& q : f.points()) {
      if (q.label && q.x != p.x && q.x.is_below(p.x)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    for (std::size_t i = 0; i < p.x.width() && minimal; ++i) {
      if (!p.x[i]) continue;
      auto v = f.find(p.x.flipped(i));
      if (v && *v) minimal = false;
    }
    if (minimal) out.push_back(p.x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text I/O

PartialFn read_partial_fn(std::istream& in) {
  std::string line;
  std::size_t width = 0;
  bool have_header = false;
  std::vector<Point> points;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string a;
    std::string b;
    if (!(ss >> a)) continue;
    if (a[0] == '#') continue;
    if (!(ss >> b)) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected two fields");
    if (!have_header) {
      if (a != "n") throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'n <width>'");
      try {
        width = std::stoul(b);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad width '" + b + "'");
      }
      have_header = true;
      continue;
    }
    if (a.size() != width) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bitstring has length " +
                                        std::to_string(a.size()) + ", expected " + std::to_string(width));
    }
    if (b != "0" && b != "1") throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": bad label");
    points.push_back({BitVector::from_string(a), b == "1"});
  }
  if (!have_header) throw Error(ErrorCode::Parse, "missing 'n <width>' header");
  return PartialFn(width, std::move(points));
}

void write_partial_fn(std::ostream& out, const PartialFn& f) {
  out << "n " << f.width() << '\n';
  for (const auto& p : f.points()) out << p.x.to_string() << ' ' << (p.label ? 1 : 0) << '\n';
}

}  // namespace dtlab
