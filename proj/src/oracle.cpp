#include "dtlab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "dtlab/errors.hpp"
#include "dtlab/rng.hpp"

namespace dtlab {

// ---------------------------------------------------------------------------
// ParetoCurve

ParetoCurve::ParetoCurve(std::vector<ParetoPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].size <= points_[i - 1].size || points_[i].error >= points_[i - 1].error) {
      throw Error(ErrorCode::InvalidArgument, "pareto points must improve strictly in both coordinates");
    }
  }
}

std::size_t ParetoCurve::min_size(const Rational& eps) const {
  for (const auto& p : points_) {
    if (p.error <= eps) return p.size;
  }
  throw Error(ErrorCode::InvalidArgument, "no frontier point reaches error " + to_string(eps));
}

Rational ParetoCurve::min_error(std::size_t size) const {
  Rational best = 1;
  bool found = false;
  for (const auto& p : points_) {
    if (p.size > size) break;
    best = p.error;
    found = true;
  }
  if (!found) throw Error(ErrorCode::InvalidArgument, "size budget below the smallest tree");
  return best;
}

// ---------------------------------------------------------------------------
// Alive-set tables

namespace {

using Word = std::uint64_t;

struct Table {
  std::size_t cols = 0;
  std::size_t words = 0;
  std::vector<Word> bits;
  std::vector<std::uint8_t> labels;
  std::vector<std::int64_t> weights;

  std::size_t rows() const noexcept { return labels.size(); }
  bool weighted() const noexcept { return !weights.empty(); }
  bool bit(std::size_t r, std::size_t c) const noexcept { return (bits[r * words + (c >> 6)] >> (c & 63)) & 1U; }
  const Word* row(std::size_t r) const noexcept { return bits.data() + r * words; }

  bool constant() const noexcept {
    for (std::size_t r = 1; r < labels.size(); ++r) {
      if (labels[r] != labels[0]) return false;
    }
    return true;
  }

  std::int64_t leaf_error() const noexcept {
    std::int64_t mass[2] = {0, 0};
    for (std::size_t r = 0; r < rows(); ++r) mass[labels[r]] += weights[r];
    return std::min(mass[0], mass[1]);
  }

  bool leaf_label() const noexcept {
    std::int64_t mass[2] = {0, 0};
    for (std::size_t r = 0; r < rows(); ++r) mass[labels[r]] += weighted() ? weights[r] : 1;
    return mass[1] > mass[0];
  }

  void push_row_from(const Table& src, std::size_t r) {
    bits.insert(bits.end(), src.row(r), src.row(r) + words);
    labels.push_back(src.labels[r]);
    if (src.weighted()) weights.push_back(src.weights[r]);
  }

  std::pair<Table, Table> split(std::size_t c) const {
    Table t0;
    Table t1;
    t0.cols = t1.cols = cols;
    t0.words = t1.words = words;
    for (std::size_t r = 0; r < rows(); ++r) (bit(r, c) ? t1 : t0).push_row_from(*this, r);
    return {std::move(t0), std::move(t1)};
  }

  bool splits_on(std::size_t c) const noexcept {
    bool seen[2] = {false, false};
    for (std::size_t r = 0; r < rows(); ++r) seen[bit(r, c)] = true;
    return seen[0] && seen[1];
  }
};

constexpr std::uint64_t mix(std::uint64_t z) { return CounterRng::mix(z + 0x9e3779b97f4a7c15ULL); }

// Normal form of a table; see the class comment on DtOracle.
Table normalize(const Table& in) {
  const std::size_t rows = in.rows();
  const std::size_t rw = (rows + 63) / 64;
  std::vector<std::vector<Word>> columns;
  std::vector<std::size_t> counts;
  for (std::size_t c = 0; c < in.cols; ++c) {
    std::vector<Word> col(rw, 0);
    std::size_t count = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (in.bit(r, c)) {
        col[r >> 6] |= Word{1} << (r & 63);
        ++count;
      }
    }
    if (count == 0 || count == rows) continue;
    const bool flip = 2 * count > rows || (2 * count == rows && (col[0] & 1U));
    if (flip) {
      for (auto& w : col) w = ~w;
      if (rows & 63) col.back() &= (Word{1} << (rows & 63)) - 1;
      count = rows - count;
    }
    columns.push_back(std::move(col));
    counts.push_back(count);
  }
  // Merge duplicates.
  {
    std::vector<std::size_t> idx(columns.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return columns[a] < columns[b]; });
    std::vector<std::vector<Word>> kept;
    std::vector<std::size_t> kept_counts;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0 && columns[idx[i]] == columns[idx[i - 1]]) continue;
      kept.push_back(std::move(columns[idx[i]]));
      kept_counts.push_back(counts[idx[i]]);
    }
    columns = std::move(kept);
    counts = std::move(kept_counts);
  }
  const std::size_t cols = columns.size();

  // Color refinement on the bipartite row/column incidence.
  std::vector<std::uint64_t> row_color(rows);
  std::vector<std::uint64_t> col_color(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    row_color[r] = mix(in.labels[r] + 2 * static_cast<std::uint64_t>(in.weighted() ? in.weights[r] : 0));
  }
  for (std::size_t c = 0; c < cols; ++c) col_color[c] = mix(counts[c] + 0x51);
  for (int round = 0; round < 3; ++round) {
    std::vector<std::uint64_t> next_row(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        if ((columns[c][r >> 6] >> (r & 63)) & 1U) acc += mix(col_color[c]);
      }
      next_row[r] = mix(row_color[r] ^ mix(acc));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < rw; ++w) {
        Word bitsw = columns[c][w];
        while (bitsw) {
          const auto r = w * 64 + static_cast<std::size_t>(std::countr_zero(bitsw));
          acc += mix(next_row[r]);
          bitsw &= bitsw - 1;
        }
      }
      col_color[c] = mix(col_color[c] ^ mix(acc + 0x77));
    }
    row_color = std::move(next_row);
  }
  std::vector<std::size_t> col_order(cols);
  std::iota(col_order.begin(), col_order.end(), 0);
  std::sort(col_order.begin(), col_order.end(), [&](std::size_t a, std::size_t b) {
    if (col_color[a] != col_color[b]) return col_color[a] < col_color[b];
    return columns[a] < columns[b];
  });

  Table out;
  out.cols = cols;
  out.words = (cols + 63) / 64;
  std::vector<std::vector<Word>> row_bits(rows, std::vector<Word>(out.words, 0));
  for (std::size_t j = 0; j < cols; ++j) {
    const auto& col = columns[col_order[j]];
    for (std::size_t r = 0; r < rows; ++r) {
      if ((col[r >> 6] >> (r & 63)) & 1U) row_bits[r][j >> 6] |= Word{1} << (j & 63);
    }
  }
  std::vector<std::size_t> row_order(rows);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::sort(row_order.begin(), row_order.end(), [&](std::size_t a, std::size_t b) {
    if (in.labels[a] != in.labels[b]) return in.labels[a] < in.labels[b];
    if (in.weighted() && in.weights[a] != in.weights[b]) return in.weights[a] < in.weights[b];
    return row_bits[a] < row_bits[b];
  });
  out.bits.reserve(rows * out.words);
  for (auto r : row_order) {
    out.bits.insert(out.bits.end(), row_bits[r].begin(), row_bits[r].end());
    out.labels.push_back(in.labels[r]);
    if (in.weighted()) out.weights.push_back(in.weights[r]);
  }
  return out;
}

std::string key_of(const Table& t) {
  std::string key;
  const std::size_t header[3] = {t.rows(), t.cols, t.weighted() ? 1U : 0U};
  key.append(reinterpret_cast<const char*>(header), sizeof header);
  key.append(reinterpret_cast<const char*>(t.labels.data()), t.labels.size());
  if (t.weighted()) key.append(reinterpret_cast<const char*>(t.weights.data()), t.weights.size() * sizeof(std::int64_t));
  key.append(reinterpret_cast<const char*>(t.bits.data()), t.bits.size() * sizeof(Word));
  return key;
}

using Frontier = std::vector<std::pair<std::uint32_t, std::int64_t>>;

}  // namespace

// ---------------------------------------------------------------------------
// DtOracle

struct DtOracle::Impl {
  OracleCaps caps;
  std::unordered_map<std::string, std::uint32_t> sizes;
  std::unordered_map<std::string, Frontier> frontiers;

  std::uint32_t solve(const Table& raw) {
    if (raw.rows() <= 1 || raw.constant()) return 1;
    Table t = normalize(raw);
    std::string key = key_of(t);
    if (auto it = sizes.find(key); it != sizes.end()) return it->second;
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t c = 0; c < t.cols; ++c) {
      auto [t0, t1] = t.split(c);
      // Each child is nonempty; a nonconstant one needs at least two leaves.
      const std::uint32_t lb1 = t1.constant() ? 1 : 2;
      const std::uint32_t lb0 = t0.constant() ? 1 : 2;
      if (lb0 + lb1 >= best) continue;
      const std::uint32_t v0 = solve(t0);
      if (v0 + lb1 >= best) continue;
      const std::uint32_t v1 = solve(t1);
      best = std::min(best, v0 + v1);
    }
    sizes.emplace(std::move(key), best);
    return best;
  }

  const Frontier& frontier(const Table& raw, Frontier& scratch) {
    if (raw.rows() <= 1 || raw.constant()) {
      scratch.assign(1, {1, raw.rows() == 0 ? 0 : raw.leaf_error()});
      return scratch;
    }
    Table t = normalize(raw);
    std::string key = key_of(t);
    if (auto it = frontiers.find(key); it != frontiers.end()) return it->second;
    // best[s]: least error with exactly s leaves among the options seen.
    std::vector<std::int64_t> best{std::numeric_limits<std::int64_t>::max(), t.leaf_error()};
    for (std::size_t c = 0; c < t.cols; ++c) {
      auto [t0, t1] = t.split(c);
      Frontier s0;
      Frontier s1;
      const Frontier f0 = frontier(t0, s0);
      const Frontier& f1 = frontier(t1, s1);
      const std::size_t top = f0.back().first + f1.back().first;
      if (best.size() <= top) best.resize(top + 1, std::numeric_limits<std::int64_t>::max());
      for (const auto& [a, ea] : f0) {
        for (const auto& [b, eb] : f1) {
          auto& slot = best[a + b];
          slot = std::min(slot, ea + eb);
        }
      }
    }
    Frontier out;
    for (std::size_t s = 1; s < best.size(); ++s) {
      if (best[s] == std::numeric_limits<std::int64_t>::max()) continue;
      if (out.empty() || best[s] < out.back().second) out.emplace_back(static_cast<std::uint32_t>(s), best[s]);
      if (best[s] == 0) break;
    }
    if (out.size() > caps.max_frontier) {
      throw Error(ErrorCode::SizeCap, "pareto frontier exceeds " + std::to_string(caps.max_frontier) + " points");
    }
    return frontiers.emplace(std::move(key), std::move(out)).first->second;
  }

  std::int64_t frontier_error(const Table& t, std::size_t size) {
    Frontier scratch;
    const Frontier& f = frontier(t, scratch);
    std::int64_t e = std::numeric_limits<std::int64_t>::max();
    for (const auto& [s, err] : f) {
      if (s > size) break;
      e = err;
    }
    return e;
  }

  void build_exact(const Table& t, DecisionTree& tree, DecisionTree::NodeId at) {
    if (t.rows() == 0 || t.constant()) {
      tree.set_label(at, t.rows() > 0 && t.labels[0] != 0);
      return;
    }
    const std::uint32_t target = solve(t);
    for (std::size_t c = 0; c < t.cols; ++c) {
      if (!t.splits_on(c)) continue;
      auto [t0, t1] = t.split(c);
      if (solve(t0) + solve(t1) != target) continue;
      auto [n0, n1] = tree.split_leaf(at, c);
      build_exact(t0, tree, n0);
      build_exact(t1, tree, n1);
      return;
    }
    throw Error(ErrorCode::InvalidArgument, "witness reconstruction failed");
  }

  void build_pareto(const Table& t, std::size_t size, DecisionTree& tree, DecisionTree::NodeId at) {
    const std::int64_t target = frontier_error(t, size);
    if (t.rows() == 0 || t.leaf_error() <= target) {
      tree.set_label(at, t.rows() > 0 && t.leaf_label());
      return;
    }
    for (std::size_t c = 0; c < t.cols; ++c) {
      if (!t.splits_on(c)) continue;
      auto [t0, t1] = t.split(c);
      Frontier scratch;
      const Frontier f0 = frontier(t0, scratch);
      for (const auto& [a, ea] : f0) {
        if (a >= size) break;
        const std::int64_t eb = frontier_error(t1, size - a);
        if (eb == std::numeric_limits<std::int64_t>::max() || ea + eb != target) continue;
        auto [n0, n1] = tree.split_leaf(at, c);
        build_pareto(t0, a, tree, n0);
        build_pareto(t1, size - a, tree, n1);
        return;
      }
    }
    throw Error(ErrorCode::InvalidArgument, "pareto witness reconstruction failed");
  }
};

namespace {

void check_caps(const PartialFn& f, std::size_t points, const OracleCaps& caps) {
  if (points > caps.max_points) {
    throw Error(ErrorCode::SizeCap, std::to_string(points) + " points exceed the oracle cap of " +
                                        std::to_string(caps.max_points));
  }
  if (f.width() > caps.max_width) {
    throw Error(ErrorCode::SizeCap, "width " + std::to_string(f.width()) + " exceeds the oracle cap of " +
                                        std::to_string(caps.max_width));
  }
}

Table table_of(const PartialFn& f) {
  Table t;
  t.cols = f.width();
  t.words = (f.width() + 63) / 64;
  for (const auto& p : f.points()) {
    const auto w = p.x.words();
    t.bits.insert(t.bits.end(), w.begin(), w.end());
    t.labels.push_back(p.label ? 1 : 0);
  }
  return t;
}

struct Weighted {
  Table table;
  BigInt scale;
};

Weighted weighted_table(const PartialFn& f, const Pmf& pmf) {
  if (pmf.width() != f.width()) throw Error(ErrorCode::SupportMismatch, "pmf and function widths differ");
  BigInt scale = 1;
  for (const auto& m : pmf.support()) scale = boost::multiprecision::lcm(scale, denominator_of(m.p));
  // Sums of weights must stay exact in 64 bits.
  if (scale > BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw Error(ErrorCode::SizeCap, "pmf denominators too large for exact frontier arithmetic");
  }
  Weighted out;
  out.scale = scale;
  out.table.cols = f.width();
  out.table.words = (f.width() + 63) / 64;
  for (const auto& m : pmf.support()) {
    auto label = f.find(m.x);
    if (!label) throw Error(ErrorCode::SupportMismatch, m.x.to_string() + " has mass but no label");
    const auto w = m.x.words();
    out.table.bits.insert(out.table.bits.end(), w.begin(), w.end());
    out.table.labels.push_back(*label ? 1 : 0);
    out.table.weights.push_back((numerator_of(m.p) * (scale / denominator_of(m.p))).convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace

DtOracle::DtOracle(OracleCaps caps) : caps_(caps), impl_(std::make_unique<Impl>()) { impl_->caps = caps; }
DtOracle::~DtOracle() = default;

ExactDtSize DtOracle::minimize(const PartialFn& f) {
  check_caps(f, f.size(), caps_);
  const Table t = table_of(f);
  ExactDtSize out;
  out.size = impl_->solve(t);
  out.tree = DecisionTree::leaf(false);
  impl_->build_exact(t, out.tree, 0);
  return out;
}

std::size_t DtOracle::dtsize(const PartialFn& f) {
  check_caps(f, f.size(), caps_);
  return impl_->solve(table_of(f));
}

ParetoCurve DtOracle::pareto(const PartialFn& f, const Pmf& pmf) {
  check_caps(f, pmf.size(), caps_);
  const Weighted w = weighted_table(f, pmf);
  Frontier scratch;
  const Frontier& fr = impl_->frontier(w.table, scratch);
  std::vector<ParetoPoint> points;
  for (const auto& [s, e] : fr) points.push_back({s, Rational(BigInt(e), w.scale)});
  return ParetoCurve(std::move(points));
}

DecisionTree DtOracle::pareto_tree(const PartialFn& f, const Pmf& pmf, std::size_t size) {
  check_caps(f, pmf.size(), caps_);
  if (size == 0) throw Error(ErrorCode::InvalidArgument, "a tree has at least one leaf");
  const Weighted w = weighted_table(f, pmf);
  DecisionTree tree = DecisionTree::leaf(false);
  impl_->build_pareto(w.table, size, tree, 0);
  return tree;
}

std::size_t DtOracle::memo_entries() const { return impl_->sizes.size() + impl_->frontiers.size(); }

ExactDtSize exact_dtsize(const PartialFn& f, const OracleCaps& caps) {
  DtOracle oracle(caps);
  return oracle.minimize(f);
}

ParetoCurve pareto_size_error(const PartialFn& f, const Pmf& pmf, const OracleCaps& caps) {
  DtOracle oracle(caps);
  return oracle.pareto(f, pmf);
}

// ---------------------------------------------------------------------------
// Vertex cover

namespace {

using VMask = std::uint64_t;

struct CoverSearch {
  std::vector<VMask> adj;
  std::size_t best = 0;
  VMask best_set = 0;

  // Maximal matching size: a lower bound on the cover of the remaining graph.
  static std::size_t matching_bound(const std::vector<VMask>& g, VMask alive) {
    std::size_t count = 0;
    VMask free = alive;
    while (free) {
      const auto v = static_cast<std::size_t>(std::countr_zero(free));
      free &= free - 1;
      const VMask nb = g[v] & free;
      if (nb) {
        free &= ~(VMask{1} << std::countr_zero(nb));
        ++count;
      }
    }
    return count;
  }

  void run(VMask alive, VMask chosen, std::size_t size) {
    std::size_t top = adj.size();
    std::size_t top_deg = 0;
    for (VMask a = alive; a; a &= a - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(a));
      const auto d = static_cast<std::size_t>(std::popcount(adj[v] & alive));
      if (d > top_deg) {
        top_deg = d;
        top = v;
      }
    }
    if (top_deg == 0) {
      if (size < best) {
        best = size;
        best_set = chosen;
      }
      return;
    }
    if (size + matching_bound(adj, alive) >= best) return;
    const VMask bit = VMask{1} << top;
    run(alive & ~bit, chosen | bit, size + 1);
    const VMask nb = adj[top] & alive;
    run(alive & ~nb & ~bit, chosen | nb, size + static_cast<std::size_t>(std::popcount(nb)));
  }
};

}  // namespace

VertexCover exact_vertex_cover(const Graph& g) {
  if (g.n() > 40) throw Error(ErrorCode::SizeCap, "exact vertex cover is limited to 40 vertices");
  CoverSearch search;
  search.adj.assign(g.n(), 0);
  for (const auto& [u, v] : g.edges()) {
    search.adj[u] |= VMask{1} << v;
    search.adj[v] |= VMask{1} << u;
  }
  search.best = g.n() + 1;
  const VMask all = g.n() == 64 ? ~VMask{0} : (VMask{1} << g.n()) - 1;
  search.run(all, 0, 0);
  VertexCover out;
  out.k = search.best;
  for (std::size_t v = 0; v < g.n(); ++v) {
    if ((search.best_set >> v) & 1U) out.cover.push_back(v);
  }
  return out;
}

std::vector<std::size_t> greedy_vc(const Graph& g) {
  std::vector<bool> used(g.n(), false);
  std::vector<std::size_t> cover;
  for (const auto& [u, v] : g.edges()) {
    if (used[u] || used[v]) continue;
    used[u] = used[v] = true;
    cover.push_back(u);
    cover.push_back(v);
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

}  // namespace dtlab
