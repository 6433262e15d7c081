#include "dtlab/gadget.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "dtlab/errors.hpp"
#include "dtlab/rng.hpp"

namespace dtlab {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "repeated edge {" + std::to_string(edges[i].first + 1) + "," +
                                                  std::to_string(edges[i].second + 1) + "}");
    }
  }
  for (const auto& [u, v] : edges) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  edges_ = std::move(edges);
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t d = 0;
  for (const auto& adj : adjacency_) d = std::max(d, adj.size());
  return d;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

bool Graph::is_vertex_cover(std::span<const std::size_t> cover) const {
  std::vector<bool> in(n_, false);
  for (auto v : cover) {
    if (v >= n_) return false;
    in[v] = true;
  }
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return in[e.first] || in[e.second]; });
}

namespace {

constexpr std::array<std::pair<std::string_view, GraphKind>, 6> kKindNames{{
    {"complete", GraphKind::Complete},
    {"cycle", GraphKind::Cycle},
    {"path", GraphKind::Path},
    {"random-regular", GraphKind::RandomRegular},
    {"random", GraphKind::Random},
    {"triangle-union", GraphKind::TriangleUnion},
}};

Graph random_regular(std::size_t n, std::size_t d, CounterRng& rng) {
  if (d >= n || (n * d) % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "no " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
                                                " vertices");
  }
  // Configuration model with rejection of loops and parallel edges.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
    for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::set<Edge> edges;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      Edge e{std::min(stubs[i], stubs[i + 1]), std::max(stubs[i], stubs[i + 1])};
      if (e.first == e.second || !edges.insert(e).second) ok = false;
    }
    if (ok) return Graph(n, {edges.begin(), edges.end()});
  }
  throw Error(ErrorCode::InvalidArgument, "random regular sampling did not converge");
}

}  // namespace

std::optional<GraphKind> parse_graph_kind(std::string_view name) {
  for (const auto& [text, kind] : kKindNames) {
    if (text == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(GraphKind kind) {
  for (const auto& [text, k] : kKindNames) {
    if (k == kind) return text;
  }
  return "unknown";
}

Graph gen_graph(GraphKind kind, std::size_t n, std::uint64_t seed, std::size_t degree) {
  CounterRng rng(seed);
  std::vector<Edge> edges;
  switch (kind) {
    case GraphKind::Complete:
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      }
      break;
    case GraphKind::Cycle:
      if (n < 3) throw Error(ErrorCode::InvalidArgument, "a cycle needs at least 3 vertices");
      for (std::size_t v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
      break;
    case GraphKind::Path:
      for (std::size_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case GraphKind::RandomRegular:
      return random_regular(n, degree, rng);
    case GraphKind::Random:
      if (n < 2) throw Error(ErrorCode::InvalidArgument, "a random graph needs at least 2 vertices");
      do {
        edges.clear();
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t v = u + 1; v < n; ++v) {
            if (rng.coin()) edges.emplace_back(u, v);
          }
        }
      } while (edges.empty());
      break;
    case GraphKind::TriangleUnion:
      if (n == 0 || n % 3 != 0) throw Error(ErrorCode::InvalidArgument, "triangle union needs n divisible by 3");
      for (std::size_t t = 0; t < n; t += 3) {
        edges.emplace_back(t, t + 1);
        edges.emplace_back(t, t + 2);
        edges.emplace_back(t + 1, t + 2);
      }
      break;
  }
  return Graph(n, std::move(edges));
}

std::vector<Graph> all_graphs(std::size_t n) {
  if (n > 5) throw Error(ErrorCode::SizeCap, "graph enumeration is limited to 5 vertices");
  std::vector<Edge> pairs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::map<Edge, std::size_t> pair_index;
  for (std::size_t i = 0; i < pairs.size(); ++i) pair_index[pairs[i]] = i;
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Graph> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << pairs.size()); ++mask) {
    bool canonical = true;
    for (const auto& p : perms) {
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!((mask >> i) & 1U)) continue;
        auto a = p[pairs[i].first];
        auto b = p[pairs[i].second];
        image |= std::uint32_t{1} << pair_index[{std::min(a, b), std::max(a, b)}];
      }
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((mask >> i) & 1U) edges.push_back(pairs[i]);
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  std::size_t m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (!(ss >> n >> m)) throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'p <n> <m>'");
      have_header = true;
    } else if (tag == "e") {
      std::size_t u = 0;
      std::size_t v = 0;
      if (!have_header) throw Error(ErrorCode::Parse, "edge before 'p' line");
      if (!(ss >> u >> v) || u == 0 || v == 0) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 'e <u> <v>' with 1-based ids");
      }
      edges.emplace_back(u - 1, v - 1);
    } else {
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
  }
  if (!have_header) throw Error(ErrorCode::Parse, "missing 'p <n> <m>' line");
  if (edges.size() != m) {
    throw Error(ErrorCode::Parse, "header announces " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges));
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.n() << ' ' << g.m() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

bool is_edge(const Graph& g, const BitVector& x) {
  if (x.width() != g.n()) throw Error(ErrorCode::InvalidArgument, "input width does not match vertex count");
  if (x.popcount() != 2) return false;
  std::size_t a = g.n();
  std::size_t b = g.n();
  for (std::size_t i = 0; i < x.width(); ++i) {
    if (!x[i]) continue;
    (a == g.n() ? a : b) = i;
  }
  return g.has_edge(a, b);
}

// ---------------------------------------------------------------------------
// Gadget

Gadget::Gadget(Graph graph, std::size_t ell) : graph_(std::move(graph)), ell_(ell) {
  if (ell_ == 0) throw Error(ErrorCode::InvalidArgument, "ell must be at least 1");
  if (graph_.m() == 0) throw Error(ErrorCode::EmptyGadget, "graph has no edges");
}

bool Gadget::evaluate(const BitVector& x) const {
  if (x.width() != width()) throw Error(ErrorCode::InvalidArgument, "input width does not match the gadget");
  const std::size_t n = graph_.n();
  const BitVector block0 = x.slice(0, n);
  if (!is_edge(graph_, block0)) return false;
  for (std::size_t v = 0; v < n; ++v) {
    if (!block0[v]) continue;
    for (std::size_t b = 1; b <= ell_; ++b) {
      if (!x[coord(b, v)]) return false;
    }
  }
  return true;
}

BitVector Gadget::indicator(std::size_t edge) const {
  const auto [u, v] = graph_.edges()[edge];
  BitVector x(width());
  for (std::size_t b = 0; b <= ell_; ++b) {
    x.set(coord(b, u), true);
    x.set(coord(b, v), true);
  }
  return x;
}

PartialFn Gadget::hard_support() const {
  std::vector<Point> points;
  for (std::size_t e = 0; e < graph_.m(); ++e) {
    const BitVector x = indicator(e);
    points.push_back({x, true});
    for (std::size_t i = 0; i < x.width(); ++i) {
      if (x[i]) points.push_back({x.flipped(i), false});
    }
  }
  return PartialFn(width(), std::move(points));
}

CanonicalPmf canonical_hard_pmf(const PartialFn& f, std::span<const BitVector> chosen) {
  if (f.is_constant()) throw Error(ErrorCode::NotApplicable, "canonical distribution needs a nonconstant function");
  std::vector<BitVector> ones;
  if (chosen.empty()) {
    ones = f.ones();
  } else {
    ones.assign(chosen.begin(), chosen.end());
    std::sort(ones.begin(), ones.end());
    ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
    for (const auto& x : ones) {
      auto v = f.find(x);
      if (!v || !*v) throw Error(ErrorCode::InvalidArgument, x.to_string() + " is not a 1-input");
    }
  }
  std::map<BitVector, Rational> mass;
  bool degenerate = false;
  const Rational half_each = make_rational(1, 2 * static_cast<std::int64_t>(ones.size()));
  for (const auto& x : ones) {
    mass[x] += half_each;
    const auto sens = sensitivity_set(f, x);
    if (sens.empty()) {
      mass[x] += half_each;
      degenerate = true;
      continue;
    }
    const Rational share = half_each / static_cast<std::int64_t>(sens.size());
    for (const auto& y : sens) mass[y] += share;
  }
  std::vector<Mass> support;
  support.reserve(mass.size());
  for (auto& [x, p] : mass) support.push_back({x, p});
  return {Pmf(std::move(support)), degenerate};
}

// ---------------------------------------------------------------------------
// Vertex-cover tree

namespace {

using NodeId = DecisionTree::NodeId;

// Subtree at leaf `at` reached when block-0 vertex u is the first cover
// vertex found set; `fixed` marks block-0 vertices known to be 0 or u itself.
void build_hit(const Gadget& g, DecisionTree& t, NodeId at, std::size_t u, const std::vector<bool>& fixed) {
  const Graph& graph = g.graph();
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < graph.n(); ++v) {
    if (!fixed[v]) rest.push_back(v);
  }
  std::vector<std::size_t> nbrs;
  for (auto w : graph.neighbors(u)) {
    if (!fixed[w]) nbrs.push_back(w);
  }
  if (nbrs.empty()) return;
  for (std::size_t b = 1; b <= g.ell(); ++b) at = t.split_leaf(at, g.coord(b, u)).second;
  std::vector<bool> seen_zero(graph.n(), false);
  for (auto w : nbrs) {
    auto [on0, on1] = t.split_leaf(at, g.coord(0, w));
    NodeId cur = on1;
    for (auto v : rest) {
      if (v == w || seen_zero[v]) continue;
      cur = t.split_leaf(cur, g.coord(0, v)).first;
    }
    for (std::size_t b = 1; b <= g.ell(); ++b) cur = t.split_leaf(cur, g.coord(b, w)).second;
    t.set_label(cur, true);
    seen_zero[w] = true;
    at = on0;
  }
}

}  // namespace

DecisionTree vc_upper_tree(const Gadget& gadget, std::span<const std::size_t> cover) {
  const Graph& graph = gadget.graph();
  if (!graph.is_vertex_cover(cover)) throw Error(ErrorCode::NotACover, "given vertex set is not a vertex cover");
  std::vector<std::size_t> order;
  for (auto v : cover) {
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  }
  DecisionTree t = DecisionTree::leaf(false);
  NodeId cur = 0;
  std::vector<bool> fixed(graph.n(), false);
  for (auto u : order) {
    auto [on0, on1] = t.split_leaf(cur, gadget.coord(0, u));
    fixed[u] = true;
    build_hit(gadget, t, on1, u, fixed);
    cur = on0;
  }
  return t;
}

std::size_t vc_upper_bound(const Gadget& gadget, std::size_t k) {
  const std::size_t n = gadget.graph().n();
  const std::size_t m = gadget.graph().m();
  return (gadget.ell() + 1) * (k + m) + m * n;
}

CubeExactness check_full_cube(const Gadget& gadget, const DecisionTree& t, std::size_t enumerate_cap) {
  const std::size_t w = gadget.width();
  t.validate(w);
  if (w <= enumerate_cap) {
    BitVector x(w);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << w); ++v) {
      // Gray-code walk: one flip per step.
      if (v != 0) x.flip(static_cast<std::size_t>(std::countr_zero(v)));
      if (t.evaluate(x) != gadget.evaluate(x)) return {false, CubeCheck::Enumerated};
    }
    return {true, CubeCheck::Enumerated};
  }
  // ℓ-IsEdge^{-1}(1) is the disjoint union over edges e of the subcubes C_e:
  // block 0 equal to Ind[e], copies equal to 1 at e's endpoints.
  const Graph& graph = gadget.graph();
  for (auto id : t.leaves()) {
    const Restriction rho = t.path_to(id);
    bool inside_some = false;
    bool meets_some = false;
    for (const auto& [a, b] : graph.edges()) {
      bool inside = true;
      bool meets = true;
      for (std::size_t v = 0; v < graph.n(); ++v) {
        const bool want = v == a || v == b;
        const auto got = rho.value(gadget.coord(0, v));
        if (!got) inside = false;
        else if (*got != want) meets = false;
      }
      for (std::size_t blk = 1; blk <= gadget.ell(); ++blk) {
        for (auto v : {a, b}) {
          const auto got = rho.value(gadget.coord(blk, v));
          if (!got) inside = false;
          else if (!*got) meets = false;
        }
      }
      if (meets && inside) inside_some = true;
      if (meets) meets_some = true;
    }
    const bool label = t.node(id).label;
    if (label && !inside_some) return {false, CubeCheck::LeafAnalysis};
    if (!label && meets_some) return {false, CubeCheck::LeafAnalysis};
  }
  return {true, CubeCheck::LeafAnalysis};
}

DecisionTree cutoff_xor_tree(const Gadget& gadget, std::size_t r, std::size_t tau,
                             std::span<const std::size_t> cover) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  if (tau > r) throw Error(ErrorCode::InvalidArgument, "cutoff must lie in [0, r]");
  const DecisionTree base = vc_upper_tree(gadget, cover);
  const std::size_t w = gadget.width();
  std::map<std::array<std::size_t, 3>, DecisionTree> memo;
  // Tree for blocks b.. given `ones` earlier edge blocks and their parity.
  auto build = [&](auto&& self, std::size_t b, std::size_t ones, bool parity) -> const DecisionTree& {
    const std::array<std::size_t, 3> key{b, ones, parity ? 1U : 0U};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    DecisionTree t = base.shifted(b * w);
    for (auto id : t.leaves()) {
      const bool label = t.node(id).label;
      if (label && ones >= tau) {
        t.set_label(id, true);
      } else if (b + 1 == r) {
        t.set_label(id, parity != label);
      } else {
        t.graft(id, self(self, b + 1, ones + (label ? 1 : 0), parity != label));
      }
    }
    return memo.emplace(key, std::move(t)).first->second;
  };
  return build(build, 0, 0, false);
}

Rational binomial_tail_half(std::size_t r, std::size_t tau) {
  BigInt total = 0;
  BigInt c = 1;  // C(r, j)
  for (std::size_t j = 0; j <= r; ++j) {
    if (j > tau) total += c;
    c = c * (r - j) / (j + 1);
  }
  return Rational(total, BigInt(1) << r);
}

// ---------------------------------------------------------------------------
// Coreset

Coreset coreset(const PartialFn& f) {
  const auto mins = minterms(f);
  Coreset out;
  out.minterm_count = mins.size();
  out.max_sensitivity = max_sensitivity(f);
  std::vector<Point> points;
  std::set<BitVector> seen;
  for (const auto& x : mins) {
    if (seen.insert(x).second) points.push_back({x, true});
    for (const auto& y : sensitivity_set(f, x)) {
      if (seen.insert(y).second) points.push_back({y, f.at(y)});
    }
  }
  out.empty = points.empty();
  out.domain = PartialFn(f.width(), std::move(points));
  return out;
}

}  // namespace dtlab
