#include "dtlab/dtree.hpp"

#include <algorithm>
#include <cmath>

#include "dtlab/errors.hpp"

namespace dtlab {

namespace {

constexpr DecisionTree::NodeId kNoParent = ~DecisionTree::NodeId{0};

}  // namespace

DecisionTree::DecisionTree() : nodes_{Node{-1, false, {0, 0}}}, parent_{kNoParent}, leaves_(1) {}

DecisionTree DecisionTree::leaf(bool label) {
  DecisionTree t;
  t.nodes_[0].label = label;
  return t;
}

DecisionTree DecisionTree::query(std::size_t index, const DecisionTree& on0, const DecisionTree& on1) {
  DecisionTree t = leaf(false);
  t.split_leaf(0, index);
  const Node root = t.nodes_[0];
  t.graft(root.child[0], on0);
  t.graft(root.child[1], on1);
  return t;
}

DecisionTree::NodeId DecisionTree::leaf_of(const BitVector& x) const {
  NodeId cur = 0;
  while (!nodes_[cur].is_leaf()) {
    const auto q = static_cast<std::size_t>(nodes_[cur].query);
    if (q >= x.width()) {
      throw Error(ErrorCode::InvalidArgument, "tree queries coordinate " + std::to_string(q + 1) +
                                                  " of a width-" + std::to_string(x.width()) + " input");
    }
    cur = nodes_[cur].child[x[q] ? 1 : 0];
  }
  return cur;
}

bool DecisionTree::evaluate(const BitVector& x) const { return nodes_[leaf_of(x)].label; }

Restriction DecisionTree::path_of(const BitVector& x) const { return path_to(leaf_of(x)); }

Restriction DecisionTree::path_to(NodeId node) const {
  Restriction rho;
  NodeId cur = node;
  while (parent_[cur] != kNoParent) {
    const NodeId up = parent_[cur];
    rho.assign(static_cast<std::size_t>(nodes_[up].query), nodes_[up].child[1] == cur);
    cur = up;
  }
  return rho;
}

std::size_t DecisionTree::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    if (nodes_[id].is_leaf()) {
      best = std::max(best, d);
    } else {
      stack.push_back({nodes_[id].child[0], d + 1});
      stack.push_back({nodes_[id].child[1], d + 1});
    }
  }
  return best;
}

std::size_t DecisionTree::span() const {
  std::size_t s = 0;
  for (const auto& n : nodes_) {
    if (!n.is_leaf()) s = std::max(s, static_cast<std::size_t>(n.query) + 1);
  }
  return s;
}

std::vector<DecisionTree::NodeId> DecisionTree::leaves() const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (nodes_[id].is_leaf()) {
      out.push_back(id);
    } else {
      stack.push_back(nodes_[id].child[1]);
      stack.push_back(nodes_[id].child[0]);
    }
  }
  return out;
}

std::pair<DecisionTree::NodeId, DecisionTree::NodeId> DecisionTree::split_leaf(NodeId id, std::size_t index) {
  if (!nodes_.at(id).is_leaf()) throw Error(ErrorCode::InvalidArgument, "split of an internal node");
  const bool label = nodes_[id].label;
  const auto a = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{-1, label, {0, 0}});
  nodes_.push_back(Node{-1, label, {0, 0}});
  parent_.push_back(id);
  parent_.push_back(id);
  nodes_[id].query = static_cast<std::int32_t>(index);
  nodes_[id].child[0] = a;
  nodes_[id].child[1] = a + 1;
  ++leaves_;
  return {a, a + 1};
}

void DecisionTree::set_label(NodeId id, bool label) {
  if (!nodes_.at(id).is_leaf()) throw Error(ErrorCode::InvalidArgument, "label on an internal node");
  nodes_[id].label = label;
}

DecisionTree::NodeId DecisionTree::copy_subtree(const DecisionTree& src, NodeId at, std::int64_t shift,
                                                bool flip) {
  // Copies src into leaf `at` of this tree; src's root overwrites `at`.
  std::vector<std::pair<NodeId, NodeId>> work{{0, at}};
  while (!work.empty()) {
    auto [s, d] = work.back();
    work.pop_back();
    const Node& sn = src.nodes_[s];
    if (sn.is_leaf()) {
      nodes_[d].query = -1;
      nodes_[d].label = sn.label != flip;
      continue;
    }
    const auto a = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_.push_back(Node{});
    parent_.push_back(d);
    parent_.push_back(d);
    nodes_[d].query = static_cast<std::int32_t>(sn.query + shift);
    nodes_[d].child[0] = a;
    nodes_[d].child[1] = a + 1;
    work.push_back({sn.child[0], a});
    work.push_back({sn.child[1], a + 1});
  }
  return at;
}

void DecisionTree::graft(NodeId id, const DecisionTree& sub) {
  if (!nodes_.at(id).is_leaf()) throw Error(ErrorCode::InvalidArgument, "graft onto an internal node");
  copy_subtree(sub, id, 0, false);
  leaves_ += sub.size() - 1;
}

DecisionTree DecisionTree::shifted(std::size_t offset) const {
  DecisionTree out;
  out.copy_subtree(*this, 0, static_cast<std::int64_t>(offset), false);
  out.leaves_ = leaves_;
  return out;
}

void DecisionTree::validate(std::size_t width) const {
  std::vector<bool> on_path(width, false);
  // Iterative DFS with explicit enter/leave markers.
  std::vector<std::pair<NodeId, bool>> stack{{0, true}};
  while (!stack.empty()) {
    auto [id, enter] = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (n.is_leaf()) continue;
    const auto q = static_cast<std::size_t>(n.query);
    if (!enter) {
      on_path[q] = false;
      continue;
    }
    if (q >= width) {
      throw Error(ErrorCode::InvalidArgument, "query index " + std::to_string(q + 1) + " exceeds width " +
                                                  std::to_string(width));
    }
    if (on_path[q]) {
      throw Error(ErrorCode::InvalidArgument, "coordinate " + std::to_string(q + 1) + " queried twice on a path");
    }
    on_path[q] = true;
    stack.push_back({id, false});
    stack.push_back({n.child[1], true});
    stack.push_back({n.child[0], true});
  }
}

namespace {

bool equal_at(const DecisionTree& a, DecisionTree::NodeId x, const DecisionTree& b, DecisionTree::NodeId y) {
  const auto& p = a.node(x);
  const auto& q = b.node(y);
  if (p.is_leaf() || q.is_leaf()) return p.is_leaf() && q.is_leaf() && p.label == q.label;
  return p.query == q.query && equal_at(a, p.child[0], b, q.child[0]) && equal_at(a, p.child[1], b, q.child[1]);
}

}  // namespace

bool operator==(const DecisionTree& a, const DecisionTree& b) {
  return a.size() == b.size() && equal_at(a, 0, b, 0);
}

Rational error_exact(const DecisionTree& t, const PartialFn& f, const Pmf& pmf) {
  Rational err = 0;
  for (const auto& m : pmf.support()) {
    auto label = f.find(m.x);
    if (!label) throw Error(ErrorCode::SupportMismatch, m.x.to_string() + " has mass but no label");
    if (t.evaluate(m.x) != *label) err += m.p;
  }
  return err;
}

bool is_exact_on(const DecisionTree& t, const PartialFn& f) {
  return std::all_of(f.points().begin(), f.points().end(),
                     [&](const Point& p) { return t.evaluate(p.x) == p.label; });
}

MonteCarloEstimate error_monte_carlo(const DecisionTree& t,
                                     const std::function<bool(const BitVector&)>& target,
                                     const std::function<BitVector(CounterRng&)>& sampler,
                                     std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one sample");
  CounterRng rng(seed);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const BitVector x = sampler(rng);
    if (t.evaluate(x) != target(x)) ++wrong;
  }
  MonteCarloEstimate out;
  out.samples = n;
  out.estimate = static_cast<double>(wrong) / static_cast<double>(n);
  out.half_width = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(n)));
  return out;
}

DecisionTree stacked_xor_tree(std::span<const DecisionTree> trees, std::span<const std::size_t> widths) {
  if (trees.empty() || trees.size() != widths.size()) {
    throw Error(ErrorCode::InvalidArgument, "stacked tree needs one width per tree");
  }
  for (std::size_t i = 0; i < trees.size(); ++i) trees[i].validate(widths[i]);
  // Build from the last block backwards: every leaf of block i's tree gets a
  // copy of the stacked tail, flipped when the leaf label is 1.
  DecisionTree tail = trees.back();
  std::size_t offset = 0;
  for (std::size_t i = 0; i + 1 < trees.size(); ++i) offset += widths[i];
  tail = tail.shifted(offset);
  for (std::size_t i = trees.size() - 1; i-- > 0;) {
    offset -= widths[i];
    DecisionTree head = trees[i].shifted(offset);
    for (auto id : head.leaves()) {
      const bool label = head.nodes_[id].label;
      head.copy_subtree(tail, id, 0, label);
    }
    head.leaves_ = trees[i].size() * tail.size();
    tail = std::move(head);
  }
  return tail;
}

DecisionTree patch_up_certificates(const PartialFn& f) {
  DecisionTree t = DecisionTree::leaf(false);
  for (const auto& p : f.points()) {
    if (!p.label) continue;
    auto at = t.leaf_of(p.x);
    if (t.node(at).label) continue;
    const Restriction path = t.path_to(at);
    for (std::size_t c : min_certificate(f, p.x)) {
      if (path.contains(c)) continue;
      auto [on0, on1] = t.split_leaf(at, c);
      at = p.x[c] ? on1 : on0;
    }
    t.set_label(at, true);
  }
  return t;
}

DecisionTree patch_up_tree(const DecisionTree& t, const PartialFn& f) {
  DecisionTree out = t;
  for (auto id : t.leaves()) {
    const PartialFn sub = restrict(f, t.path_to(id));
    out.graft(id, patch_up_certificates(sub));
  }
  return out;
}

}  // namespace dtlab
