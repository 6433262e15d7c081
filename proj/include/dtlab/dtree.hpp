#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dtlab/bitvector.hpp"
#include "dtlab/boolfn.hpp"
#include "dtlab/pmf.hpp"
#include "dtlab/rational.hpp"

namespace dtlab {

/// Binary query tree. Size is the number of leaves.
///
/// Nodes live in a flat array with the root at index 0. A node is a leaf when
/// `query` is negative.
class DecisionTree {
 public:
  using NodeId = std::uint32_t;

  struct Node {
    std::int32_t query = -1;
    bool label = false;
    NodeId child[2] = {0, 0};

    bool is_leaf() const noexcept { return query < 0; }
  };

  /// A single 0-leaf.
  DecisionTree();

  static DecisionTree leaf(bool label);
  static DecisionTree query(std::size_t index, const DecisionTree& on0, const DecisionTree& on1);

  bool evaluate(const BitVector& x) const;
  NodeId leaf_of(const BitVector& x) const;
  /// Assignments made along x's root-to-leaf path.
  Restriction path_of(const BitVector& x) const;
  /// Assignments on the path from the root to `node`.
  Restriction path_to(NodeId node) const;

  std::size_t size() const noexcept { return leaves_; }
  std::size_t depth() const;
  /// Largest queried index plus one (0 for a single leaf).
  std::size_t span() const;

  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::vector<NodeId> leaves() const;

  /// Turns leaf `id` into a query whose two children inherit its label.
  /// Returns the children {on0, on1}.
  std::pair<NodeId, NodeId> split_leaf(NodeId id, std::size_t index);
  void set_label(NodeId id, bool label);
  /// Replaces leaf `id` by a copy of `sub`.
  void graft(NodeId id, const DecisionTree& sub);

  /// Copy with every query index increased by `offset`.
  DecisionTree shifted(std::size_t offset) const;

  /// Throws InvalidArgument when a query index is >= width or an index
  /// repeats along a path.
  void validate(std::size_t width) const;

  /// Structural equality (same shape, queries and labels).
  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  NodeId copy_subtree(const DecisionTree& src, NodeId at, std::int64_t shift, bool flip);
  friend DecisionTree stacked_xor_tree(std::span<const DecisionTree> trees,
                                       std::span<const std::size_t> widths);

  std::vector<Node> nodes_;
  std::vector<NodeId> parent_;
  std::size_t leaves_ = 0;
};

/// Exact Pr_{x~pmf}[T(x) != f(x)]. Throws SupportMismatch.
Rational error_exact(const DecisionTree& t, const PartialFn& f, const Pmf& pmf);

/// True when T agrees with f on every domain point.
bool is_exact_on(const DecisionTree& t, const PartialFn& f);

struct MonteCarloEstimate {
  double estimate = 0.0;
  /// Hoeffding half-width of a 99% confidence interval.
  double half_width = 0.0;
  std::size_t samples = 0;
};

MonteCarloEstimate error_monte_carlo(const DecisionTree& t,
                                     const std::function<bool(const BitVector&)>& target,
                                     const std::function<BitVector(CounterRng&)>& sampler,
                                     std::size_t n, std::uint64_t seed);

/// Tree for the XOR of the blocks: tree i reads block i, whose coordinates
/// start at widths[0] + ... + widths[i-1]. Size is the product of the sizes.
DecisionTree stacked_xor_tree(std::span<const DecisionTree> trees, std::span<const std::size_t> widths);

/// Exact tree built from minimum certificates of the 1-inputs, visited in
/// lexicographic order.
DecisionTree patch_up_certificates(const PartialFn& f);

/// Replaces every leaf of T by the certificate patch-up of f restricted to
/// the leaf's path.
DecisionTree patch_up_tree(const DecisionTree& t, const PartialFn& f);

}  // namespace dtlab
