#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtlab/bitvector.hpp"
#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/pmf.hpp"

namespace dtlab {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1. Edges are stored as (u, v)
/// with u < v, sorted.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidArgument on self-loops, repeated edges or bad ids.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const std::size_t> neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const noexcept;
  bool has_edge(std::size_t u, std::size_t v) const;

  bool is_vertex_cover(std::span<const std::size_t> cover) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

enum class GraphKind { Complete, Cycle, Path, RandomRegular, Random, TriangleUnion };

std::optional<GraphKind> parse_graph_kind(std::string_view name);
std::string_view to_string(GraphKind kind);

/// `degree` is used by RandomRegular only. Random is G(n, 1/2) conditioned
/// on at least one edge. TriangleUnion needs n divisible by 3.
Graph gen_graph(GraphKind kind, std::size_t n, std::uint64_t seed, std::size_t degree = 0);

/// One graph per isomorphism class on n vertices with at least one edge
/// (isolated vertices allowed). n <= 5.
std::vector<Graph> all_graphs(std::size_t n);

/// DIMACS-like text: `p <n> <m>` then `e <u> <v>` with 1-based ids.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

bool is_edge(const Graph& g, const BitVector& x);

/// ℓ-amplified edge indicator: ℓ+1 blocks of n coordinates; block b holds
/// vertex v at coordinate b*n + v.
class Gadget {
 public:
  /// Throws InvalidArgument for ell == 0, EmptyGadget for an edgeless graph.
  Gadget(Graph graph, std::size_t ell);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t ell() const noexcept { return ell_; }
  std::size_t width() const noexcept { return graph_.n() * (ell_ + 1); }
  std::size_t coord(std::size_t block, std::size_t vertex) const { return block * graph_.n() + vertex; }

  bool evaluate(const BitVector& x) const;
  /// The generalized indicator of edge i (in graph edge order).
  BitVector indicator(std::size_t edge) const;

  /// All m indicators (label 1) and their 2(ℓ+1) one-flipped neighbors (label 0).
  PartialFn hard_support() const;

 private:
  Graph graph_;
  std::size_t ell_ = 1;
};

struct CanonicalPmf {
  Pmf pmf;
  /// Set when some chosen 1-input had no sensitive neighbor and kept the
  /// neighbor-branch mass itself.
  bool degenerate = false;
};

/// Canonical hard distribution over the chosen 1-inputs C (all of f's
/// 1-inputs when C is empty). Throws NotApplicable for constant f and
/// InvalidArgument when C contains a point that is not a 1-input.
CanonicalPmf canonical_hard_pmf(const PartialFn& f, std::span<const BitVector> chosen = {});

/// Tree computing ℓ-IsEdge on the whole cube. Throws NotACover.
DecisionTree vc_upper_tree(const Gadget& gadget, std::span<const std::size_t> cover);

/// (ℓ+1)(k+m) + mn.
std::size_t vc_upper_bound(const Gadget& gadget, std::size_t k);

enum class CubeCheck { Enumerated, LeafAnalysis };

struct CubeExactness {
  bool exact = false;
  CubeCheck method = CubeCheck::Enumerated;
};

/// Whether T computes ℓ-IsEdge on all of {0,1}^{n(ℓ+1)}: by enumeration up to
/// `enumerate_cap` coordinates, otherwise by checking that every leaf's
/// subcube is constant with the leaf's label.
CubeExactness check_full_cube(const Gadget& gadget, const DecisionTree& t,
                              std::size_t enumerate_cap = kDefaultFullCubeWidth);

/// Tree for ℓ-IsEdge^{⊕r} that evaluates blocks in order with the vertex
/// cover tree and answers 1 once a (τ+1)-th block evaluates to 1.
DecisionTree cutoff_xor_tree(const Gadget& gadget, std::size_t r, std::size_t tau,
                             std::span<const std::size_t> cover);

/// Pr[Binomial(r, 1/2) > tau].
Rational binomial_tail_half(std::size_t r, std::size_t tau);

struct Coreset {
  PartialFn domain;
  std::size_t minterm_count = 0;
  std::size_t max_sensitivity = 0;
  /// Set when f has no minterms (constant 0 on its comparable points).
  bool empty = false;
};

/// Minterms of a monotone f together with their sensitive neighbors.
Coreset coreset(const PartialFn& f);

}  // namespace dtlab
