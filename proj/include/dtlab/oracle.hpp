#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/gadget.hpp"
#include "dtlab/pmf.hpp"
#include "dtlab/rational.hpp"

namespace dtlab {

struct OracleCaps {
  std::size_t max_points = 512;
  std::size_t max_width = 32;
  std::size_t max_frontier = 10'000;
};

struct ExactDtSize {
  std::size_t size = 1;
  DecisionTree tree;
};

struct ParetoPoint {
  std::size_t size = 1;
  Rational error;
};

/// Nondominated (size, error) pairs: sizes strictly increasing, errors
/// strictly decreasing.
class ParetoCurve {
 public:
  ParetoCurve() = default;
  explicit ParetoCurve(std::vector<ParetoPoint> points);

  std::span<const ParetoPoint> points() const noexcept { return points_; }
  /// Smallest size whose error is at most eps.
  std::size_t min_size(const Rational& eps) const;
  /// Smallest error achievable with at most `size` leaves.
  Rational min_error(std::size_t size) const;

 private:
  std::vector<ParetoPoint> points_;
};

/// Exact minimum decision tree size over a partial domain, by dynamic
/// programming over alive point sets.
///
/// Subproblems are memoized on a normal form of the alive submatrix: constant
/// columns dropped, column polarities normalized, duplicate columns merged,
/// rows and columns reordered by color refinement. The normal form is the
/// full matrix, so equal keys always mean equivalent subproblems. The memo is
/// kept across calls on the same oracle.
class DtOracle {
 public:
  explicit DtOracle(OracleCaps caps = {});
  ~DtOracle();
  DtOracle(const DtOracle&) = delete;
  DtOracle& operator=(const DtOracle&) = delete;

  /// Minimum size and a witness. Among optimal splits the witness uses the
  /// smallest coordinate. Throws SizeCap.
  ExactDtSize minimize(const PartialFn& f);
  std::size_t dtsize(const PartialFn& f);

  /// Size/error frontier under pmf over the support. Throws SizeCap and
  /// SupportMismatch.
  ParetoCurve pareto(const PartialFn& f, const Pmf& pmf);
  /// A tree with at most `size` leaves attaining the frontier's error there.
  DecisionTree pareto_tree(const PartialFn& f, const Pmf& pmf, std::size_t size);

  std::size_t memo_entries() const;
  const OracleCaps& caps() const noexcept { return caps_; }

 private:
  struct Impl;
  OracleCaps caps_;
  std::unique_ptr<Impl> impl_;
};

ExactDtSize exact_dtsize(const PartialFn& f, const OracleCaps& caps = {});
ParetoCurve pareto_size_error(const PartialFn& f, const Pmf& pmf, const OracleCaps& caps = {});

struct VertexCover {
  std::size_t k = 0;
  std::vector<std::size_t> cover;
};

/// Branch and bound on a maximum-degree vertex. Throws SizeCap for n > 40.
VertexCover exact_vertex_cover(const Graph& g);
/// Both endpoints of a greedily built maximal matching.
std::vector<std::size_t> greedy_vc(const Graph& g);

}  // namespace dtlab
