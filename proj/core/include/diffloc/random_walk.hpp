#pragma once

#include <span>
#include <vector>

#include "diffloc/graph.hpp"

namespace diffloc {

/// The random-walk operator A = D^-1 W of a weighted graph, together with
/// its symmetric conjugate S = D^-1/2 W D^-1/2. Both are exposed only as
/// matrix-vector actions; rows are processed in parallel, and each output
/// entry is summed in a fixed order so results do not depend on the thread
/// count.
class RandomWalkOperator {
 public:
  /// Throws InputError naming the first zero-degree node.
  explicit RandomWalkOperator(WeightedGraph graph);

  std::size_t size() const noexcept { return graph_.size(); }
  const WeightedGraph& graph() const noexcept { return graph_; }
  std::span<const double> degrees() const noexcept { return degree_; }

  /// y = A x
  void apply_transition(std::span<const double> x, std::span<double> y) const;
  /// y = A^T x, i.e. one step of a distribution (row vector) x^T A.
  void apply_transition_transpose(std::span<const double> x, std::span<double> y) const;
  /// y = S x
  void apply_symmetric(std::span<const double> x, std::span<double> y) const;

  /// Entry A_ij.
  double transition(std::size_t i, std::size_t j) const;
  /// Row sums of A; each is 1 up to rounding.
  std::vector<double> transition_row_sums() const;

 private:
  WeightedGraph graph_;
  std::vector<double> degree_;
  std::vector<double> inv_degree_;
  std::vector<double> inv_sqrt_degree_;
};

RandomWalkOperator normalize(const WeightedGraph& graph);

}  // namespace diffloc
