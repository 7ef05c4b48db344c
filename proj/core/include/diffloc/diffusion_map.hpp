#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "diffloc/eigensolver.hpp"
#include "diffloc/random_walk.hpp"

namespace diffloc {

/// Node coordinates (lambda_1^t psi_1(j), ..., lambda_k^t psi_k(j)). The
/// trivial pair (lambda_0 = 1, constant psi_0) is never part of the map.
class DiffusionEmbedding {
 public:
  DiffusionEmbedding(std::vector<NodeId> ids, unsigned time, Eigen::MatrixXd coords);

  unsigned time() const noexcept { return time_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(coords_.cols()); }
  std::size_t size() const noexcept { return ids_.size(); }
  std::span<const NodeId> ids() const noexcept { return ids_; }
  /// n x k, row j holds node j.
  const Eigen::MatrixXd& coords() const noexcept { return coords_; }
  double coord(std::size_t node, std::size_t axis) const;

 private:
  std::vector<NodeId> ids_;
  unsigned time_;
  Eigen::MatrixXd coords_;
};

/// Requires t >= 1 and 1 <= k < es.k().
DiffusionEmbedding embed(const EigenSystem& es, unsigned t = 1, std::size_t k = 2);

/// Squared diffusion distance D_t^2(i, j) = sum_k (A^t_ik - A^t_jk)^2 / d_k,
/// by explicit t-step propagation of the two rows. Limited to n <= 5000 and
/// t <= 16.
double squared_diffusion_distance(const RandomWalkOperator& op, std::size_t i, std::size_t j, unsigned t);

/// Row i of A^t.
std::vector<double> transition_row(const RandomWalkOperator& op, std::size_t i, unsigned t);

/// Squared Euclidean distance between two embedded nodes. With all n - 1
/// nontrivial coordinates this equals squared_diffusion_distance.
double squared_embedding_distance(const DiffusionEmbedding& emb, std::size_t i, std::size_t j);

/// lambda_r^t for r = 1 .. k-1: the per-axis scale of the map.
std::vector<double> diffusion_scales(const EigenSystem& es, unsigned t);

/// Largest k with lambda_1^t >= ... >= lambda_k^t > delta, counted over the
/// computed pairs. Reported as a suggestion; the caller picks the dimension.
std::size_t suggest_dimension(const EigenSystem& es, unsigned t, double delta);

}  // namespace diffloc
