#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diffloc/eigensolver.hpp"
#include "diffloc/graph.hpp"

namespace diffloc {

/// Cluster-level aggregation of W: entry (a, b) is the sum of all W_ij with
/// i in cluster a and j in cluster b, over ordered pairs. An intra-cluster
/// edge therefore contributes twice to the diagonal, and the entries sum to
/// the total mass of W.
class CollapseMatrix {
 public:
  CollapseMatrix(std::vector<std::string> clusters, Eigen::MatrixXd mass);

  std::size_t size() const noexcept { return clusters_.size(); }
  /// Cluster labels in sorted order; row/column a belongs to clusters()[a].
  std::span<const std::string> clusters() const noexcept { return clusters_; }
  const Eigen::MatrixXd& matrix() const noexcept { return mass_; }
  double operator()(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> index_of(const std::string& cluster) const;
  double total() const { return mass_.sum(); }

 private:
  std::vector<std::string> clusters_;
  Eigen::MatrixXd mass_;
};

CollapseMatrix collapse(const WeightedGraph& graph, const NodeLabels& labels);

struct ClusterDegree {
  std::string cluster;
  double inside = 0.0;   // S_aa
  double outside = 0.0;  // sum of row a off the diagonal
  /// inside / outside; empty when outside == 0 (the cluster is cut off and
  /// its ratio is infinite).
  std::optional<double> ratio;

  bool isolated() const noexcept { return !ratio.has_value(); }
};

std::vector<ClusterDegree> cluster_degrees(const CollapseMatrix& s);

struct RankedCluster {
  std::size_t rank = 0;  // 1-based
  std::string cluster;
  std::optional<double> ratio;  // empty = infinite
};

/// Orders clusters by ratio degree, largest first; isolated clusters (infinite
/// ratio) lead. Ties are broken by label. Requires top <= number of clusters.
std::vector<RankedCluster> rank_clusters(std::span<const ClusterDegree> degrees, std::size_t top);

/// Sum over parts P of E_w(P, complement of P). Each cut edge is counted once
/// for each of its two parts. `partition[i]` is the part of node i in [0, parts).
double weighted_cut(const WeightedGraph& graph, std::span<const std::size_t> partition, std::size_t parts);

struct AlignmentRow {
  std::size_t order = 0;
  std::string best_cluster;
  double captured_mass = 0.0;
  std::size_t ratio_rank = 0;
};

/// For each nontrivial order, the cluster holding most of psi_order's squared
/// mass and that cluster's rank by ratio degree. Order 0 is skipped.
std::vector<AlignmentRow> eigenvector_cut_alignment(const EigenSystem& es, const WeightedGraph& graph,
                                                    const NodeLabels& labels, std::span<const std::size_t> orders);

}  // namespace diffloc
