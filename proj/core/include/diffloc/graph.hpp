#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

namespace diffloc {

using NodeId = std::string;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Per-node cluster assignment aligned with a graph's node order.
/// `std::nullopt` marks an unlabeled node.
using NodeLabels = std::vector<std::optional<std::string>>;

/// One raw interaction record. `intensity` is people migrated, seconds of
/// calls or a call count depending on the data set; `duration_seconds` is
/// only present for call records.
struct RawInteraction {
  NodeId source;
  NodeId target;
  double intensity = 0.0;
  std::optional<double> duration_seconds;
};

struct NodeMeta {
  NodeId id;
  double population = 1.0;
  double longitude = 0.0;
  double latitude = 0.0;
  std::optional<std::string> cluster_label;
};

/// Validated node metadata with id lookup. Ids are unique and every
/// population is finite and strictly positive.
class NodeTable {
 public:
  NodeTable() = default;
  explicit NodeTable(std::vector<NodeMeta> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  const NodeMeta* find(const NodeId& id) const;
  /// Throws InputError naming the id when it is absent.
  const NodeMeta& at(const NodeId& id) const;
  const NodeMeta& operator[](std::size_t i) const { return nodes_[i]; }

  auto begin() const noexcept { return nodes_.begin(); }
  auto end() const noexcept { return nodes_.end(); }

 private:
  std::vector<NodeMeta> nodes_;
  std::unordered_map<NodeId, std::size_t> index_;
};

/// Weight of one unordered node pair, by position in an id list.
struct PairWeight {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

/// Symmetric nonnegative weight matrix W with zero diagonal and no empty
/// rows, plus the node index <-> id map. Immutable once built.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Finalizes a graph from unordered pair weights over `ids`. Repeated
  /// pairs are summed in a canonical order, so the result does not depend on
  /// the order of `pairs`. Zero-weight pairs are discarded and nodes left
  /// without any edge are removed (see dropped_isolated()). Node order
  /// otherwise follows `ids`.
  static WeightedGraph from_pairs(std::vector<NodeId> ids, std::vector<PairWeight> pairs);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const SparseMatrix& weights() const noexcept { return weights_; }
  std::span<const NodeId> ids() const noexcept { return ids_; }
  const NodeId& id(std::size_t i) const { return ids_.at(i); }
  std::optional<std::size_t> index_of(const NodeId& id) const;

  double weight(std::size_t i, std::size_t j) const;
  /// Row sums of W.
  std::vector<double> degrees() const;
  /// Sum over all ordered pairs, i.e. each undirected edge counted twice.
  double total_mass() const;
  /// Number of unordered pairs with positive weight.
  std::size_t edge_count() const noexcept { return static_cast<std::size_t>(weights_.nonZeros()) / 2; }
  /// Nodes removed during finalization because their degree was zero.
  std::size_t dropped_isolated() const noexcept { return dropped_isolated_; }

  /// Copy with every weight multiplied by `factor` (> 0).
  WeightedGraph scaled(double factor) const;

  /// Calls f(i, j, w) once per edge with i < j, in row-major order.
  template <class F>
  void for_each_edge(F&& f) const {
    for (int row = 0; row < weights_.outerSize(); ++row) {
      for (SparseMatrix::InnerIterator it(weights_, row); it; ++it) {
        if (it.col() > row) f(static_cast<std::size_t>(row), static_cast<std::size_t>(it.col()), it.value());
      }
    }
  }

 private:
  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, std::size_t> index_;
  SparseMatrix weights_;
  std::size_t dropped_isolated_ = 0;
};

/// Builds the interaction matrix M from raw records. Records for the same
/// unordered pair are summed (in- plus out-flow), self-interactions are
/// dropped and isolated nodes removed. Node order follows `meta`.
/// Throws InputError on unknown ids and negative or non-finite intensities.
WeightedGraph ingest_edges(std::span<const RawInteraction> records, const NodeTable& meta);

/// Labels for the graph's nodes taken from the metadata's cluster_label.
NodeLabels labels_from_meta(const WeightedGraph& graph, const NodeTable& meta);

/// True when every node can reach every other through positive weights.
bool is_connected(const WeightedGraph& graph);

}  // namespace diffloc
