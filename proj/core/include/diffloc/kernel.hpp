#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "diffloc/graph.hpp"

namespace diffloc {

/// Similarity kernels. The migration kinds use the ingested intensity M;
/// the mobile kinds need MobileAggregates.
///
///   migration_sq_over_prod   M_ij^2 / (P_i P_j)
///   migration_over_sum       M_ij / (P_i + P_j)
///   migration_over_prod      c M_ij / (P_i P_j)
///   gaussian                 exp(-|x_i - x_j|^2 / epsilon), all node pairs
///   mobile_exp_rt            exp(-(R_ij Tbar_ij)^2 / width^2)
///   mobile_exp_rn            exp(-(R_ij^a / Nbar_ij^b)^2)
///   mobile_calls_over_prod   Tbar_ij / R_ij = N_ij / (P_i P_j)
///
/// Every kind is multiplied by the optional global `scale` c (default 1).
enum class KernelKind {
  migration_sq_over_prod,
  migration_over_sum,
  migration_over_prod,
  gaussian,
  mobile_exp_rt,
  mobile_exp_rn,
  mobile_calls_over_prod,
};

KernelKind parse_kernel_kind(std::string_view name);
std::string_view to_string(KernelKind kind);
bool is_mobile(KernelKind kind);

struct KernelSpec {
  KernelKind kind = KernelKind::migration_sq_over_prod;
  std::map<std::string, double> params;

  /// Parameter value or the kind's default; throws when neither exists.
  double param(const std::string& name) const;

  /// Rejects unknown or non-positive parameters and a missing epsilon.
  void validate() const;

  /// `{"kind": "...", "params": {"epsilon": ..., "scale": ...}}`
  static KernelSpec from_json(std::string_view json);
  std::string to_json() const;
};

/// Per-pair call totals. Only pairs with at least one call are kept, so R
/// is always defined.
class MobileAggregates {
 public:
  struct Pair {
    double seconds = 0.0;  // T_ij
    double calls = 0.0;    // N_ij
  };
  using Key = std::pair<NodeId, NodeId>;  // lexicographically ordered ids

  static Key key(const NodeId& a, const NodeId& b) { return a < b ? Key{a, b} : Key{b, a}; }

  void add(const NodeId& a, const NodeId& b, Pair totals);

  std::size_t size() const noexcept { return pairs_.size(); }
  const std::map<Key, Pair>& pairs() const noexcept { return pairs_; }
  const Pair* find(const NodeId& a, const NodeId& b) const;

  /// Average call duration T/N.
  std::optional<double> mean_duration(const NodeId& a, const NodeId& b) const;
  /// T_ij / (P_i P_j)
  std::optional<double> normalized_seconds(const NodeId& a, const NodeId& b, const NodeTable& meta) const;
  /// N_ij / (P_i P_j)
  std::optional<double> normalized_calls(const NodeId& a, const NodeId& b, const NodeTable& meta) const;
  /// Euclidean distance between node coordinates in raw lon/lat units.
  static double centroid_distance(const NodeId& a, const NodeId& b, const NodeTable& meta);

 private:
  std::map<Key, Pair> pairs_;
};

/// Sums call records per unordered city pair. Each record's intensity is a
/// call count and its duration_seconds the total talk time. Records with a
/// zero count do not create a pair.
MobileAggregates compute_mobile_aggregates(std::span<const RawInteraction> calls, const NodeTable& meta);

/// Applies `spec` and returns a new finalized graph over the same nodes
/// (nodes whose row becomes empty are dropped). Mobile kinds require
/// `mobile`; gaussian uses node coordinates for every pair of graph nodes.
WeightedGraph build_kernel(const WeightedGraph& graph, const NodeTable& meta, const KernelSpec& spec,
                           const MobileAggregates* mobile = nullptr);

}  // namespace diffloc
