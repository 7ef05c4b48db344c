#include "diffloc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "diffloc/error.hpp"

namespace diffloc {

NodeTable::NodeTable(std::vector<NodeMeta> nodes) : nodes_(std::move(nodes)) {
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NodeMeta& node = nodes_[i];
    if (node.id.empty()) throw InputError("node at position " + std::to_string(i) + " has an empty id");
    if (!(std::isfinite(node.population) && node.population > 0.0)) {
      throw InputError("node '" + node.id + "' has non-positive population");
    }
    if (!std::isfinite(node.longitude) || !std::isfinite(node.latitude)) {
      throw InputError("node '" + node.id + "' has non-finite coordinates");
    }
    if (!index_.emplace(node.id, i).second) throw InputError("duplicate node id '" + node.id + "'");
  }
}

const NodeMeta* NodeTable::find(const NodeId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &nodes_[it->second];
}

const NodeMeta& NodeTable::at(const NodeId& id) const {
  if (const NodeMeta* node = find(id)) return *node;
  throw InputError("unknown node id '" + id + "'");
}

WeightedGraph WeightedGraph::from_pairs(std::vector<NodeId> ids, std::vector<PairWeight> pairs) {
  const std::size_t n = ids.size();
  for (PairWeight& p : pairs) {
    if (p.a >= n || p.b >= n) throw InputError("pair index out of range");
    if (p.a == p.b) throw InputError("self-pair on node '" + ids[p.a] + "'");
    if (!(std::isfinite(p.weight) && p.weight >= 0.0)) {
      throw InputError("invalid weight between '" + ids[p.a] + "' and '" + ids[p.b] + "'");
    }
    if (p.a > p.b) std::swap(p.a, p.b);
  }
  // Canonical order makes the floating-point sums independent of input order.
  std::sort(pairs.begin(), pairs.end(), [](const PairWeight& x, const PairWeight& y) {
    return std::tie(x.a, x.b, x.weight) < std::tie(y.a, y.b, y.weight);
  });

  std::vector<PairWeight> merged;
  merged.reserve(pairs.size());
  for (const PairWeight& p : pairs) {
    if (!merged.empty() && merged.back().a == p.a && merged.back().b == p.b) {
      merged.back().weight += p.weight;
    } else {
      merged.push_back(p);
    }
  }
  std::erase_if(merged, [](const PairWeight& p) { return p.weight == 0.0; });

  std::vector<bool> touched(n, false);
  for (const PairWeight& p : merged) touched[p.a] = touched[p.b] = true;

  WeightedGraph g;
  std::vector<std::size_t> remap(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i]) {
      ++g.dropped_isolated_;
      continue;
    }
    remap[i] = g.ids_.size();
    g.ids_.push_back(std::move(ids[i]));
  }
  g.index_.reserve(g.ids_.size());
  for (std::size_t i = 0; i < g.ids_.size(); ++i) {
    if (!g.index_.emplace(g.ids_[i], i).second) throw InputError("duplicate node id '" + g.ids_[i] + "'");
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * merged.size());
  for (const PairWeight& p : merged) {
    const auto a = static_cast<int>(remap[p.a]);
    const auto b = static_cast<int>(remap[p.b]);
    triplets.emplace_back(a, b, p.weight);
    triplets.emplace_back(b, a, p.weight);
  }
  const auto m = static_cast<Eigen::Index>(g.ids_.size());
  g.weights_.resize(m, m);
  g.weights_.setFromTriplets(triplets.begin(), triplets.end());
  g.weights_.makeCompressed();
  return g;
}

std::optional<std::size_t> WeightedGraph::index_of(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw InputError("node index out of range");
  return weights_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<double> WeightedGraph::degrees() const {
  std::vector<double> d(size(), 0.0);
  for (int row = 0; row < weights_.outerSize(); ++row) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(weights_, row); it; ++it) sum += it.value();
    d[static_cast<std::size_t>(row)] = sum;
  }
  return d;
}

double WeightedGraph::total_mass() const {
  double total = 0.0;
  for (double d : degrees()) total += d;
  return total;
}

WeightedGraph WeightedGraph::scaled(double factor) const {
  if (!(std::isfinite(factor) && factor > 0.0)) throw InputError("scale factor must be positive");
  WeightedGraph g = *this;
  g.weights_ *= factor;
  return g;
}

WeightedGraph ingest_edges(std::span<const RawInteraction> records, const NodeTable& meta) {
  std::vector<NodeId> ids;
  ids.reserve(meta.size());
  std::unordered_map<NodeId, std::size_t> position;
  for (const NodeMeta& node : meta) {
    position.emplace(node.id, ids.size());
    ids.push_back(node.id);
  }

  std::vector<PairWeight> pairs;
  pairs.reserve(records.size());
  for (const RawInteraction& r : records) {
    auto s = position.find(r.source);
    if (s == position.end()) throw InputError("unknown node id '" + r.source + "' in edge record");
    auto t = position.find(r.target);
    if (t == position.end()) throw InputError("unknown node id '" + r.target + "' in edge record");
    if (!std::isfinite(r.intensity) || r.intensity < 0.0) {
      throw InputError("negative or non-finite intensity between '" + r.source + "' and '" + r.target + "'");
    }
    if (s->second == t->second) continue;
    pairs.push_back({s->second, t->second, r.intensity});
  }
  return WeightedGraph::from_pairs(std::move(ids), std::move(pairs));
}

NodeLabels labels_from_meta(const WeightedGraph& graph, const NodeTable& meta) {
  NodeLabels labels;
  labels.reserve(graph.size());
  for (const NodeId& id : graph.ids()) labels.push_back(meta.at(id).cluster_label);
  return labels;
}

bool is_connected(const WeightedGraph& graph) {
  const std::size_t n = graph.size();
  if (n <= 1) return true;
  const SparseMatrix& w = graph.weights();
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const int row = frontier.front();
    frontier.pop();
    for (SparseMatrix::InnerIterator it(w, row); it; ++it) {
      const auto col = static_cast<std::size_t>(it.col());
      if (!seen[col] && it.value() > 0.0) {
        seen[col] = true;
        ++reached;
        frontier.push(static_cast<int>(col));
      }
    }
  }
  return reached == n;
}

}  // namespace diffloc
