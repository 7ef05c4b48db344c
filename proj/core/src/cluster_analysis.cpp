#include "diffloc/cluster_analysis.hpp"

#include <algorithm>
#include <map>

#include "diffloc/error.hpp"
#include "diffloc/localization.hpp"

namespace diffloc {

CollapseMatrix::CollapseMatrix(std::vector<std::string> clusters, Eigen::MatrixXd mass)
    : clusters_(std::move(clusters)), mass_(std::move(mass)) {
  const auto m = static_cast<Eigen::Index>(clusters_.size());
  if (mass_.rows() != m || mass_.cols() != m) throw InputError("collapse matrix shape mismatch");
}

double CollapseMatrix::operator()(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw InputError("cluster index out of range");
  return mass_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
}

std::optional<std::size_t> CollapseMatrix::index_of(const std::string& cluster) const {
  auto it = std::lower_bound(clusters_.begin(), clusters_.end(), cluster);
  if (it == clusters_.end() || *it != cluster) return std::nullopt;
  return static_cast<std::size_t>(it - clusters_.begin());
}

CollapseMatrix collapse(const WeightedGraph& graph, const NodeLabels& labels) {
  if (labels.size() != graph.size()) throw InputError("label count does not match node count");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) throw InputError("node '" + graph.id(i) + "' has no cluster label");
    index.emplace(*labels[i], 0);
  }
  std::vector<std::string> clusters;
  clusters.reserve(index.size());
  for (auto& [name, pos] : index) {
    pos = clusters.size();
    clusters.push_back(name);
  }
  std::vector<std::size_t> cluster_of(graph.size());
  for (std::size_t i = 0; i < labels.size(); ++i) cluster_of[i] = index.at(*labels[i]);

  const auto m = static_cast<Eigen::Index>(clusters.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
  const SparseMatrix& w = graph.weights();
  for (int row = 0; row < w.outerSize(); ++row) {
    const auto a = static_cast<Eigen::Index>(cluster_of[static_cast<std::size_t>(row)]);
    for (SparseMatrix::InnerIterator it(w, row); it; ++it) {
      s(a, static_cast<Eigen::Index>(cluster_of[static_cast<std::size_t>(it.col())])) += it.value();
    }
  }
  return CollapseMatrix(std::move(clusters), std::move(s));
}

std::vector<ClusterDegree> cluster_degrees(const CollapseMatrix& s) {
  std::vector<ClusterDegree> out;
  out.reserve(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    ClusterDegree d;
    d.cluster = s.clusters()[a];
    d.inside = s(a, a);
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (b != a) d.outside += s(a, b);
    }
    if (d.outside > 0.0) d.ratio = d.inside / d.outside;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<RankedCluster> rank_clusters(std::span<const ClusterDegree> degrees, std::size_t top) {
  if (top > degrees.size()) {
    throw InputError("cannot rank top " + std::to_string(top) + " of " + std::to_string(degrees.size()) +
                     " clusters");
  }
  std::vector<const ClusterDegree*> order;
  order.reserve(degrees.size());
  for (const auto& d : degrees) order.push_back(&d);
  std::sort(order.begin(), order.end(), [](const ClusterDegree* a, const ClusterDegree* b) {
    if (a->isolated() != b->isolated()) return a->isolated();
    if (!a->isolated() && *a->ratio != *b->ratio) return *a->ratio > *b->ratio;
    return a->cluster < b->cluster;
  });
  std::vector<RankedCluster> out;
  out.reserve(top);
  for (std::size_t i = 0; i < top; ++i) out.push_back({i + 1, order[i]->cluster, order[i]->ratio});
  return out;
}

double weighted_cut(const WeightedGraph& graph, std::span<const std::size_t> partition, std::size_t parts) {
  if (partition.size() != graph.size()) throw InputError("partition size does not match node count");
  if (parts == 0) throw InputError("partition needs at least one part");
  std::vector<std::size_t> members(parts, 0);
  for (std::size_t p : partition) {
    if (p >= parts) throw InputError("part id " + std::to_string(p) + " out of range");
    ++members[p];
  }
  for (std::size_t p = 0; p < parts; ++p) {
    if (members[p] == 0) throw InputError("part " + std::to_string(p) + " is empty");
  }
  double cut = 0.0;
  const SparseMatrix& w = graph.weights();
  for (int row = 0; row < w.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(w, row); it; ++it) {
      if (partition[static_cast<std::size_t>(row)] != partition[static_cast<std::size_t>(it.col())]) {
        cut += it.value();
      }
    }
  }
  return cut;
}

std::vector<AlignmentRow> eigenvector_cut_alignment(const EigenSystem& es, const WeightedGraph& graph,
                                                    const NodeLabels& labels, std::span<const std::size_t> orders) {
  if (es.n() != graph.size()) throw InputError("eigensystem does not match the graph");
  const CollapseMatrix s = collapse(graph, labels);
  const auto degrees = cluster_degrees(s);
  const auto ranking = rank_clusters(degrees, degrees.size());
  std::map<std::string, std::size_t> rank_of;
  for (const auto& r : ranking) rank_of[r.cluster] = r.rank;

  std::vector<AlignmentRow> rows;
  for (std::size_t order : orders) {
    if (order == 0) continue;
    if (order >= es.k()) throw InputError("eigenvector order " + std::to_string(order) + " out of range");
    const auto masses = captured_mass(es.psi(order), labels);
    rows.push_back({order, masses.front().cluster, masses.front().mass, rank_of.at(masses.front().cluster)});
  }
  return rows;
}

}  // namespace diffloc
