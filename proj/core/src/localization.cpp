#include "diffloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "diffloc/error.hpp"

namespace diffloc {
namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

Coloring coloring(const EigenSystem& es, std::size_t order) {
  if (order >= es.k()) throw InputError("coloring order " + std::to_string(order) + " out of range");
  const auto psi = es.psi(order);
  return {order, {psi.begin(), psi.end()}};
}

double inverse_participation_ratio(std::span<const double> v) {
  // Dividing by the largest magnitude first keeps the extremes exact: a
  // uniform vector becomes all ones and gives n / n^2.
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  if (!(top > 0.0)) throw InputError("participation ratio of a zero vector");
  double s2 = 0.0;
  double s4 = 0.0;
  for (double x : v) {
    const double y = x / top;
    s2 += y * y;
    s4 += y * y * y * y;
  }
  return s4 / (s2 * s2);
}

double support_fraction(std::span<const double> v, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InputError("support threshold must lie in (0, 1)");
  if (v.empty()) throw InputError("support of an empty vector");
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  if (!(top > 0.0)) throw InputError("support of a zero vector");
  const auto count = std::count_if(v.begin(), v.end(), [&](double x) { return std::abs(x) > theta * top; });
  return static_cast<double>(count) / static_cast<double>(v.size());
}

std::vector<ClusterMass> captured_mass(std::span<const double> v, const NodeLabels& labels) {
  if (labels.size() != v.size()) throw InputError("label count does not match vector length");
  const double norm2 = squared_norm(v);
  if (!(norm2 > 0.0)) throw InputError("captured mass of a zero vector");
  std::map<std::string, double> mass;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!labels[k]) throw InputError("node at index " + std::to_string(k) + " has no cluster label");
    mass[*labels[k]] += v[k] * v[k] / norm2;
  }
  std::vector<ClusterMass> out;
  out.reserve(mass.size());
  for (auto& [cluster, m] : mass) out.push_back({cluster, m});
  std::stable_sort(out.begin(), out.end(), [](const ClusterMass& a, const ClusterMass& b) { return a.mass > b.mass; });
  return out;
}

LocalizationReport localization_report(const EigenSystem& es, std::size_t order, double theta,
                                       const NodeLabels* labels) {
  if (order >= es.k()) throw InputError("eigenvector order " + std::to_string(order) + " out of range");
  const auto psi = es.psi(order);
  LocalizationReport report;
  report.order = order;
  report.threshold = theta;
  report.ipr = inverse_participation_ratio(psi);
  report.support_fraction = support_fraction(psi, theta);
  if (labels != nullptr) report.top_clusters = captured_mass(psi, *labels);
  return report;
}

Histogram entry_histogram(const Coloring& c, std::size_t bins) {
  if (c.values.empty()) throw InputError("coloring is empty");
  const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
  return make_histogram(c.values, *lo, *hi, bins);
}

}  // namespace diffloc
