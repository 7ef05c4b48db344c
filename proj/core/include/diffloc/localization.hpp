#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diffloc/eigensolver.hpp"
#include "diffloc/histogram.hpp"

namespace diffloc {

/// Eigenvector coloring: node k gets the value psi_i(k).
struct Coloring {
  std::size_t order = 0;
  std::vector<double> values;
};

Coloring coloring(const EigenSystem& es, std::size_t order);

/// Sum of v_hat(k)^4 for the unit-normalized v. Lies in [1/n, 1].
double inverse_participation_ratio(std::span<const double> v);

/// Fraction of entries with |v(k)| > theta * max |v|, for 0 < theta < 1.
double support_fraction(std::span<const double> v, double theta);

struct ClusterMass {
  std::string cluster;
  double mass = 0.0;
};

/// Squared mass of the unit-normalized v captured by each cluster, largest
/// first (ties by label). Unlabeled nodes are an error.
std::vector<ClusterMass> captured_mass(std::span<const double> v, const NodeLabels& labels);

struct LocalizationReport {
  std::size_t order = 0;
  double ipr = 0.0;
  double threshold = 0.5;
  double support_fraction = 0.0;
  /// Empty when no labels were supplied.
  std::vector<ClusterMass> top_clusters;
};

LocalizationReport localization_report(const EigenSystem& es, std::size_t order, double theta = 0.5,
                                       const NodeLabels* labels = nullptr);

/// Histogram of coloring values over [min, max].
Histogram entry_histogram(const Coloring& c, std::size_t bins);

}  // namespace diffloc
