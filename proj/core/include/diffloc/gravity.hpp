#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diffloc/graph.hpp"

namespace diffloc {

class Rng;

struct PlantedCommunity {
  std::size_t size = 0;
  double boost = 1.0;  // beta > 1: multiplies every intra-community intensity
};

struct Area {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 1.0;
  double ymax = 1.0;
};

/// Synthetic spatial interaction network. Positions are uniform in `area`,
/// populations log-uniform in [population_min, population_max], and
/// M_ij = P_i P_j / d_ij^exponent, times exp(noise * z_ij) with standard
/// normal z_ij when noise > 0. Each planted community is the seed node plus
/// its nearest still-unassigned neighbours; its internal pairs are boosted.
struct GravityConfig {
  std::size_t n = 200;
  std::uint64_t seed = 1;
  double population_min = 1e3;
  double population_max = 1e6;
  Area area;
  double exponent = 2.0;
  std::vector<PlantedCommunity> planted;
  double noise = 0.0;

  void validate() const;

  /// `{"n": 200, "seed": 1, "population_range": [1e3, 1e6],
  ///   "area": [xmin, ymin, xmax, ymax], "exponent": 2,
  ///   "planted": [{"size": 15, "beta": 20}], "noise": 0}`; every key optional.
  static GravityConfig from_json(std::string_view json);
  std::string to_json() const;
};

/// Member list (indices into a NodeTable) with its boost.
struct PlantedGroup {
  std::vector<std::size_t> members;
  double boost = 1.0;
};

struct GravityInstance {
  WeightedGraph graph;
  NodeTable nodes;
  /// Ground truth: "planted_<c>" for community c (1-based), otherwise the
  /// spatial quadrant of the area ("NE", "NW", "SE", "SW").
  NodeLabels labels;
  std::vector<PlantedGroup> planted;
};

/// Gravity intensities over every node pair. No noise unless `noise > 0`,
/// in which case `rng` supplies the draws in row-major pair order.
WeightedGraph gravity_graph(const NodeTable& nodes, double exponent, std::span<const PlantedGroup> groups = {},
                            double noise = 0.0, Rng* rng = nullptr);

/// Deterministic in `cfg` (including its seed). Coincident points are
/// resampled; a point that stays coincident after 100 draws is an error.
GravityInstance generate(const GravityConfig& cfg);

/// generate() with no planted communities; every node labeled by quadrant.
GravityInstance null_model(GravityConfig cfg);

std::string quadrant_label(const Area& area, double x, double y);

}  // namespace diffloc
