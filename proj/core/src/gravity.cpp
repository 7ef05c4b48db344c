#include "diffloc/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "diffloc/error.hpp"
#include "diffloc/rng.hpp"

namespace diffloc {

namespace {

constexpr int kMaxResamples = 100;
constexpr std::size_t kMaxNodes = 5000;

std::string node_name(std::size_t i, std::size_t n) {
  const std::size_t width = std::to_string(n).size();
  std::string digits = std::to_string(i + 1);
  return "n" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

void GravityConfig::validate() const {
  if (n < 2) throw InputError("generator needs n >= 2");
  if (n > kMaxNodes) throw InputError("generator is limited to 5000 nodes");
  if (!(population_min > 0.0 && population_max >= population_min && std::isfinite(population_max))) {
    throw InputError("population_range must satisfy 0 < min <= max");
  }
  if (!(area.xmax > area.xmin && area.ymax > area.ymin)) throw InputError("area must have positive extent");
  if (!(exponent > 0.0 && std::isfinite(exponent))) throw InputError("exponent must be positive");
  if (!(noise >= 0.0 && std::isfinite(noise))) throw InputError("noise must be nonnegative");
  std::size_t total = 0;
  for (const auto& p : planted) {
    if (p.size < 2) throw InputError("planted communities need at least 2 nodes");
    if (!(p.boost > 1.0 && std::isfinite(p.boost))) throw InputError("planted boost beta must exceed 1");
    total += p.size;
  }
  if (total > n) throw InputError("planted communities hold more nodes than the graph");
}

GravityConfig GravityConfig::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("generator config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("generator config must be a JSON object");
  static const std::vector<std::string> known{"n", "seed", "population_range", "area", "exponent", "planted", "noise"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("unknown generator field '" + key + "'");
    }
  }
  GravityConfig cfg;
  try {
    if (doc.contains("n")) cfg.n = doc["n"].get<std::size_t>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("population_range")) {
      const auto range = doc["population_range"].get<std::vector<double>>();
      if (range.size() != 2) throw InputError("population_range needs two numbers");
      cfg.population_min = range[0];
      cfg.population_max = range[1];
    }
    if (doc.contains("area")) {
      const auto box = doc["area"].get<std::vector<double>>();
      if (box.size() != 4) throw InputError("area needs [xmin, ymin, xmax, ymax]");
      cfg.area = {box[0], box[1], box[2], box[3]};
    }
    if (doc.contains("exponent")) cfg.exponent = doc["exponent"].get<double>();
    if (doc.contains("noise")) cfg.noise = doc["noise"].get<double>();
    if (doc.contains("planted")) {
      for (const auto& item : doc["planted"]) {
        cfg.planted.push_back({item.at("size").get<std::size_t>(), item.at("beta").get<double>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid generator config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string GravityConfig::to_json() const {
  nlohmann::json doc;
  doc["n"] = n;
  doc["seed"] = seed;
  doc["population_range"] = {population_min, population_max};
  doc["area"] = {area.xmin, area.ymin, area.xmax, area.ymax};
  doc["exponent"] = exponent;
  doc["noise"] = noise;
  doc["planted"] = nlohmann::json::array();
  for (const auto& p : planted) doc["planted"].push_back({{"size", p.size}, {"beta", p.boost}});
  return doc.dump();
}

std::string quadrant_label(const Area& area, double x, double y) {
  const double cx = 0.5 * (area.xmin + area.xmax);
  const double cy = 0.5 * (area.ymin + area.ymax);
  return std::string(y >= cy ? "N" : "S") + (x >= cx ? "E" : "W");
}

WeightedGraph gravity_graph(const NodeTable& nodes, double exponent, std::span<const PlantedGroup> groups,
                            double noise, Rng* rng) {
  const std::size_t n = nodes.size();
  if (noise > 0.0 && rng == nullptr) throw InputError("noisy gravity graph needs a random source");
  std::vector<double> boost_of(n, 1.0);
  std::vector<std::size_t> group_of(n, 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i : groups[g].members) {
      if (i >= n) throw InputError("planted member out of range");
      if (group_of[i] != 0) throw InputError("node belongs to two planted communities");
      group_of[i] = g + 1;
      boost_of[i] = groups[g].boost;
    }
  }

  std::vector<PairWeight> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::hypot(nodes[i].longitude - nodes[j].longitude, nodes[i].latitude - nodes[j].latitude);
      if (!(d > 0.0)) throw InputError("nodes '" + nodes[i].id + "' and '" + nodes[j].id + "' coincide");
      double m = nodes[i].population * nodes[j].population / std::pow(d, exponent);
      if (noise > 0.0) m *= std::exp(noise * rng->normal());
      if (group_of[i] != 0 && group_of[i] == group_of[j]) m *= boost_of[i];
      pairs.push_back({i, j, m});
    }
  }
  std::vector<NodeId> ids;
  ids.reserve(n);
  for (const NodeMeta& node : nodes) ids.push_back(node.id);
  return WeightedGraph::from_pairs(std::move(ids), std::move(pairs));
}

GravityInstance generate(const GravityConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = cfg.n;

  std::vector<std::pair<double, double>> xy;
  xy.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt <= kMaxResamples && !placed; ++attempt) {
      const double x = rng.uniform(cfg.area.xmin, cfg.area.xmax);
      const double y = rng.uniform(cfg.area.ymin, cfg.area.ymax);
      placed = std::none_of(xy.begin(), xy.end(), [&](const auto& p) { return p.first == x && p.second == y; });
      if (placed) xy.emplace_back(x, y);
    }
    if (!placed) throw InputError("could not place node " + std::to_string(i) + " away from existing points");
  }

  const double log_lo = std::log(cfg.population_min);
  const double log_hi = std::log(cfg.population_max);
  std::vector<NodeMeta> meta(n);
  for (std::size_t i = 0; i < n; ++i) {
    meta[i].id = node_name(i, n);
    meta[i].population = cfg.population_min == cfg.population_max ? cfg.population_min
                                                                    : std::exp(rng.uniform(log_lo, log_hi));
    meta[i].longitude = xy[i].first;
    meta[i].latitude = xy[i].second;
    meta[i].cluster_label = quadrant_label(cfg.area, xy[i].first, xy[i].second);
  }

  std::vector<PlantedGroup> groups;
  std::vector<bool> assigned(n, false);
  for (std::size_t c = 0; c < cfg.planted.size(); ++c) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i) {
      if (!assigned[i]) free.push_back(i);
    }
    const std::size_t seed_node = free[rng.below(free.size())];
    auto dist2 = [&](std::size_t i) {
      const double dx = xy[i].first - xy[seed_node].first;
      const double dy = xy[i].second - xy[seed_node].second;
      return dx * dx + dy * dy;
    };
    std::stable_sort(free.begin(), free.end(), [&](std::size_t a, std::size_t b) { return dist2(a) < dist2(b); });
    PlantedGroup group{{free.begin(), free.begin() + static_cast<std::ptrdiff_t>(cfg.planted[c].size)},
                       cfg.planted[c].boost};
    std::sort(group.members.begin(), group.members.end());
    for (std::size_t i : group.members) {
      assigned[i] = true;
      meta[i].cluster_label = "planted_" + std::to_string(c + 1);
    }
    groups.push_back(std::move(group));
  }

  NodeTable nodes(std::move(meta));
  WeightedGraph graph = gravity_graph(nodes, cfg.exponent, groups, cfg.noise, &rng);
  NodeLabels labels = labels_from_meta(graph, nodes);
  return {std::move(graph), std::move(nodes), std::move(labels), std::move(groups)};
}

GravityInstance null_model(GravityConfig cfg) {
  cfg.planted.clear();
  return generate(cfg);
}

}  // namespace diffloc
