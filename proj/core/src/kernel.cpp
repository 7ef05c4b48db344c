#include "diffloc/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "diffloc/error.hpp"

namespace diffloc {
namespace {

constexpr std::array<std::pair<KernelKind, std::string_view>, 7> kKindNames{{
    {KernelKind::migration_sq_over_prod, "migration_sq_over_prod"},
    {KernelKind::migration_over_sum, "migration_over_sum"},
    {KernelKind::migration_over_prod, "migration_over_prod"},
    {KernelKind::gaussian, "gaussian"},
    {KernelKind::mobile_exp_rt, "mobile_exp_rt"},
    {KernelKind::mobile_exp_rn, "mobile_exp_rn"},
    {KernelKind::mobile_calls_over_prod, "mobile_calls_over_prod"},
}};

// Parameters each kind accepts, with defaults (NaN = required).
std::map<std::string, double> allowed_params(KernelKind kind) {
  std::map<std::string, double> p{{"scale", 1.0}};
  switch (kind) {
    case KernelKind::gaussian:
      p["epsilon"] = std::nan("");
      break;
    case KernelKind::mobile_exp_rt:
      p["width"] = 0.2;
      break;
    case KernelKind::mobile_exp_rn:
      p["duration_exponent"] = 0.16;
      p["count_exponent"] = 0.26;
      break;
    default:
      break;
  }
  return p;
}

}  // namespace

KernelKind parse_kernel_kind(std::string_view name) {
  for (const auto& [kind, text] : kKindNames) {
    if (text == name) return kind;
  }
  throw InputError("unknown kernel kind '" + std::string(name) + "'");
}

std::string_view to_string(KernelKind kind) {
  for (const auto& [k, text] : kKindNames) {
    if (k == kind) return text;
  }
  return "unknown";
}

bool is_mobile(KernelKind kind) {
  return kind == KernelKind::mobile_exp_rt || kind == KernelKind::mobile_exp_rn ||
         kind == KernelKind::mobile_calls_over_prod;
}

double KernelSpec::param(const std::string& name) const {
  if (auto it = params.find(name); it != params.end()) return it->second;
  const auto defaults = allowed_params(kind);
  auto it = defaults.find(name);
  if (it == defaults.end() || std::isnan(it->second)) {
    throw InputError("kernel '" + std::string(to_string(kind)) + "' requires parameter '" + name + "'");
  }
  return it->second;
}

void KernelSpec::validate() const {
  const auto allowed = allowed_params(kind);
  for (const auto& [name, value] : params) {
    if (!allowed.contains(name)) {
      throw InputError("parameter '" + name + "' does not apply to kernel '" + std::string(to_string(kind)) + "'");
    }
    if (!(std::isfinite(value) && value > 0.0)) {
      throw InputError("kernel parameter '" + name + "' must be strictly positive");
    }
  }
  for (const auto& [name, fallback] : allowed) {
    if (std::isnan(fallback) && !params.contains(name)) {
      throw InputError("kernel '" + std::string(to_string(kind)) + "' requires parameter '" + name + "'");
    }
  }
}

KernelSpec KernelSpec::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("kernel spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw InputError("kernel spec needs a string field 'kind'");
  }
  KernelSpec spec;
  spec.kind = parse_kernel_kind(doc["kind"].get<std::string>());
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw InputError("kernel 'params' must be an object");
    for (const auto& [name, value] : doc["params"].items()) {
      if (!value.is_number()) throw InputError("kernel parameter '" + name + "' must be a number");
      spec.params[name] = value.get<double>();
    }
  }
  spec.validate();
  return spec;
}

std::string KernelSpec::to_json() const {
  nlohmann::json doc;
  doc["kind"] = std::string(to_string(kind));
  doc["params"] = nlohmann::json::object();
  for (const auto& [name, value] : params) doc["params"][name] = value;
  return doc.dump();
}

void MobileAggregates::add(const NodeId& a, const NodeId& b, Pair totals) {
  Pair& p = pairs_[key(a, b)];
  p.seconds += totals.seconds;
  p.calls += totals.calls;
}

const MobileAggregates::Pair* MobileAggregates::find(const NodeId& a, const NodeId& b) const {
  auto it = pairs_.find(key(a, b));
  return it == pairs_.end() ? nullptr : &it->second;
}

std::optional<double> MobileAggregates::mean_duration(const NodeId& a, const NodeId& b) const {
  const Pair* p = find(a, b);
  if (p == nullptr || p->calls <= 0.0) return std::nullopt;
  return p->seconds / p->calls;
}

std::optional<double> MobileAggregates::normalized_seconds(const NodeId& a, const NodeId& b,
                                                           const NodeTable& meta) const {
  const Pair* p = find(a, b);
  if (p == nullptr) return std::nullopt;
  return p->seconds / (meta.at(a).population * meta.at(b).population);
}

std::optional<double> MobileAggregates::normalized_calls(const NodeId& a, const NodeId& b,
                                                         const NodeTable& meta) const {
  const Pair* p = find(a, b);
  if (p == nullptr) return std::nullopt;
  return p->calls / (meta.at(a).population * meta.at(b).population);
}

double MobileAggregates::centroid_distance(const NodeId& a, const NodeId& b, const NodeTable& meta) {
  const NodeMeta& x = meta.at(a);
  const NodeMeta& y = meta.at(b);
  return std::hypot(x.longitude - y.longitude, x.latitude - y.latitude);
}

MobileAggregates compute_mobile_aggregates(std::span<const RawInteraction> calls, const NodeTable& meta) {
  struct Record {
    MobileAggregates::Key key;
    double calls;
    double seconds;
  };
  std::vector<Record> records;
  records.reserve(calls.size());
  for (const RawInteraction& r : calls) {
    meta.at(r.source);
    meta.at(r.target);
    if (!r.duration_seconds) {
      throw InputError("call record '" + r.source + "' -> '" + r.target + "' has no duration_seconds");
    }
    if (!std::isfinite(r.intensity) || r.intensity < 0.0) {
      throw InputError("negative call count between '" + r.source + "' and '" + r.target + "'");
    }
    if (!std::isfinite(*r.duration_seconds) || *r.duration_seconds < 0.0) {
      throw InputError("negative duration between '" + r.source + "' and '" + r.target + "'");
    }
    if (r.source == r.target) continue;
    records.push_back({MobileAggregates::key(r.source, r.target), r.intensity, *r.duration_seconds});
  }
  // Canonical summation order, as in ingest_edges.
  std::sort(records.begin(), records.end(), [](const Record& x, const Record& y) {
    return std::tie(x.key, x.calls, x.seconds) < std::tie(y.key, y.calls, y.seconds);
  });

  MobileAggregates out;
  for (std::size_t i = 0; i < records.size();) {
    std::size_t j = i;
    MobileAggregates::Pair total;
    for (; j < records.size() && records[j].key == records[i].key; ++j) {
      total.calls += records[j].calls;
      total.seconds += records[j].seconds;
    }
    if (total.calls > 0.0) out.add(records[i].key.first, records[i].key.second, total);
    i = j;
  }
  return out;
}

WeightedGraph build_kernel(const WeightedGraph& graph, const NodeTable& meta, const KernelSpec& spec,
                           const MobileAggregates* mobile) {
  spec.validate();
  const double scale = spec.param("scale");
  const std::size_t n = graph.size();

  std::vector<double> population(n);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeMeta* node = meta.find(graph.id(i));
    if (node == nullptr) throw InputError("missing population for node '" + graph.id(i) + "'");
    population[i] = node->population;
  }

  std::vector<PairWeight> pairs;
  switch (spec.kind) {
    case KernelKind::migration_sq_over_prod:
    case KernelKind::migration_over_sum:
    case KernelKind::migration_over_prod:
      pairs.reserve(graph.edge_count());
      graph.for_each_edge([&](std::size_t i, std::size_t j, double m) {
        const double pi = population[i];
        const double pj = population[j];
        double w = 0.0;
        if (spec.kind == KernelKind::migration_sq_over_prod) {
          w = m * m / (pi * pj);
        } else if (spec.kind == KernelKind::migration_over_sum) {
          w = m / (pi + pj);
        } else {
          w = m / (pi * pj);
        }
        pairs.push_back({i, j, scale * w});
      });
      break;

    case KernelKind::gaussian: {
      const double epsilon = spec.param("epsilon");
      if (n > 20000) throw InputError("gaussian kernel is dense; refusing more than 20000 nodes");
      std::vector<std::pair<double, double>> xy(n);
      for (std::size_t i = 0; i < n; ++i) {
        const NodeMeta& node = meta.at(graph.id(i));
        xy[i] = {node.longitude, node.latitude};
      }
      pairs.reserve(n * (n - 1) / 2);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double dx = xy[i].first - xy[j].first;
          const double dy = xy[i].second - xy[j].second;
          pairs.push_back({i, j, scale * std::exp(-(dx * dx + dy * dy) / epsilon)});
        }
      }
      break;
    }

    case KernelKind::mobile_exp_rt:
    case KernelKind::mobile_exp_rn:
    case KernelKind::mobile_calls_over_prod: {
      if (mobile == nullptr) {
        throw InputError("kernel '" + std::string(to_string(spec.kind)) +
                         "' needs call aggregates (edge CSV with duration_seconds)");
      }
      pairs.reserve(mobile->size());
      for (const auto& [key, totals] : mobile->pairs()) {
        const auto i = graph.index_of(key.first);
        const auto j = graph.index_of(key.second);
        if (!i || !j) continue;
        const double prod = population[*i] * population[*j];
        const double mean_duration = totals.seconds / totals.calls;
        const double tbar = totals.seconds / prod;
        const double nbar = totals.calls / prod;
        double w = 0.0;
        if (spec.kind == KernelKind::mobile_exp_rt) {
          const double width = spec.param("width");
          const double x = mean_duration * tbar;
          w = std::exp(-(x * x) / (width * width));
        } else if (spec.kind == KernelKind::mobile_exp_rn) {
          const double x = std::pow(mean_duration, spec.param("duration_exponent")) /
                           std::pow(nbar, spec.param("count_exponent"));
          w = std::exp(-(x * x));
        } else {
          w = nbar;
        }
        pairs.push_back({*i, *j, scale * w});
      }
      break;
    }
  }

  std::vector<NodeId> ids(graph.ids().begin(), graph.ids().end());
  WeightedGraph out = WeightedGraph::from_pairs(std::move(ids), std::move(pairs));
  if (out.empty()) {
    throw InputError("kernel '" + std::string(to_string(spec.kind)) + "' gives no positive weight (underflow?)");
  }
  return out;
}

}  // namespace diffloc
