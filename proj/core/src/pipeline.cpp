#include "diffloc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include <json.hpp>

#include "diffloc/cluster_analysis.hpp"
#include "diffloc/csv.hpp"
#include "diffloc/diffusion_map.hpp"
#include "diffloc/eigensolver.hpp"
#include "diffloc/error.hpp"
#include "diffloc/localization.hpp"
#include "diffloc/random_walk.hpp"

namespace diffloc {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kGenNodes = "nodes.csv";
constexpr const char* kGenEdges = "edges.csv";
constexpr const char* kGenLabels = "labels.csv";
constexpr const char* kGraphNodes = "graph_nodes.csv";
constexpr const char* kGraphEdges = "graph_edges.csv";
constexpr const char* kSpectrum = "spectrum.csv";
constexpr const char* kEigenvectors = "eigenvectors.csv";

void ensure_out_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw InputError("cannot create output directory '" + out.string() + "'");
}

void emit(Manifest& m, const fs::path& out, const std::string& name, const CsvBuilder& csv) {
  write_file_atomic(out / name, csv.text());
  m.record(name, csv.rows());
}

void emit_text(Manifest& m, const fs::path& out, const std::string& name, const std::string& text) {
  write_file_atomic(out / name, text);
  m.record(name, std::nullopt);
}

void add_note(Manifest& m, std::string note) {
  if (std::find(m.notes.begin(), m.notes.end(), note) == m.notes.end()) m.notes.push_back(std::move(note));
}

void merge_config(Manifest& m, const json& patch) {
  json cfg = json::parse(m.config_json);
  cfg.merge_patch(patch);
  m.config_json = cfg.dump();
}

void save(const Manifest& m, const fs::path& out) { write_file_atomic(out / kManifestFile, m.to_json()); }

json optional_path(const std::optional<fs::path>& p) { return p ? json(p->generic_string()) : json(nullptr); }

EigenOptions solver_options(const PipelineConfig& cfg) {
  EigenOptions opts;
  opts.tol = cfg.tol;
  opts.max_matvecs = cfg.max_matvecs;
  if (cfg.seed) opts.seed = *cfg.seed;
  return opts;
}

CsvBuilder histogram_csv(const Histogram& h) {
  CsvBuilder csv({"bin", "lower", "upper", "count"});
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    csv.field(b).field(h.bin_lower(b)).field(h.bin_upper(b)).field(h.counts[b]);
    csv.end_row();
  }
  return csv;
}

std::string_view label_text(const std::optional<std::string>& label) {
  return label ? std::string_view(*label) : std::string_view();
}

// Graph written by the ingest stage, with node metadata in graph order.
struct LoadedGraph {
  NodeTable meta;
  WeightedGraph graph;
  NodeLabels labels;
};

LoadedGraph load_graph(const fs::path& out) {
  NodeTable meta = read_node_csv(out / kGraphNodes);
  const auto records = read_edge_csv(out / kGraphEdges);
  WeightedGraph graph = ingest_edges(records, meta);
  if (graph.size() != meta.size()) {
    throw InputError("'" + (out / kGraphEdges).string() + "' leaves nodes without edges; rerun ingest");
  }
  NodeLabels labels = labels_from_meta(graph, meta);
  return {std::move(meta), std::move(graph), std::move(labels)};
}

bool labels_complete(const NodeLabels& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); });
}

std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Diverging blue-white-red scatter of a coloring over node coordinates.
std::string coloring_svg(const Coloring& c, const WeightedGraph& graph, const NodeTable& meta) {
  constexpr double size = 640.0;
  constexpr double margin = 24.0;
  const std::size_t n = c.values.size();
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY, vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeMeta& node = meta.at(graph.id(i));
    xmin = std::min(xmin, node.longitude);
    xmax = std::max(xmax, node.longitude);
    ymin = std::min(ymin, node.latitude);
    ymax = std::max(ymax, node.latitude);
    vmax = std::max(vmax, std::abs(c.values[i]));
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  const double scale = (size - 2.0 * margin) / span;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(c.values[a]) < std::abs(c.values[b]); });

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  svg += "<rect width=\"640\" height=\"640\" fill=\"#f4f4f4\"/>\n";
  svg += "<text x=\"12\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">psi_" + std::to_string(c.order) +
         "</text>\n";
  for (std::size_t i : order) {
    const NodeMeta& node = meta.at(graph.id(i));
    const double x = margin + (node.longitude - xmin) * scale;
    const double y = size - margin - (node.latitude - ymin) * scale;
    const double s = vmax > 0.0 ? c.values[i] / vmax : 0.0;
    const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(s))));
    char color[8];
    if (s >= 0.0) {
      std::snprintf(color, sizeof color, "#ff%02x%02x", fade, fade);
    } else {
      std::snprintf(color, sizeof color, "#%02x%02xff", fade, fade);
    }
    svg += "<circle cx=\"" + svg_number(x) + "\" cy=\"" + svg_number(y) + "\" r=\"4\" fill=\"" + color +
           "\" stroke=\"#555\" stroke-width=\"0.4\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

NodeTable relabel(const NodeTable& meta, const fs::path& label_path) {
  std::map<NodeId, std::string> by_id;
  for (auto& [id, cluster] : read_label_csv(label_path)) {
    if (meta.find(id) == nullptr) throw InputError(label_path.string() + ": unknown node id '" + id + "'");
    if (!by_id.emplace(id, cluster).second) throw InputError(label_path.string() + ": duplicate node id '" + id + "'");
  }
  std::vector<NodeMeta> nodes(meta.begin(), meta.end());
  for (NodeMeta& node : nodes) {
    auto it = by_id.find(node.id);
    node.cluster_label = it == by_id.end() ? std::nullopt : std::optional<std::string>(it->second);
  }
  return NodeTable(std::move(nodes));
}

}  // namespace

void PipelineConfig::validate_common() const {
  if (k < 2) throw InputError("k must be at least 2");
  if (!(tol > 0.0 && std::isfinite(tol))) throw InputError("tol must be positive");
  if (t < 1) throw InputError("t must be at least 1");
  if (embedding_dim < 1) throw InputError("embedding dimension must be at least 1");
  if (bins < 1) throw InputError("bins must be at least 1");
  if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0, 1)");
  for (std::size_t r : eigvecs) {
    if (r >= k) throw InputError("eigenvector order " + std::to_string(r) + " needs k > " + std::to_string(r));
  }
  if (kernel) kernel->validate();
  if (generator) generator->validate();
}

void PipelineConfig::validate() const {
  validate_common();
  const bool files = edges.has_value() || nodes.has_value() || labels.has_value();
  if (generator && files) throw InputError("give either input files or a generator config, not both");
  if (!generator && !(edges && nodes)) throw InputError("need --edges and --nodes, or --generate");
}

std::vector<std::size_t> PipelineConfig::coloring_orders() const {
  if (!eigvecs.empty()) return eigvecs;
  std::vector<std::size_t> orders;
  for (std::size_t r = 1; r <= std::min<std::size_t>(3, k - 1); ++r) orders.push_back(r);
  return orders;
}

void Manifest::record(std::string file, std::optional<std::size_t> rows) {
  auto it = std::find_if(files.begin(), files.end(), [&](const ManifestEntry& e) { return e.file == file; });
  if (it != files.end()) {
    it->rows = rows;
  } else {
    files.push_back({std::move(file), rows});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.file < b.file; });
}

std::string Manifest::to_json() const {
  json doc;
  doc["files"] = json::array();
  for (const auto& f : files) {
    doc["files"].push_back({{"file", f.file}, {"rows", f.rows ? json(*f.rows) : json(nullptr)}});
  }
  doc["eigenvalues"] = eigenvalues;
  doc["notes"] = notes;
  doc["config"] = json::parse(config_json);
  return doc.dump(2) + "\n";
}

Manifest Manifest::from_json(std::string_view text) {
  Manifest m;
  try {
    const json doc = json::parse(text);
    for (const auto& f : doc.at("files")) {
      const auto& rows = f.at("rows");
      m.files.push_back({f.at("file").get<std::string>(),
                         rows.is_null() ? std::nullopt : std::optional<std::size_t>(rows.get<std::size_t>())});
    }
    m.eigenvalues = doc.at("eigenvalues").get<std::vector<double>>();
    m.notes = doc.at("notes").get<std::vector<std::string>>();
    m.config_json = doc.at("config").dump();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

Manifest Manifest::load(const fs::path& out) {
  const fs::path path = out / kManifestFile;
  if (!fs::exists(path)) return {};
  return from_json(read_file(path));
}

Manifest stage_generate(const PipelineConfig& cfg) {
  cfg.validate_common();
  if (!cfg.generator) throw InputError("generate needs a generator config (--generate)");
  GravityConfig gen = *cfg.generator;
  if (cfg.seed) gen.seed = *cfg.seed;
  const GravityInstance inst = generate(gen);

  ensure_out_dir(cfg.out);
  Manifest m = Manifest::load(cfg.out);

  CsvBuilder nodes({"id", "population", "longitude", "latitude"});
  for (const NodeMeta& node : inst.nodes) {
    nodes.field(node.id).field(node.population).field(node.longitude).field(node.latitude);
    nodes.end_row();
  }
  CsvBuilder edges({"source", "target", "intensity"});
  inst.graph.for_each_edge([&](std::size_t i, std::size_t j, double w) {
    edges.field(inst.graph.id(i)).field(inst.graph.id(j)).field(w);
    edges.end_row();
  });
  CsvBuilder labels({"node_id", "cluster"});
  for (std::size_t i = 0; i < inst.graph.size(); ++i) {
    labels.field(inst.graph.id(i)).field(label_text(inst.labels[i]));
    labels.end_row();
  }
  emit(m, cfg.out, kGenNodes, nodes);
  emit(m, cfg.out, kGenEdges, edges);
  emit(m, cfg.out, kGenLabels, labels);

  merge_config(m, {{"generator", json::parse(gen.to_json())}});
  save(m, cfg.out);
  return m;
}

Manifest stage_ingest(const PipelineConfig& cfg) {
  cfg.validate_common();
  fs::path edge_path, node_path;
  std::optional<fs::path> label_path = cfg.labels;
  if (cfg.edges && cfg.nodes) {
    edge_path = *cfg.edges;
    node_path = *cfg.nodes;
  } else if (cfg.generator) {
    edge_path = cfg.out / kGenEdges;
    node_path = cfg.out / kGenNodes;
    label_path = cfg.out / kGenLabels;
  } else {
    throw InputError("ingest needs --edges and --nodes");
  }

  NodeTable meta = read_node_csv(node_path);
  if (label_path) meta = relabel(meta, *label_path);
  const auto records = read_edge_csv(edge_path);
  WeightedGraph graph = ingest_edges(records, meta);
  const std::size_t dropped = graph.dropped_isolated();
  if (cfg.kernel) {
    std::optional<MobileAggregates> mobile;
    if (is_mobile(cfg.kernel->kind)) mobile = compute_mobile_aggregates(records, meta);
    graph = build_kernel(graph, meta, *cfg.kernel, mobile ? &*mobile : nullptr);
  }
  if (graph.size() < 2) throw InputError("graph has fewer than two connected nodes");

  ensure_out_dir(cfg.out);
  Manifest m = Manifest::load(cfg.out);

  CsvBuilder nodes({"id", "population", "longitude", "latitude", "cluster_label"});
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const NodeMeta& node = meta.at(graph.id(i));
    nodes.field(node.id).field(node.population).field(node.longitude).field(node.latitude);
    nodes.field(label_text(node.cluster_label));
    nodes.end_row();
  }
  CsvBuilder edges({"source", "target", "intensity"});
  graph.for_each_edge([&](std::size_t i, std::size_t j, double w) {
    edges.field(graph.id(i)).field(graph.id(j)).field(w);
    edges.end_row();
  });
  emit(m, cfg.out, kGraphNodes, nodes);
  emit(m, cfg.out, kGraphEdges, edges);

  const std::size_t removed = meta.size() - graph.size();
  if (removed > 0) {
    add_note(m, std::to_string(removed) + " nodes without interactions were dropped" +
                    (dropped < removed ? " (some only after applying the kernel)" : ""));
  }
  if (!is_connected(graph)) add_note(m, "graph is not connected; eigenvalue 1 is repeated");

  json patch = {{"edges", optional_path(cfg.edges)},
                {"nodes", optional_path(cfg.nodes)},
                {"labels", optional_path(cfg.labels)},
                {"kernel", cfg.kernel ? json::parse(cfg.kernel->to_json()) : json(nullptr)}};
  if (cfg.generator) {
    patch["edges"] = kGenEdges;
    patch["nodes"] = kGenNodes;
    patch["labels"] = kGenLabels;
  }
  // merge_patch treats null as "remove", which is what we want for absent inputs.
  merge_config(m, patch);
  save(m, cfg.out);
  return m;
}

Manifest stage_analyze(const PipelineConfig& cfg) {
  cfg.validate_common();
  const LoadedGraph g = load_graph(cfg.out);
  const std::size_t n = g.graph.size();
  if (cfg.k > n - 1) {
    throw InputError("k = " + std::to_string(cfg.k) + " needs at least " + std::to_string(cfg.k + 1) +
                     " nodes, graph has " + std::to_string(n));
  }
  const RandomWalkOperator op(g.graph);
  const EigenSystem es = top_eigenpairs(op, cfg.k, solver_options(cfg));

  Manifest m = Manifest::load(cfg.out);
  const fs::path& out = cfg.out;

  CsvBuilder spectrum({"rank", "lambda", "residual"});
  for (std::size_t r = 0; r < es.k(); ++r) {
    spectrum.field(r).field(es.eigenvalue(r)).field(es.residuals()[r]);
    spectrum.end_row();
  }
  emit(m, out, kSpectrum, spectrum);
  for (std::size_t r = 0; r < es.k(); ++r) {
    if (es.degenerate(r)) add_note(m, "eigenvalue " + std::to_string(r) + " is degenerate; its vector is solver dependent");
  }

  std::vector<std::string> header{"node_id"};
  for (std::size_t r = 0; r < es.k(); ++r) header.push_back("psi_" + std::to_string(r));
  CsvBuilder vectors(header);
  for (std::size_t i = 0; i < n; ++i) {
    vectors.field(g.graph.id(i));
    for (std::size_t r = 0; r < es.k(); ++r) vectors.field(es.right()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)));
    vectors.end_row();
  }
  emit(m, out, kEigenvectors, vectors);

  if (cfg.artifacts.spectrum) {
    emit(m, out, "spectrum_histogram.csv", histogram_csv(spectrum_histogram(es, cfg.bins)));
    CsvBuilder scales({"rank", "scale"});
    const auto s = diffusion_scales(es, cfg.t);
    for (std::size_t r = 0; r < s.size(); ++r) {
      scales.field(r + 1).field(s[r]);
      scales.end_row();
    }
    emit(m, out, "diffusion_scales.csv", scales);
  }

  if (cfg.artifacts.embedding) {
    const std::size_t dim = std::min(cfg.embedding_dim, es.k() - 1);
    const DiffusionEmbedding emb = embed(es, cfg.t, dim);
    std::vector<std::string> cols{"node_id"};
    for (std::size_t a = 0; a < dim; ++a) cols.push_back("coord_" + std::to_string(a + 1));
    for (const char* c : {"longitude", "latitude", "cluster_label"}) cols.emplace_back(c);
    CsvBuilder csv(cols);
    for (std::size_t i = 0; i < n; ++i) {
      const NodeMeta& node = g.meta.at(g.graph.id(i));
      csv.field(node.id);
      for (std::size_t a = 0; a < dim; ++a) csv.field(emb.coord(i, a));
      csv.field(node.longitude).field(node.latitude).field(label_text(node.cluster_label));
      csv.end_row();
    }
    emit(m, out, "embedding.csv", csv);
    add_note(m, "suggested embedding dimension at delta = 0.1: " +
                    std::to_string(suggest_dimension(es, cfg.t, 0.1)));
  }

  const bool labeled = labels_complete(g.labels);
  const NodeLabels* labels = labeled ? &g.labels : nullptr;

  CsvBuilder loc({"order", "ipr", "support_fraction", "top_cluster", "top_mass"});
  for (std::size_t r = 1; r < es.k(); ++r) {
    const LocalizationReport rep = localization_report(es, r, cfg.theta, labels);
    loc.field(r).field(rep.ipr).field(rep.support_fraction);
    if (rep.top_clusters.empty()) {
      loc.field(std::string_view()).field(std::string_view());
    } else {
      loc.field(rep.top_clusters.front().cluster).field(rep.top_clusters.front().mass);
    }
    loc.end_row();
  }
  emit(m, out, "localization.csv", loc);

  const bool want_clusters = cfg.artifacts.collapse || cfg.artifacts.ranking || cfg.artifacts.alignment;
  if (want_clusters && !labeled) {
    const auto missing = std::count_if(g.labels.begin(), g.labels.end(), [](const auto& l) { return !l; });
    add_note(m, std::to_string(missing) + " nodes have no cluster label; cluster tables skipped");
  } else if (want_clusters) {
    const CollapseMatrix s = collapse(g.graph, g.labels);
    const auto degrees = cluster_degrees(s);
    if (cfg.artifacts.collapse) {
      std::vector<std::string> cols{"cluster"};
      cols.insert(cols.end(), s.clusters().begin(), s.clusters().end());
      CsvBuilder raw(cols), logs(cols);
      for (std::size_t a = 0; a < s.size(); ++a) {
        raw.field(s.clusters()[a]);
        logs.field(s.clusters()[a]);
        for (std::size_t b = 0; b < s.size(); ++b) {
          raw.field(s(a, b));
          logs.field(std::log10(s(a, b)));
        }
        raw.end_row();
        logs.end_row();
      }
      emit(m, out, "collapse.csv", raw);
      emit(m, out, "collapse_log10.csv", logs);
    }
    if (cfg.artifacts.ranking) {
      CsvBuilder csv({"rank", "cluster", "ratio"});
      for (const auto& rc : rank_clusters(degrees, degrees.size())) {
        csv.field(rc.rank).field(rc.cluster).field(rc.ratio ? *rc.ratio : INFINITY);
        csv.end_row();
      }
      emit(m, out, "ranking.csv", csv);
    }
    if (cfg.artifacts.alignment) {
      std::vector<std::size_t> orders(es.k() - 1);
      std::iota(orders.begin(), orders.end(), std::size_t{1});
      CsvBuilder csv({"order", "best_cluster", "captured_mass", "ratio_rank"});
      for (const auto& row : eigenvector_cut_alignment(es, g.graph, g.labels, orders)) {
        csv.field(row.order).field(row.best_cluster).field(row.captured_mass).field(row.ratio_rank);
        csv.end_row();
      }
      emit(m, out, "alignment.csv", csv);
    }
  }

  m.eigenvalues.assign(es.eigenvalues().begin(), es.eigenvalues().end());
  json patch = {{"k", cfg.k}, {"tol", cfg.tol}, {"max_matvecs", cfg.max_matvecs}, {"t", cfg.t}, {"embedding_dim", cfg.embedding_dim}, {"theta", cfg.theta},
                {"bins", cfg.bins}, {"seed", cfg.seed ? json(*cfg.seed) : json(nullptr)}};
  merge_config(m, patch);
  save(m, out);
  return m;
}

Manifest stage_report(const PipelineConfig& cfg) {
  cfg.validate_common();
  const LoadedGraph g = load_graph(cfg.out);
  const std::size_t n = g.graph.size();
  const RandomWalkOperator op(g.graph);

  std::vector<double> lambda, residuals;
  {
    const fs::path path = cfg.out / kSpectrum;
    const CsvTable table = read_csv(path);
    if (table.header.size() < 3 || table.header[1] != "lambda" || table.header[2] != "residual") {
      throw InputError(csv_location(path, 1) + "unexpected header");
    }
    for (const auto& [line, f] : table.rows) {
      try {
        lambda.push_back(parse_double(f[1], "lambda"));
        residuals.push_back(parse_double(f[2], "residual"));
      } catch (const InputError& e) {
        throw InputError(csv_location(path, line) + e.what());
      }
    }
  }
  const std::size_t k = lambda.size();
  Eigen::MatrixXd psi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  {
    const fs::path path = cfg.out / kEigenvectors;
    const CsvTable table = read_csv(path);
    if (table.header.size() != k + 1 || table.rows.size() != n) {
      throw InputError("'" + path.string() + "' does not match spectrum.csv and the graph");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [line, f] = table.rows[i];
      if (f[0] != g.graph.id(i)) throw InputError(csv_location(path, line) + "node order differs from the graph");
      try {
        for (std::size_t r = 0; r < k; ++r) {
          psi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)) = parse_double(f[r + 1], "psi");
        }
      } catch (const InputError& e) {
        throw InputError(csv_location(path, line) + e.what());
      }
    }
  }
  const EigenSystem es = EigenSystem::from_right_vectors(op, lambda, std::move(psi), residuals);

  const auto orders = cfg.coloring_orders();
  for (std::size_t r : orders) {
    if (r >= k) throw InputError("eigenvector order " + std::to_string(r) + " was not computed (k = " + std::to_string(k) + ")");
  }

  Manifest m = Manifest::load(cfg.out);
  if (cfg.artifacts.colorings) {
    for (std::size_t r : orders) {
      const std::string tag = std::to_string(r);
      const auto psi_r = es.psi(r);
      const auto phi_r = es.phi(r);
      CsvBuilder vec({"node_id", "psi", "phi"});
      for (std::size_t i = 0; i < n; ++i) {
        vec.field(g.graph.id(i)).field(psi_r[i]).field(phi_r[i]);
        vec.end_row();
      }
      emit(m, cfg.out, "eigvec_" + tag + ".csv", vec);

      const Coloring c = coloring(es, r);
      CsvBuilder col({"node_id", "value", "longitude", "latitude", "cluster_label"});
      for (std::size_t i = 0; i < n; ++i) {
        const NodeMeta& node = g.meta.at(g.graph.id(i));
        col.field(node.id).field(c.values[i]).field(node.longitude).field(node.latitude);
        col.field(label_text(node.cluster_label));
        col.end_row();
      }
      emit(m, cfg.out, "coloring_" + tag + ".csv", col);
      emit_text(m, cfg.out, "coloring_" + tag + ".svg", coloring_svg(c, g.graph, g.meta));
      emit(m, cfg.out, "entry_histogram_" + tag + ".csv", histogram_csv(entry_histogram(c, cfg.bins)));
    }
  }

  merge_config(m, {{"eigvecs", orders}});
  save(m, cfg.out);
  return m;
}

Manifest run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  ensure_out_dir(cfg.out);
  std::error_code ec;
  fs::remove(cfg.out / kManifestFile, ec);
  if (cfg.generator) stage_generate(cfg);
  stage_ingest(cfg);
  stage_analyze(cfg);
  return stage_report(cfg);
}

}  // namespace diffloc
