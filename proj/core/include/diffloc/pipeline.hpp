#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "diffloc/gravity.hpp"
#include "diffloc/kernel.hpp"

namespace diffloc {

struct Artifacts {
  bool spectrum = true;
  bool embedding = true;
  bool colorings = true;
  bool collapse = true;
  bool ranking = true;
  bool alignment = true;
};

/// Inputs come either from CSV files (`edges` plus `nodes`, optionally a
/// `labels` file overriding the node CSV's cluster column) or from a
/// generator config, never both.
struct PipelineConfig {
  std::optional<std::filesystem::path> edges;
  std::optional<std::filesystem::path> nodes;
  std::optional<std::filesystem::path> labels;
  std::optional<GravityConfig> generator;
  /// No kernel: the ingested intensities are used as W directly.
  std::optional<KernelSpec> kernel;
  std::size_t k = 10;
  double tol = 1e-10;
  std::size_t max_matvecs = 0;  // 0: 300 * k
  unsigned t = 1;
  std::size_t embedding_dim = 2;
  /// Orders to color; empty means 1 .. min(3, k - 1).
  std::vector<std::size_t> eigvecs;
  std::filesystem::path out = "out";
  /// Overrides the generator seed when set and seeds the eigensolver.
  std::optional<std::uint64_t> seed;
  std::size_t bins = 20;
  double theta = 0.5;
  Artifacts artifacts;

  /// Checks everything that can be checked before touching the file system.
  void validate_common() const;
  void validate() const;
  std::vector<std::size_t> coloring_orders() const;
};

struct ManifestEntry {
  std::string file;
  std::optional<std::size_t> rows;  // data rows; empty for non-tabular files
};

/// manifest.json in the output directory. Paths are relative to it, and the
/// content holds nothing run-specific, so identical runs give identical bytes.
struct Manifest {
  std::vector<ManifestEntry> files;
  std::vector<double> eigenvalues;
  std::vector<std::string> notes;
  std::string config_json = "{}";

  void record(std::string file, std::optional<std::size_t> rows);
  std::string to_json() const;
  static Manifest from_json(std::string_view json);
  /// Reads out/manifest.json, or an empty manifest when it does not exist.
  static Manifest load(const std::filesystem::path& out);
};

inline constexpr const char* kManifestFile = "manifest.json";

// Stages. Each writes its files atomically into cfg.out, merges them into the
// manifest there and returns it. Later stages read the files written by
// earlier ones, so the stages compose through the output directory.

/// generator -> nodes.csv, edges.csv, labels.csv
Manifest stage_generate(const PipelineConfig& cfg);
/// edges/nodes (or the generate stage's files) + kernel -> graph_nodes.csv, graph_edges.csv
Manifest stage_ingest(const PipelineConfig& cfg);
/// graph -> spectrum, eigenvectors, embedding, localization, cluster tables
Manifest stage_analyze(const PipelineConfig& cfg);
/// eigenvectors -> per-order vectors, colorings (CSV and SVG), entry histograms
Manifest stage_report(const PipelineConfig& cfg);
/// All stages in order, starting from a fresh manifest.
Manifest run_pipeline(const PipelineConfig& cfg);

}  // namespace diffloc
