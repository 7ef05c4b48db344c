#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "diffloc/csv.hpp"
#include "diffloc/error.hpp"
#include "diffloc/parallel.hpp"
#include "diffloc/pipeline.hpp"

namespace {

using diffloc::InputError;

// Inline JSON when the argument starts with '{', otherwise a file to read.
std::string json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return diffloc::read_file(arg);
}

std::vector<std::size_t> parse_orders(const std::string& text) {
  std::vector<std::size_t> orders;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("--eigvecs expects comma-separated orders, got '" + text + "'");
    }
    orders.push_back(std::stoul(item));
  }
  return orders;
}

diffloc::Artifacts parse_artifacts(const std::string& text) {
  if (text == "all") return {};
  diffloc::Artifacts a{false, false, false, false, false, false};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "spectrum") a.spectrum = true;
    else if (item == "embedding") a.embedding = true;
    else if (item == "colorings") a.colorings = true;
    else if (item == "collapse") a.collapse = true;
    else if (item == "ranking") a.ranking = true;
    else if (item == "alignment") a.alignment = true;
    else throw InputError("unknown artifact '" + item + "'");
  }
  return a;
}

void apply_threads() {
  const char* env = std::getenv(diffloc::kThreadsEnv);
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long threads = std::strtol(env, &end, 10);
  if (*end != '\0' || threads < 1) {
    throw InputError(std::string(diffloc::kThreadsEnv) + " must be a positive integer");
  }
  diffloc::set_thread_count(static_cast<int>(threads));
}

struct Options {
  std::string edges, nodes, labels, kernel, generate, eigvecs, artifacts = "all";
  std::string out = "out";
  std::size_t k = 10;
  double tol = 1e-10;
  std::size_t max_matvecs = 0;
  unsigned t = 1;
  std::size_t dim = 2;
  std::size_t bins = 20;
  double theta = 0.5;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

diffloc::PipelineConfig to_config(const Options& o) {
  diffloc::PipelineConfig cfg;
  if (!o.edges.empty()) cfg.edges = o.edges;
  if (!o.nodes.empty()) cfg.nodes = o.nodes;
  if (!o.labels.empty()) cfg.labels = o.labels;
  if (!o.kernel.empty()) cfg.kernel = diffloc::KernelSpec::from_json(json_argument(o.kernel));
  if (!o.generate.empty()) cfg.generator = diffloc::GravityConfig::from_json(json_argument(o.generate));
  if (!o.eigvecs.empty()) cfg.eigvecs = parse_orders(o.eigvecs);
  cfg.artifacts = parse_artifacts(o.artifacts);
  cfg.out = o.out;
  cfg.k = o.k;
  cfg.tol = o.tol;
  cfg.max_matvecs = o.max_matvecs;
  cfg.t = o.t;
  cfg.embedding_dim = o.dim;
  cfg.bins = o.bins;
  cfg.theta = o.theta;
  if (o.seed_set) cfg.seed = o.seed;
  return cfg;
}

void summarize(const diffloc::Manifest& m, const std::string& out) {
  std::cout << "wrote " << m.files.size() << " files to " << out << "\n";
  for (const auto& note : m.notes) std::cout << "note: " << note << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion maps and eigenvector localization for weighted interaction networks"};
  app.require_subcommand(1);
  Options o;

  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--edges", o.edges, "Edge CSV: source,target,intensity[,duration_seconds]");
    cmd->add_option("--nodes", o.nodes, "Node CSV: id,population,longitude,latitude[,cluster_label]");
    cmd->add_option("--labels", o.labels, "Cluster labels CSV: node_id,cluster");
    cmd->add_option("--kernel", o.kernel, "Kernel spec as JSON or a JSON file");
  };
  auto add_generator = [&](CLI::App* cmd) {
    cmd->add_option("--generate", o.generate, "Gravity generator config as JSON or a JSON file");
  };
  auto add_analysis = [&](CLI::App* cmd) {
    cmd->add_option("--k", o.k, "Number of eigenpairs, including the trivial one");
    cmd->add_option("--tol", o.tol, "Eigenpair residual tolerance");
    cmd->add_option("--max-matvecs", o.max_matvecs, "Eigensolver budget in matrix-vector products (0: 300 k)");
    cmd->add_option("--t", o.t, "Diffusion time");
    cmd->add_option("--dim", o.dim, "Embedding dimension");
    cmd->add_option("--theta", o.theta, "Support threshold relative to the largest entry");
  };
  auto add_report = [&](CLI::App* cmd) {
    cmd->add_option("--eigvecs", o.eigvecs, "Orders to color, e.g. 1,3,7");
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--bins", o.bins, "Histogram bins");
    cmd->add_option("--artifacts", o.artifacts,
                    "Comma-separated subset of spectrum,embedding,colorings,collapse,ranking,alignment");
    cmd->add_option("--seed", o.seed, "Seed for the generator and the eigensolver")
        ->each([&](const std::string&) { o.seed_set = true; });
  };

  auto* gen = app.add_subcommand("generate", "Write a synthetic gravity network");
  add_generator(gen);
  add_common(gen);
  auto* ingest = app.add_subcommand("ingest", "Read interactions and build the similarity kernel");
  add_inputs(ingest);
  add_generator(ingest);
  add_common(ingest);
  auto* analyze = app.add_subcommand("analyze", "Eigensolve and write spectrum, embedding and cluster tables");
  add_analysis(analyze);
  add_report(analyze);
  add_common(analyze);
  auto* report = app.add_subcommand("report", "Write eigenvector colorings and histograms");
  add_analysis(report);
  add_report(report);
  add_common(report);
  auto* run = app.add_subcommand("run", "Run every stage");
  add_inputs(run);
  add_generator(run);
  add_analysis(run);
  add_report(run);
  add_common(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads();
    const diffloc::PipelineConfig cfg = to_config(o);
    diffloc::Manifest m;
    if (gen->parsed()) {
      m = diffloc::stage_generate(cfg);
    } else if (ingest->parsed()) {
      m = diffloc::stage_ingest(cfg);
    } else if (analyze->parsed()) {
      m = diffloc::stage_analyze(cfg);
    } else if (report->parsed()) {
      m = diffloc::stage_report(cfg);
    } else {
      m = diffloc::run_pipeline(cfg);
    }
    summarize(m, o.out);
    return 0;
  } catch (const diffloc::InputError& e) {
    std::cerr << "diffloc: error: " << e.what() << "\n";
    return 2;
  } catch (const diffloc::NumericalError& e) {
    std::cerr << "diffloc: numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "diffloc: internal error: " << e.what() << "\n";
    return 1;
  }
}
