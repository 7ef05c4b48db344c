#include <cmath>

#include <gtest/gtest.h>

#include "diffloc/csv.hpp"
#include "diffloc/error.hpp"
#include "diffloc/kernel.hpp"
#include "oracles.hpp"

using namespace diffloc;

namespace {

struct Fixture4 {
  NodeTable meta{{{"p", 5, 0.0, 0.0, {}}, {"q", 2, 1.0, 0.0, {}}, {"r", 7, 0.5, 2.0, {}}, {"s", 3, -1.0, 1.5, {}}}};
  // Upper-triangle intensities; (q, s) absent.
  std::vector<RawInteraction> edges{{"p", "q", 10, {}}, {"p", "r", 4, {}}, {"p", "s", 1.5, {}},
                                    {"q", "r", 8, {}},  {"r", "s", 2, {}}};
  WeightedGraph graph = ingest_edges(edges, meta);
};

KernelSpec spec(KernelKind kind, std::map<std::string, double> params = {}) { return {kind, std::move(params)}; }

// Spreadsheet-style recomputation: one cell at a time from the raw inputs.
double expected_cell(KernelKind kind, double m, double pi, double pj, double c) {
  switch (kind) {
    case KernelKind::migration_sq_over_prod:
      return c * m * m / (pi * pj);
    case KernelKind::migration_over_sum:
      return c * m / (pi + pj);
    case KernelKind::migration_over_prod:
      return c * m / (pi * pj);
    default:
      return NAN;
  }
}

}  // namespace

TEST(Kernel, PaperSubstitutions) {
  const NodeTable meta({{"i", 5, 0, 0, {}}, {"j", 2, 1, 1, {}}});
  const std::vector<RawInteraction> e{{"i", "j", 10, {}}};
  const WeightedGraph m = ingest_edges(e, meta);
  EXPECT_DOUBLE_EQ(build_kernel(m, meta, spec(KernelKind::migration_sq_over_prod)).weight(0, 1), 10.0);
  EXPECT_DOUBLE_EQ(build_kernel(m, meta, spec(KernelKind::migration_over_sum)).weight(0, 1), 10.0 / 7.0);
  EXPECT_DOUBLE_EQ(build_kernel(m, meta, spec(KernelKind::migration_over_prod, {{"scale", 5500}})).weight(0, 1),
                   5500.0);
}

TEST(Kernel, MigrationKindsMatchElementwiseOracle) {
  Fixture4 f;
  for (KernelKind kind :
       {KernelKind::migration_sq_over_prod, KernelKind::migration_over_sum, KernelKind::migration_over_prod}) {
    for (double c : {1.0, 5500.0}) {
      const WeightedGraph w = build_kernel(f.graph, f.meta, spec(kind, {{"scale", c}}));
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          const double m = f.graph.weight(i, j);
          const double want = i == j || m == 0.0 ? 0.0
                                                 : expected_cell(kind, m, f.meta[i].population, f.meta[j].population, c);
          EXPECT_NEAR(w.weight(i, j), want, 1e-14 * std::max(1.0, want)) << to_string(kind) << " " << i << "," << j;
        }
      }
    }
  }
}

TEST(Kernel, GaussianMatchesElementwiseOracle) {
  Fixture4 f;
  const double eps = 0.7;
  const WeightedGraph w = build_kernel(f.graph, f.meta, spec(KernelKind::gaussian, {{"epsilon", eps}}));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double dx = f.meta[i].longitude - f.meta[j].longitude;
      const double dy = f.meta[i].latitude - f.meta[j].latitude;
      const double want = i == j ? 0.0 : std::exp(-(dx * dx + dy * dy) / eps);
      EXPECT_NEAR(w.weight(i, j), want, 1e-15);
      if (i != j) {
        EXPECT_GT(w.weight(i, j), 0.0);
        EXPECT_LT(w.weight(i, j), 1.0);
      }
    }
  }
  // (q, s) had no interaction but the gaussian kernel still relates them.
  EXPECT_GT(w.weight(1, 3), 0.0);
}

TEST(Kernel, GaussianIsOneForCoincidentPoints) {
  const NodeTable meta({{"a", 1, 2, 3, {}}, {"b", 1, 2, 3, {}}, {"c", 1, 5, 3, {}}});
  const std::vector<RawInteraction> e{{"a", "b", 1, {}}, {"b", "c", 1, {}}};
  const WeightedGraph w = build_kernel(ingest_edges(e, meta), meta, spec(KernelKind::gaussian, {{"epsilon", 1}}));
  EXPECT_EQ(w.weight(0, 1), 1.0);
  EXPECT_LT(w.weight(0, 2), 1.0);
}

TEST(Kernel, IntensityScalingPowers) {
  Fixture4 f;
  const double c = 3.5;
  const WeightedGraph scaled = f.graph.scaled(c);
  const std::vector<std::pair<KernelKind, double>> cases{
      {KernelKind::migration_sq_over_prod, c * c}, {KernelKind::migration_over_sum, c}, {KernelKind::migration_over_prod, c}};
  for (const auto& [kind, factor] : cases) {
    const Eigen::MatrixXd a = oracle::dense_weights(build_kernel(f.graph, f.meta, spec(kind)));
    const Eigen::MatrixXd b = oracle::dense_weights(build_kernel(scaled, f.meta, spec(kind)));
    EXPECT_LE((b - factor * a).cwiseAbs().maxCoeff(), 1e-13 * a.cwiseAbs().maxCoeff() * factor) << to_string(kind);
  }
}

TEST(Kernel, EveryKindSymmetricWithZeroDiagonal) {
  const NodeTable meta = read_node_csv(DIFFLOC_TEST_DATA "/calls_nodes.csv");
  const auto calls = read_edge_csv(DIFFLOC_TEST_DATA "/calls.csv");
  const WeightedGraph m = ingest_edges(calls, meta);
  const MobileAggregates agg = compute_mobile_aggregates(calls, meta);
  for (KernelKind kind : {KernelKind::migration_sq_over_prod, KernelKind::migration_over_sum,
                          KernelKind::migration_over_prod, KernelKind::gaussian, KernelKind::mobile_exp_rt,
                          KernelKind::mobile_exp_rn, KernelKind::mobile_calls_over_prod}) {
    std::map<std::string, double> params;
    if (kind == KernelKind::gaussian) params["epsilon"] = 10.0;
    if (kind == KernelKind::mobile_exp_rt) params["width"] = 100.0;
    const Eigen::MatrixXd w = oracle::dense_weights(build_kernel(m, meta, spec(kind, params), &agg));
    EXPECT_EQ((w - w.transpose()).cwiseAbs().maxCoeff(), 0.0) << to_string(kind);
    EXPECT_EQ(w.diagonal().cwiseAbs().maxCoeff(), 0.0) << to_string(kind);
  }
}

TEST(Kernel, UnderflowToNothingIsAnInputError) {
  const NodeTable meta = read_node_csv(DIFFLOC_TEST_DATA "/calls_nodes.csv");
  const auto calls = read_edge_csv(DIFFLOC_TEST_DATA "/calls.csv");
  const MobileAggregates agg = compute_mobile_aggregates(calls, meta);
  EXPECT_THROW(build_kernel(ingest_edges(calls, meta), meta, spec(KernelKind::mobile_exp_rt, {}), &agg), InputError);
}

TEST(MobileAggregates, FixtureTotals) {
  const NodeTable meta = read_node_csv(DIFFLOC_TEST_DATA "/calls_nodes.csv");
  const MobileAggregates agg = compute_mobile_aggregates(read_edge_csv(DIFFLOC_TEST_DATA "/calls.csv"), meta);
  EXPECT_EQ(agg.size(), 2u);
  const auto* xy = agg.find("y", "x");
  ASSERT_NE(xy, nullptr);
  EXPECT_EQ(xy->seconds, 120.0);
  EXPECT_EQ(xy->calls, 2.0);
  EXPECT_EQ(*agg.mean_duration("x", "y"), 60.0);
  EXPECT_EQ(agg.find("x", "z"), nullptr);
  EXPECT_FALSE(agg.mean_duration("x", "z").has_value());
  const auto* yz = agg.find("z", "y");
  ASSERT_NE(yz, nullptr);
  EXPECT_EQ(yz->seconds, 80.0);
  EXPECT_EQ(yz->calls, 4.0);
  EXPECT_DOUBLE_EQ(*agg.normalized_calls("y", "z", meta), 4.0 / 100.0);
  EXPECT_DOUBLE_EQ(*agg.normalized_seconds("x", "y", meta), 120.0 / 200.0);
  EXPECT_DOUBLE_EQ(MobileAggregates::centroid_distance("x", "y", meta), 5.0);
}

TEST(MobileAggregates, ZeroDurationWithCallsAllowed) {
  const NodeTable meta({{"a", 1, 0, 0, {}}, {"b", 1, 1, 0, {}}});
  const std::vector<RawInteraction> calls{{"a", "b", 3, 0.0}};
  const MobileAggregates agg = compute_mobile_aggregates(calls, meta);
  EXPECT_EQ(*agg.mean_duration("a", "b"), 0.0);
}

TEST(MobileAggregates, RejectsNegativeDurationAndMissingDuration) {
  const NodeTable meta({{"a", 1, 0, 0, {}}, {"b", 1, 1, 0, {}}});
  const std::vector<RawInteraction> negative{{"a", "b", 1, -4.0}};
  EXPECT_THROW(compute_mobile_aggregates(negative, meta), InputError);
  const std::vector<RawInteraction> missing{{"a", "b", 1, {}}};
  EXPECT_THROW(compute_mobile_aggregates(missing, meta), InputError);
}

TEST(Kernel, MobileKindsMatchFormulas) {
  const NodeTable meta = read_node_csv(DIFFLOC_TEST_DATA "/calls_nodes.csv");
  const auto calls = read_edge_csv(DIFFLOC_TEST_DATA "/calls.csv");
  const WeightedGraph m = ingest_edges(calls, meta);
  const MobileAggregates agg = compute_mobile_aggregates(calls, meta);
  const auto ix = *m.index_of("x"), iy = *m.index_of("y"), iz = *m.index_of("z");

  // x-y: T = 120, N = 2, P = 10 * 20; y-z: T = 80, N = 4, P = 20 * 5.
  const double r_xy = 60.0, tbar_xy = 120.0 / 200.0, nbar_xy = 2.0 / 200.0;
  const double r_yz = 20.0, tbar_yz = 80.0 / 100.0, nbar_yz = 4.0 / 100.0;

  const WeightedGraph w1 = build_kernel(m, meta, spec(KernelKind::mobile_exp_rt, {{"width", 50}}), &agg);
  EXPECT_DOUBLE_EQ(w1.weight(ix, iy), std::exp(-std::pow(r_xy * tbar_xy, 2) / 2500.0));
  EXPECT_DOUBLE_EQ(w1.weight(iy, iz), std::exp(-std::pow(r_yz * tbar_yz, 2) / 2500.0));

  const WeightedGraph w2 = build_kernel(m, meta, spec(KernelKind::mobile_exp_rn), &agg);
  EXPECT_DOUBLE_EQ(w2.weight(ix, iy), std::exp(-std::pow(std::pow(r_xy, 0.16) / std::pow(nbar_xy, 0.26), 2)));
  EXPECT_DOUBLE_EQ(w2.weight(iy, iz), std::exp(-std::pow(std::pow(r_yz, 0.16) / std::pow(nbar_yz, 0.26), 2)));

  const WeightedGraph w3 = build_kernel(m, meta, spec(KernelKind::mobile_calls_over_prod), &agg);
  EXPECT_DOUBLE_EQ(w3.weight(ix, iy), tbar_xy / r_xy);
  EXPECT_DOUBLE_EQ(w3.weight(iy, iz), nbar_yz);
  EXPECT_EQ(w3.weight(ix, iz), 0.0);
}

TEST(Kernel, MobileKindNeedsAggregates) {
  Fixture4 f;
  EXPECT_THROW(build_kernel(f.graph, f.meta, spec(KernelKind::mobile_exp_rn)), InputError);
}

TEST(KernelSpec, JsonRoundTripAndValidation) {
  const KernelSpec s = KernelSpec::from_json(R"({"kind": "gaussian", "params": {"epsilon": 0.5, "scale": 2}})");
  EXPECT_EQ(s.kind, KernelKind::gaussian);
  EXPECT_EQ(s.param("epsilon"), 0.5);
  EXPECT_EQ(KernelSpec::from_json(s.to_json()).params, s.params);
  EXPECT_EQ(KernelSpec::from_json(R"({"kind": "mobile_exp_rn"})").param("count_exponent"), 0.26);

  EXPECT_THROW(KernelSpec::from_json(R"({"kind": "cosine"})"), InputError);
  EXPECT_THROW(KernelSpec::from_json(R"({"kind": "gaussian"})"), InputError);
  EXPECT_THROW(KernelSpec::from_json(R"({"kind": "gaussian", "params": {"epsilon": 0}})"), InputError);
  EXPECT_THROW(KernelSpec::from_json(R"({"kind": "gaussian", "params": {"epsilon": -1}})"), InputError);
  EXPECT_THROW(KernelSpec::from_json(R"({"kind": "migration_over_sum", "params": {"epsilon": 1}})"), InputError);
  EXPECT_THROW(KernelSpec::from_json("{not json"), InputError);
}

TEST(Kernel, MissingPopulationIsAnError) {
  Fixture4 f;
  const NodeTable partial({{"p", 5, 0, 0, {}}, {"q", 2, 1, 0, {}}});
  EXPECT_THROW(build_kernel(f.graph, partial, spec(KernelKind::migration_over_sum)), InputError);
}
