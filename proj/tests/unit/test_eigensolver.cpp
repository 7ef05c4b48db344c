#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "diffloc/eigensolver.hpp"
#include "diffloc/error.hpp"
#include "diffloc/gravity.hpp"
#include "oracles.hpp"

using namespace diffloc;

namespace {

WeightedGraph gravity30(std::uint64_t seed = 7) {
  GravityConfig cfg;
  cfg.n = 30;
  cfg.seed = seed;
  return generate(cfg).graph;
}

Eigen::VectorXd degree_vector(const RandomWalkOperator& op) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(op.size()));
  for (std::size_t i = 0; i < op.size(); ++i) d(static_cast<Eigen::Index>(i)) = op.degrees()[i];
  return d;
}

}  // namespace

TEST(Eigensolver, TwoNodeClosedForm) {
  const RandomWalkOperator op = normalize(WeightedGraph::from_pairs({"a", "b"}, {{0, 1, 1.0}}));
  const EigenSystem full = full_eigensystem(op);
  ASSERT_EQ(full.k(), 2u);
  EXPECT_NEAR(full.eigenvalue(0), 1.0, 1e-15);
  EXPECT_NEAR(full.eigenvalue(1), -1.0, 1e-15);
  EXPECT_NEAR(full.psi(0)[0], full.psi(0)[1], 1e-15);
  EXPECT_GT(full.psi(0)[0], 0.0);

  const EigenSystem top = top_eigenpairs(op, 1);
  EXPECT_EQ(top.eigenvalue(0), 1.0);
  EXPECT_EQ(top.psi(0)[0], top.psi(0)[1]);
}

TEST(Eigensolver, TrivialPairIsConstant) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const RandomWalkOperator op = normalize(oracle::random_graph(40, 0.15, seed));
    const EigenSystem es = top_eigenpairs(op, 5);
    EXPECT_EQ(es.eigenvalue(0), 1.0);
    const double vol = std::accumulate(op.degrees().begin(), op.degrees().end(), 0.0);
    for (double x : es.psi(0)) EXPECT_NEAR(x, 1.0 / std::sqrt(vol), 1e-14 / std::sqrt(vol));
  }
}

TEST(Eigensolver, MatchesDenseOracleOnGravityGraph) {
  const WeightedGraph g = gravity30();
  const EigenSystem es = top_eigenpairs(normalize(g), 10);
  const oracle::DenseEigen dense = oracle::dense_eigen(g);
  for (std::size_t r = 0; r < 10; ++r) EXPECT_NEAR(es.eigenvalue(r), dense.values(static_cast<Eigen::Index>(r)), 1e-8);
}

TEST(Eigensolver, SpectrumHistogramMatchesDenseOracle) {
  const WeightedGraph g = gravity30(3);
  const EigenSystem es = top_eigenpairs(normalize(g), 10);
  const oracle::DenseEigen dense = oracle::dense_eigen(g);
  const std::vector<double> top(dense.values.data(), dense.values.data() + 10);
  const Histogram want = make_histogram(top, top.back(), 1.0, 8);
  const Histogram got = spectrum_histogram(es, 8);
  EXPECT_EQ(got.counts, want.counts);
  EXPECT_EQ(got.total(), 10u);
}

TEST(Eigensolver, HistogramSmallCases) {
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
  const EigenSystem two({"a", "b"}, {1.0, 0.5}, eye, eye, {0.0, 0.0});
  EXPECT_EQ(spectrum_histogram(two, 2).counts, (std::vector<std::size_t>{1, 1}));
  const EigenSystem flat({"a", "b"}, {1.0, 1.0}, eye, eye, {0.0, 0.0});
  EXPECT_EQ(spectrum_histogram(flat, 5).occupied(), 1u);
  EXPECT_THROW(spectrum_histogram(two, 0), InputError);
}

TEST(Eigensolver, BiorthonormalAndResiduals) {
  const WeightedGraph g = oracle::random_graph(60, 0.1, 12);
  const RandomWalkOperator op = normalize(g);
  const EigenSystem es = top_eigenpairs(op, 12);
  const Eigen::MatrixXd gram = es.left().transpose() * es.right();
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-8);

  const Eigen::VectorXd d = degree_vector(op);
  const Eigen::MatrixXd dgram = es.right().transpose() * d.asDiagonal() * es.right();
  EXPECT_LE((dgram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-8);

  const Eigen::MatrixXd a = oracle::dense_transition(g);
  for (std::size_t r = 0; r < es.k(); ++r) {
    const auto c = static_cast<Eigen::Index>(r);
    const Eigen::VectorXd psi = es.right().col(c);
    const Eigen::VectorXd phi = es.left().col(c);
    const double lam = es.eigenvalue(r);
    const Eigen::VectorXd rr = a * psi - lam * psi;
    const double dnorm = std::sqrt(rr.dot(d.asDiagonal() * rr));
    const double psi_dnorm = std::sqrt(psi.dot(d.asDiagonal() * psi));
    EXPECT_LE(dnorm, 1e-8 * psi_dnorm) << r;
    EXPECT_LE((a.transpose() * phi - lam * phi).norm(), 1e-8 * phi.norm()) << r;
    EXPECT_LE(es.residuals()[r], 1e-8);
    EXPECT_LE(lam, 1.0 + 1e-12);
    EXPECT_GE(lam, -1.0 - 1e-12);
  }
  for (std::size_t r = 1; r < es.k(); ++r) EXPECT_GE(es.eigenvalue(r - 1), es.eigenvalue(r));
}

TEST(Eigensolver, SignConventionLargestEntryPositive) {
  const EigenSystem es = top_eigenpairs(normalize(oracle::random_graph(50, 0.1, 33)), 8);
  for (std::size_t r = 0; r < es.k(); ++r) {
    const auto psi = es.psi(r);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
      if (std::abs(psi[i]) > std::abs(psi[arg]) * (1 + 1e-12)) arg = i;
    }
    EXPECT_GT(psi[arg], 0.0) << r;
  }
}

TEST(Eigensolver, Deterministic) {
  const RandomWalkOperator op = normalize(oracle::random_graph(80, 0.08, 5));
  const EigenSystem a = top_eigenpairs(op, 10);
  const EigenSystem b = top_eigenpairs(op, 10);
  EXPECT_TRUE(std::equal(a.eigenvalues().begin(), a.eigenvalues().end(), b.eigenvalues().begin()));
  EXPECT_EQ((a.right() - b.right()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Eigensolver, KRangeChecked) {
  const RandomWalkOperator op = normalize(oracle::random_graph(10, 0.3, 1));
  EXPECT_THROW(top_eigenpairs(op, 0), InputError);
  EXPECT_THROW(top_eigenpairs(op, 10), InputError);
  EXPECT_NO_THROW(top_eigenpairs(op, 9));
}

TEST(Eigensolver, FullRangeMatchesDense) {
  const WeightedGraph g = oracle::random_graph(12, 0.4, 9);
  const EigenSystem es = top_eigenpairs(normalize(g), 11);
  const oracle::DenseEigen dense = oracle::dense_eigen(g);
  for (std::size_t r = 0; r < 11; ++r) EXPECT_NEAR(es.eigenvalue(r), dense.values(static_cast<Eigen::Index>(r)), 1e-10);
}

TEST(Eigensolver, BudgetExhaustionCarriesResiduals) {
  const RandomWalkOperator op = normalize(oracle::random_graph(300, 0.02, 3));
  EigenOptions opts;
  opts.max_matvecs = 12;
  opts.krylov_dim = 10;
  try {
    top_eigenpairs(op, 6, opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_FALSE(e.residuals().empty());
  }
}

TEST(Eigensolver, DisconnectedGraphHasDegenerateUnitEigenvalue) {
  std::vector<PairWeight> pairs;
  for (std::size_t i = 0; i < 5; ++i) {
    pairs.push_back({i, (i + 1) % 5, 1.0 + static_cast<double>(i)});
    pairs.push_back({5 + i, 5 + (i + 1) % 5, 2.0 + 0.5 * static_cast<double>(i)});
  }
  const WeightedGraph g = WeightedGraph::from_pairs(oracle::make_ids(10), pairs);
  const EigenSystem es = top_eigenpairs(normalize(g), 4);
  EXPECT_NEAR(es.eigenvalue(0), 1.0, 1e-10);
  EXPECT_NEAR(es.eigenvalue(1), 1.0, 1e-10);
  EXPECT_TRUE(es.degenerate(0));
  EXPECT_TRUE(es.degenerate(1));
  EXPECT_FALSE(es.degenerate(3));

  // The unit eigenspace is spanned by the two component indicators.
  const oracle::DenseEigen dense = oracle::dense_eigen(g);
  Eigen::MatrixXd v = Eigen::MatrixXd(es.left().leftCols(2));
  for (Eigen::Index c = 0; c < 2; ++c) v.col(c) = (es.right().col(c).array() * dense.degrees.array().sqrt()).matrix();
  EXPECT_LE(oracle::subspace_sine(dense.vectors.leftCols(2), v), 1e-8);
}

TEST(Eigensolver, PermutationEquivariant) {
  const WeightedGraph g = oracle::random_graph(25, 0.3, 44);
  std::vector<std::size_t> perm(25);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[3], perm[17]);
  std::vector<NodeId> ids(25);
  for (std::size_t i = 0; i < 25; ++i) ids[perm[i]] = g.id(i);
  std::vector<PairWeight> pairs;
  g.for_each_edge([&](std::size_t i, std::size_t j, double w) { pairs.push_back({perm[i], perm[j], w}); });
  const WeightedGraph h = WeightedGraph::from_pairs(ids, pairs);

  const EigenSystem a = top_eigenpairs(normalize(g), 6);
  const EigenSystem b = top_eigenpairs(normalize(h), 6);
  for (std::size_t r = 0; r < 6; ++r) {
    EXPECT_NEAR(a.eigenvalue(r), b.eigenvalue(r), 1e-12);
    if (a.degenerate(r)) continue;
    for (std::size_t i = 0; i < 25; ++i) EXPECT_NEAR(a.psi(r)[i], b.psi(r)[perm[i]], 1e-9) << r;
  }
}

TEST(Eigensolver, KernelScaleRescalesVectorsOnly) {
  const WeightedGraph g = oracle::random_graph(30, 0.2, 71);
  const EigenSystem base = top_eigenpairs(normalize(g), 6);
  for (double c : {0.1, 5500.0}) {
    const EigenSystem scaled = top_eigenpairs(normalize(g.scaled(c)), 6);
    for (std::size_t r = 0; r < 6; ++r) {
      EXPECT_NEAR(scaled.eigenvalue(r), base.eigenvalue(r), 1e-12);
      // <phi, psi> = 1 ties the vectors to the degree scale: psi ~ c^-1/2, phi ~ c^1/2.
      for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_NEAR(scaled.psi(r)[i] * std::sqrt(c), base.psi(r)[i], 1e-9 * std::abs(base.psi(r)[0]) + 1e-12);
        EXPECT_NEAR(scaled.phi(r)[i] / std::sqrt(c), base.phi(r)[i], 1e-9 * std::abs(base.phi(r)[0]) + 1e-12);
      }
    }
  }
}

TEST(Eigensolver, FromRightVectorsRebuildsLeft) {
  const RandomWalkOperator op = normalize(oracle::random_graph(20, 0.3, 2));
  const EigenSystem es = top_eigenpairs(op, 5);
  const std::vector<double> lambda(es.eigenvalues().begin(), es.eigenvalues().end());
  const std::vector<double> res(es.residuals().begin(), es.residuals().end());
  const EigenSystem rebuilt = EigenSystem::from_right_vectors(op, lambda, es.right(), res);
  EXPECT_LE((rebuilt.left() - es.left()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Lanczos, DiagonalOperator) {
  const std::size_t n = 50;
  const SymmetricMatVec diag = [](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = (1.0 - 0.01 * static_cast<double>(i)) * x[i];
  };
  EigenOptions opts;
  opts.max_matvecs = 3000;
  const KrylovResult res = largest_eigenpairs(diag, n, 4, Eigen::MatrixXd(n, 0), opts);
  ASSERT_EQ(res.values.size(), 4u);
  for (std::size_t r = 0; r < 4; ++r) EXPECT_NEAR(res.values[r], 1.0 - 0.01 * static_cast<double>(r), 1e-12);
}
