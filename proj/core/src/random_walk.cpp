#include "diffloc/random_walk.hpp"

#include <cmath>

#include "diffloc/error.hpp"

namespace diffloc {
namespace {

void check_sizes(std::size_t n, std::span<const double> x, std::span<double> y) {
  if (x.size() != n || y.size() != n) throw InputError("vector length does not match operator size");
}

}  // namespace

RandomWalkOperator::RandomWalkOperator(WeightedGraph graph) : graph_(std::move(graph)) {
  degree_ = graph_.degrees();
  const std::size_t n = degree_.size();
  inv_degree_.resize(n);
  inv_sqrt_degree_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(degree_[i] > 0.0) || !std::isfinite(degree_[i])) {
      throw InputError("node '" + graph_.id(i) + "' has zero degree");
    }
    inv_degree_[i] = 1.0 / degree_[i];
    inv_sqrt_degree_[i] = 1.0 / std::sqrt(degree_[i]);
  }
}

void RandomWalkOperator::apply_transition(std::span<const double> x, std::span<double> y) const {
  const auto n = static_cast<std::ptrdiff_t>(size());
  check_sizes(size(), x, y);
  const SparseMatrix& w = graph_.weights();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < n; ++row) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(w, static_cast<Eigen::Index>(row)); it; ++it) {
      sum += it.value() * x[static_cast<std::size_t>(it.col())];
    }
    y[static_cast<std::size_t>(row)] = sum * inv_degree_[static_cast<std::size_t>(row)];
  }
}

void RandomWalkOperator::apply_transition_transpose(std::span<const double> x, std::span<double> y) const {
  // A^T x = W D^-1 x because W is symmetric.
  const auto n = static_cast<std::ptrdiff_t>(size());
  check_sizes(size(), x, y);
  const SparseMatrix& w = graph_.weights();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < n; ++row) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(w, static_cast<Eigen::Index>(row)); it; ++it) {
      const auto col = static_cast<std::size_t>(it.col());
      sum += it.value() * x[col] * inv_degree_[col];
    }
    y[static_cast<std::size_t>(row)] = sum;
  }
}

void RandomWalkOperator::apply_symmetric(std::span<const double> x, std::span<double> y) const {
  const auto n = static_cast<std::ptrdiff_t>(size());
  check_sizes(size(), x, y);
  const SparseMatrix& w = graph_.weights();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < n; ++row) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(w, static_cast<Eigen::Index>(row)); it; ++it) {
      const auto col = static_cast<std::size_t>(it.col());
      sum += it.value() * inv_sqrt_degree_[col] * x[col];
    }
    y[static_cast<std::size_t>(row)] = sum * inv_sqrt_degree_[static_cast<std::size_t>(row)];
  }
}

double RandomWalkOperator::transition(std::size_t i, std::size_t j) const {
  return graph_.weight(i, j) * inv_degree_.at(i);
}

std::vector<double> RandomWalkOperator::transition_row_sums() const {
  std::vector<double> ones(size(), 1.0);
  std::vector<double> sums(size());
  apply_transition(ones, sums);
  return sums;
}

RandomWalkOperator normalize(const WeightedGraph& graph) { return RandomWalkOperator(graph); }

}  // namespace diffloc
