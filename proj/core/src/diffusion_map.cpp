#include "diffloc/diffusion_map.hpp"

#include <cmath>

#include "diffloc/error.hpp"

namespace diffloc {

namespace {

constexpr std::size_t kMaxPoweringNodes = 5000;
constexpr unsigned kMaxPoweringTime = 16;

double int_pow(double x, unsigned t) {
  double result = 1.0;
  for (unsigned i = 0; i < t; ++i) result *= x;
  return result;
}

}  // namespace

DiffusionEmbedding::DiffusionEmbedding(std::vector<NodeId> ids, unsigned time, Eigen::MatrixXd coords)
    : ids_(std::move(ids)), time_(time), coords_(std::move(coords)) {
  if (coords_.rows() != static_cast<Eigen::Index>(ids_.size())) {
    throw InputError("embedding rows do not match node count");
  }
}

double DiffusionEmbedding::coord(std::size_t node, std::size_t axis) const {
  if (node >= size() || axis >= dimension()) throw InputError("embedding index out of range");
  return coords_(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(axis));
}

DiffusionEmbedding embed(const EigenSystem& es, unsigned t, std::size_t k) {
  if (t < 1) throw InputError("diffusion time must be at least 1");
  if (k < 1 || k >= es.k()) {
    throw InputError("embedding dimension " + std::to_string(k) + " needs " + std::to_string(k + 1) +
                     " eigenpairs, have " + std::to_string(es.k()));
  }
  const auto n = static_cast<Eigen::Index>(es.n());
  Eigen::MatrixXd coords(n, static_cast<Eigen::Index>(k));
  for (std::size_t r = 1; r <= k; ++r) {
    const double scale = int_pow(es.eigenvalue(r), t);
    coords.col(static_cast<Eigen::Index>(r - 1)) = scale * es.right().col(static_cast<Eigen::Index>(r));
  }
  auto ids = es.ids();
  return DiffusionEmbedding({ids.begin(), ids.end()}, t, std::move(coords));
}

std::vector<double> transition_row(const RandomWalkOperator& op, std::size_t i, unsigned t) {
  const std::size_t n = op.size();
  if (i >= n) throw InputError("node index " + std::to_string(i) + " out of range");
  std::vector<double> row(n, 0.0);
  std::vector<double> next(n);
  row[i] = 1.0;
  for (unsigned step = 0; step < t; ++step) {
    op.apply_transition_transpose(row, next);
    row.swap(next);
  }
  return row;
}

double squared_diffusion_distance(const RandomWalkOperator& op, std::size_t i, std::size_t j, unsigned t) {
  const std::size_t n = op.size();
  if (i >= n || j >= n) throw InputError("node index out of range");
  if (t < 1) throw InputError("diffusion time must be at least 1");
  if (n > kMaxPoweringNodes || t > kMaxPoweringTime) {
    throw InputError("explicit diffusion distance is limited to n <= 5000 and t <= 16");
  }
  if (i == j) return 0.0;
  const std::vector<double> a = transition_row(op, i, t);
  const std::vector<double> b = transition_row(op, j, t);
  const auto degree = op.degrees();
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff / degree[k];
  }
  return sum;
}

double squared_embedding_distance(const DiffusionEmbedding& emb, std::size_t i, std::size_t j) {
  if (i >= emb.size() || j >= emb.size()) throw InputError("node index out of range");
  const auto& c = emb.coords();
  return (c.row(static_cast<Eigen::Index>(i)) - c.row(static_cast<Eigen::Index>(j))).squaredNorm();
}

std::vector<double> diffusion_scales(const EigenSystem& es, unsigned t) {
  std::vector<double> scales;
  for (std::size_t r = 1; r < es.k(); ++r) scales.push_back(int_pow(es.eigenvalue(r), t));
  return scales;
}

std::size_t suggest_dimension(const EigenSystem& es, unsigned t, double delta) {
  std::size_t k = 0;
  for (double s : diffusion_scales(es, t)) {
    if (s > delta) {
      ++k;
    } else {
      break;
    }
  }
  return k;
}

}  // namespace diffloc
