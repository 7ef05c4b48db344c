#include "diffloc/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "diffloc/error.hpp"
#include "diffloc/rng.hpp"

namespace diffloc {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::span<const double> as_span(const VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> as_span(VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Index of the largest |x|, preferring the lowest index among entries within
// a relative 1e-12 of the maximum so the choice survives rounding noise.
Eigen::Index sign_anchor(const VectorXd& x) {
  const double top = x.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) >= top * (1.0 - 1e-12)) return i;
  }
  return 0;
}

class Orthogonalizer {
 public:
  Orthogonalizer(const MatrixXd& basis, const MatrixXd& locked) : basis_(basis), locked_(locked) {}

  // Two passes of classical Gram-Schmidt against the first `cols` basis
  // columns and all locked columns. Returns the basis coefficients.
  VectorXd apply(VectorXd& w, Eigen::Index cols) const {
    VectorXd h = VectorXd::Zero(cols);
    for (int pass = 0; pass < 2; ++pass) {
      if (locked_.cols() > 0) w.noalias() -= locked_ * (locked_.transpose() * w);
      if (cols > 0) {
        const VectorXd c = basis_.leftCols(cols).transpose() * w;
        w.noalias() -= basis_.leftCols(cols) * c;
        h += c;
      }
    }
    return h;
  }

 private:
  const MatrixXd& basis_;
  const MatrixXd& locked_;
};

// Random unit vector orthogonal to the first `cols` basis columns and the
// locked columns. Returns false if the complement appears exhausted.
bool fresh_direction(Rng& rng, const Orthogonalizer& orth, Eigen::Index cols, VectorXd& out) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = rng.uniform(-1.0, 1.0);
    const double before = out.norm();
    orth.apply(out, cols);
    const double after = out.norm();
    if (after > 1e-8 * before) {
      out /= after;
      return true;
    }
  }
  return false;
}

EigenSystem make_system(const RandomWalkOperator& op, std::vector<double> values, MatrixXd vectors,
                        std::vector<double> residuals, std::size_t matvecs, bool exact_trivial = false) {
  const auto n = static_cast<Eigen::Index>(op.size());
  const auto k = vectors.cols();
  VectorXd sqrt_d(n);
  for (Eigen::Index i = 0; i < n; ++i) sqrt_d(i) = std::sqrt(op.degrees()[static_cast<std::size_t>(i)]);

  MatrixXd right(n, k);
  MatrixXd left(n, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    VectorXd psi = vectors.col(r).cwiseQuotient(sqrt_d);
    const double sign = psi(sign_anchor(psi)) < 0.0 ? -1.0 : 1.0;
    right.col(r) = sign * psi;
    left.col(r) = sign * vectors.col(r).cwiseProduct(sqrt_d);
  }
  if (exact_trivial) {
    // psi_0 is constant; write it without the rounding of D^-1/2 v.
    const double vol = sqrt_d.squaredNorm();
    right.col(0).setConstant(1.0 / std::sqrt(vol));
    left.col(0) = sqrt_d.cwiseAbs2() / std::sqrt(vol);
  }
  auto ids = op.graph().ids();
  return EigenSystem({ids.begin(), ids.end()}, std::move(values), std::move(right), std::move(left),
                     std::move(residuals), matvecs);
}

}  // namespace

EigenSystem::EigenSystem(std::vector<NodeId> ids, std::vector<double> eigenvalues, Eigen::MatrixXd right,
                         Eigen::MatrixXd left, std::vector<double> residuals, std::size_t matvecs)
    : ids_(std::move(ids)),
      eigenvalues_(std::move(eigenvalues)),
      right_(std::move(right)),
      left_(std::move(left)),
      residuals_(std::move(residuals)),
      matvecs_(matvecs) {
  const auto n = static_cast<Eigen::Index>(ids_.size());
  const auto k = static_cast<Eigen::Index>(eigenvalues_.size());
  if (right_.rows() != n || right_.cols() != k || left_.rows() != n || left_.cols() != k ||
      residuals_.size() != eigenvalues_.size()) {
    throw InputError("eigensystem dimensions are inconsistent");
  }
}

EigenSystem EigenSystem::from_right_vectors(const RandomWalkOperator& op, std::vector<double> eigenvalues,
                                            Eigen::MatrixXd right, std::vector<double> residuals) {
  if (right.rows() != static_cast<Eigen::Index>(op.size())) {
    throw InputError("eigenvector length does not match the graph");
  }
  MatrixXd left = right;
  for (Eigen::Index i = 0; i < left.rows(); ++i) left.row(i) *= op.degrees()[static_cast<std::size_t>(i)];
  auto ids = op.graph().ids();
  return EigenSystem({ids.begin(), ids.end()}, std::move(eigenvalues), std::move(right), std::move(left),
                     std::move(residuals));
}

std::span<const double> EigenSystem::psi(std::size_t r) const {
  if (r >= k()) throw InputError("eigenvector index " + std::to_string(r) + " out of range");
  return {right_.col(static_cast<Eigen::Index>(r)).data(), n()};
}

std::span<const double> EigenSystem::phi(std::size_t r) const {
  if (r >= k()) throw InputError("eigenvector index " + std::to_string(r) + " out of range");
  return {left_.col(static_cast<Eigen::Index>(r)).data(), n()};
}

bool EigenSystem::degenerate(std::size_t r) const {
  if (r >= k()) throw InputError("eigenvector index " + std::to_string(r) + " out of range");
  const bool below = r + 1 < k() && std::abs(eigenvalues_[r] - eigenvalues_[r + 1]) < kDegeneracyGap;
  const bool above = r > 0 && std::abs(eigenvalues_[r] - eigenvalues_[r - 1]) < kDegeneracyGap;
  return below || above;
}

KrylovResult largest_eigenpairs(const SymmetricMatVec& apply, std::size_t n, std::size_t nev,
                                const Eigen::MatrixXd& locked, const EigenOptions& options) {
  const auto locked_count = static_cast<std::size_t>(locked.cols());
  if (locked_count > n || (locked_count > 0 && locked.rows() != static_cast<Eigen::Index>(n))) {
    throw InputError("locked basis does not match operator size");
  }
  const std::size_t n_eff = n - locked_count;
  if (nev == 0 || nev > n_eff) throw InputError("requested eigenpair count is out of range");

  std::size_t m = options.krylov_dim > 0 ? std::max(options.krylov_dim, nev + 1) : std::max(2 * nev + 1, nev + 32);
  m = std::min(m, n_eff);
  const std::size_t budget = options.max_matvecs > 0 ? options.max_matvecs : 300 * nev;

  const auto N = static_cast<Eigen::Index>(n);
  const auto M = static_cast<Eigen::Index>(m);
  MatrixXd basis = MatrixXd::Zero(N, M + 1);
  MatrixXd projected = MatrixXd::Zero(M, M);
  Orthogonalizer orth(basis, locked);
  Rng rng(options.seed);

  VectorXd start(N);
  if (!fresh_direction(rng, orth, 0, start)) throw NumericalError("cannot build a start vector");
  basis.col(0) = start;

  KrylovResult out;
  VectorXd w(N);
  VectorXd theta;
  MatrixXd ritz;
  Eigen::Index used = 0;
  Eigen::Index kept = 0;
  double last_beta = 0.0;
  double scale = 0.0;
  std::vector<double> estimates(nev, std::numeric_limits<double>::infinity());

  bool exhausted = false;
  for (;;) {
    used = M;
    for (Eigen::Index j = kept; j < M; ++j) {
      const VectorXd v = basis.col(j);
      apply(as_span(v), as_span(w));
      ++out.matvecs;
      const VectorXd h = orth.apply(w, j + 1);
      projected.block(0, j, j + 1, 1) = h;
      projected.block(j, 0, 1, j + 1) = h.transpose();
      scale = std::max(scale, h.cwiseAbs().maxCoeff());
      last_beta = w.norm();
      scale = std::max(scale, last_beta);

      if (last_beta <= 1e-13 * std::max(scale, 1e-300)) {
        // Invariant subspace: continue from a new direction with zero coupling.
        last_beta = 0.0;
        if (static_cast<std::size_t>(j + 1) == n_eff) {
          used = j + 1;
          break;
        }
        VectorXd next(N);
        if (!fresh_direction(rng, orth, j + 1, next)) {
          used = j + 1;
          exhausted = true;
          break;
        }
        basis.col(j + 1) = next;
      } else {
        basis.col(j + 1) = w / last_beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<MatrixXd> small(projected.topLeftCorner(used, used));
    if (small.info() != Eigen::Success) throw NumericalError("projected eigenproblem failed");
    theta = small.eigenvalues().reverse();
    ritz = small.eigenvectors().rowwise().reverse();

    bool converged = true;
    for (std::size_t i = 0; i < nev; ++i) {
      estimates[i] = std::abs(last_beta * ritz(used - 1, static_cast<Eigen::Index>(i)));
      converged = converged && estimates[i] <= options.tol;
    }
    if (exhausted || static_cast<std::size_t>(used) == n_eff) converged = true;
    if (converged) break;
    if (out.matvecs >= budget) {
      std::ostringstream msg;
      msg << "eigensolver did not converge within " << budget << " matvecs; worst residual "
          << *std::max_element(estimates.begin(), estimates.end());
      throw ConvergenceError(msg.str(), estimates);
    }

    // Thick restart: keep the leading Ritz vectors plus the residual direction.
    kept = std::min<Eigen::Index>(used - 1, static_cast<Eigen::Index>(nev + (static_cast<std::size_t>(used) - nev) / 2));
    const MatrixXd retained = basis.leftCols(used) * ritz.leftCols(kept);
    const VectorXd residual_dir = basis.col(used);
    basis.leftCols(kept) = retained;
    basis.col(kept) = residual_dir;
    projected.setZero();
    for (Eigen::Index i = 0; i < kept; ++i) {
      projected(i, i) = theta(i);
      projected(kept, i) = projected(i, kept) = last_beta * ritz(used - 1, i);
    }
  }

  const auto K = static_cast<Eigen::Index>(nev);
  if (used < K) throw NumericalError("Krylov space collapsed below the requested eigenpair count");
  out.vectors = basis.leftCols(used) * ritz.leftCols(K);
  out.values.resize(nev);
  out.residuals.resize(nev);
  VectorXd x(N);
  VectorXd sx(N);
  for (Eigen::Index r = 0; r < K; ++r) {
    out.vectors.col(r).normalize();
    x = out.vectors.col(r);
    apply(as_span(x), as_span(sx));
    const double lambda = x.dot(sx);
    out.values[static_cast<std::size_t>(r)] = lambda;
    out.residuals[static_cast<std::size_t>(r)] = (sx - lambda * x).norm();
  }
  return out;
}

EigenSystem top_eigenpairs(const RandomWalkOperator& op, std::size_t k, const EigenOptions& options) {
  const std::size_t n = op.size();
  if (n < 2 || k < 1 || k > n - 1) {
    throw InputError("k = " + std::to_string(k) + " out of range [1, n-1] for n = " + std::to_string(n));
  }
  EigenOptions opts = options;
  if (opts.max_matvecs == 0) opts.max_matvecs = 300 * k;

  const SymmetricMatVec apply = [&op](std::span<const double> x, std::span<double> y) {
    op.apply_symmetric(x, y);
  };

  std::vector<double> values;
  std::vector<double> residuals;
  MatrixXd vectors(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  std::size_t matvecs = 0;

  const bool connected = is_connected(op.graph());
  if (connected) {
    // S D^1/2 1 = D^1/2 1, and it spans the whole eigenvalue-1 space.
    MatrixXd trivial(static_cast<Eigen::Index>(n), 1);
    for (std::size_t i = 0; i < n; ++i) trivial(static_cast<Eigen::Index>(i), 0) = std::sqrt(op.degrees()[i]);
    trivial.col(0).normalize();
    vectors.col(0) = trivial.col(0);
    values.push_back(1.0);
    VectorXd s0(static_cast<Eigen::Index>(n));
    const VectorXd v0 = trivial.col(0);
    op.apply_symmetric({v0.data(), n}, {s0.data(), n});
    residuals.push_back((s0 - v0).norm());
    ++matvecs;
    if (k > 1) {
      KrylovResult rest = largest_eigenpairs(apply, n, k - 1, trivial, opts);
      vectors.rightCols(static_cast<Eigen::Index>(k - 1)) = rest.vectors;
      values.insert(values.end(), rest.values.begin(), rest.values.end());
      residuals.insert(residuals.end(), rest.residuals.begin(), rest.residuals.end());
      matvecs += rest.matvecs;
    }
  } else {
    KrylovResult all = largest_eigenpairs(apply, n, k, MatrixXd(static_cast<Eigen::Index>(n), 0), opts);
    vectors = std::move(all.vectors);
    values = std::move(all.values);
    residuals = std::move(all.residuals);
    matvecs = all.matvecs;
  }

  // Rayleigh quotients may reorder near-equal values; keep the output sorted.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  MatrixXd sorted(vectors.rows(), vectors.cols());
  std::vector<double> sorted_values(k);
  std::vector<double> sorted_residuals(k);
  for (std::size_t r = 0; r < k; ++r) {
    sorted.col(static_cast<Eigen::Index>(r)) = vectors.col(static_cast<Eigen::Index>(order[r]));
    sorted_values[r] = values[order[r]];
    sorted_residuals[r] = residuals[order[r]];
  }
  const bool trivial_first = connected && order[0] == 0;
  return make_system(op, std::move(sorted_values), std::move(sorted), std::move(sorted_residuals), matvecs,
                     trivial_first);
}

EigenSystem full_eigensystem(const RandomWalkOperator& op) {
  const std::size_t n = op.size();
  if (n == 0) throw InputError("graph is empty");
  if (n > 5000) throw InputError("dense eigendecomposition is limited to 5000 nodes");
  const auto N = static_cast<Eigen::Index>(n);
  MatrixXd s(N, N);
  VectorXd e = VectorXd::Zero(N);
  VectorXd col(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    e(j) = 1.0;
    op.apply_symmetric({e.data(), n}, {col.data(), n});
    s.col(j) = col;
    e(j) = 0.0;
  }
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigendecomposition failed");
  const VectorXd lambda = solver.eigenvalues().reverse();
  const MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  std::vector<double> values(n);
  std::vector<double> residuals(n);
  for (Eigen::Index r = 0; r < N; ++r) {
    values[static_cast<std::size_t>(r)] = lambda(r);
    residuals[static_cast<std::size_t>(r)] = (s * vectors.col(r) - lambda(r) * vectors.col(r)).norm();
  }
  return make_system(op, std::move(values), vectors, std::move(residuals), n);
}

Histogram spectrum_histogram(const EigenSystem& es, std::size_t bins) {
  if (es.k() == 0) throw InputError("eigensystem is empty");
  const auto values = es.eigenvalues();
  const double lowest = *std::min_element(values.begin(), values.end());
  return make_histogram(values, std::min(lowest, 1.0), 1.0, bins);
}

}  // namespace diffloc
