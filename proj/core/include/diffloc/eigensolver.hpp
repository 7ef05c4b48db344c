#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "diffloc/histogram.hpp"
#include "diffloc/random_walk.hpp"

namespace diffloc {

struct EigenOptions {
  /// Absolute residual bound ||S v - lambda v|| for unit v.
  double tol = 1e-10;
  /// Matvec budget; 0 means 300 * k.
  std::size_t max_matvecs = 0;
  /// Krylov subspace size; 0 picks max(2 nev + 1, nev + 32) capped by n.
  std::size_t krylov_dim = 0;
  /// Seeds the start vector (and any restart after an invariant subspace).
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Eigenvalues closer than this are reported as one degenerate cluster.
inline constexpr double kDegeneracyGap = 1e-10;

/// Eigenpairs of A = D^-1 W: eigenvalues in nonincreasing order, right
/// eigenvectors psi_r = D^-1/2 v_r and left eigenvectors phi_r = D^1/2 v_r,
/// where v_r are orthonormal eigenvectors of S. Hence <phi_i, psi_j> = delta_ij.
/// Each psi_r is signed so that its largest-magnitude entry is positive
/// (lowest index on ties).
class EigenSystem {
 public:
  EigenSystem() = default;
  EigenSystem(std::vector<NodeId> ids, std::vector<double> eigenvalues, Eigen::MatrixXd right,
              Eigen::MatrixXd left, std::vector<double> residuals, std::size_t matvecs = 0);

  /// Rebuilds a system from right eigenvectors alone, using phi = D psi.
  static EigenSystem from_right_vectors(const RandomWalkOperator& op, std::vector<double> eigenvalues,
                                        Eigen::MatrixXd right, std::vector<double> residuals);

  std::size_t k() const noexcept { return eigenvalues_.size(); }
  std::size_t n() const noexcept { return ids_.size(); }
  std::span<const NodeId> ids() const noexcept { return ids_; }

  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t r) const { return eigenvalues_.at(r); }
  std::span<const double> psi(std::size_t r) const;
  std::span<const double> phi(std::size_t r) const;
  const Eigen::MatrixXd& right() const noexcept { return right_; }
  const Eigen::MatrixXd& left() const noexcept { return left_; }

  /// ||A psi_r - lambda_r psi_r||_D, equal to the residual of the S pair.
  std::span<const double> residuals() const noexcept { return residuals_; }
  /// True when pair r shares its eigenvalue (within kDegeneracyGap) with a neighbour;
  /// individual vectors of such a cluster are solver dependent.
  bool degenerate(std::size_t r) const;
  std::size_t matvecs() const noexcept { return matvecs_; }

 private:
  std::vector<NodeId> ids_;
  std::vector<double> eigenvalues_;
  Eigen::MatrixXd right_;
  Eigen::MatrixXd left_;
  std::vector<double> residuals_;
  std::size_t matvecs_ = 0;
};

/// y = M x for a symmetric M.
using SymmetricMatVec = std::function<void(std::span<const double>, std::span<double>)>;

struct KrylovResult {
  std::vector<double> values;  // nonincreasing
  Eigen::MatrixXd vectors;     // orthonormal columns
  std::vector<double> residuals;
  std::size_t matvecs = 0;
};

/// Largest algebraic eigenpairs of a symmetric operator restricted to the
/// orthogonal complement of `locked` (orthonormal columns, may be empty).
/// Thick-restart Lanczos with full reorthogonalization. Throws
/// ConvergenceError when the budget runs out.
KrylovResult largest_eigenpairs(const SymmetricMatVec& apply, std::size_t n, std::size_t nev,
                                const Eigen::MatrixXd& locked, const EigenOptions& options);

/// Top-k eigenpairs of A via S. Requires 1 <= k <= n - 1. On connected
/// graphs the trivial pair (1, D^1/2 1) is known in closed form and locked,
/// so the solver only works on its complement.
EigenSystem top_eigenpairs(const RandomWalkOperator& op, std::size_t k, const EigenOptions& options = {});

/// All n eigenpairs from a dense decomposition of S (n <= 5000).
EigenSystem full_eigensystem(const RandomWalkOperator& op);

/// Histogram of the computed eigenvalues over [min lambda, 1].
Histogram spectrum_histogram(const EigenSystem& es, std::size_t bins);

}  // namespace diffloc
