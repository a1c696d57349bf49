#pragma once

// Small dense linear algebra used by every other module: symmetric
// eigendecomposition, simultaneous diagonalization of commuting symmetric
// operators and orthonormal subspaces.
//
// All routines are deterministic. Eigenvectors are sign-normalized so that
// their first non-negligible coordinate is positive, and exact eigenvalue
// ties are ordered lexicographically by eigenvector.

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "g2lab/error.hpp"

namespace g2lab {

using Vector = Eigen::VectorXd;
using LinOp = Eigen::MatrixXd;

struct Tolerance {
  double identity_tol = 1e-10;
  /// Eigenvalue clustering gap, relative to the spectral radius.
  double eig_gap = 1e-8;

  /// Throws InvalidTolerance unless both thresholds are strictly positive.
  void validate() const;

  /// Absolute clustering gap for an operator of the given spectral radius.
  double gap_for(double spectral_radius) const { return eig_gap * spectral_radius; }
};

/// Orthonormal basis of a subspace of R^ambient_dim, stored as columns.
class Subspace {
 public:
  explicit Subspace(Eigen::Index ambient_dim = 0);
  Subspace(Eigen::Index ambient_dim, LinOp basis);

  static Subspace span_of(const LinOp& columns, double rank_tol = 1e-8);
  static Subspace full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index dim() const { return basis_.cols(); }
  bool empty() const { return dim() == 0; }
  const LinOp& basis() const { return basis_; }
  Vector vector(Eigen::Index i) const { return basis_.col(i); }

  LinOp projector() const { return basis_ * basis_.transpose(); }
  Vector project(const Vector& v) const { return basis_ * (basis_.transpose() * v); }
  /// Norm of the component of v orthogonal to this subspace.
  double distance(const Vector& v) const { return (v - project(v)).norm(); }
  /// B^T A B: the operator A compressed to this subspace, in basis coordinates.
  LinOp compress(const LinOp& a) const { return basis_.transpose() * a * basis_; }

  /// Largest deviation of the Gram matrix from the identity.
  double orthonormality_defect() const;

 private:
  Eigen::Index ambient_dim_;
  LinOp basis_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Subspace basis;              // column i pairs with values[i]
};

struct SimultaneousDecomposition {
  Subspace basis;
  std::vector<double> a_values;
  std::vector<double> b_values;
};

struct ContainmentResult {
  bool contained = true;
  double max_leak = 0.0;
};

double spectral_radius_sym(const LinOp& a);
double operator_norm(const LinOp& a);

/// Eigen-decomposition of a symmetric operator. Throws NotSymmetric when
/// ||A - A^T|| exceeds identity_tol * ||A|| (Frobenius norms).
EigenDecomposition sym_eig(const LinOp& a, const Tolerance& tol = {});

/// Common orthonormal eigenbasis of two commuting symmetric operators.
/// A is diagonalized first; its eigenvalues are clustered transitively with
/// the gap tol.gap_for(rho(A)), and B is diagonalized inside every cluster.
SimultaneousDecomposition simultaneous_diag(const LinOp& a, const LinOp& b,
                                            const Tolerance& tol = {});

Subspace orthocomplement(const Subspace& s);

/// Does A map span(S) into span(T)? max_leak is the largest norm of the
/// component of A s outside T over the basis vectors s of S.
ContainmentResult subspace_image_contained(const LinOp& a, const Subspace& s,
                                           const Subspace& t, const Tolerance& tol = {});

/// Gram-Schmidt (two passes) over the given vectors, dropping any whose
/// remainder falls at or below rank_tol.
Subspace orthonormalize(std::span<const Vector> vectors, Eigen::Index ambient_dim,
                        double rank_tol = 1e-8);

/// Number of distinct values once values closer than merge_tol are merged
/// transitively.
int count_distinct(std::vector<double> values, double merge_tol);

}  // namespace g2lab
