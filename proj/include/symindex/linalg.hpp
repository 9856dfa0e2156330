// symindex: dense linear algebra helpers shared by all modules.
// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace symindex {

using Cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Rank decisions cut at rel_rank_tol * sigma_max throughout.
struct Tol {
  static constexpr double rel_rank   = 1e-8;   // singular value cutoff, relative
  static constexpr double angle      = 1e-7;   // unit-circle eigenvalue angle [rad]
  static constexpr double inertia    = 1e-9;   // Gram eigenvalue zero band, relative
  static constexpr double residual   = 1e-9;   // generic structural residual gate
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IdentityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thin-QR orthonormalization of the columns. Requires full column rank.
Mat orthonormalize(const Mat& Z);

int rank_svd(const Mat& A, double rel_tol = Tol::rel_rank);

// Orthonormal basis of the right null space (N x nullity).
Mat nullspace(const Mat& A, double rel_tol = Tol::rel_rank);

// Orthonormal basis of the column space.
Mat column_space(const Mat& A, double rel_tol = Tol::rel_rank);

// Orthonormal basis of span(U) ∩ span(V); inputs need not be orthonormal.
Mat intersection(const Mat& U, const Mat& V, double rel_tol = Tol::rel_rank);

// Orthonormal basis of span(U) + span(V).
Mat subspace_sum(const Mat& U, const Mat& V, double rel_tol = Tol::rel_rank);

// Orthonormal basis of the orthogonal complement of span(U) in C^ambient.
Mat orth_complement(const Mat& U, int ambient);

// Sine of the largest principal angle between two equal-dimension subspaces;
// 0 for equal spans, 1 when some direction is orthogonal to the other span.
double subspace_gap(const Mat& U, const Mat& V);

struct Inertia {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  int dim() const { return pos + neg + zero; }
  int signature() const { return pos - neg; }
  bool operator==(const Inertia&) const = default;
};

// Inertia of a Hermitian matrix; eigenvalues with |mu| <= zero_tol*max(1,‖H‖)
// count as zero. H is symmetrized first; asymmetry beyond residual tol throws.
Inertia inertia_of(const Mat& H, double zero_tol = Tol::inertia);

// All eigenvalues of the Hermitian pencil (A, B), B positive definite,
// ascending. LAPACK zhegvd underneath; Eigen is used for everything smaller.
RVec hermitian_pencil_eigenvalues(const Mat& A, const Mat& B);

// phase in (-pi, pi]
double wrap_angle(double a);

}  // namespace symindex
