// symindex: complex symplectic spaces and Lagrangian frames.
//
// Conventions used everywhere in this library:
//   <u,v> = v^* u  (Hermitian inner product, linear in the first argument)
//   omega(u,v) = <Omega u, v> = v^* Omega u
//   standard space (C^{2m}, J),  J = [0 -I; I 0],  vectors z = (y, x)
//   negated space  (C^{2m}, -J)
//   doubled space  (C^{2n} (+) C^{2n}, (-J) (+) J), vectors (z(0), z(T));
//     the orthogonal basis change S with S^T ((-J)(+)J) S = J_{2n} reorders
//     boundary data as (-y(0), y(T), x(0), x(T)).
//
// Lagrangian frames are stored with orthonormal columns; for such a frame
// [X;Y] in standardized coordinates the matrix X+iY is exactly unitary and
// f(Z) = (X-iY)(X+iY)^{-1} identifies Lagrangian subspaces with U(m).
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/linalg.hpp"
#include "symindex/rng.hpp"

namespace symindex {

enum class FormKind { standard, negated, doubled };

struct SymplecticSpace {
  FormKind kind = FormKind::standard;
  int half_dim = 1;  // Lagrangians have this dimension; ambient is twice it

  static SymplecticSpace standard(int m) { return {FormKind::standard, m}; }
  static SymplecticSpace negated(int m) { return {FormKind::negated, m}; }
  static SymplecticSpace doubled(int n) { return {FormKind::doubled, 2 * n}; }

  int ambient_dim() const { return 2 * half_dim; }
  // factor dimension n for doubled spaces
  int factor_dim() const;

  RMat form() const;          // Omega, real skew-symmetric 2m x 2m
  RMat standardizer() const;  // orthogonal O with O^T Omega O = J_m
  Cplx omega(const Vec& u, const Vec& v) const { return v.dot(form() * u); }

  bool operator==(const SymplecticSpace&) const = default;
};

// J_m on C^{2m}
RMat standard_J(int m);

struct LagrangianFrame {
  SymplecticSpace space;
  Mat Z;  // ambient x half_dim, orthonormal columns

  int dim() const { return static_cast<int>(Z.cols()); }
};

struct LagrangianCheck {
  double isotropy_residual = 0.0;  // max |Z^* Omega Z|
  int rank = 0;
  bool ok = false;
};
LagrangianCheck check_lagrangian(const SymplecticSpace& sp, const Mat& Z);

// Orthonormalizes and validates; throws ValidationError when the span is not
// Lagrangian.
LagrangianFrame make_frame(const SymplecticSpace& sp, const Mat& Z_raw);

// ---- stock frames -------------------------------------------------------

LagrangianFrame dirichlet_frame(int m);  // C^m (+) {0}: frame [I;0], f = I
LagrangianFrame neumann_frame(int m);    // {0} (+) C^m: frame [0;I], f = -I

// Boundary-condition Lagrangians in the doubled space:
LagrangianFrame bc_dirichlet(int n);  // x(0) = x(T) = 0
LagrangianFrame bc_neumann(int n);    // y(0) = y(T) = 0
LagrangianFrame bc_periodic(int n);   // z(0) = z(T), the graph of I
// {(zs, ze) : zs in span Zs, ze in span Ze}, frames given in C^{2n}
LagrangianFrame bc_separated(const SymplecticSpace& dbl, const Mat& Zs, const Mat& Ze);

// Gr(M) = {(u, Mu)} for real symplectic M; validates M^T J M = J.
LagrangianFrame graph_frame(const RMat& M);

// M * frame, re-orthonormalized; validates the image stays Lagrangian.
LagrangianFrame pushforward(const Mat& M, const LagrangianFrame& F);
LagrangianFrame pushforward(const RMat& M, const LagrangianFrame& F);

// ---- unitary representation ---------------------------------------------

// frame in standardized coordinates (O^T Z), same span under the J_m form
Mat standardized(const LagrangianFrame& F);

// f(Lambda) in U(m)
Mat unitary_rep(const LagrangianFrame& F);

// section of the inverse: frame with f = U, namely O * [(I+U)/2; i(U-I)/2]
LagrangianFrame frame_from_unitary(const SymplecticSpace& sp, const Mat& U);

LagrangianFrame random_lagrangian(Rng& rng, const SymplecticSpace& sp);

// ---- intersections -------------------------------------------------------

// dim(span F1 ∩ span F2) two ways: multiplicity of unit eigenvalues of
// f(F2)^* f(F1) within the angle tolerance, and SVD nullity of [Z1 Z2].
// Disagreement raises DegenerateInput (inputs sit on a tolerance boundary).
int intersection_dim(const LagrangianFrame& F1, const LagrangianFrame& F2);

// the two routes individually
int intersection_dim_angles(const LagrangianFrame& F1, const LagrangianFrame& F2,
                            double angle_tol = Tol::angle);
int intersection_dim_svd(const LagrangianFrame& F1, const LagrangianFrame& F2,
                         double rel_tol = Tol::rel_rank);

Mat intersection_basis(const LagrangianFrame& F1, const LagrangianFrame& F2,
                       double rel_tol = Tol::rel_rank);

// sorted phases of f(F2)^* f(F1) in (-pi, pi]
RVec relative_phases(const LagrangianFrame& F1, const LagrangianFrame& F2);

}  // namespace symindex
