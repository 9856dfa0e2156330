// Self-adjoint boundary conditions as Lagrangian subspaces of the doubled
// space, their canonical (trace space, Hermitian matrix) presentation, and
// the named constructions.
//
// In standardized doubled coordinates a = (-y(0), y(T), x(0), x(T)) = (p, q)
// every boundary Lagrangian is
//   { (p, q) : q in V,  proj_V p = A q }
// with V = x-traces of (Lambda_0 + Lambda_D) ∩ Lambda_N and A Hermitian on V.
// The p-parts of Lambda_0 ∩ Lambda_D fill the orthogonal complement of V.
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/symplectic.hpp"

namespace symindex {

struct BoundaryData {
  int n = 0;
  int nu = 0;   // dim V
  int k = 0;    // dim(Lambda_0 ∩ Lambda_D) = 2n - nu
  Mat V;        // 2n x nu orthonormal trace basis, (x(0), x(T)) coordinates
  Mat A;        // nu x nu Hermitian in the basis V
  double herm_residual = 0.0;  // asymmetry of the raw A
  double rebuild_gap = 0.0;    // principal angle between input and rebuild
};

BoundaryData canonicalize_boundary(const LagrangianFrame& bc);

// frame from canonical data; V_raw is orthonormalized first and A must be
// Hermitian in that orthonormalized basis
LagrangianFrame bc_from_trace_form(int n, const Mat& V_raw, const Mat& A);

// x-traces confined to span(Vx) with no potential term: A = 0
LagrangianFrame bc_trace_subspace(int n, const Mat& Vx);

// y(0) = As x(0), y(T) = Ae x(T) with Hermitian As, Ae
LagrangianFrame bc_robin(int n, const Mat& As, const Mat& Ae);

}  // namespace symindex
