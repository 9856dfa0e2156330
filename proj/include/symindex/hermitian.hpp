// Hermitian forms on C^N: restriction to subspaces, form-orthogonal
// complements, and the bookkeeping identities that relate the Morse index
// of a form to the Morse index of its restriction.
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/linalg.hpp"

namespace symindex {

// A form is represented by its Hermitian matrix Q: form(u, v) = v^† Q u.
// Subspaces are matrices with orthonormal columns unless noted otherwise.

// V^† Q V, symmetrized. V need not be orthonormal.
Mat restrict_form(const Mat& Q, const Mat& V);

// Orthonormal basis of ker Q.
Mat form_kernel(const Mat& Q, double rel_tol = Tol::rel_rank);

// Orthonormal basis of V^Q = { x : form(x, v) = 0 for all v in V }.
// Always contains ker Q.
Mat q_orthogonal(const Mat& Q, const Mat& V, double rel_tol = Tol::rel_rank);

// Data for  m^-(Q) - m^-(Q|_V) = dim(V ∩ V^Q) - dim(V ∩ ker Q) + m^-(Q|_{V^Q}).
struct RelativeIndexData {
  Inertia full;            // inertia of Q on C^N
  Inertia restricted;      // inertia of Q|_V
  Inertia on_qorth;        // inertia of Q|_{V^Q}
  int dim_v_cap_vq = 0;    // dim(V ∩ V^Q)
  int dim_v_cap_ker = 0;   // dim(V ∩ ker Q)
  int relative_index = 0;  // right hand side above
  bool difference_ok = false;
};

RelativeIndexData relative_morse_index(const Mat& Q, const Mat& V,
                                       double rel_tol = Tol::rel_rank,
                                       double zero_tol = Tol::inertia);

// Data for  m^-(Q) = m^-(Q|_W) + m^-(Q|_{W^Q}) + dim(W ∩ W^Q) - dim(W ∩ ker Q).
struct SplitIndexData {
  Inertia full;
  Inertia on_w;
  Inertia on_wq;
  int dim_w_cap_wq = 0;
  int dim_w_cap_ker = 0;
  bool split_ok = false;
};

SplitIndexData split_morse_index(const Mat& Q, const Mat& W,
                                 double rel_tol = Tol::rel_rank,
                                 double zero_tol = Tol::inertia);

// dim V^Q - dim ker Q == N - dim(V + ker Q).  Counting check for the
// orthogonal-complement construction; returns both sides.
struct QOrthDims {
  int lhs = 0;
  int rhs = 0;
  bool ok = false;
};
QOrthDims q_orthogonal_dimension(const Mat& Q, const Mat& V,
                                 double rel_tol = Tol::rel_rank);

// A subspace X with form(x, x') = 0 for all x, x' in X, of the maximal
// dimension min(m^+, m^-) + dim ker.  Built by pairing positive and negative
// eigenvectors scaled to equal weight.
Mat vanishing_subspace(const Mat& Q, double zero_tol = Tol::inertia);

// Bound  dim X <= m^+(Q) + dim K2  for X with Q|_X = 0, ker Q = K1 ⊕ K2 and
// X ∩ K1 = {0}.  Pass K1 = empty frame for the plain bound with K2 = ker Q.
struct VanishingBound {
  int dim_x = 0;
  int bound = 0;          // m^+(Q) + dim K2
  double form_residual = 0.0;  // max |form| on X, must be ~0
  bool ok = false;        // dim_x <= bound and residual passes
};
VanishingBound vanishing_dimension_bound(const Mat& Q, const Mat& X,
                                         const Mat& K1,
                                         double rel_tol = Tol::rel_rank,
                                         double zero_tol = Tol::inertia);

}  // namespace symindex
