// symindex: the two-argument form Q(a,b;d), triple index, Hormander index,
// and the graph reduction identities used by the boundary-value Morse theory.
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/symplectic.hpp"

namespace symindex {

// Q(a,b;d): Hermitian form on carrier = a ∩ (b + d); for x = y + z with
// y in b, z in d,  Q(x1,x2) = omega(y1, z2). Kernel is a∩b + a∩d.
struct QFormData {
  Mat carrier;             // orthonormal basis, ambient coords
  Mat gram;                // Hermitian carrier_dim x carrier_dim
  Inertia inertia;
  double herm_residual = 0.0;    // asymmetry of the raw Gram
  double decomp_residual = 0.0;  // worst ‖x - y - z‖ over carrier basis
  int kernel_expected = 0;       // dim(a∩b) + dim(a∩d) - dim(a∩b∩d)
  bool kernel_ok = false;        // inertia.zero == kernel_expected
};

QFormData q_form(const LagrangianFrame& a, const LagrangianFrame& b,
                 const LagrangianFrame& d);

// i(a,b,k) = m+(Q(a,b;k)) + dim(a∩k) - dim(a∩b∩k); always >= 0 and
// <= dim a - dim(a∩b + b∩k).
int triple_index(const LagrangianFrame& a, const LagrangianFrame& b,
                 const LagrangianFrame& k);

// s(l1,l2;k1,k2) = i(l1,l2,k2) - i(l1,l2,k1) = i(l1,k1,k2) - i(l2,k1,k2).
// Evaluates both expressions and throws IdentityError when they differ.
int hormander_index(const LagrangianFrame& l1, const LagrangianFrame& l2,
                    const LagrangianFrame& k1, const LagrangianFrame& k2);

// the two expressions individually, for independent cross checks
int hormander_via_kappa(const LagrangianFrame& l1, const LagrangianFrame& l2,
                        const LagrangianFrame& k1, const LagrangianFrame& k2);
int hormander_via_lambda(const LagrangianFrame& l1, const LagrangianFrame& l2,
                         const LagrangianFrame& k1, const LagrangianFrame& k2);

// Reductions of doubled-space triple indices with a graph in first position
// to single-space indices. For real symplectic M and frames L1..L4 in
// (C^{2n}, omega):
//   i(Gr(M), L1+L2, L1+L3) = i(M L1, L2, L3)
//   i(Gr(M), L1+L2, L3+L2) = i(M^{-1} L2, L1, L3; -omega)
//   i(Gr(M), L1+L2, L3+L4) = i(M L1, L2, L4) + i(M^{-1} L4, L1, L3; -omega)
//                          = i(M L3, L2, L4) + i(M^{-1} L2, L1, L3; -omega)
struct GraphIdentityReport {
  int lhs_12_13 = 0, rhs_12_13 = 0;
  int lhs_12_32 = 0, rhs_12_32 = 0;
  int lhs_12_34 = 0, rhs_12_34_a = 0, rhs_12_34_b = 0;
  bool ok = false;
};
GraphIdentityReport check_graph_triple_identities(const RMat& M, const Mat& L1,
                                                  const Mat& L2, const Mat& L3,
                                                  const Mat& L4);

}  // namespace symindex
