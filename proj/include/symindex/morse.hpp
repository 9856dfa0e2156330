// Index theorem routes tying the discretized Morse index to symplectic data:
// the graph-triple difference formula, conjugate point sums for separated
// conditions, the Maslov index of the solution graph, and the closed-form
// Morse/Maslov offsets per boundary condition family.
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/fem.hpp"
#include "symindex/sturm.hpp"
#include "symindex/triple.hpp"

namespace symindex {

// i(Gr(gamma(T)), bc, Dirichlet) in the doubled space; equals
// m^-(bc) - m^-(Dirichlet) for converged discretizations
int graph_difference_index(const RMat& gammaT, const LagrangianFrame& bc);

// dim(Gr(gamma(T)) \cap bc): solutions satisfying the boundary condition;
// equals the discretized nullity m^0 on converged runs
int solution_kernel_dim(const RMat& gammaT, const LagrangianFrame& bc);

// Maslov index of t -> Gr(gamma(t)) against bc over [0, T]
MaslovResult maslov_of_solution(const FundamentalSolution& flow,
                                const LagrangianFrame& bc,
                                const MaslovOptions& opt = {});

// mu - m^- as a function of the boundary condition alone:
// n - i(Gr(I), bc, Dirichlet)
int maslov_morse_offset(int n, const LagrangianFrame& bc);

// the same offset in closed form per family, for cross checks
int offset_separated(const LagrangianFrame& Ls, const LagrangianFrame& Le);
int offset_graph_separated(const Mat& As, const Mat& Ae);  // -m^+(Ae - As)
int offset_trace_subspace(int n, const Mat& Vx);  // dim(V_perp \cap Gr(-I))

// conjugate point route for separated conditions Ls (+) Le: interior
// crossings of gamma(t) Ls with the Dirichlet subspace plus an endpoint
// triple index correction; total equals m^-(Ls (+) Le) on converged runs
struct SeparatedMorse {
  std::vector<ConjugatePoint> crossings;
  int crossing_sum = 0;
  int correction = 0;  // i(gamma(T) Ls, Le, Dirichlet)
  int total = 0;
};
SeparatedMorse morse_via_crossings(const FundamentalSolution& flow,
                                   const LagrangianFrame& Ls,
                                   const LagrangianFrame& Le,
                                   const MaslovOptions& opt = {});

// inequality verdicts, each carrying both sides
struct Bound {
  long lhs = 0;
  long rhs = 0;
  bool ok = false;
};
inline Bound bound_le(long lhs, long rhs) { return {lhs, rhs, lhs <= rhs}; }

// m^-(Dirichlet) <= m^-(bc) <= m^-(Dirichlet) + nu
struct SandwichBounds {
  Bound lower, upper;
  bool ok = false;
};
SandwichBounds morse_sandwich(int morse_bc, int morse_dirichlet, int nu);

// -n <= mu - m^- <= n
SandwichBounds maslov_offset_bounds(int n, int maslov, int morse);

// m^-_[a,b](bc) >= m^-_[c,d](bc) + m^-_[a,c](D) + m^-_[d,b](D) - nu
Bound subinterval_bound(int whole_bc, int mid_bc, int left_dirichlet,
                        int right_dirichlet, int nu);

}  // namespace symindex
