// SPDX-License-Identifier: MIT
#include "symindex/morse.hpp"

namespace symindex {

int graph_difference_index(const RMat& gammaT, const LagrangianFrame& bc) {
  const int n = bc.space.factor_dim();
  return triple_index(graph_frame(gammaT), bc, bc_dirichlet(n));
}

int solution_kernel_dim(const RMat& gammaT, const LagrangianFrame& bc) {
  return intersection_dim(graph_frame(gammaT), bc);
}

MaslovResult maslov_of_solution(const FundamentalSolution& flow,
                                const LagrangianFrame& bc,
                                const MaslovOptions& opt) {
  return maslov_index(bc, flow.graph_path(), 0.0, flow.T(), opt);
}

int maslov_morse_offset(int n, const LagrangianFrame& bc) {
  return n - graph_difference_index(RMat::Identity(2 * n, 2 * n), bc);
}

int offset_separated(const LagrangianFrame& Ls, const LagrangianFrame& Le) {
  const int n = Ls.space.half_dim;
  auto dir = dirichlet_frame(n);
  return intersection_dim(Ls, dir) - triple_index(Ls, Le, dir);
}

int offset_graph_separated(const Mat& As, const Mat& Ae) {
  return -inertia_of(Ae - As).pos;
}

int offset_trace_subspace(int n, const Mat& Vx) {
  Mat V = (Vx.cols() > 0) ? column_space(Vx) : Mat(2 * n, 0);
  Mat Vp = orth_complement(V, 2 * n);
  Mat anti(2 * n, n);  // Gr(-I) in (x(0), x(T)) coordinates
  anti.topRows(n) = Mat::Identity(n, n);
  anti.bottomRows(n) = -Mat::Identity(n, n);
  if (Vp.cols() == 0) return 0;
  return static_cast<int>(intersection(Vp, anti).cols());
}

SeparatedMorse morse_via_crossings(const FundamentalSolution& flow,
                                   const LagrangianFrame& Ls,
                                   const LagrangianFrame& Le,
                                   const MaslovOptions& opt) {
  const int n = flow.n();
  auto dir = dirichlet_frame(n);
  SeparatedMorse out;
  out.crossings = conjugate_points(flow, Ls, dir, opt);
  for (const auto& p : out.crossings) out.crossing_sum += p.dim;
  out.correction =
      triple_index(pushforward(flow.monodromy(), Ls), Le, dir);
  out.total = out.crossing_sum + out.correction;
  return out;
}

SandwichBounds morse_sandwich(int morse_bc, int morse_dirichlet, int nu) {
  SandwichBounds out;
  out.lower = bound_le(morse_dirichlet, morse_bc);
  out.upper = bound_le(morse_bc, morse_dirichlet + static_cast<long>(nu));
  out.ok = out.lower.ok && out.upper.ok;
  return out;
}

SandwichBounds maslov_offset_bounds(int n, int maslov, int morse) {
  SandwichBounds out;
  out.lower = bound_le(-static_cast<long>(n), maslov - morse);
  out.upper = bound_le(maslov - morse, n);
  out.ok = out.lower.ok && out.upper.ok;
  return out;
}

Bound subinterval_bound(int whole_bc, int mid_bc, int left_dirichlet,
                        int right_dirichlet, int nu) {
  return bound_le(static_cast<long>(mid_bc) + left_dirichlet + right_dirichlet -
                      nu,
                  whole_bc);
}

}  // namespace symindex
