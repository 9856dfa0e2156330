// First order reduction z = (y, x) with y = P x' + Q x, flow z' = J B(t) z,
// and the fundamental solution with dense output used by every index route.
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/coeffs.hpp"
#include "symindex/maslov.hpp"
#include "symindex/symplectic.hpp"

namespace symindex {

// B = [P^{-1}, -P^{-1}Q; -Q^T P^{-1}, Q^T P^{-1} Q - R], symmetric; the top
// left block is positive definite, which makes Dirichlet crossings monotone.
RMat hamiltonian_B(const CoefficientSet& c, double t);

struct FlowOptions {
  int steps = 2048;
  double sympl_tol = 1e-6;  // gate on the monodromy symplecticity residual
};

class FundamentalSolution {
 public:
  explicit FundamentalSolution(CoefficientSet coeffs, FlowOptions opt = {});

  int n() const { return c_.n; }
  double T() const { return c_.T; }
  const CoefficientSet& coefficients() const { return c_; }

  // gamma(t): stored node or one tail step from the node below t
  RMat at(double t) const;
  const RMat& monodromy() const { return nodes_.back(); }

  double symplectic_residual() const { return sympl_resid_; }
  // || gamma(T) at M steps - gamma(T) at M/2 steps ||_max, step halving
  double step_halving_error() const { return halving_err_; }

  LagrangianFrame frame_at(double t, const LagrangianFrame& init) const;
  FramePath flow_path(const LagrangianFrame& init) const;  // t -> gamma(t) init
  FramePath graph_path() const;  // t -> Gr(gamma(t)) in the doubled space
  GeneratorFn generator() const;          // C(t) = J B(t)
  GeneratorFn doubled_generator() const;  // 0 (+) C(t)

 private:
  CoefficientSet c_;
  FlowOptions opt_;
  std::vector<RMat> nodes_;
  double h_ = 0.0;
  double sympl_resid_ = 0.0;
  double halving_err_ = 0.0;
};

struct ConjugatePoint {
  double t = 0.0;
  int dim = 0;
};

// interior times 0 < t < T with gamma(t)*start meeting target, with
// multiplicities; start and target are frames in the standard space
std::vector<ConjugatePoint> conjugate_points(const FundamentalSolution& flow,
                                             const LagrangianFrame& start,
                                             const LagrangianFrame& target,
                                             const MaslovOptions& opt = {});

int conjugate_point_count(const FundamentalSolution& flow,
                          const LagrangianFrame& start,
                          const LagrangianFrame& target,
                          const MaslovOptions& opt = {});

}  // namespace symindex
