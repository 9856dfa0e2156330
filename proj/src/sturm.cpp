// SPDX-License-Identifier: MIT
#include "symindex/sturm.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace symindex {

RMat hamiltonian_B(const CoefficientSet& c, double t) {
  RMat P = c.P(t), Q = c.Q(t), R = c.R(t);
  Eigen::LLT<RMat> llt(0.5 * (P + P.transpose()));
  if (llt.info() != Eigen::Success)
    throw ValidationError("hamiltonian_B: P not positive definite at t=" +
                          std::to_string(t));
  RMat Pi = llt.solve(RMat::Identity(c.n, c.n));
  RMat PiQ = llt.solve(Q);
  RMat B(2 * c.n, 2 * c.n);
  B.topLeftCorner(c.n, c.n) = Pi;
  B.topRightCorner(c.n, c.n) = -PiQ;
  B.bottomLeftCorner(c.n, c.n) = -PiQ.transpose();
  B.bottomRightCorner(c.n, c.n) = Q.transpose() * PiQ - R;
  return 0.5 * (B + B.transpose());
}

namespace {

RMat rk4_step(const CoefficientSet& c, const RMat& J, const RMat& Z, double t,
              double h) {
  RMat k1 = J * hamiltonian_B(c, t) * Z;
  RMat k2 = J * hamiltonian_B(c, t + 0.5 * h) * (Z + 0.5 * h * k1);
  RMat k3 = J * hamiltonian_B(c, t + 0.5 * h) * (Z + 0.5 * h * k2);
  RMat k4 = J * hamiltonian_B(c, t + h) * (Z + h * k3);
  return Z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

RMat integrate(const CoefficientSet& c, int steps, std::vector<RMat>* nodes) {
  const RMat J = standard_J(c.n);
  RMat Z = RMat::Identity(2 * c.n, 2 * c.n);
  if (nodes) {
    nodes->clear();
    nodes->reserve(steps + 1);
    nodes->push_back(Z);
  }
  const double h = c.T / steps;
  for (int j = 0; j < steps; ++j) {
    Z = rk4_step(c, J, Z, j * h, h);
    if (nodes) nodes->push_back(Z);
  }
  return Z;
}

}  // namespace

FundamentalSolution::FundamentalSolution(CoefficientSet coeffs, FlowOptions opt)
    : c_(std::move(coeffs)), opt_(opt) {
  if (opt_.steps < 8) throw ValidationError("FundamentalSolution: too few steps");
  if (opt_.steps % 2 != 0) ++opt_.steps;
  h_ = c_.T / opt_.steps;
  RMat end = integrate(c_, opt_.steps, &nodes_);
  RMat half = integrate(c_, opt_.steps / 2, nullptr);
  halving_err_ = (end - half).cwiseAbs().maxCoeff();

  const RMat J = standard_J(c_.n);
  sympl_resid_ = (end.transpose() * J * end - J).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, end.cwiseAbs().maxCoeff());
  if (sympl_resid_ > opt_.sympl_tol * scale * scale)
    throw ConvergenceError(
        "FundamentalSolution: symplecticity residual " +
        std::to_string(sympl_resid_) + " exceeds tolerance; raise the step count");
}

RMat FundamentalSolution::at(double t) const {
  double tc = std::min(std::max(t, 0.0), c_.T);
  int j = std::min(static_cast<int>(tc / h_), opt_.steps);
  double d = tc - j * h_;
  if (d <= 1e-14 * c_.T) return nodes_[j];
  return rk4_step(c_, standard_J(c_.n), nodes_[j], j * h_, d);
}

LagrangianFrame FundamentalSolution::frame_at(double t, const LagrangianFrame& init) const {
  return pushforward(at(t), init);
}

FramePath FundamentalSolution::flow_path(const LagrangianFrame& init) const {
  return [this, init](double t) { return frame_at(t, init); };
}

FramePath FundamentalSolution::graph_path() const {
  return [this](double t) { return graph_frame(at(t)); };
}

GeneratorFn FundamentalSolution::generator() const {
  return [this](double t) {
    return Mat((standard_J(c_.n) * hamiltonian_B(c_, t)).cast<Cplx>());
  };
}

GeneratorFn FundamentalSolution::doubled_generator() const {
  return [this](double t) {
    Mat C = Mat::Zero(4 * c_.n, 4 * c_.n);
    C.bottomRightCorner(2 * c_.n, 2 * c_.n) =
        (standard_J(c_.n) * hamiltonian_B(c_, t)).cast<Cplx>();
    return C;
  };
}

std::vector<ConjugatePoint> conjugate_points(const FundamentalSolution& flow,
                                             const LagrangianFrame& start,
                                             const LagrangianFrame& target,
                                             const MaslovOptions& opt) {
  auto res = maslov_index_via_crossings(target, flow.flow_path(start),
                                        flow.generator(), 0.0, flow.T(), opt);
  const double eps = 1e-8 * flow.T();
  std::vector<ConjugatePoint> pts;
  for (const CrossingData& c : res.crossings) {
    if (c.t <= eps || c.t >= flow.T() - eps) continue;
    pts.push_back({c.t, c.dim});
  }
  return pts;
}

int conjugate_point_count(const FundamentalSolution& flow,
                          const LagrangianFrame& start,
                          const LagrangianFrame& target,
                          const MaslovOptions& opt) {
  int total = 0;
  for (const ConjugatePoint& p : conjugate_points(flow, start, target, opt))
    total += p.dim;
  return total;
}

}  // namespace symindex
