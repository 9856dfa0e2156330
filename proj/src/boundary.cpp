// SPDX-License-Identifier: MIT
#include "symindex/boundary.hpp"

#include <Eigen/QR>

namespace symindex {

BoundaryData canonicalize_boundary(const LagrangianFrame& bc) {
  if (bc.space.kind != FormKind::doubled)
    throw ValidationError("canonicalize_boundary: frame not in the doubled space");
  const int n = bc.space.factor_dim();
  const int two_n = 2 * n;
  BoundaryData out;
  out.n = n;

  Mat Zs = standardized(bc);  // rows: p = (-y0, yT) on top, q = (x0, xT) below
  Mat Pb = Zs.topRows(two_n);
  Mat Qb = Zs.bottomRows(two_n);

  out.V = column_space(Qb);
  out.nu = static_cast<int>(out.V.cols());
  out.k = two_n - out.nu;

  // lift each trace basis vector: solve Qb c = v, then read the p part
  Mat A = Mat::Zero(out.nu, out.nu);
  if (out.nu > 0) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(Qb);
    Mat C = cod.solve(out.V);
    double resid = (Qb * C - out.V).cwiseAbs().maxCoeff();
    if (resid > 1e-8)
      throw ValidationError("canonicalize_boundary: trace lift failed, residual " +
                            std::to_string(resid));
    A = out.V.adjoint() * (Pb * C);
    out.herm_residual = (A - A.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if (out.herm_residual > 1e-7 * scale)
      throw ValidationError("canonicalize_boundary: potential matrix not Hermitian "
                            "(is the frame Lagrangian?)");
  }
  out.A = 0.5 * (A + A.adjoint());

  LagrangianFrame rebuilt = bc_from_trace_form(n, out.V, out.A);
  out.rebuild_gap = subspace_gap(bc.Z, rebuilt.Z);
  if (out.rebuild_gap > 1e-7)
    throw ValidationError("canonicalize_boundary: rebuild mismatch, gap " +
                          std::to_string(out.rebuild_gap));
  return out;
}

LagrangianFrame bc_from_trace_form(int n, const Mat& V_raw, const Mat& A) {
  const int two_n = 2 * n;
  if (V_raw.rows() != two_n)
    throw ValidationError("bc_from_trace_form: V must have 2n rows");
  const int nu = static_cast<int>(V_raw.cols());
  if (A.rows() != nu || A.cols() != nu)
    throw ValidationError("bc_from_trace_form: A must be nu x nu");
  if (nu > 0) {
    double ascale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * ascale)
      throw ValidationError("bc_from_trace_form: A must be Hermitian");
  }

  Mat V = (nu > 0) ? orthonormalize(V_raw) : Mat(two_n, 0);
  Mat Vp = orth_complement(V, two_n);
  // columns: (p, q) = (V A e_j, v_j) plus free momenta (w, 0), w ⊥ V
  Mat Zs = Mat::Zero(4 * n, two_n);
  if (nu > 0) {
    Zs.topLeftCorner(two_n, nu) = V * A;
    Zs.bottomLeftCorner(two_n, nu) = V;
  }
  Zs.topRightCorner(two_n, two_n - nu) = Vp;
  auto sp = SymplecticSpace::doubled(n);
  return make_frame(sp, sp.standardizer().cast<Cplx>() * Zs);
}

LagrangianFrame bc_trace_subspace(int n, const Mat& Vx) {
  Mat V = (Vx.cols() > 0) ? column_space(Vx) : Mat(2 * n, 0);
  return bc_from_trace_form(n, V, Mat::Zero(V.cols(), V.cols()));
}

LagrangianFrame bc_robin(int n, const Mat& As, const Mat& Ae) {
  if (As.rows() != n || As.cols() != n || Ae.rows() != n || Ae.cols() != n)
    throw ValidationError("bc_robin: blocks must be n x n");
  Mat A = Mat::Zero(2 * n, 2 * n);
  A.topLeftCorner(n, n) = -As;
  A.bottomRightCorner(n, n) = Ae;
  return bc_from_trace_form(n, Mat::Identity(2 * n, 2 * n), A);
}

}  // namespace symindex
