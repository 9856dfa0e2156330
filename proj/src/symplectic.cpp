// SPDX-License-Identifier: MIT
#include "symindex/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace symindex {

RMat standard_J(int m) {
  RMat J = RMat::Zero(2 * m, 2 * m);
  J.topRightCorner(m, m) = -RMat::Identity(m, m);
  J.bottomLeftCorner(m, m) = RMat::Identity(m, m);
  return J;
}

int SymplecticSpace::factor_dim() const {
  if (kind != FormKind::doubled)
    throw ValidationError("factor_dim: not a doubled space");
  return half_dim / 2;
}

RMat SymplecticSpace::form() const {
  switch (kind) {
    case FormKind::standard: return standard_J(half_dim);
    case FormKind::negated: return -standard_J(half_dim);
    case FormKind::doubled: {
      int n = half_dim / 2;
      RMat O = RMat::Zero(4 * n, 4 * n);
      O.topLeftCorner(2 * n, 2 * n) = -standard_J(n);
      O.bottomRightCorner(2 * n, 2 * n) = standard_J(n);
      return O;
    }
  }
  throw ValidationError("form: bad kind");
}

RMat SymplecticSpace::standardizer() const {
  int m = half_dim;
  switch (kind) {
    case FormKind::standard: return RMat::Identity(2 * m, 2 * m);
    case FormKind::negated: {
      // swap the two m-blocks: K^T (-J) K = J
      RMat K = RMat::Zero(2 * m, 2 * m);
      K.topRightCorner(m, m) = RMat::Identity(m, m);
      K.bottomLeftCorner(m, m) = RMat::Identity(m, m);
      return K;
    }
    case FormKind::doubled: {
      int n = half_dim / 2;
      RMat S = RMat::Zero(4 * n, 4 * n);
      RMat I = RMat::Identity(n, n);
      S.block(0, 0, n, n) = -I;
      S.block(1 * n, 2 * n, n, n) = I;
      S.block(2 * n, 1 * n, n, n) = I;
      S.block(3 * n, 3 * n, n, n) = I;
      return S;
    }
  }
  throw ValidationError("standardizer: bad kind");
}

LagrangianCheck check_lagrangian(const SymplecticSpace& sp, const Mat& Z) {
  LagrangianCheck out;
  if (Z.rows() != sp.ambient_dim() || Z.cols() != sp.half_dim) return out;
  Mat iso = Z.adjoint() * sp.form() * Z;
  out.isotropy_residual = iso.size() ? iso.cwiseAbs().maxCoeff() : 0.0;
  out.rank = rank_svd(Z);
  double scale = std::max(1.0, Z.cwiseAbs().maxCoeff());
  out.ok = (out.rank == sp.half_dim) &&
           (out.isotropy_residual <= 1e-8 * scale * scale * sp.ambient_dim());
  return out;
}

LagrangianFrame make_frame(const SymplecticSpace& sp, const Mat& Z_raw) {
  if (Z_raw.rows() != sp.ambient_dim() || Z_raw.cols() != sp.half_dim)
    throw ValidationError("make_frame: frame must be (2m) x m");
  Mat Z = orthonormalize(Z_raw);
  LagrangianCheck chk = check_lagrangian(sp, Z);
  if (!chk.ok)
    throw ValidationError("make_frame: span is not Lagrangian (isotropy residual " +
                          std::to_string(chk.isotropy_residual) + ", rank " +
                          std::to_string(chk.rank) + ")");
  return {sp, Z};
}

LagrangianFrame dirichlet_frame(int m) {
  Mat Z = Mat::Zero(2 * m, m);
  Z.topRows(m) = Mat::Identity(m, m);
  return {SymplecticSpace::standard(m), Z};
}

LagrangianFrame neumann_frame(int m) {
  Mat Z = Mat::Zero(2 * m, m);
  Z.bottomRows(m) = Mat::Identity(m, m);
  return {SymplecticSpace::standard(m), Z};
}

namespace {
// embed frames of the two factors into the doubled space
Mat doubled_sum(const Mat& Zs, const Mat& Ze) {
  int two_n = static_cast<int>(Zs.rows());
  Mat Z = Mat::Zero(2 * two_n, Zs.cols() + Ze.cols());
  Z.topLeftCorner(two_n, Zs.cols()) = Zs;
  Z.bottomRightCorner(two_n, Ze.cols()) = Ze;
  return Z;
}
}  // namespace

LagrangianFrame bc_dirichlet(int n) {
  Mat D = dirichlet_frame(n).Z;
  return make_frame(SymplecticSpace::doubled(n), doubled_sum(D, D));
}

LagrangianFrame bc_neumann(int n) {
  Mat N = neumann_frame(n).Z;
  return make_frame(SymplecticSpace::doubled(n), doubled_sum(N, N));
}

LagrangianFrame bc_periodic(int n) { return graph_frame(RMat::Identity(2 * n, 2 * n)); }

LagrangianFrame bc_separated(const SymplecticSpace& dbl, const Mat& Zs, const Mat& Ze) {
  if (dbl.kind != FormKind::doubled)
    throw ValidationError("bc_separated: needs a doubled space");
  int n = dbl.factor_dim();
  if (Zs.rows() != 2 * n || Zs.cols() != n || Ze.rows() != 2 * n || Ze.cols() != n)
    throw ValidationError("bc_separated: factor frames must be (2n) x n");
  return make_frame(dbl, doubled_sum(Zs, Ze));
}

LagrangianFrame graph_frame(const RMat& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0)
    throw ValidationError("graph_frame: M must be 2n x 2n");
  int n = static_cast<int>(M.rows()) / 2;
  RMat J = standard_J(n);
  double resid = (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if (resid > 1e-6 * scale * scale)
    throw ValidationError("graph_frame: M is not symplectic, residual " +
                          std::to_string(resid));
  Mat Z(4 * n, 2 * n);
  Z.topRows(2 * n) = Mat::Identity(2 * n, 2 * n);
  Z.bottomRows(2 * n) = M.cast<Cplx>();
  return make_frame(SymplecticSpace::doubled(n), Z);
}

LagrangianFrame pushforward(const Mat& M, const LagrangianFrame& F) {
  if (M.cols() != F.Z.rows())
    throw ValidationError("pushforward: shape mismatch");
  return make_frame(F.space, M * F.Z);
}

LagrangianFrame pushforward(const RMat& M, const LagrangianFrame& F) {
  return pushforward(Mat(M.cast<Cplx>()), F);
}

Mat standardized(const LagrangianFrame& F) {
  return F.space.standardizer().transpose().cast<Cplx>() * F.Z;
}

Mat unitary_rep(const LagrangianFrame& F) {
  int m = F.space.half_dim;
  Mat Zs = standardized(F);
  Mat X = Zs.topRows(m);
  Mat Y = Zs.bottomRows(m);
  Mat W = X + Cplx(0, 1) * Y;  // unitary for orthonormal Lagrangian frames
  return (X - Cplx(0, 1) * Y) * W.adjoint();
}

LagrangianFrame frame_from_unitary(const SymplecticSpace& sp, const Mat& U) {
  int m = sp.half_dim;
  if (U.rows() != m || U.cols() != m)
    throw ValidationError("frame_from_unitary: U must be m x m");
  Mat Z(2 * m, m);
  Z.topRows(m) = 0.5 * (Mat::Identity(m, m) + U);
  Z.bottomRows(m) = Cplx(0, 0.5) * (U - Mat::Identity(m, m));
  // this section is already orthonormal: Z^* Z = I for unitary U
  Mat Zraw = sp.standardizer().cast<Cplx>() * Z;
  return make_frame(sp, Zraw);
}

LagrangianFrame random_lagrangian(Rng& rng, const SymplecticSpace& sp) {
  return frame_from_unitary(sp, rng.unitary(sp.half_dim));
}

RVec relative_phases(const LagrangianFrame& F1, const LagrangianFrame& F2) {
  if (!(F1.space == F2.space))
    throw ValidationError("relative_phases: frames from different spaces");
  Mat W = unitary_rep(F2).adjoint() * unitary_rep(F1);
  Eigen::ComplexEigenSolver<Mat> es(W, /*computeEigenvectors=*/false);
  RVec ph(W.rows());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    ph(i) = std::arg(es.eigenvalues()(i));
  std::sort(ph.data(), ph.data() + ph.size());
  return ph;
}

int intersection_dim_angles(const LagrangianFrame& F1, const LagrangianFrame& F2,
                            double angle_tol) {
  RVec ph = relative_phases(F1, F2);
  int count = 0;
  for (Eigen::Index i = 0; i < ph.size(); ++i)
    if (std::abs(ph(i)) < angle_tol) ++count;
  return count;
}

int intersection_dim_svd(const LagrangianFrame& F1, const LagrangianFrame& F2,
                         double rel_tol) {
  Mat stacked(F1.Z.rows(), F1.Z.cols() + F2.Z.cols());
  stacked << F1.Z, F2.Z;
  return static_cast<int>(F1.Z.cols() + F2.Z.cols()) - rank_svd(stacked, rel_tol);
}

int intersection_dim(const LagrangianFrame& F1, const LagrangianFrame& F2) {
  int by_angle = intersection_dim_angles(F1, F2);
  int by_svd = intersection_dim_svd(F1, F2);
  if (by_angle != by_svd)
    throw DegenerateInput("intersection_dim: angle count " + std::to_string(by_angle) +
                          " != svd nullity " + std::to_string(by_svd) +
                          " (input sits on a tolerance boundary)");
  return by_svd;
}

Mat intersection_basis(const LagrangianFrame& F1, const LagrangianFrame& F2,
                       double rel_tol) {
  return intersection(F1.Z, F2.Z, rel_tol);
}

}  // namespace symindex
