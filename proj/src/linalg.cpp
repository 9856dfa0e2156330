// SPDX-License-Identifier: MIT
#include "symindex/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <lapacke.h>

namespace symindex {

Mat orthonormalize(const Mat& Z) {
  if (Z.cols() == 0) return Z;
  Eigen::HouseholderQR<Mat> qr(Z);
  Mat Q = qr.householderQ() * Mat::Identity(Z.rows(), Z.cols());
  // Guard against rank deficiency: |r_ii| must clear the rank cut.
  Mat R = qr.matrixQR().topRows(Z.cols()).template triangularView<Eigen::Upper>();
  double rmax = R.diagonal().cwiseAbs().maxCoeff();
  if (rmax == 0.0) throw ValidationError("orthonormalize: rank-deficient frame");
  for (Eigen::Index i = 0; i < Z.cols(); ++i) {
    if (std::abs(R(i, i)) < Tol::rel_rank * rmax)
      throw ValidationError("orthonormalize: rank-deficient frame");
  }
  return Q;
}

int rank_svd(const Mat& A, double rel_tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

Mat nullspace(const Mat& A, double rel_tol) {
  if (A.cols() == 0) return Mat(A.cols(), 0);
  if (A.rows() == 0) return Mat::Identity(A.cols(), A.cols());
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * smax) ++r;
  return svd.matrixV().rightCols(A.cols() - r);
}

Mat column_space(const Mat& A, double rel_tol) {
  if (A.cols() == 0 || A.rows() == 0) return Mat(A.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * smax) ++r;
  return svd.matrixU().leftCols(r);
}

Mat intersection(const Mat& U, const Mat& V, double rel_tol) {
  if (U.cols() == 0 || V.cols() == 0) return Mat(U.rows(), 0);
  Mat Uo = column_space(U, rel_tol);
  Mat Vo = column_space(V, rel_tol);
  // null vectors (a;b) of [Uo Vo] give Uo*a = -Vo*b in the intersection;
  // the map (a;b) -> Uo*a is injective there since both factors have
  // orthonormal columns.
  Mat stacked(U.rows(), Uo.cols() + Vo.cols());
  stacked << Uo, Vo;
  Mat nb = nullspace(stacked, rel_tol);
  if (nb.cols() == 0) return Mat(U.rows(), 0);
  Mat W = Uo * nb.topRows(Uo.cols());
  return orthonormalize(column_space(W, rel_tol));
}

Mat subspace_sum(const Mat& U, const Mat& V, double rel_tol) {
  Mat stacked(U.rows(), U.cols() + V.cols());
  stacked << U, V;
  return column_space(stacked, rel_tol);
}

Mat orth_complement(const Mat& U, int ambient) {
  if (U.cols() == 0) return Mat::Identity(ambient, ambient);
  Mat Uo = column_space(U);
  return nullspace(Uo.adjoint());
}

double subspace_gap(const Mat& U, const Mat& V) {
  Mat Uo = column_space(U);
  Mat Vo = column_space(V);
  if (Uo.cols() != Vo.cols())
    throw ValidationError("subspace_gap: dimension mismatch");
  if (Uo.cols() == 0) return 0.0;
  // sin of the largest principal angle, as a projection residual; computing
  // it from cosines would bottom out at sqrt(machine epsilon)
  Mat R = Vo - Uo * (Uo.adjoint() * Vo);
  Eigen::JacobiSVD<Mat> svd(R);
  return svd.singularValues().maxCoeff();
}

Inertia inertia_of(const Mat& H, double zero_tol) {
  if (H.rows() != H.cols()) throw ValidationError("inertia_of: not square");
  Inertia out;
  if (H.rows() == 0) return out;
  double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (asym > 1e-7 * scale)
    throw ValidationError("inertia_of: matrix is not Hermitian");
  Mat Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(Hs, Eigen::EigenvaluesOnly);
  double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  double band = zero_tol * std::max(1.0, emax);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double mu = es.eigenvalues()(i);
    if (std::abs(mu) <= band) ++out.zero;
    else if (mu > 0) ++out.pos;
    else ++out.neg;
  }
  return out;
}

RVec hermitian_pencil_eigenvalues(const Mat& A, const Mat& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ValidationError("hermitian_pencil_eigenvalues: shape mismatch");
  lapack_int d = static_cast<lapack_int>(A.rows());
  if (d == 0) return RVec(0);
  RVec w(d);
  // real pencils take the ~4x cheaper symmetric path
  double sa = std::max(1.0, A.cwiseAbs().maxCoeff());
  double sb = std::max(1.0, B.cwiseAbs().maxCoeff());
  if (A.imag().cwiseAbs().maxCoeff() < 1e-14 * sa &&
      B.imag().cwiseAbs().maxCoeff() < 1e-14 * sb) {
    RMat Ar = 0.5 * (A.real() + A.real().transpose());
    RMat Br = 0.5 * (B.real() + B.real().transpose());
    lapack_int info = LAPACKE_dsygvd(LAPACK_COL_MAJOR, 1, 'N', 'L', d, Ar.data(),
                                     d, Br.data(), d, w.data());
    if (info != 0)
      throw ConvergenceError("dsygvd failed, info=" + std::to_string(info) +
                             (info > d ? " (mass matrix not positive definite)" : ""));
    return w;
  }
  Mat Ak = 0.5 * (A + A.adjoint());
  Mat Bk = 0.5 * (B + B.adjoint());
  lapack_int info = LAPACKE_zhegvd(
      LAPACK_COL_MAJOR, 1, 'N', 'L', d,
      reinterpret_cast<lapack_complex_double*>(Ak.data()), d,
      reinterpret_cast<lapack_complex_double*>(Bk.data()), d, w.data());
  if (info != 0)
    throw ConvergenceError("zhegvd failed, info=" + std::to_string(info) +
                           (info > d ? " (mass matrix not positive definite)" : ""));
  return w;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace symindex
