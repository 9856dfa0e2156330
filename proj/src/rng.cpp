// SPDX-License-Identifier: MIT
#include "symindex/rng.hpp"

#include <Eigen/QR>
#include <cmath>

namespace symindex {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 bounded away from 0 by the 53-bit grid plus the offset
  double u1 = 0.0;
  do { u1 = uniform(); } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

RMat Rng::rgaussian(int rows, int cols) {
  RMat A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) A(i, j) = normal();
  return A;
}

Mat Rng::cgaussian(int rows, int cols) {
  Mat A(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) A(i, j) = cnormal();
  return A;
}

RMat Rng::rsymmetric(int n) {
  RMat A = rgaussian(n, n);
  return 0.5 * (A + A.transpose());
}

Mat Rng::hermitian(int n) {
  Mat A = cgaussian(n, n);
  return 0.5 * (A + A.adjoint());
}

Mat Rng::unitary(int m) {
  Mat G = cgaussian(m, m);
  Eigen::HouseholderQR<Mat> qr(G);
  Mat Q = qr.householderQ() * Mat::Identity(m, m);
  Mat R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  // fix the phase gauge so the distribution is Haar
  for (int i = 0; i < m; ++i) {
    Cplx d = R(i, i);
    Q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Cplx(1, 0);
  }
  return Q;
}

RMat Rng::symplectic(int n) {
  RMat J = RMat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -RMat::Identity(n, n);
  J.bottomLeftCorner(n, n) = RMat::Identity(n, n);
  for (;;) {
    RMat H = J * rsymmetric(2 * n);  // Hamiltonian: H^T J + J H = 0
    RMat I = RMat::Identity(2 * n, 2 * n);
    Eigen::FullPivLU<RMat> lu(I - 0.5 * H);
    if (!lu.isInvertible()) continue;  // measure zero; redraw
    return lu.solve(I + 0.5 * H);      // Cayley transform lands in Sp(2n,R)
  }
}

}  // namespace symindex
