// SPDX-License-Identifier: MIT
#include "symindex/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace symindex {

Mat restrict_form(const Mat& Q, const Mat& V) {
  Mat R = V.adjoint() * Q * V;
  return 0.5 * (R + R.adjoint());
}

Mat form_kernel(const Mat& Q, double rel_tol) {
  return nullspace(0.5 * (Q + Q.adjoint()), rel_tol);
}

Mat q_orthogonal(const Mat& Q, const Mat& V, double rel_tol) {
  const auto n = Q.rows();
  if (V.cols() == 0) return Mat::Identity(n, n);
  // form(x, v) = v^† Q x, so V^Q is the null space of V^† Q.
  return nullspace(V.adjoint() * Q, rel_tol);
}

RelativeIndexData relative_morse_index(const Mat& Q, const Mat& V,
                                       double rel_tol, double zero_tol) {
  RelativeIndexData out;
  Mat ker = form_kernel(Q, rel_tol);
  Mat vq = q_orthogonal(Q, V, rel_tol);
  out.full = inertia_of(Q, zero_tol);
  out.restricted = inertia_of(restrict_form(Q, V), zero_tol);
  out.on_qorth = inertia_of(restrict_form(Q, vq), zero_tol);
  out.dim_v_cap_vq = static_cast<int>(intersection(V, vq, rel_tol).cols());
  out.dim_v_cap_ker = static_cast<int>(intersection(V, ker, rel_tol).cols());
  out.relative_index = out.dim_v_cap_vq - out.dim_v_cap_ker + out.on_qorth.neg;
  out.difference_ok = (out.full.neg - out.restricted.neg == out.relative_index);
  return out;
}

SplitIndexData split_morse_index(const Mat& Q, const Mat& W,
                                 double rel_tol, double zero_tol) {
  SplitIndexData out;
  Mat ker = form_kernel(Q, rel_tol);
  Mat wq = q_orthogonal(Q, W, rel_tol);
  out.full = inertia_of(Q, zero_tol);
  out.on_w = inertia_of(restrict_form(Q, W), zero_tol);
  out.on_wq = inertia_of(restrict_form(Q, wq), zero_tol);
  out.dim_w_cap_wq = static_cast<int>(intersection(W, wq, rel_tol).cols());
  out.dim_w_cap_ker = static_cast<int>(intersection(W, ker, rel_tol).cols());
  out.split_ok = (out.full.neg == out.on_w.neg + out.on_wq.neg +
                                      out.dim_w_cap_wq - out.dim_w_cap_ker);
  return out;
}

QOrthDims q_orthogonal_dimension(const Mat& Q, const Mat& V, double rel_tol) {
  QOrthDims out;
  const int n = static_cast<int>(Q.rows());
  Mat ker = form_kernel(Q, rel_tol);
  Mat vq = q_orthogonal(Q, V, rel_tol);
  out.lhs = static_cast<int>(vq.cols() - ker.cols());
  out.rhs = n - static_cast<int>(subspace_sum(V, ker, rel_tol).cols());
  out.ok = (out.lhs == out.rhs);
  return out;
}

Mat vanishing_subspace(const Mat& Q, double zero_tol) {
  const auto n = Q.rows();
  Mat Hs = 0.5 * (Q + Q.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(Hs);
  const RVec& ev = es.eigenvalues();
  double emax = (n > 0) ? ev.cwiseAbs().maxCoeff() : 0.0;
  double band = zero_tol * std::max(1.0, emax);
  std::vector<Eigen::Index> ip, in, iz;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(ev(i)) <= band) iz.push_back(i);
    else if (ev(i) > 0) ip.push_back(i);
    else in.push_back(i);
  }
  const auto r = std::min(ip.size(), in.size());
  Mat X(n, static_cast<Eigen::Index>(r + iz.size()));
  for (std::size_t k = 0; k < r; ++k) {
    // form(v, v) = ev_p/ev_p - |ev_n|/|ev_n| = 0 after the scaling below
    Vec v = es.eigenvectors().col(ip[k]) / std::sqrt(ev(ip[k])) +
            es.eigenvectors().col(in[k]) / std::sqrt(-ev(in[k]));
    X.col(static_cast<Eigen::Index>(k)) = v;
  }
  for (std::size_t k = 0; k < iz.size(); ++k)
    X.col(static_cast<Eigen::Index>(r + k)) = es.eigenvectors().col(iz[k]);
  if (X.cols() == 0) return Mat(n, 0);
  return orthonormalize(X);
}

VanishingBound vanishing_dimension_bound(const Mat& Q, const Mat& X,
                                         const Mat& K1, double rel_tol,
                                         double zero_tol) {
  VanishingBound out;
  out.dim_x = static_cast<int>(X.cols());
  Mat G = restrict_form(Q, X);
  out.form_residual =
      (G.size() > 0) ? G.cwiseAbs().maxCoeff() : 0.0;
  double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
  if (out.form_residual > 1e-7 * scale)
    throw ValidationError("vanishing_dimension_bound: form does not vanish on X");
  Mat ker = form_kernel(Q, rel_tol);
  if (K1.cols() > 0) {
    // K1 must sit inside ker Q and meet X trivially, else the bound is void.
    if (static_cast<int>(intersection(ker, K1, rel_tol).cols()) != K1.cols())
      throw ValidationError("vanishing_dimension_bound: K1 not inside ker");
    if (intersection(X, K1, rel_tol).cols() != 0)
      throw ValidationError("vanishing_dimension_bound: X meets K1");
  }
  int dim_k2 = static_cast<int>(ker.cols() - K1.cols());
  Inertia it = inertia_of(Q, zero_tol);
  out.bound = it.pos + dim_k2;
  out.ok = (out.dim_x <= out.bound);
  return out;
}

}  // namespace symindex
