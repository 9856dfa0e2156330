// SPDX-License-Identifier: MIT
#include "symindex/fem.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <vector>

#include "symindex/parallel.hpp"
#include "symindex/sturm.hpp"

namespace symindex {

namespace {

// 2-point Gauss on [0,1], exact through cubics; the hat-function products
// are at most quadratic, so only the coefficient variation is approximated
constexpr double kGaussA = 0.5 - 0.28867513459481288225;  // 1/(2 sqrt 3)
constexpr double kGaussB = 0.5 + 0.28867513459481288225;

RMat element_matrix(const CoefficientSet& c, double t0, double h) {
  const int n = c.n;
  RMat S = RMat::Zero(2 * n, 2 * n);
  for (double s : {kGaussA, kGaussB}) {
    double t = t0 + s * h;
    RMat P = c.P(t), Q = c.Q(t), R = c.R(t);
    double w = 0.5 * h;
    // local shapes: phi = (1-s, s), dphi/dt = (-1/h, 1/h)
    double phi[2] = {1.0 - s, s};
    double dph[2] = {-1.0 / h, 1.0 / h};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        S.block(a * n, b * n, n, n) +=
            w * (dph[a] * dph[b] * P + dph[a] * phi[b] * Q +
                 phi[a] * dph[b] * Q.transpose() + phi[a] * phi[b] * R);
  }
  return S;
}

struct NodeMap {
  int offset;
  const Mat* weight;  // nullptr means identity (interior node)
};

void scatter(Mat& K, const NodeMap& ra, const NodeMap& rb, const Eigen::Ref<const RMat>& S) {
  Mat Sc = S.cast<Cplx>();
  if (ra.weight) Sc = ra.weight->adjoint() * Sc;
  if (rb.weight) Sc = Sc * (*rb.weight);
  K.block(ra.offset, rb.offset, Sc.rows(), Sc.cols()) += Sc;
}

double spectral_scale(const CoefficientSet& c, const BoundaryData& bc) {
  double lam = 1.0;
  for (int j = 0; j <= 64; ++j) {
    RMat B = hamiltonian_B(c, c.T * j / 64.0);
    Eigen::SelfAdjointEigenSolver<RMat> es(B, Eigen::EigenvaluesOnly);
    lam = std::max(lam, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  if (bc.nu > 0) lam = std::max(lam, bc.A.operatorNorm());
  return lam;
}

DiscreteForm assemble_impl(const CoefficientSet& c, const BoundaryData& bc,
                           int N, bool parallel) {
  if (N < 16) throw ValidationError("assemble_index_form: mesh too coarse");
  if (bc.n != c.n)
    throw ValidationError("assemble_index_form: boundary data dimension != n");
  const int n = c.n;
  const int nu = bc.nu;
  const double h = c.T / N;
  const int dim = nu + n * (N - 1);

  DiscreteForm out;
  out.n = n;
  out.mesh = N;
  out.nu = nu;
  out.h = h;
  out.lambda_scale = spectral_scale(c, bc);
  out.K = Mat::Zero(dim, dim);
  out.M = Mat::Zero(dim, dim);

  Mat Vtop = bc.V.topRows(n);     // xi(0) = Vtop c
  Mat Vbot = bc.V.bottomRows(n);  // xi(T) = Vbot c
  auto node = [&](int j) -> NodeMap {
    if (j == 0) return {0, &Vtop};
    if (j == N) return {0, &Vbot};
    return {nu + n * (j - 1), nullptr};
  };

  std::vector<RMat> elems(N);
  if (parallel) {
    parallel_for(N, [&](std::ptrdiff_t e) {
      elems[e] = element_matrix(c, static_cast<double>(e) * h, h);
    });
  } else {
    serial_for(N, [&](std::ptrdiff_t e) {
      elems[e] = element_matrix(c, static_cast<double>(e) * h, h);
    });
  }

  // exact element mass, h/6 [2 1; 1 2] per scalar component
  RMat Me = RMat::Zero(2 * n, 2 * n);
  Me.topLeftCorner(n, n) = (h / 3.0) * RMat::Identity(n, n);
  Me.bottomRightCorner(n, n) = (h / 3.0) * RMat::Identity(n, n);
  Me.topRightCorner(n, n) = (h / 6.0) * RMat::Identity(n, n);
  Me.bottomLeftCorner(n, n) = (h / 6.0) * RMat::Identity(n, n);

  for (int e = 0; e < N; ++e) {
    NodeMap na = node(e), nb = node(e + 1);
    const RMat& S = elems[e];
    scatter(out.K, na, na, S.topLeftCorner(n, n));
    scatter(out.K, na, nb, S.topRightCorner(n, n));
    scatter(out.K, nb, na, S.bottomLeftCorner(n, n));
    scatter(out.K, nb, nb, S.bottomRightCorner(n, n));
    scatter(out.M, na, na, Me.topLeftCorner(n, n));
    scatter(out.M, na, nb, Me.topRightCorner(n, n));
    scatter(out.M, nb, na, Me.bottomLeftCorner(n, n));
    scatter(out.M, nb, nb, Me.bottomRightCorner(n, n));
  }
  if (nu > 0) out.K.topLeftCorner(nu, nu) -= bc.A;

  out.K = 0.5 * (out.K + out.K.adjoint()).eval();
  out.M = 0.5 * (out.M + out.M.adjoint()).eval();
  return out;
}

}  // namespace

DiscreteForm assemble_index_form(const CoefficientSet& c, const BoundaryData& bc,
                                 int N) {
  return assemble_impl(c, bc, N, true);
}

DiscreteForm assemble_index_form_ref(const CoefficientSet& c,
                                     const BoundaryData& bc, int N) {
  return assemble_impl(c, bc, N, false);
}

double zero_band(const DiscreteForm& d, double tol_zero) {
  double lh = d.lambda_scale * d.h;
  return lh * lh * (tol_zero / 1e-6);
}

BandCounts count_form_eigenvalues(const DiscreteForm& d, double tol_zero) {
  BandCounts out;
  out.band = zero_band(d, tol_zero);
  if (d.K.rows() == 0) return out;
  RVec ev = hermitian_pencil_eigenvalues(d.K, d.M);
  out.min_outside = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ev.size(); ++i) {
    double a = std::abs(ev[i]);
    if (a <= out.band) {
      ++out.zero;
    } else {
      if (ev[i] < 0) ++out.neg;
      if (a < 100.0 * out.band) out.gray = true;
      out.min_outside = std::min(out.min_outside, a);
    }
  }
  return out;
}

MorseCounts morse_index_discretized(const CoefficientSet& c,
                                    const BoundaryData& bc, int N,
                                    double tol_zero) {
  auto run = [&](int mesh) {
    return count_form_eigenvalues(assemble_index_form(c, bc, mesh), tol_zero);
  };
  BandCounts prev = run(N);
  int mesh = 2 * N;
  BandCounts cur = run(mesh);
  if (prev.neg != cur.neg || prev.zero != cur.zero) {
    prev = cur;
    mesh = 4 * N;
    cur = run(mesh);
  }
  MorseCounts out;
  out.neg = cur.neg;
  out.zero = cur.zero;
  out.stable = (prev.neg == cur.neg && prev.zero == cur.zero);
  out.gray = cur.gray;
  out.mesh = mesh;
  out.band = cur.band;
  return out;
}

}  // namespace symindex
