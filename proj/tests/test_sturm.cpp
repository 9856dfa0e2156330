// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "symindex/boundary.hpp"
#include "symindex/sturm.hpp"

using namespace symindex;

namespace {

CoefficientSet constant_coeffs(int n, double T, const RMat& P, const RMat& Q,
                               const RMat& R) {
  CoefficientSet c;
  c.n = n;
  c.T = T;
  c.P = [P](double) { return P; };
  c.Q = [Q](double) { return Q; };
  c.R = [R](double) { return R; };
  validate_coefficients(c);
  return c;
}

// -x'' - x = 0 on [0, L]; solutions are pure rotations of (y, x)
CoefficientSet oscillator(double L) {
  RMat I = RMat::Identity(1, 1);
  return constant_coeffs(1, L, I, RMat::Zero(1, 1), -I);
}

RMat rot2(double t) {
  RMat M(2, 2);
  M << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return M;
}

RMat hyp2(double t) {
  RMat M(2, 2);
  M << std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t);
  return M;
}

}  // namespace

TEST_CASE("fourier matrices evaluate and report parity") {
  double T = 2.0;
  FourierMatrix P;
  P.cos_terms = {2.0 * RMat::Identity(1, 1), RMat::Identity(1, 1)};
  CHECK(P.eval(0.0, T)(0, 0) == doctest::Approx(3.0));
  CHECK(P.eval(T / 2, T)(0, 0) == doctest::Approx(1.0));
  CHECK(P.eval(T / 4, T)(0, 0) == doctest::Approx(2.0));
  CHECK(P.cos_only());
  CHECK_FALSE(P.sin_only());

  FourierMatrix Q;
  Q.cos_terms = {RMat::Zero(1, 1)};
  Q.sin_terms = {0.3 * RMat::Identity(1, 1)};
  CHECK(Q.sin_only());

  FourierMatrix R;
  R.cos_terms = {-RMat::Identity(1, 1)};

  auto c = fourier_coefficients(1, T, P, Q, R);
  CHECK(c.P(0.25)(0, 0) == doctest::Approx(2.0 + std::cos(M_PI * 0.25)));
  auto par = reversal_parity(c);
  CHECK(par.ok);
  CHECK(par.q_odd < 1e-12);

  // an even component in Q breaks the time reversal structure
  FourierMatrix Qbad = Q;
  Qbad.cos_terms[0](0, 0) = 0.05;
  auto cbad = fourier_coefficients(1, T, P, Qbad, R);
  auto parbad = reversal_parity(cbad);
  CHECK_FALSE(parbad.ok);
  CHECK(parbad.q_odd == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("grid spline interpolates exactly on linear data") {
  std::vector<RMat> samples;
  RMat a(2, 2), b(2, 2);
  a << 1, 2, 2, 5;
  b << 0.5, -1, -1, 0.25;
  for (int j = 0; j <= 8; ++j) samples.push_back(a + (j / 8.0) * b);
  GridMatrix g(samples, 4.0);
  for (double t : {0.0, 0.37, 1.9, 3.2, 4.0}) {
    RMat want = a + (t / 4.0) * b;
    CHECK((g.eval(t) - want).cwiseAbs().maxCoeff() < 1e-12);
  }
  // clamped outside the window
  CHECK((g.eval(-1.0) - a).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((g.eval(9.0) - (a + b)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("grid spline approximates smooth data") {
  // sin on [0, pi] has vanishing second derivative at both ends, so the
  // natural spline converges at full order
  int s = 33;
  std::vector<RMat> samples;
  for (int j = 0; j < s; ++j) {
    double t = M_PI * j / (s - 1);
    RMat m(1, 1);
    m << std::sin(t);
    samples.push_back(m);
  }
  GridMatrix g(samples, M_PI);
  double worst = 0.0;
  for (int j = 0; j < 200; ++j) {
    double t = M_PI * (j + 0.5) / 200.0;
    worst = std::max(worst, std::abs(g.eval(t)(0, 0) - std::sin(t)));
  }
  CHECK(worst < 1e-5);

  // two samples degenerate to linear interpolation
  GridMatrix lin({samples.front(), samples.back()}, M_PI);
  CHECK(lin.eval(M_PI / 2)(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("coefficient validation rejects bad structure") {
  RMat I = RMat::Identity(2, 2);
  RMat S(2, 2);
  S << 0, 1, 0, 0;
  CHECK_THROWS_AS(constant_coeffs(2, 1.0, -I, RMat::Zero(2, 2), I),
                  ValidationError);  // P not spd
  CHECK_THROWS_AS(constant_coeffs(2, 1.0, I, RMat::Zero(2, 2), S),
                  ValidationError);  // R not symmetric
  CHECK_THROWS_AS(constant_coeffs(2, -1.0, I, RMat::Zero(2, 2), I),
                  ValidationError);  // bad period
  CHECK_NOTHROW(constant_coeffs(2, 1.0, I, S, I));  // Q may be anything
}

TEST_CASE("rotation flow matches the closed form") {
  auto c = oscillator(2.0 * M_PI);
  RMat B = hamiltonian_B(c, 0.3);
  CHECK((B - RMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  FundamentalSolution flow(c);
  CHECK(flow.symplectic_residual() < 1e-10);
  CHECK(flow.step_halving_error() < 1e-8);
  for (double t : {0.0, 0.1, 1.0, std::sqrt(2.0), M_PI, 5.0, 2.0 * M_PI}) {
    CHECK((flow.at(t) - rot2(t)).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK((flow.monodromy() - RMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);

  // dense output between nodes, t not a multiple of h
  double h = 2.0 * M_PI / 2048;
  double t = 173.5 * h;
  CHECK((flow.at(t) - rot2(t)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("hyperbolic flow matches the closed form") {
  RMat I = RMat::Identity(1, 1);
  auto c = constant_coeffs(1, 1.0, I, RMat::Zero(1, 1), I);
  FundamentalSolution flow(c);
  for (double t : {0.25, 0.7, 1.0})
    CHECK((flow.at(t) - hyp2(t)).cwiseAbs().maxCoeff() < 1e-9);
  // Floquet multipliers e and 1/e
  Eigen::EigenSolver<RMat> es(flow.monodromy());
  double lam = es.eigenvalues().real().maxCoeff();
  CHECK(lam == doctest::Approx(std::exp(1.0)).epsilon(1e-8));
}

TEST_CASE("variable coefficient flow converges under step refinement") {
  double T = 3.0;
  FourierMatrix P, Q, R;
  RMat I2 = RMat::Identity(2, 2);
  RMat M(2, 2);
  M << 0.4, 0.7, -0.2, 0.1;
  P.cos_terms = {2.0 * I2, 0.5 * I2};
  Q.cos_terms = {RMat::Zero(2, 2)};
  Q.sin_terms = {M};
  R.cos_terms = {-I2, RMat(0.3 * I2)};
  auto c = fourier_coefficients(2, T, P, Q, R);
  CHECK(reversal_parity(c).ok);

  FundamentalSolution coarse(c, {256, 1e-6});
  FundamentalSolution fine(c, {2048, 1e-6});
  // fourth order: halving the step shrinks the defect by ~16 per doubling
  CHECK(coarse.step_halving_error() > 100.0 * fine.step_halving_error());
  CHECK((coarse.monodromy() - fine.monodromy()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(fine.symplectic_residual() < 1e-10);

  // dense output at an off-node time agrees across resolutions
  double t = 0.419 * T;
  CHECK((coarse.at(t) - fine.at(t)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("conjugate points of the oscillator") {
  // x(0) = 0, x'' = -x: interior zeros of sin at multiples of pi
  struct Case {
    double L;
    int count;
  };
  for (auto [L, count] : {Case{M_PI / 2, 0}, Case{M_PI, 0}, Case{1.5 * M_PI, 1},
                          Case{2.0 * M_PI, 1}, Case{3.0 * M_PI, 2}}) {
    FundamentalSolution flow(oscillator(L));
    auto dir = dirichlet_frame(1);
    auto pts = conjugate_points(flow, dir, dir);
    int total = 0;
    for (auto& p : pts) {
      total += p.dim;
      CHECK(p.dim == 1);
      // each crossing sits at a multiple of pi
      double frac = p.t / M_PI;
      CHECK(std::abs(frac - std::round(frac)) < 1e-7);
    }
    CHECK(total == count);
    CHECK(conjugate_point_count(flow, dir, dir) == count);
  }
}

TEST_CASE("restriction shifts the window") {
  double T = 2.0;
  FourierMatrix P, Q, R;
  P.cos_terms = {RMat::Identity(1, 1)};
  Q.cos_terms = {RMat::Zero(1, 1)};
  Q.sin_terms = {0.4 * RMat::Identity(1, 1)};
  R.cos_terms = {RMat::Zero(1, 1), RMat::Identity(1, 1)};
  auto c = fourier_coefficients(1, T, P, Q, R);
  auto mid = restrict_to(c, 0.3, 1.7);
  CHECK(mid.T == doctest::Approx(1.4));
  for (double s : {0.0, 0.55, 1.4}) {
    CHECK((mid.Q(s) - c.Q(0.3 + s)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((mid.R(s) - c.R(0.3 + s)).cwiseAbs().maxCoeff() < 1e-15);
  }
  CHECK_THROWS_AS(restrict_to(c, 2.0, 1.0), ValidationError);

  // a subwindow of the oscillator is the oscillator on the shorter interval
  auto sub = restrict_to(oscillator(3.0 * M_PI), M_PI / 2, 2.0 * M_PI);
  FundamentalSolution flow(sub);
  auto dir = dirichlet_frame(1);
  CHECK(conjugate_point_count(flow, dir, dir) == 1);
}

TEST_CASE("boundary canonical data for the named conditions") {
  int n = 2;
  auto dir = canonicalize_boundary(bc_dirichlet(n));
  CHECK(dir.nu == 0);
  CHECK(dir.k == 2 * n);

  auto neu = canonicalize_boundary(bc_neumann(n));
  CHECK(neu.nu == 2 * n);
  CHECK(neu.k == 0);
  CHECK(neu.A.cwiseAbs().maxCoeff() < 1e-12);

  auto per = canonicalize_boundary(bc_periodic(n));
  CHECK(per.nu == n);
  CHECK(per.k == n);
  CHECK(per.A.cwiseAbs().maxCoeff() < 1e-10);
  Mat gr(2 * n, n);
  gr.topRows(n) = Mat::Identity(n, n);
  gr.bottomRows(n) = Mat::Identity(n, n);
  CHECK(subspace_gap(per.V, orthonormalize(gr)) < 1e-10);
}

TEST_CASE("robin data recovers the endpoint potentials") {
  int n = 2;
  Rng rng(401);
  RMat As = rng.rsymmetric(n), Ae = rng.rsymmetric(n);
  auto bd = canonicalize_boundary(bc_robin(n, As, Ae));
  CHECK(bd.nu == 2 * n);
  // basis independent comparison through the trace space operator
  Mat op = bd.V * bd.A * bd.V.adjoint();
  Mat want = Mat::Zero(2 * n, 2 * n);
  want.topLeftCorner(n, n) = (-As).cast<Cplx>();
  want.bottomRightCorner(n, n) = Ae.cast<Cplx>();
  CHECK((op - want).cwiseAbs().maxCoeff() < 1e-9);

  // n=1 frame written out by hand: y(0)=a x(0), y(T)=b x(T)
  RMat a(1, 1), b(1, 1);
  a << 0.8;
  b << -1.3;
  auto rb = bc_robin(1, a, b);
  Mat Zexp(4, 2);
  Zexp.setZero();
  Zexp(0, 0) = 0.8;  // (y0, x0, yT, xT)
  Zexp(1, 0) = 1.0;
  Zexp(2, 1) = -1.3;
  Zexp(3, 1) = 1.0;
  CHECK(subspace_gap(rb.Z, orthonormalize(Zexp)) < 1e-12);
}

TEST_CASE("trace subspace conditions and canonical round trips") {
  // x-traces confined to span{(0,1)}: x(0)=0 and y(T)=0
  Mat vx(2, 1);
  vx << Cplx(0), Cplx(1);
  auto F = bc_trace_subspace(1, vx);
  Mat Zexp = Mat::Zero(4, 2);
  Zexp(0, 0) = 1.0;  // y(0) free
  Zexp(3, 1) = 1.0;  // x(T) free
  CHECK(subspace_gap(F.Z, Zexp) < 1e-12);

  auto bd = canonicalize_boundary(F);
  CHECK(bd.nu == 1);
  CHECK(bd.A.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(subspace_gap(bd.V, vx) < 1e-12);

  Rng rng(402);
  auto dbl = SymplecticSpace::doubled(2);
  for (int trial = 0; trial < 6; ++trial) {
    auto L = random_lagrangian(rng, dbl);
    auto data = canonicalize_boundary(L);
    CHECK(data.rebuild_gap < 1e-8);
    CHECK(data.herm_residual < 1e-7);
    CHECK(data.nu + data.k == 4);
    CHECK(data.k == intersection_dim(L, bc_dirichlet(2)));
    auto R = bc_from_trace_form(2, data.V, data.A);
    CHECK(subspace_gap(L.Z, R.Z) < 1e-8);
  }
}

TEST_CASE("trace form rejects malformed input") {
  Mat V = Mat::Identity(2, 1);
  Mat A = Mat::Zero(2, 2);
  CHECK_THROWS_AS(bc_from_trace_form(1, V, A), ValidationError);  // size clash
  Mat A1(1, 1);
  A1 << Cplx(0, 1);  // not Hermitian
  CHECK_THROWS_AS(bc_from_trace_form(1, V, A1), ValidationError);
  CHECK_THROWS_AS(canonicalize_boundary(dirichlet_frame(2)), ValidationError);
}
