// Time-dependent coefficient matrices of the second order system
//   -(d/dt)(P x' + Q x) + Q^T x' + R x = 0   on [0, T],
// P(t) symmetric positive definite, R(t) symmetric.
// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "symindex/linalg.hpp"

namespace symindex {

struct CoefficientSet {
  int n = 1;
  double T = 1.0;
  std::function<RMat(double)> P, Q, R;
};

// trigonometric polynomial with base period T:
//   X(t) = C0 + sum_k Ck cos(2 pi k t / T) + Sk sin(2 pi k t / T)
struct FourierMatrix {
  std::vector<RMat> cos_terms;  // [0] is the constant term
  std::vector<RMat> sin_terms;  // [0] multiplies sin(2 pi t / T)

  RMat eval(double t, double T) const;
  bool cos_only() const { return sin_terms.empty(); }
  bool sin_only() const;  // constant term zero and no other cos terms
};

CoefficientSet fourier_coefficients(int n, double T, FourierMatrix P,
                                    FourierMatrix Q, FourierMatrix R);

// matrix samples on the uniform grid t_j = j T/(s-1), evaluated with a
// natural cubic spline per entry
class GridMatrix {
 public:
  GridMatrix() = default;
  GridMatrix(std::vector<RMat> samples, double T);
  RMat eval(double t) const;
  int sample_count() const { return static_cast<int>(y_.size()); }

 private:
  std::vector<RMat> y_, m2_;  // values and spline second derivatives
  double T_ = 1.0, h_ = 1.0;
};

CoefficientSet grid_coefficients(int n, double T, GridMatrix P, GridMatrix Q,
                                 GridMatrix R);

// the same system on [a, b], reparametrized to [0, b-a]
CoefficientSet restrict_to(const CoefficientSet& c, double a, double b);

// structural validation on a sample grid: P spd, P and R symmetric
void validate_coefficients(const CoefficientSet& c, int samples = 64);

// residuals of the time reversal structure P(T-t)=P(t), Q(T-t)=-Q(t),
// R(T-t)=R(t) required for half-period symmetry arguments
struct ParityResidual {
  double p_even = 0.0;
  double q_odd = 0.0;
  double r_even = 0.0;
  bool ok = false;
};
ParityResidual reversal_parity(const CoefficientSet& c, int samples = 64,
                               double tol = 1e-8);

}  // namespace symindex
