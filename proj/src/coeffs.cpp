// SPDX-License-Identifier: MIT
#include "symindex/coeffs.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace symindex {

RMat FourierMatrix::eval(double t, double T) const {
  if (cos_terms.empty() && sin_terms.empty())
    throw ValidationError("FourierMatrix: no terms");
  const auto rows = cos_terms.empty() ? sin_terms[0].rows() : cos_terms[0].rows();
  const auto cols = cos_terms.empty() ? sin_terms[0].cols() : cos_terms[0].cols();
  RMat X = RMat::Zero(rows, cols);
  const double w = 2.0 * M_PI / T;
  for (std::size_t k = 0; k < cos_terms.size(); ++k)
    X += cos_terms[k] * std::cos(w * static_cast<double>(k) * t);
  for (std::size_t k = 0; k < sin_terms.size(); ++k)
    X += sin_terms[k] * std::sin(w * static_cast<double>(k + 1) * t);
  return X;
}

bool FourierMatrix::sin_only() const {
  for (const RMat& c : cos_terms)
    if (c.cwiseAbs().maxCoeff() != 0.0) return false;
  return true;
}

CoefficientSet fourier_coefficients(int n, double T, FourierMatrix P,
                                    FourierMatrix Q, FourierMatrix R) {
  CoefficientSet c;
  c.n = n;
  c.T = T;
  c.P = [P, T](double t) { return P.eval(t, T); };
  c.Q = [Q, T](double t) { return Q.eval(t, T); };
  c.R = [R, T](double t) { return R.eval(t, T); };
  validate_coefficients(c);
  return c;
}

GridMatrix::GridMatrix(std::vector<RMat> samples, double T) : y_(std::move(samples)), T_(T) {
  const int s = static_cast<int>(y_.size());
  if (s < 2) throw ValidationError("GridMatrix: need at least 2 samples");
  if (T <= 0) throw ValidationError("GridMatrix: period must be positive");
  h_ = T_ / (s - 1);
  // natural cubic spline second derivatives, Thomas algorithm with
  // matrix-valued right hand sides (spacing is uniform)
  m2_.assign(s, RMat::Zero(y_[0].rows(), y_[0].cols()));
  if (s == 2) return;
  std::vector<double> diag(s, 0.0), sub(s, h_ / 6.0);
  std::vector<RMat> rhs(s, RMat::Zero(y_[0].rows(), y_[0].cols()));
  for (int j = 1; j < s - 1; ++j) {
    diag[j] = 2.0 * h_ / 3.0;
    rhs[j] = (y_[j + 1] - 2.0 * y_[j] + y_[j - 1]) / h_;
  }
  // forward sweep on the interior block, natural ends stay zero
  for (int j = 2; j < s - 1; ++j) {
    double w = sub[j] / diag[j - 1];
    diag[j] -= w * sub[j - 1];
    rhs[j] -= w * rhs[j - 1];
  }
  for (int j = s - 2; j >= 1; --j) {
    RMat upper = (j + 1 <= s - 2) ? RMat(sub[j] * m2_[j + 1])
                                  : RMat::Zero(y_[0].rows(), y_[0].cols());
    m2_[j] = (rhs[j] - upper) / diag[j];
  }
}

RMat GridMatrix::eval(double t) const {
  const int s = static_cast<int>(y_.size());
  double tc = std::min(std::max(t, 0.0), T_);
  int j = std::min(static_cast<int>(tc / h_), s - 2);
  double u = (tc - j * h_) / h_;
  double a = 1.0 - u;
  return a * y_[j] + u * y_[j + 1] +
         (h_ * h_ / 6.0) * ((a * a * a - a) * m2_[j] + (u * u * u - u) * m2_[j + 1]);
}

CoefficientSet grid_coefficients(int n, double T, GridMatrix P, GridMatrix Q,
                                 GridMatrix R) {
  CoefficientSet c;
  c.n = n;
  c.T = T;
  c.P = [P](double t) { return P.eval(t); };
  c.Q = [Q](double t) { return Q.eval(t); };
  c.R = [R](double t) { return R.eval(t); };
  validate_coefficients(c);
  return c;
}

CoefficientSet restrict_to(const CoefficientSet& c, double a, double b) {
  if (!(0.0 <= a && a < b && b <= c.T + 1e-12))
    throw ValidationError("restrict_to: need 0 <= a < b <= T");
  CoefficientSet r;
  r.n = c.n;
  r.T = b - a;
  r.P = [f = c.P, a](double t) { return f(a + t); };
  r.Q = [f = c.Q, a](double t) { return f(a + t); };
  r.R = [f = c.R, a](double t) { return f(a + t); };
  return r;
}

void validate_coefficients(const CoefficientSet& c, int samples) {
  if (c.n < 1) throw ValidationError("coefficients: n must be >= 1");
  if (!(c.T > 0)) throw ValidationError("coefficients: T must be positive");
  for (int j = 0; j <= samples; ++j) {
    double t = c.T * j / samples;
    RMat P = c.P(t), Q = c.Q(t), R = c.R(t);
    if (P.rows() != c.n || P.cols() != c.n || Q.rows() != c.n || Q.cols() != c.n ||
        R.rows() != c.n || R.cols() != c.n)
      throw ValidationError("coefficients: matrix size != n at t=" + std::to_string(t));
    double scl = std::max(1.0, P.cwiseAbs().maxCoeff());
    if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scl)
      throw ValidationError("coefficients: P not symmetric at t=" + std::to_string(t));
    scl = std::max(1.0, R.cwiseAbs().maxCoeff());
    if ((R - R.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scl)
      throw ValidationError("coefficients: R not symmetric at t=" + std::to_string(t));
    Eigen::LLT<RMat> llt(0.5 * (P + P.transpose()));
    if (llt.info() != Eigen::Success)
      throw ValidationError("coefficients: P not positive definite at t=" +
                            std::to_string(t));
  }
}

ParityResidual reversal_parity(const CoefficientSet& c, int samples, double tol) {
  ParityResidual out;
  for (int j = 0; j <= samples; ++j) {
    double t = c.T * j / samples;
    double s = c.T - t;
    out.p_even = std::max(out.p_even, (c.P(s) - c.P(t)).cwiseAbs().maxCoeff());
    out.q_odd = std::max(out.q_odd, (c.Q(s) + c.Q(t)).cwiseAbs().maxCoeff());
    out.r_even = std::max(out.r_even, (c.R(s) - c.R(t)).cwiseAbs().maxCoeff());
  }
  out.ok = out.p_even <= tol && out.q_odd <= tol && out.r_even <= tol;
  return out;
}

}  // namespace symindex
