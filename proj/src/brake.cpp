// SPDX-License-Identifier: MIT
#include "symindex/brake.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "symindex/triple.hpp"

namespace symindex {

RMat brake_reflector(int n) {
  RMat N = RMat::Identity(2 * n, 2 * n);
  N.topLeftCorner(n, n) *= -1.0;
  return N;
}

BrakeProblem verify_brake(const CoefficientSet& c, int samples, double tol) {
  validate_coefficients(c);
  ParityResidual pr = reversal_parity(c, samples, tol);
  if (!pr.ok) {
    // locate the worst offender for the rejection message
    double worst = -1.0, at = 0.0;
    const char* which = "";
    for (int j = 0; j <= samples; ++j) {
      double t = c.T * j / samples, s = c.T - t;
      double dp = (c.P(s) - c.P(t)).cwiseAbs().maxCoeff();
      double dq = (c.Q(s) + c.Q(t)).cwiseAbs().maxCoeff();
      double dr = (c.R(s) - c.R(t)).cwiseAbs().maxCoeff();
      if (dp > worst) { worst = dp; at = t; which = "P (even part)"; }
      if (dq > worst) { worst = dq; at = t; which = "Q (odd part)"; }
      if (dr > worst) { worst = dr; at = t; which = "R (even part)"; }
    }
    std::ostringstream msg;
    msg << "coefficients lack the time reversal parity: " << which
        << " residual " << worst << " at t = " << at;
    throw ValidationError(msg.str());
  }
  return BrakeProblem{c, pr};
}

const char* to_string(SpectralClass cls) {
  switch (cls) {
    case SpectralClass::plus_one: return "plus_one";
    case SpectralClass::minus_one: return "minus_one";
    case SpectralClass::real_positive: return "real_positive";
    case SpectralClass::real_negative: return "real_negative";
    case SpectralClass::unit_nonreal: return "unit_nonreal";
    case SpectralClass::offcircle_upper: return "offcircle_upper";
    case SpectralClass::offcircle_lower: return "offcircle_lower";
  }
  return "?";
}

namespace {

// connected components of |lambda_i - lambda_j| <= radius, small m
std::vector<std::vector<int>> cluster_points(const Vec& ev, double radius) {
  const int m = static_cast<int>(ev.size());
  std::vector<int> comp(m);
  std::iota(comp.begin(), comp.end(), 0);
  bool merged = true;
  while (merged) {
    merged = false;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (std::abs(ev(i) - ev(j)) <= radius && comp[i] != comp[j]) {
          int from = std::max(comp[i], comp[j]), to = std::min(comp[i], comp[j]);
          for (int& cjj : comp)
            if (cjj == from) cjj = to;
          merged = true;
        }
  }
  std::vector<std::vector<int>> out;
  for (int root = 0; root < m; ++root) {
    std::vector<int> members;
    for (int i = 0; i < m; ++i)
      if (comp[i] == root) members.push_back(i);
    if (!members.empty()) out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

SpectrumReport classify_spectrum(const RMat& gamma_full,
                                 const SpectrumOptions& opt) {
  const int dim = static_cast<int>(gamma_full.rows());
  const int n = dim / 2;
  if (dim != 2 * n || gamma_full.cols() != dim || n < 1)
    throw ValidationError("classify_spectrum: gamma must be 2n x 2n");

  Eigen::EigenSolver<RMat> es(gamma_full);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("classify_spectrum: eigensolver failed");
  Vec ev = es.eigenvalues();
  Mat evec = es.eigenvectors();

  SpectrumReport out;
  out.scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double band = opt.band * out.scale;
  const double gnorm = gamma_full.norm();

  // eigenvector block relations forced by the reflector symmetry
  const RMat& G = gamma_full;
  for (int i = 0; i < dim; ++i) {
    Cplx lam = ev(i);
    Cplx cp = 0.5 * (lam + 1.0 / lam), cm = 0.5 * (lam - 1.0 / lam);
    Vec a = evec.col(i).head(n), b = evec.col(i).tail(n);
    double r = 0.0;
    r = std::max(r, (G.topLeftCorner(n, n) * a - cp * a).cwiseAbs().maxCoeff());
    r = std::max(r, (G.topRightCorner(n, n) * b - cm * a).cwiseAbs().maxCoeff());
    r = std::max(r, (G.bottomLeftCorner(n, n) * a - cm * b).cwiseAbs().maxCoeff());
    r = std::max(r, (G.bottomRightCorner(n, n) * b - cp * b).cwiseAbs().maxCoeff());
    out.relation_residual = std::max(out.relation_residual, r);
  }

  for (const auto& members : cluster_points(ev, opt.cluster * out.scale)) {
    EigenvalueGroup g;
    g.algebraic = static_cast<int>(members.size());
    Cplx sum = 0.0;
    for (int i : members) sum += ev(i);
    g.lambda = sum / static_cast<double>(g.algebraic);
    for (int i : members)
      g.radius = std::max(g.radius, std::abs(ev(i) - g.lambda));

    // geometric multiplicity: null directions of gamma - lambda I, with the
    // cutoff widened to the cluster radius so a split multiple eigenvalue
    // still reports its full null space at the mean
    Mat shifted = gamma_full.cast<Cplx>();
    shifted.diagonal().array() -= g.lambda;
    Eigen::JacobiSVD<Mat> svd(shifted);
    const double cut = std::max(opt.rank_rel * std::max(1.0, gnorm), 2.0 * g.radius);
    for (int j = 0; j < svd.singularValues().size(); ++j)
      if (svd.singularValues()(j) <= cut) ++g.geometric;

    const double d1 = std::abs(g.lambda - 1.0);
    const double d2 = std::abs(g.lambda + 1.0);
    const double dr = std::abs(g.lambda.imag());
    if (d1 <= band) g.cls = SpectralClass::plus_one;
    else if (d2 <= band) g.cls = SpectralClass::minus_one;
    else if (dr <= band)
      g.cls = g.lambda.real() > 0 ? SpectralClass::real_positive
                                  : SpectralClass::real_negative;
    else if (std::abs(std::abs(g.lambda) - 1.0) <= band)
      g.cls = SpectralClass::unit_nonreal;
    else
      g.cls = g.lambda.imag() > 0 ? SpectralClass::offcircle_upper
                                  : SpectralClass::offcircle_lower;
    g.upper = g.lambda.imag() > 0.0;
    auto in_band = [band](double d) { return d > 0.0 && d <= band; };
    g.boundary = in_band(d1) || in_band(d2) || in_band(dr) || g.radius > band;

    out.max_offaxis_im = std::max(out.max_offaxis_im, dr);
    out.geometric_total += g.geometric;
    out.groups.push_back(std::move(g));
  }
  out.jordan_defect = dim - out.geometric_total;

  // lambda <-> 1/lambda with equal multiplicity
  out.pairing_ok = true;
  for (const auto& g : out.groups) {
    Cplx target = 1.0 / g.lambda;
    double tol = std::max(opt.cluster * out.scale, 10.0 * g.radius) *
                 std::max(1.0, 1.0 / std::norm(g.lambda));
    bool found = false;
    for (const auto& h : out.groups)
      if (std::abs(h.lambda - target) <= tol + 10.0 * h.radius &&
          h.geometric == g.geometric) {
        found = true;
        break;
      }
    if (!found) out.pairing_ok = false;
  }
  return out;
}

MonodromyAnalysis monodromy_from_half(const BrakeProblem& bp, int steps,
                                      const SpectrumOptions& sopt,
                                      double agree_tol) {
  const int n = bp.c.n;
  MonodromyAnalysis ma;
  ma.n = n;

  FundamentalSolution half(restrict_to(bp.c, 0.0, bp.c.T / 2), {steps});
  FundamentalSolution full(bp.c, {2 * steps});
  ma.gamma_half = half.monodromy();
  ma.halving_half = half.step_halving_error();
  ma.halving_full = full.step_halving_error();

  ma.E1 = ma.gamma_half.topLeftCorner(n, n);
  ma.E2 = ma.gamma_half.topRightCorner(n, n);
  ma.E3 = ma.gamma_half.bottomLeftCorner(n, n);
  ma.E4 = ma.gamma_half.bottomRightCorner(n, n);

  // symplectic inverse, then gamma(T) = N gamma(T/2)^{-1} N gamma(T/2)
  RMat inv(2 * n, 2 * n);
  inv.topLeftCorner(n, n) = ma.E4.transpose();
  inv.topRightCorner(n, n) = -ma.E2.transpose();
  inv.bottomLeftCorner(n, n) = -ma.E3.transpose();
  inv.bottomRightCorner(n, n) = ma.E1.transpose();
  const RMat N = brake_reflector(n);
  ma.gamma_full = N * inv * N * ma.gamma_half;

  ma.D1 = ma.gamma_full.topLeftCorner(n, n);
  ma.D2 = ma.gamma_full.topRightCorner(n, n);
  ma.D3 = ma.gamma_full.bottomLeftCorner(n, n);
  ma.D4 = ma.gamma_full.bottomRightCorner(n, n);

  auto resid = [](const RMat& M) { return M.cwiseAbs().maxCoeff(); };
  ma.assembly_residual = std::max(
      {resid(ma.D1 - (ma.E4.transpose() * ma.E1 + ma.E2.transpose() * ma.E3)),
       resid(ma.D2 - (ma.E4.transpose() * ma.E2 + ma.E2.transpose() * ma.E4)),
       resid(ma.D3 - (ma.E3.transpose() * ma.E1 + ma.E1.transpose() * ma.E3)),
       resid(ma.D4 - (ma.E3.transpose() * ma.E2 + ma.E1.transpose() * ma.E4))});
  const RMat I = RMat::Identity(n, n);
  ma.block_residual = std::max(
      {resid(ma.D4 - ma.D1.transpose()), resid(ma.D2 - ma.D2.transpose()),
       resid(ma.D3 - ma.D3.transpose()),
       resid(ma.D1.transpose() * ma.D3 - ma.D3 * ma.D1),
       resid(ma.D2 * ma.D1.transpose() - ma.D1 * ma.D2),
       resid(ma.D1 * ma.D1 - ma.D2 * ma.D3 - I)});

  const RMat direct = full.monodromy();
  ma.direct_residual = resid(ma.gamma_full - direct);
  ma.involution_residual =
      resid((N * direct) * (N * direct) - RMat::Identity(2 * n, 2 * n));

  double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
  if (ma.direct_residual > agree_tol * scale) {
    std::ostringstream msg;
    msg << "half-period factorization disagrees with direct integration: "
        << ma.direct_residual << " at " << steps << " half steps";
    throw IdentityError(msg.str());
  }

  ma.spectrum = classify_spectrum(ma.gamma_full, sopt);
  return ma;
}

BrakeMorseData brake_morse_data(const BrakeProblem& bp, int mesh,
                                double tol_zero) {
  const int n = bp.c.n;
  BrakeMorseData md;
  const int half_mesh = std::max(16, mesh / 2);
  CoefficientSet hc = restrict_to(bp.c, 0.0, bp.c.T / 2);

  auto canon = [](const LagrangianFrame& f) { return canonicalize_boundary(f); };
  md.full_N = morse_index_discretized(bp.c, canon(bc_neumann(n)), mesh, tol_zero);
  md.full_D = morse_index_discretized(bp.c, canon(bc_dirichlet(n)), mesh, tol_zero);
  md.full_P = morse_index_discretized(bp.c, canon(bc_periodic(n)), mesh, tol_zero);

  const SymplecticSpace dbl = SymplecticSpace::doubled(n);
  const Mat Zn = neumann_frame(n).Z, Zd = dirichlet_frame(n).Z;
  md.half_NN =
      morse_index_discretized(hc, canon(bc_neumann(n)), half_mesh, tol_zero);
  md.half_DD =
      morse_index_discretized(hc, canon(bc_dirichlet(n)), half_mesh, tol_zero);
  md.half_ND = morse_index_discretized(hc, canon(bc_separated(dbl, Zn, Zd)),
                                       half_mesh, tol_zero);
  md.half_DN = morse_index_discretized(hc, canon(bc_separated(dbl, Zd, Zn)),
                                       half_mesh, tol_zero);

  md.k = md.full_P.neg;
  md.all_stable = md.full_N.stable && md.full_D.stable && md.full_P.stable &&
                  md.half_NN.stable && md.half_DD.stable && md.half_ND.stable &&
                  md.half_DN.stable;
  return md;
}

SpectrumCounts count_spectrum(const SpectrumReport& sr) {
  SpectrumCounts c;
  for (const auto& g : sr.groups) {
    if (g.upper) c.upper += g.geometric;
    if (g.upper || g.cls == SpectralClass::plus_one ||
        g.cls == SpectralClass::minus_one)
      c.unit_real += g.geometric;
  }
  return c;
}

StabilityBounds stability_bounds(const MonodromyAnalysis& ma,
                                 const BrakeMorseData& md,
                                 double corollary_tol) {
  StabilityBounds sb;
  const SpectrumCounts counts = count_spectrum(ma.spectrum);
  const long mN = md.full_N.neg, m0N = md.full_N.zero, mD = md.full_D.neg;

  sb.unit_real = bound_le(counts.unit_real, mN + m0N - mD);
  sb.offaxis = bound_le(counts.upper, mN - mD);
  sb.twok = bound_le(counts.upper, 2 * md.k);
  sb.premise_equal = (mN == mD);
  sb.max_offaxis_im = ma.spectrum.max_offaxis_im;
  sb.corollary_ok =
      !sb.premise_equal || sb.max_offaxis_im <= corollary_tol * ma.spectrum.scale;
  sb.converged = md.full_N.stable && md.full_D.stable && md.full_P.stable;
  sb.all_ok = sb.unit_real.ok && sb.offaxis.ok && sb.twok.ok && sb.corollary_ok;
  return sb;
}

DecompositionCheck morse_decomposition_check(const BrakeMorseData& md) {
  DecompositionCheck dc;
  auto eq = [](long lhs, long rhs) { return IdentityCheck{lhs, rhs, lhs == rhs}; };
  dc.k_split = eq(md.k, md.half_NN.neg + md.half_DD.neg);
  dc.neumann_split = eq(md.full_N.neg, md.half_NN.neg + md.half_ND.neg);
  dc.dirichlet_split = eq(md.full_D.neg, md.half_DD.neg + md.half_DN.neg);
  dc.difference_2k = bound_le(md.full_N.neg - md.full_D.neg, 2 * md.k);
  dc.converged = md.all_stable;
  dc.all_ok = dc.k_split.ok && dc.neumann_split.ok && dc.dirichlet_split.ok &&
              dc.difference_2k.ok;
  return dc;
}

MinimizerCheck minimizer_positivity_check(const MonodromyAnalysis& ma,
                                          const BrakeMorseData& md, double tol) {
  MinimizerCheck mc;
  if (!md.full_P.stable) {
    mc.skip_reason = "periodic Morse count did not converge";
    mc.ok = true;
    return mc;
  }
  if (md.k != 0) {
    std::ostringstream msg;
    msg << "periodic Morse index is " << md.k << ", not a minimizer";
    mc.skip_reason = msg.str();
    mc.ok = true;
    return mc;
  }
  mc.applicable = true;

  const double s = ma.spectrum.scale;
  mc.max_im = ma.spectrum.max_offaxis_im;
  mc.min_re = std::numeric_limits<double>::infinity();
  for (const auto& g : ma.spectrum.groups)
    mc.min_re = std::min(mc.min_re, g.lambda.real());
  mc.spectrum_real_positive = mc.max_im <= tol * s && mc.min_re > 0.0;

  Eigen::SelfAdjointEigenSolver<RMat> es3(
      0.5 * (ma.D3 + ma.D3.transpose()));
  const RVec e3 = es3.eigenvalues();
  const double n3 = std::max(1.0, e3.cwiseAbs().maxCoeff());
  mc.d3_min_eig = e3.minCoeff();
  mc.d3_invertible = e3.cwiseAbs().minCoeff() > Tol::rel_rank * n3;
  mc.d3_positive = mc.d3_invertible && mc.d3_min_eig > 0.0;
  const bool d3_psd = mc.d3_min_eig >= -tol * n3;

  Eigen::EigenSolver<RMat> es1(ma.D1);
  const Vec e1 = es1.eigenvalues();
  const double n1 = std::max(1.0, e1.cwiseAbs().maxCoeff());
  mc.d1_min_eig = e1.real().minCoeff();
  mc.d1_psd = e1.imag().cwiseAbs().maxCoeff() <= tol * n1 &&
              mc.d1_min_eig >= -tol * n1;

  mc.d3_formula_residual =
      (ma.D3 - 2.0 * ma.E3.transpose() * ma.E1).cwiseAbs().maxCoeff();

  mc.ok = mc.spectrum_real_positive && d3_psd &&
          (!mc.d3_invertible || mc.d3_positive) && mc.d1_psd &&
          mc.d3_formula_residual <= tol * n3;
  return mc;
}

QOrthogonalityReport q_orthogonality_check(const RMat& gamma_full, double tol) {
  const int n = static_cast<int>(gamma_full.rows()) / 2;
  QOrthogonalityReport rep;

  Eigen::EigenSolver<RMat> es(gamma_full);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("q_orthogonality_check: eigensolver failed");
  const Vec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double near = 1e-7 * scale;

  const QFormData q =
      q_form(graph_frame(gamma_full), bc_neumann(n), bc_dirichlet(n));

  const int m = 2 * n;
  Mat coords(q.carrier.cols(), m);
  Mat W(2 * n, m);  // eigenvectors scaled so the lift (w, gamma w) is unit
  for (int i = 0; i < m; ++i) {
    Vec u = es.eigenvectors().col(i);
    Vec z(4 * n);
    z << u, gamma_full * u;
    z /= z.norm();
    W.col(i) = z.head(2 * n);
    coords.col(i) = q.carrier.adjoint() * z;
    rep.carrier_gap =
        std::max(rep.carrier_gap, (z - q.carrier * coords.col(i)).norm());
  }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Cplx li = ev(i), lj = ev(j);
      const Cplx value = (coords.col(j).adjoint() * q.gram * coords.col(i))(0);
      // Q(z_i, z_j) on eigenpair lifts, from the decomposition into the
      // Neumann part (x traces) and the Dirichlet part (y traces)
      const Cplx base =
          (1.0 - li * std::conj(lj)) * 0.5 *
          (W.col(j).tail(n).dot(W.col(i).head(n)) +
           W.col(j).head(n).dot(W.col(i).tail(n)));
      rep.formula_gap = std::max(rep.formula_gap, std::abs(value - base));

      const bool conj_pair = std::abs(li - std::conj(lj)) <= 10.0 * near;
      const bool inverse_pair = std::abs(li * std::conj(lj) - 1.0) <= 10.0 * near;
      const bool both_plus = std::abs(li - 1.0) <= near && std::abs(lj - 1.0) <= near;
      const bool both_minus =
          std::abs(li + 1.0) <= near && std::abs(lj + 1.0) <= near;
      if (!conj_pair || inverse_pair || both_plus || both_minus) {
        ++rep.pairs_checked;
        rep.max_offdiag = std::max(rep.max_offdiag, std::abs(value));
      }
    }

  rep.ok = rep.carrier_gap <= 1e-8 && rep.max_offdiag <= tol &&
           rep.formula_gap <= tol;
  return rep;
}

BrakeAnalysis analyze_brake(const CoefficientSet& c, const BrakeOptions& opt) {
  BrakeAnalysis ba{verify_brake(c, 128, opt.parity_tol), {}, {}, {}, {}, {}, {}};
  ba.monodromy = monodromy_from_half(ba.problem, opt.steps, opt.spectrum);
  ba.morse = brake_morse_data(ba.problem, opt.mesh, opt.tol_zero);
  ba.bounds = stability_bounds(ba.monodromy, ba.morse);
  ba.decomposition = morse_decomposition_check(ba.morse);
  ba.minimizer = minimizer_positivity_check(ba.monodromy, ba.morse);
  ba.q_orth = q_orthogonality_check(ba.monodromy.gamma_full);
  return ba;
}

}  // namespace symindex
