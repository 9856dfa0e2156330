// SPDX-License-Identifier: MIT
#include "symindex/triple.hpp"

#include <Eigen/QR>
#include <string>

namespace symindex {

namespace {

void require_same_space(const LagrangianFrame& a, const LagrangianFrame& b,
                        const char* who) {
  if (!(a.space == b.space))
    throw ValidationError(std::string(who) + ": frames from different spaces");
}

Mat intersect3(const LagrangianFrame& a, const LagrangianFrame& b,
               const LagrangianFrame& k) {
  return intersection(intersection(a.Z, b.Z), k.Z);
}

}  // namespace

QFormData q_form(const LagrangianFrame& a, const LagrangianFrame& b,
                 const LagrangianFrame& d) {
  require_same_space(a, b, "q_form");
  require_same_space(a, d, "q_form");
  QFormData out;

  Mat bd = subspace_sum(b.Z, d.Z);
  out.carrier = intersection(a.Z, bd);
  const int c = static_cast<int>(out.carrier.cols());

  const Mat Omega = a.space.form().cast<Cplx>();
  out.gram = Mat::Zero(c, c);
  if (c > 0) {
    // decompose each carrier vector x = y + z, y in b, z in d. The
    // decomposition is only unique modulo b∩d; the form value is not
    // affected because the components live in isotropic subspaces.
    Mat stacked(a.Z.rows(), b.Z.cols() + d.Z.cols());
    stacked << b.Z, d.Z;
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(stacked);
    Mat Y(a.Z.rows(), c), Zc(a.Z.rows(), c);
    for (int j = 0; j < c; ++j) {
      Vec coeff = cod.solve(out.carrier.col(j));
      Y.col(j) = b.Z * coeff.head(b.Z.cols());
      Zc.col(j) = out.carrier.col(j) - Y.col(j);
      double resid = (stacked * coeff - out.carrier.col(j)).norm();
      out.decomp_residual = std::max(out.decomp_residual, resid);
    }
    if (out.decomp_residual > 1e-8)
      throw ValidationError("q_form: carrier vector failed to split into b + d");
    // Q(x_j, x_i) = omega(y_j, z_i) = z_i^* Omega y_j
    Mat G = Zc.adjoint() * Omega * Y;
    out.herm_residual = (G - G.adjoint()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
    if (out.herm_residual > 1e-7 * scale)
      throw ValidationError("q_form: Gram matrix not Hermitian, residual " +
                            std::to_string(out.herm_residual));
    out.gram = 0.5 * (G + G.adjoint());
  }
  out.inertia = inertia_of(out.gram);

  int iab = static_cast<int>(intersection(a.Z, b.Z).cols());
  int iad = static_cast<int>(intersection(a.Z, d.Z).cols());
  int iabd = static_cast<int>(intersect3(a, b, d).cols());
  out.kernel_expected = iab + iad - iabd;
  out.kernel_ok = (out.inertia.zero == out.kernel_expected);
  return out;
}

int triple_index(const LagrangianFrame& a, const LagrangianFrame& b,
                 const LagrangianFrame& k) {
  QFormData q = q_form(a, b, k);
  if (!q.kernel_ok)
    throw DegenerateInput("triple_index: Gram kernel " + std::to_string(q.inertia.zero) +
                          " != structural kernel " + std::to_string(q.kernel_expected));
  int iak = static_cast<int>(intersection(a.Z, k.Z).cols());
  int iabk = static_cast<int>(intersect3(a, b, k).cols());
  int idx = q.inertia.pos + iak - iabk;

  int iab = static_cast<int>(intersection(a.Z, b.Z).cols());
  int ibk = static_cast<int>(intersection(b.Z, k.Z).cols());
  int upper = a.dim() - iab - ibk + iabk;
  if (idx < 0 || idx > upper)
    throw IdentityError("triple_index: value " + std::to_string(idx) +
                        " outside [0, " + std::to_string(upper) + "]");
  return idx;
}

int hormander_via_kappa(const LagrangianFrame& l1, const LagrangianFrame& l2,
                        const LagrangianFrame& k1, const LagrangianFrame& k2) {
  return triple_index(l1, l2, k2) - triple_index(l1, l2, k1);
}

int hormander_via_lambda(const LagrangianFrame& l1, const LagrangianFrame& l2,
                         const LagrangianFrame& k1, const LagrangianFrame& k2) {
  return triple_index(l1, k1, k2) - triple_index(l2, k1, k2);
}

int hormander_index(const LagrangianFrame& l1, const LagrangianFrame& l2,
                    const LagrangianFrame& k1, const LagrangianFrame& k2) {
  int s1 = hormander_via_kappa(l1, l2, k1, k2);
  int s2 = hormander_via_lambda(l1, l2, k1, k2);
  if (s1 != s2)
    throw IdentityError("hormander_index: expressions disagree, " +
                        std::to_string(s1) + " vs " + std::to_string(s2));
  return s1;
}

GraphIdentityReport check_graph_triple_identities(const RMat& M, const Mat& L1,
                                                  const Mat& L2, const Mat& L3,
                                                  const Mat& L4) {
  const int two_n = static_cast<int>(M.rows());
  const int n = two_n / 2;
  auto std_sp = SymplecticSpace::standard(n);
  auto neg_sp = SymplecticSpace::negated(n);
  auto dbl_sp = SymplecticSpace::doubled(n);

  LagrangianFrame G = graph_frame(M);
  auto dsum = [&](const Mat& A, const Mat& B) { return bc_separated(dbl_sp, A, B); };
  auto fwd = [&](const Mat& A) { return make_frame(std_sp, Mat(M.cast<Cplx>() * A)); };
  RMat Minv = M.inverse();
  auto bwd_neg = [&](const Mat& A) {
    return make_frame(neg_sp, Mat(Minv.cast<Cplx>() * A));
  };
  auto neg = [&](const Mat& A) { return make_frame(neg_sp, A); };

  GraphIdentityReport r;
  r.lhs_12_13 = triple_index(G, dsum(L1, L2), dsum(L1, L3));
  r.rhs_12_13 = triple_index(fwd(L1), make_frame(std_sp, L2), make_frame(std_sp, L3));

  r.lhs_12_32 = triple_index(G, dsum(L1, L2), dsum(L3, L2));
  r.rhs_12_32 = triple_index(bwd_neg(L2), neg(L1), neg(L3));

  r.lhs_12_34 = triple_index(G, dsum(L1, L2), dsum(L3, L4));
  r.rhs_12_34_a = triple_index(fwd(L1), make_frame(std_sp, L2), make_frame(std_sp, L4)) +
                  triple_index(bwd_neg(L4), neg(L1), neg(L3));
  r.rhs_12_34_b = triple_index(fwd(L3), make_frame(std_sp, L2), make_frame(std_sp, L4)) +
                  triple_index(bwd_neg(L2), neg(L1), neg(L3));

  r.ok = (r.lhs_12_13 == r.rhs_12_13) && (r.lhs_12_32 == r.rhs_12_32) &&
         (r.lhs_12_34 == r.rhs_12_34_a) && (r.lhs_12_34 == r.rhs_12_34_b);
  return r;
}

}  // namespace symindex
