// Brake symmetry: coefficient parity certification, the monodromy assembled
// from the half period, its block identities, eigenvalue classification, and
// the spectral stability bounds driven by Neumann/Dirichlet/periodic Morse
// indices.
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "symindex/morse.hpp"

namespace symindex {

// time reversal z(-t) = N z(t) in z = (y, x): N = diag(-I_n, I_n)
RMat brake_reflector(int n);

struct BrakeProblem {
  CoefficientSet c;
  ParityResidual parity;
};

// Certifies P even, Q odd, R even under t -> T - t (with the T-periodic
// extension this is parity about both 0 and T/2). Throws ValidationError
// naming the worst coefficient and sample time.
BrakeProblem verify_brake(const CoefficientSet& c, int samples = 128,
                          double tol = 1e-8);

// ---- spectrum of the monodromy -------------------------------------------

enum class SpectralClass {
  plus_one,
  minus_one,
  real_positive,   // real, > 0, away from +1
  real_negative,
  unit_nonreal,    // |lambda| = 1, off the real axis
  offcircle_upper, // Im > 0, |lambda| != 1
  offcircle_lower,
};
const char* to_string(SpectralClass cls);

struct EigenvalueGroup {
  Cplx lambda;          // cluster mean; exactly real for conjugate-closed clusters
  int geometric = 0;    // singular values of gamma - lambda I below the cluster radius
  int algebraic = 0;    // cluster size
  double radius = 0.0;  // worst member distance from the mean
  SpectralClass cls = SpectralClass::plus_one;
  bool upper = false;     // Im(lambda) > 0: counts toward the half-plane bounds
  bool boundary = false;  // within the band of a class boundary without sitting on it
};

struct SpectrumOptions {
  double band = 1e-7;     // class boundary half width, relative to scale
  double cluster = 1e-6;  // clustering radius, relative; absorbs the sqrt(eps)
                          // splitting of numerically defective pairs
  double rank_rel = Tol::rel_rank;
};

struct SpectrumReport {
  std::vector<EigenvalueGroup> groups;
  double scale = 1.0;           // max(1, spectral radius)
  bool pairing_ok = false;      // lambda <-> 1/lambda with equal multiplicities
  int geometric_total = 0;      // sum over groups
  int jordan_defect = 0;        // 2n - geometric_total; an estimate, not a proof
  double max_offaxis_im = 0.0;  // largest |Im| over group means
  double relation_residual = 0.0;  // worst eigenvector block relation, see below
};

// Eigenvalues of a brake monodromy gamma = [D1 D2; D3 D4], grouped and
// classified. For every eigenpair (lambda, (a,b)) the reflector symmetry
// forces
//   D1 a = c+ a,  D2 b = c- a,  D3 a = c- b,  D4 b = c+ b,
//   c+- = (lambda +- 1/lambda)/2,
// and relation_residual records the worst violation over computed pairs.
SpectrumReport classify_spectrum(const RMat& gamma_full,
                                 const SpectrumOptions& opt = {});

// ---- monodromy from the half period ---------------------------------------

struct MonodromyAnalysis {
  int n = 0;
  RMat gamma_half;  // gamma(T/2) by integration
  RMat gamma_full;  // N gamma(T/2)^{-1} N gamma(T/2)
  RMat E1, E2, E3, E4;  // blocks of gamma_half
  RMat D1, D2, D3, D4;  // blocks of gamma_full
  double direct_residual = 0.0;   // vs integrating over [0, T]
  double involution_residual = 0.0;  // (N gamma_direct)^2 - I
  double assembly_residual = 0.0;    // D-blocks vs their E-block products
  double block_residual = 0.0;       // worst of the six D identities
  double halving_half = 0.0;         // RK step-halving errors
  double halving_full = 0.0;
  SpectrumReport spectrum;
};

// Integrates only on [0, T/2] (steps nodes), assembles gamma(T) through the
// reflector factorization, and cross checks against a direct [0, T]
// integration at the same step size. Throws IdentityError when the two
// disagree beyond agree_tol.
MonodromyAnalysis monodromy_from_half(const BrakeProblem& bp, int steps = 2048,
                                      const SpectrumOptions& sopt = {},
                                      double agree_tol = 1e-6);

// ---- Morse data on the full and half interval -----------------------------

struct BrakeMorseData {
  MorseCounts full_N, full_D, full_P;  // [0, T]
  MorseCounts half_NN, half_DD;        // [0, T/2], left end (+) right end
  MorseCounts half_ND, half_DN;
  long k = 0;               // full_P.neg, the periodic Morse index
  bool all_stable = false;  // every count passed the nested-mesh agreement
};

// Seven discretized Morse computations; mesh is the element count on [0, T],
// halved (but at least 16) on the half interval so the step stays the same.
BrakeMorseData brake_morse_data(const BrakeProblem& bp, int mesh = 128,
                                double tol_zero = 1e-6);

// ---- stability bounds ------------------------------------------------------

// geometric multiplicity totals over spectral regions, as used by the bounds
struct SpectrumCounts {
  long upper = 0;      // Im > 0
  long unit_real = 0;  // upper plus the +-1 groups
};
SpectrumCounts count_spectrum(const SpectrumReport& sr);

struct StabilityBounds {
  Bound unit_real;  // dim over C-perp and +-1  <=  m-(N) + m0(N) - m-(D)
  Bound offaxis;    // dim over C-perp          <=  m-(N) - m-(D)
  Bound twok;       // dim over C-perp          <=  2 k
  bool premise_equal = false;  // m-(N) == m-(D)
  double max_offaxis_im = 0.0;
  bool corollary_ok = false;  // premise -> spectrum real within corollary_tol
  bool converged = false;     // the Morse counts backing the right sides
  bool all_ok = false;
};

StabilityBounds stability_bounds(const MonodromyAnalysis& ma,
                                 const BrakeMorseData& md,
                                 double corollary_tol = 1e-6);

// ---- half period Morse decomposition --------------------------------------

struct IdentityCheck {
  long lhs = 0;
  long rhs = 0;
  bool ok = false;
};

struct DecompositionCheck {
  IdentityCheck k_split;          // k == half_NN + half_DD
  IdentityCheck neumann_split;    // full_N == half_NN + half_ND
  IdentityCheck dirichlet_split;  // full_D == half_DD + half_DN
  Bound difference_2k;            // full_N - full_D <= 2k
  bool converged = false;
  bool all_ok = false;
};

DecompositionCheck morse_decomposition_check(const BrakeMorseData& md);

// ---- minimizer positivity --------------------------------------------------

struct MinimizerCheck {
  bool applicable = false;  // k == 0 on a converged periodic count
  std::string skip_reason;
  double max_im = 0.0;            // spectrum must be real ...
  double min_re = 0.0;            // ... and positive
  bool spectrum_real_positive = false;
  double d3_min_eig = 0.0;        // D3 is psd, definite once invertible
  bool d3_invertible = false;
  bool d3_positive = false;
  double d1_min_eig = 0.0;        // eigenvalues of D1 sit in [1, inf)
  bool d1_psd = false;
  double d3_formula_residual = 0.0;  // D3 - 2 E3^T E1
  bool ok = false;  // vacuously true when not applicable
};

MinimizerCheck minimizer_positivity_check(const MonodromyAnalysis& ma,
                                          const BrakeMorseData& md,
                                          double tol = 1e-8);

// ---- lifted eigenvector orthogonality --------------------------------------

// The graph points z = (u, gamma u) of eigenpairs lie in the carrier of
// Q(Gr(gamma), Neumann; Dirichlet). Pairs with lambda_1 != conj(lambda_2) or
// lambda_1 conj(lambda_2) = 1 must be Q-orthogonal, and on eigenpairs the
// whole form collapses to
//   Q(z_1, z_2) = (1 - lambda_1 conj(lambda_2)) (<b_1, a_2> + <a_1, b_2>)/2,
// u_i = (a_i, b_i), which formula_gap checks verbatim.
struct QOrthogonalityReport {
  int pairs_checked = 0;      // pairs that must vanish
  double max_offdiag = 0.0;   // worst |Q| over those pairs
  double formula_gap = 0.0;   // worst deviation from the closed form, all pairs
  double carrier_gap = 0.0;   // worst distance of a lift from the carrier span
  bool ok = false;
};

QOrthogonalityReport q_orthogonality_check(const RMat& gamma_full,
                                           double tol = 1e-7);

// ---- one-call driver --------------------------------------------------------

struct BrakeOptions {
  int steps = 2048;       // half-period integration nodes
  int mesh = 128;         // elements on [0, T]
  double tol_zero = 1e-6;
  double parity_tol = 1e-8;
  SpectrumOptions spectrum;
};

struct BrakeAnalysis {
  BrakeProblem problem;
  MonodromyAnalysis monodromy;
  BrakeMorseData morse;
  StabilityBounds bounds;
  DecompositionCheck decomposition;
  MinimizerCheck minimizer;
  QOrthogonalityReport q_orth;
};

BrakeAnalysis analyze_brake(const CoefficientSet& c, const BrakeOptions& opt = {});

}  // namespace symindex
