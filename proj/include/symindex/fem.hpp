// P1 discretization of the index form
//   I(xi,eta) = int <P xi',eta'> + <Q xi,eta'> + <Q^T xi',eta> + <R xi,eta>
//               - <A (xi(0),xi(T)), (eta(0),eta(T))>
// on hat functions whose endpoint nodes are constrained to the trace space V.
// Negative / near-zero eigenvalue counts against the L2 mass form give the
// Morse index and nullity; counts are accepted only when two nested meshes
// agree.
// SPDX-License-Identifier: MIT
#pragma once

#include "symindex/boundary.hpp"
#include "symindex/coeffs.hpp"

namespace symindex {

struct DiscreteForm {
  Mat K;  // the index form, Hermitian, dim = nu + n(N-1)
  Mat M;  // L2 mass, Hermitian positive definite
  int n = 0;
  int mesh = 0;          // element count N
  int nu = 0;            // trace block size (leading rows/cols)
  double h = 0.0;        // T / N
  double lambda_scale = 1.0;  // max(1, sup rho(B), |A|); sets the zero band
};

// OpenMP over elements, then a sequential scatter; bitwise equal to the
// serial reference below at any thread count.
DiscreteForm assemble_index_form(const CoefficientSet& c, const BoundaryData& bc,
                                 int N);
DiscreteForm assemble_index_form_ref(const CoefficientSet& c,
                                     const BoundaryData& bc, int N);

// kernel band on an N-mesh: (lambda_scale * h)^2 * (tol_zero / 1e-6); the
// discrete image of a true kernel eigenvalue sits at +O(h^2), so the band
// must shrink with the mesh at the same rate
double zero_band(const DiscreteForm& d, double tol_zero);

struct BandCounts {
  int neg = 0;
  int zero = 0;       // |lambda| <= band
  bool gray = false;  // some |lambda| in (band, 100*band): classification fragile
  double band = 0.0;
  double min_outside = 0.0;  // smallest |lambda| beyond the band
};
BandCounts count_form_eigenvalues(const DiscreteForm& d, double tol_zero);

struct MorseCounts {
  int neg = 0;
  int zero = 0;
  bool stable = false;  // two nested meshes produced the same integers
  bool gray = false;
  int mesh = 0;         // mesh the reported counts came from
  double band = 0.0;
};

// N vs 2N, escalating once to 4N on disagreement; stable=false when even
// that fails (reported, never silently accepted)
MorseCounts morse_index_discretized(const CoefficientSet& c,
                                    const BoundaryData& bc, int N,
                                    double tol_zero = 1e-6);

}  // namespace symindex
