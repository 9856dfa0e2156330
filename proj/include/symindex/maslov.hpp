// Maslov index of a path of Lagrangian subspaces against a fixed reference.
//
// The count follows the endpoint convention
//   index = m^+(form at a) + sum over a<t<b of sign(form) - m^-(form at b),
// realized as the number of signed passages of the eigenphases of
// W(t) = f(ref)^† f(path(t)) through a fixed level just below zero
// (downward passes count +1, upward -1). A positive crossing form moves
// eigenphases downward through zero. The two implementations here compute
// the same number along independent routes.
// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <vector>

#include "symindex/symplectic.hpp"

namespace symindex {

using FramePath = std::function<LagrangianFrame(double)>;
// C(t) with dM/dt = C(t) M(t) for the matrix path driving the frames
using GeneratorFn = std::function<Mat(double)>;

struct MaslovOptions {
  int coarse_samples = 256;
  double max_phase_step = 0.35;  // tightened to 0.9*pi/m for large m
  int max_refine_depth = 40;
  long max_evaluations = 2000000;
  double endpoint_angle_tol = Tol::angle;
};

struct MaslovResult {
  int index = 0;
  int dim_start = 0;  // dim(path(a) ∩ ref)
  int dim_end = 0;    // dim(path(b) ∩ ref)
  double level = 0.0; // counting level actually used
  long evaluations = 0;
};

MaslovResult maslov_index(const LagrangianFrame& ref, const FramePath& path,
                          double a, double b, const MaslovOptions& opt = {});

struct CrossingData {
  double t = 0.0;
  int dim = 0;      // dim(path(t) ∩ ref)
  Inertia form;     // crossing form inertia on the intersection
};

struct CrossingResult {
  int index = 0;
  std::vector<CrossingData> crossings;
  bool all_regular = true;  // no crossing form was degenerate
};

// Locates the crossings, evaluates the crossing form -Omega*C(t) on each
// intersection and assembles the index with the endpoint convention above.
// Assumes crossings are separated beyond the refinement scale; the winding
// route has no such requirement and should be treated as authoritative.
CrossingResult maslov_index_via_crossings(const LagrangianFrame& ref,
                                          const FramePath& path,
                                          const GeneratorFn& generator,
                                          double a, double b,
                                          const MaslovOptions& opt = {});

// For a path transversal to keep_off on all of [a,b] the index is a
// difference of triple indices. Transversality is checked on the sample
// grid; a detected intersection throws ValidationError.
int maslov_via_transversal(const LagrangianFrame& ref, const FramePath& path,
                           const LagrangianFrame& keep_off, double a, double b,
                           const MaslovOptions& opt = {});

// Hermitian matrix of the crossing form, -Omega*C symmetrized; throws when
// C is not in the Lie algebra of the form (the product must be Hermitian).
Mat crossing_form_matrix(const SymplecticSpace& sp, const Mat& C);

}  // namespace symindex
