// Input files: a strict JSON schema for boundary value problems and for
// standalone frame collections, converted to library objects up front.
// Schema violations throw ValidationError whose message starts with the
// offending field path ("coefficients.P.fourier[2].matrix: ...").
// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "symindex/boundary.hpp"
#include "symindex/coeffs.hpp"

namespace symindex {

// unreadable file or text that is not JSON at all; everything past that
// stage reports through ValidationError instead
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  int n = 1;
  double T = 1.0;
  CoefficientSet coeffs;

  // dirichlet | neumann | periodic | V_subspace | separated | graph_separated
  std::string boundary_kind;
  LagrangianFrame boundary;  // doubled-space frame

  // endpoint Lagrangians in (C^{2n}, omega); present for every separated
  // family member (dirichlet, neumann, separated, graph_separated)
  bool has_endpoints = false;
  LagrangianFrame lambda_s, lambda_e;

  bool has_graph_data = false;  // graph_separated only
  Mat A_start, A_end;

  Mat V_trace;  // V_subspace only

  int N = 128;   // mesh elements on [0, T]
  int M = 2048;  // integrator steps
  double tol_rank = Tol::rel_rank;
  double tol_zero = 1e-6;
  double tol_sympl = 1e-6;

  bool brake = false;
};

Problem parse_problem_text(const std::string& text);
Problem load_problem(const std::string& path);

// frames file for the triple command: a symplectic space plus named
// Lagrangian frames a, b, k and an optional fourth frame l
struct FrameInput {
  SymplecticSpace space;
  LagrangianFrame a, b, k;
  bool has_l = false;
  LagrangianFrame l;
};

FrameInput parse_frames_text(const std::string& text);
FrameInput load_frames(const std::string& path);

}  // namespace symindex
