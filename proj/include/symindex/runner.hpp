// Command orchestration shared by the CLI binary and the test harness: load
// an input file (or draw a randomized battery), run the requested analysis,
// and render one deterministic report.
// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "symindex/problem.hpp"

namespace symindex {

struct RunConfig {
  std::string command;  // morse | maslov | triple | conjugate | brake | verify
  std::string input;    // frames file for triple, problem file otherwise;
                        // empty input turns verify into a randomized battery
  std::optional<int> mesh;   // overrides discretization.N
  std::optional<int> steps;  // overrides discretization.M
  std::optional<double> tol_rank;
  std::optional<double> tol_zero;
  bool json = false;
  std::uint64_t seed = 1;  // randomized battery stream
  int battery = 6;         // problems per randomized battery
};

// 0 ok, 4 not converged, 5 identity failed; the report is complete for 0 and
// partial (every section computed so far plus the error) for 4 and 5.
// ParseError / ValidationError escape to the caller before any report exists.
struct RunResult {
  int exit_code = 0;
  std::string report;
};

RunResult run_command(const RunConfig& cfg);

}  // namespace symindex
