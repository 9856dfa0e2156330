// Command line front end. Exit codes: 0 ok, 2 parse error, 3 validation
// error (message carries the offending field path), 4 non-convergence with a
// partial report, 5 failed identity.
// SPDX-License-Identifier: MIT
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "symindex/report.hpp"
#include "symindex/runner.hpp"

namespace {

int emit(const symindex::RunResult& res, const std::string& output) {
  if (output.empty()) {
    std::cout << res.report;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return 2;
    }
    out << res.report;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace symindex;

  CLI::App app{std::string("symindex ") + tool_version() +
               ": index computations for linear Hamiltonian boundary value "
               "problems"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string output;
  app.add_option("--input", cfg.input, "problem file (frames file for triple)");
  app.add_option("--output", output, "write the report here instead of stdout");
  app.add_option("--mesh", cfg.mesh, "override discretization.N (elements)");
  app.add_option("--steps", cfg.steps, "override discretization.M (integrator)");
  app.add_option("--tol-rank", cfg.tol_rank, "override tolerances.rank");
  app.add_option("--tol-zero", cfg.tol_zero, "override tolerances.zero");
  app.add_flag("--json", cfg.json, "machine readable report");
  app.add_option("--seed", cfg.seed, "randomized verify battery seed");
  app.add_option("--battery", cfg.battery, "randomized verify battery size")
      ->check(CLI::Range(1, 64));

  app.add_subcommand("morse", "discretized Morse index and nullity");
  app.add_subcommand("maslov", "Maslov index of the solution graph");
  app.add_subcommand("triple", "triple and Hormander indices of given frames");
  app.add_subcommand("conjugate", "conjugate point table");
  app.add_subcommand("brake", "half-period monodromy and stability bounds");
  app.add_subcommand("verify", "identity battery; nonzero exit on any failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return emit(run_command(cfg), output);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const IdentityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
