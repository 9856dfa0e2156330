// Input file schema, field-path diagnostics, and the command runner's
// integer outputs and byte determinism on the bundled problem files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "symindex/morse.hpp"
#include "symindex/problem.hpp"
#include "symindex/runner.hpp"

using namespace symindex;

namespace {

std::string minimal(const std::string& boundary,
                    const std::string& extra = "") {
  return std::string(R"({
    "n": 1,
    "T": 2.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[1.0]]}]},
      "Q": {"fourier": []},
      "R": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[0.5]]}]}
    },
    "boundary": )") +
         boundary + extra + "\n}";
}

std::string validation_message(const std::string& text) {
  try {
    parse_problem_text(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "(no error)";
}

}  // namespace

TEST_CASE("minimal problem and defaults") {
  const Problem p = parse_problem_text(minimal("{\"kind\": \"dirichlet\"}"));
  CHECK(p.n == 1);
  CHECK(p.T == 2.0);
  CHECK(p.N == 128);
  CHECK(p.M == 2048);
  CHECK(p.tol_zero == 1e-6);
  CHECK(p.boundary_kind == "dirichlet");
  CHECK(p.has_endpoints);
  CHECK_FALSE(p.brake);
  CHECK((p.coeffs.P(0.3) - RMat::Identity(1, 1)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(p.coeffs.Q(0.7).cwiseAbs().maxCoeff() == 0.0);  // empty fourier = zero
  // dirichlet boundary canonicalizes to zero trace space
  const BoundaryData bd = canonicalize_boundary(p.boundary);
  CHECK(bd.nu == 0);
  CHECK(bd.k == 2);
}

TEST_CASE("every boundary kind builds the expected frame") {
  const Problem pn = parse_problem_text(minimal("{\"kind\": \"neumann\"}"));
  CHECK(canonicalize_boundary(pn.boundary).nu == 2);

  const Problem pp = parse_problem_text(minimal("{\"kind\": \"periodic\"}"));
  CHECK(intersection_dim(pp.boundary, bc_periodic(1)) == 2);
  CHECK_FALSE(pp.has_endpoints);

  const Problem ps = parse_problem_text(minimal(
      R"({"kind": "separated", "params": {"start": [[0.0],[1.0]], "end": [[1.0],[1.0]]}})"));
  CHECK(ps.has_endpoints);
  CHECK(intersection_dim(ps.lambda_s, neumann_frame(1)) == 1);

  const Problem pg = parse_problem_text(minimal(
      R"({"kind": "graph_separated", "params": {"A_start": [[0.0]], "A_end": [[1.0]]}})"));
  CHECK(pg.has_graph_data);
  CHECK(intersection_dim(pg.boundary, ps.boundary) == 2);  // same subspace

  const Problem pv = parse_problem_text(minimal(
      R"({"kind": "V_subspace", "params": {"V": [[1.0],[1.0]]}})"));
  CHECK(canonicalize_boundary(pv.boundary).nu == 1);
}

TEST_CASE("discretization, tolerances and brake flags parse") {
  const Problem p = parse_problem_text(minimal(
      "{\"kind\": \"periodic\"}",
      R"(,
    "discretization": {"N": 64, "M": 512},
    "tolerances": {"zero": 1e-5, "rank": 1e-9, "sympl": 1e-7},
    "brake": true)"));
  CHECK(p.N == 64);
  CHECK(p.M == 512);
  CHECK(p.tol_zero == 1e-5);
  CHECK(p.tol_rank == 1e-9);
  CHECK(p.tol_sympl == 1e-7);
  CHECK(p.brake);
}

TEST_CASE("schema violations carry the field path") {
  // harmonic above the cap
  const std::string high_k = R"({
    "n": 1, "T": 1.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 33, "matrix": [[1.0]]}]},
      "Q": {"fourier": []},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "dirichlet"}
  })";
  CHECK(validation_message(high_k).find("coefficients.P.fourier[0].k") == 0);
  // wrong matrix shape
  const std::string bad_shape = R"({
    "n": 2, "T": 1.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[1.0]]}]},
      "Q": {"fourier": []},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "dirichlet"}
  })";
  CHECK(validation_message(bad_shape).find(
            "coefficients.P.fourier[0].matrix") == 0);
  // unknown key
  CHECK(validation_message(minimal("{\"kind\": \"dirichlet\"}",
                                   ", \"mystery\": 1"))
            .find("mystery: unknown field") == 0);
  // sin harmonic 0
  const std::string sin0 = R"({
    "n": 1, "T": 1.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[1.0]]}]},
      "Q": {"fourier": [{"kind": "sin", "k": 0, "matrix": [[1.0]]}]},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "dirichlet"}
  })";
  CHECK(validation_message(sin0).find("coefficients.Q.fourier[0].k") == 0);
  // non-Hermitian Robin matrix
  const std::string robin = R"({
    "n": 2, "T": 1.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[1.0,0.0],[0.0,1.0]]}]},
      "Q": {"fourier": []},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "graph_separated",
                 "params": {"A_start": [[0.0,1.0],[0.0,0.0]],
                            "A_end": [[0.0,0.0],[0.0,0.0]]}}
  })";
  CHECK(validation_message(robin).find("boundary.params.A_start") == 0);
  // non-Lagrangian separated frame: zero column is rank deficient
  const std::string flat = R"({
    "n": 1, "T": 1.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[1.0]]}]},
      "Q": {"fourier": []},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "separated",
                 "params": {"start": [[0.0],[0.0]], "end": [[1.0],[0.0]]}}
  })";
  CHECK(validation_message(flat).find("boundary.params.start") == 0);
  // indefinite P is rejected at the structural gate
  const std::string indef = R"({
    "n": 1, "T": 1.0,
    "coefficients": {
      "P": {"fourier": [{"kind": "cos", "k": 0, "matrix": [[-1.0]]}]},
      "Q": {"fourier": []},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "dirichlet"}
  })";
  CHECK(validation_message(indef).find("coefficients") == 0);
  // grid needs 65 samples
  const std::string grid = R"({
    "n": 1, "T": 1.0,
    "coefficients": {
      "P": {"grid": [[[1.0]], [[1.0]], [[1.0]]]},
      "Q": {"fourier": []},
      "R": {"fourier": []}
    },
    "boundary": {"kind": "dirichlet"}
  })";
  CHECK(validation_message(grid).find("coefficients.P.grid") == 0);
}

TEST_CASE("not-JSON input raises ParseError, not ValidationError") {
  CHECK_THROWS_AS(parse_problem_text("{oops"), ParseError);
  CHECK_THROWS_AS(parse_problem_text("[1, 2]"), ParseError);
  CHECK_THROWS_AS(load_problem("/nonexistent/file.json"), ParseError);
}

TEST_CASE("frames file parses and validates") {
  const std::string good = R"({
    "space": {"kind": "standard", "half_dim": 1},
    "frames": {
      "a": [[1.0],[0.0]],
      "b": [[1.0],[-1.0]],
      "k": [[0.0],[1.0]]
    }
  })";
  const FrameInput fi = parse_frames_text(good);
  CHECK(fi.space.half_dim == 1);
  CHECK_FALSE(fi.has_l);
  CHECK(triple_index(fi.a, fi.b, fi.k) == 1);

  // a non-Lagrangian frame in a bigger space names the frame
  const std::string bad = R"({
    "space": {"kind": "standard", "half_dim": 2},
    "frames": {
      "a": [[1.0,0.0],[0.0,1.0],[0.0,0.0],[0.0,0.0]],
      "b": [[1.0,0.0],[0.0,0.0],[0.0,1.0],[0.0,0.0]],
      "k": [[0.0,0.0],[0.0,0.0],[1.0,0.0],[0.0,1.0]]
    }
  })";
  try {
    parse_frames_text(bad);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("frames.b") == 0);
  }
}

TEST_CASE("runner: golden files give the known integers") {
  {
    RunConfig cfg;
    cfg.command = "morse";
    cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/neumann_robin_pi.json";
    const RunResult res = run_command(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report.find("m_minus: 2") != std::string::npos);
    CHECK(res.report.find("m_zero: 0") != std::string::npos);
  }
  {
    RunConfig cfg;
    cfg.command = "morse";
    cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/oscillator_dirichlet_2pi.json";
    const RunResult res = run_command(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report.find("m_minus: 1") != std::string::npos);
  }
  {
    RunConfig cfg;
    cfg.command = "triple";
    cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/frames_triple.json";
    const RunResult res = run_command(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report.find("i_abk: 1") != std::string::npos);
    CHECK(res.report.find("routes_agree: true") != std::string::npos);
  }
}

TEST_CASE("runner: verify passes on the worked example with exact values") {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/neumann_robin_pi.json";
  cfg.mesh = 128;  // keep the test quick; identities are mesh independent
  const RunResult res = run_command(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report.find("maslov: 1") != std::string::npos);
  CHECK(res.report.find("offset: -1") != std::string::npos);
  CHECK(res.report.find("result: pass") != std::string::npos);
  CHECK(res.report.find("identities_failed: 0") != std::string::npos);
}

TEST_CASE("runner: overrides reach the report and the computation") {
  RunConfig cfg;
  cfg.command = "morse";
  cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/oscillator_dirichlet_2pi.json";
  cfg.mesh = 64;
  const RunResult res = run_command(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report.find("mesh: 64") != std::string::npos);

  cfg.mesh = 4;  // below the floor
  CHECK_THROWS_AS(run_command(cfg), ValidationError);
}

TEST_CASE("runner: brake requires the brake flag") {
  RunConfig cfg;
  cfg.command = "brake";
  cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/oscillator_dirichlet_2pi.json";
  CHECK_THROWS_AS(run_command(cfg), ValidationError);
}

TEST_CASE("runner: reports are byte deterministic") {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.seed = 7;
  cfg.battery = 2;
  const RunResult a = run_command(cfg);
  const RunResult b = run_command(cfg);
  CHECK(a.exit_code == 0);
  CHECK(a.report == b.report);

  cfg.json = true;
  const RunResult c = run_command(cfg);
  const RunResult d = run_command(cfg);
  CHECK(c.report == d.report);
  CHECK(c.report != a.report);  // different rendering of the same tree

  cfg.seed = 8;  // a different stream must actually change the report
  const RunResult e = run_command(cfg);
  CHECK(e.report != c.report);
}

TEST_CASE("runner: brake goldens pass end to end") {
  RunConfig cfg;
  cfg.command = "brake";
  cfg.input = std::string(SYMINDEX_SOURCE_DIR) + "/problems/hyperbolic_brake.json";
  const RunResult res = run_command(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report.find("class=real_positive") != std::string::npos);
  CHECK(res.report.find("applicable: true") != std::string::npos);
  CHECK(res.report.find("result: pass") != std::string::npos);
}
