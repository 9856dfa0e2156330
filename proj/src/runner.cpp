// SPDX-License-Identifier: MIT
#include "symindex/runner.hpp"

#include "symindex/brake.hpp"
#include "symindex/morse.hpp"
#include "symindex/report.hpp"

namespace symindex {
namespace {

// identity verdicts only count on settled discretizations
bool settled(const MorseCounts& mc) { return mc.stable && !mc.gray; }

struct Tally {
  int failed = 0;     // false identity verdicts on converged data
  int unsettled = 0;  // verdicts skipped for lack of convergence
  void verdict(bool ok) { failed += ok ? 0 : 1; }
};

Report counts_json(const MorseCounts& mc) {
  Report r;
  r["m_minus"] = mc.neg;
  r["m_zero"] = mc.zero;
  r["converged"] = settled(mc);
  r["gray_band"] = mc.gray;
  r["mesh_used"] = mc.mesh;
  r["zero_band"] = mc.band;
  return r;
}

Report check_json(long lhs, long rhs, bool ok) {
  Report r;
  r["lhs"] = lhs;
  r["rhs"] = rhs;
  r["relation"] = "==";
  r["ok"] = ok;
  return r;
}

Report bound_json(const Bound& b) {
  Report r;
  r["lhs"] = b.lhs;
  r["rhs"] = b.rhs;
  r["relation"] = "<=";
  r["ok"] = b.ok;
  return r;
}

Report skipped_json() {
  Report r;
  r["skipped"] = true;
  r["reason"] = "discretization did not converge";
  return r;
}

Report config_section(const Problem& p) {
  Report c;
  c["n"] = p.n;
  c["T"] = p.T;
  c["boundary"] = p.boundary_kind;
  c["mesh"] = p.N;
  c["steps"] = p.M;
  c["tol_rank"] = p.tol_rank;
  c["tol_zero"] = p.tol_zero;
  c["tol_sympl"] = p.tol_sympl;
  c["brake"] = p.brake;
  return c;
}

void apply_overrides(Problem& p, const RunConfig& cfg) {
  if (cfg.mesh) {
    if (*cfg.mesh < 16) throw ValidationError("--mesh: expected N >= 16");
    p.N = *cfg.mesh;
  }
  if (cfg.steps) {
    if (*cfg.steps < 16) throw ValidationError("--steps: expected M >= 16");
    p.M = *cfg.steps;
  }
  if (cfg.tol_rank) {
    if (!(*cfg.tol_rank > 0.0 && *cfg.tol_rank < 1.0))
      throw ValidationError("--tol-rank: expected a value in (0, 1)");
    p.tol_rank = *cfg.tol_rank;
  }
  if (cfg.tol_zero) {
    if (!(*cfg.tol_zero > 0.0 && *cfg.tol_zero < 1.0))
      throw ValidationError("--tol-zero: expected a value in (0, 1)");
    p.tol_zero = *cfg.tol_zero;
  }
}

Report flow_json(const FundamentalSolution& flow) {
  Report r;
  r["symplectic_residual"] = flow.symplectic_residual();
  r["step_halving_error"] = flow.step_halving_error();
  return r;
}

void run_morse(const Problem& p, Report& root, Tally& tally) {
  const BoundaryData bd = canonicalize_boundary(p.boundary);
  const MorseCounts mc = morse_index_discretized(p.coeffs, bd, p.N, p.tol_zero);
  Report sec = counts_json(mc);
  sec["nu"] = bd.nu;
  root["morse"] = sec;
  if (!settled(mc)) ++tally.unsettled;
}

void run_maslov(const Problem& p, Report& root, Tally&) {
  const FundamentalSolution flow(p.coeffs, {p.M, p.tol_sympl});
  root["flow"] = flow_json(flow);
  const MaslovResult mr = maslov_of_solution(flow, p.boundary);
  Report sec;
  sec["index"] = mr.index;
  sec["dim_start"] = mr.dim_start;
  sec["dim_end"] = mr.dim_end;
  sec["evaluations"] = mr.evaluations;
  // second route through located crossings; informational, since clustered
  // crossings can defeat it while the winding count stays valid
  Report table = Report::array();
  try {
    const CrossingResult cr = maslov_index_via_crossings(
        p.boundary, flow.graph_path(), flow.doubled_generator(), 0.0, p.T);
    sec["crossing_route_index"] = cr.index;
    sec["routes_agree"] = (cr.index == mr.index);
    sec["crossings_regular"] = cr.all_regular;
    for (const auto& c : cr.crossings) {
      Report row;
      row["t"] = c.t;
      row["dim"] = c.dim;
      row["form_pos"] = c.form.pos;
      row["form_neg"] = c.form.neg;
      row["form_zero"] = c.form.zero;
      table.push_back(row);
    }
  } catch (const std::runtime_error& e) {
    sec["crossing_route_error"] = e.what();
  }
  root["maslov"] = sec;
  root["crossings"] = table;
}

void run_conjugate(const Problem& p, Report& root, Tally&) {
  const FundamentalSolution flow(p.coeffs, {p.M, p.tol_sympl});
  root["flow"] = flow_json(flow);
  const LagrangianFrame start =
      p.has_endpoints ? p.lambda_s : dirichlet_frame(p.n);
  Report sec;
  sec["start_frame"] = p.has_endpoints ? "lambda_s" : "dirichlet";
  const auto pts = conjugate_points(flow, start, dirichlet_frame(p.n));
  long sum = 0;
  Report table = Report::array();
  for (const auto& cp : pts) {
    Report row;
    row["t"] = cp.t;
    row["dim"] = cp.dim;
    table.push_back(row);
    sum += cp.dim;
  }
  sec["count"] = static_cast<long>(pts.size());
  sec["sum"] = sum;
  if (p.has_endpoints) {
    const SeparatedMorse sm = morse_via_crossings(flow, p.lambda_s, p.lambda_e);
    sec["endpoint_correction"] = sm.correction;
    sec["morse_total"] = sm.total;
  }
  root["conjugate"] = sec;
  root["points"] = table;
}

void run_triple(const FrameInput& fi, Report& root, Tally& tally) {
  const QFormData qd = q_form(fi.a, fi.b, fi.k);
  Report sec;
  sec["i_abk"] = triple_index(fi.a, fi.b, fi.k);
  sec["form_pos"] = qd.inertia.pos;
  sec["form_neg"] = qd.inertia.neg;
  sec["form_zero"] = qd.inertia.zero;
  sec["kernel_expected"] = qd.kernel_expected;
  sec["kernel_ok"] = qd.kernel_ok;
  sec["dim_ab"] = intersection_dim(fi.a, fi.b);
  sec["dim_ak"] = intersection_dim(fi.a, fi.k);
  sec["dim_bk"] = intersection_dim(fi.b, fi.k);
  sec["herm_residual"] = qd.herm_residual;
  sec["decomp_residual"] = qd.decomp_residual;
  root["triple"] = sec;
  tally.verdict(qd.kernel_ok);
  if (fi.has_l) {
    const int via_kappa = hormander_via_kappa(fi.a, fi.b, fi.k, fi.l);
    const int via_lambda = hormander_via_lambda(fi.a, fi.b, fi.k, fi.l);
    Report h;
    h["value"] = via_kappa;
    h["via_kappa"] = via_kappa;
    h["via_lambda"] = via_lambda;
    h["routes_agree"] = (via_kappa == via_lambda);
    root["hormander"] = h;
    tally.verdict(via_kappa == via_lambda);
  }
}

Report brake_report(const Problem& p, Tally& tally) {
  BrakeOptions opt;
  opt.steps = p.M;
  opt.mesh = p.N;
  opt.tol_zero = p.tol_zero;
  opt.spectrum.rank_rel = p.tol_rank;
  const BrakeAnalysis ba = analyze_brake(p.coeffs, opt);

  Report out;
  {
    Report r;
    r["p_even_residual"] = ba.problem.parity.p_even;
    r["q_odd_residual"] = ba.problem.parity.q_odd;
    r["r_even_residual"] = ba.problem.parity.r_even;
    out["parity"] = r;
  }
  {
    const MonodromyAnalysis& ma = ba.monodromy;
    Report r;
    r["direct_residual"] = ma.direct_residual;
    r["involution_residual"] = ma.involution_residual;
    r["assembly_residual"] = ma.assembly_residual;
    r["block_residual"] = ma.block_residual;
    r["halving_half"] = ma.halving_half;
    r["halving_full"] = ma.halving_full;
    out["monodromy"] = r;
  }
  const SpectrumReport& sr = ba.monodromy.spectrum;
  {
    Report r;
    r["scale"] = sr.scale;
    r["pairing_ok"] = sr.pairing_ok;
    r["geometric_total"] = sr.geometric_total;
    r["jordan_defect_estimate"] = sr.jordan_defect;
    r["jordan_defect_note"] =
        "SVD nullity estimate, not a certification of semisimplicity";
    r["max_offaxis_im"] = sr.max_offaxis_im;
    r["relation_residual"] = sr.relation_residual;
    out["spectrum"] = r;
    Report table = Report::array();
    for (const auto& g : sr.groups) {
      Report row;
      row["lambda"] = {g.lambda.real(), g.lambda.imag()};
      row["algebraic"] = g.algebraic;
      row["geometric"] = g.geometric;
      row["radius"] = g.radius;
      row["class"] = to_string(g.cls);
      row["boundary_band"] = g.boundary;
      table.push_back(row);
    }
    out["eigenvalues"] = table;
  }
  {
    const BrakeMorseData& md = ba.morse;
    Report r;
    r["full_neumann"] = counts_json(md.full_N);
    r["full_dirichlet"] = counts_json(md.full_D);
    r["full_periodic"] = counts_json(md.full_P);
    r["half_nn"] = counts_json(md.half_NN);
    r["half_dd"] = counts_json(md.half_DD);
    r["half_nd"] = counts_json(md.half_ND);
    r["half_dn"] = counts_json(md.half_DN);
    r["k"] = md.k;
    r["converged"] = md.all_stable;
    out["morse"] = r;
    if (!md.all_stable) ++tally.unsettled;
  }
  {
    const StabilityBounds& sb = ba.bounds;
    Report r;
    r["unit_and_real"] = bound_json(sb.unit_real);
    r["off_axis"] = bound_json(sb.offaxis);
    r["two_k"] = bound_json(sb.twok);
    r["premise_equal"] = sb.premise_equal;
    r["max_offaxis_im"] = sb.max_offaxis_im;
    r["corollary_ok"] = sb.corollary_ok;
    r["converged"] = sb.converged;
    r["all_ok"] = sb.all_ok;
    out["stability_bounds"] = r;
    if (sb.converged)
      tally.verdict(sb.all_ok);
    else
      ++tally.unsettled;
  }
  {
    const DecompositionCheck& dc = ba.decomposition;
    Report r;
    r["k_split"] = check_json(dc.k_split.lhs, dc.k_split.rhs, dc.k_split.ok);
    r["neumann_split"] =
        check_json(dc.neumann_split.lhs, dc.neumann_split.rhs, dc.neumann_split.ok);
    r["dirichlet_split"] = check_json(dc.dirichlet_split.lhs,
                                      dc.dirichlet_split.rhs, dc.dirichlet_split.ok);
    r["difference_two_k"] = bound_json(dc.difference_2k);
    r["converged"] = dc.converged;
    r["all_ok"] = dc.all_ok;
    out["decomposition"] = r;
    if (dc.converged)
      tally.verdict(dc.all_ok);
    else
      ++tally.unsettled;
  }
  {
    const MinimizerCheck& mz = ba.minimizer;
    Report r;
    r["applicable"] = mz.applicable;
    if (!mz.applicable) r["skip_reason"] = mz.skip_reason;
    r["max_im"] = mz.max_im;
    r["min_re"] = mz.min_re;
    r["spectrum_real_positive"] = mz.spectrum_real_positive;
    r["d3_min_eig"] = mz.d3_min_eig;
    r["d3_invertible"] = mz.d3_invertible;
    r["d3_positive"] = mz.d3_positive;
    r["d1_min_eig"] = mz.d1_min_eig;
    r["d1_psd"] = mz.d1_psd;
    r["d3_formula_residual"] = mz.d3_formula_residual;
    r["ok"] = mz.ok;
    out["minimizer"] = r;
    tally.verdict(mz.ok);
  }
  {
    const QOrthogonalityReport& qo = ba.q_orth;
    Report r;
    r["pairs_checked"] = qo.pairs_checked;
    r["max_offdiag"] = qo.max_offdiag;
    r["formula_gap"] = qo.formula_gap;
    r["carrier_gap"] = qo.carrier_gap;
    r["ok"] = qo.ok;
    out["q_orthogonality"] = r;
    tally.verdict(qo.ok);
  }
  tally.verdict(sr.pairing_ok);
  return out;
}

void run_brake(const Problem& p, Report& root, Tally& tally) {
  if (!p.brake)
    throw ValidationError(
        "brake: this analysis requires \"brake\": true in the problem file");
  Report sec = brake_report(p, tally);
  for (auto& item : sec.items()) root[item.key()] = item.value();
}

// the identity battery on one problem; sections land under `out`
void verify_problem(const Problem& p, Report& out, Tally& tally) {
  const FundamentalSolution flow(p.coeffs, {p.M, p.tol_sympl});
  out["flow"] = flow_json(flow);
  const RMat gT = flow.monodromy();

  const BoundaryData bd = canonicalize_boundary(p.boundary);
  const BoundaryData bdD = canonicalize_boundary(bc_dirichlet(p.n));
  const MorseCounts mc = morse_index_discretized(p.coeffs, bd, p.N, p.tol_zero);
  const MorseCounts mcD =
      morse_index_discretized(p.coeffs, bdD, p.N, p.tol_zero);
  {
    Report sec = counts_json(mc);
    sec["nu"] = bd.nu;
    out["morse"] = sec;
    out["dirichlet"] = counts_json(mcD);
  }
  const bool conv_bc = settled(mc);
  const bool conv_d = settled(mcD);
  if (!conv_bc) ++tally.unsettled;
  if (!conv_d) ++tally.unsettled;

  const MaslovResult mu = maslov_of_solution(flow, p.boundary);
  {
    Report sec;
    sec["m_minus"] = mc.neg;
    sec["m_zero"] = mc.zero;
    sec["maslov"] = mu.index;
    sec["offset"] = mu.index - mc.neg;
    out["values"] = sec;
  }

  Report ids;

  {  // m(bc) - m(D) against the graph triple index
    const int rhs = graph_difference_index(gT, p.boundary);
    if (conv_bc && conv_d) {
      const long lhs = mc.neg - mcD.neg;
      ids["difference_formula"] = check_json(lhs, rhs, lhs == rhs);
      tally.verdict(lhs == rhs);
    } else {
      ids["difference_formula"] = skipped_json();
    }
  }
  {  // discretized nullity against dim(Gr(gamma(T)) ∩ bc)
    const int rhs = solution_kernel_dim(gT, p.boundary);
    if (conv_bc) {
      ids["kernel_dimension"] = check_json(mc.zero, rhs, mc.zero == rhs);
      tally.verdict(mc.zero == rhs);
    } else {
      ids["kernel_dimension"] = skipped_json();
    }
  }
  {  // mu - m as a function of the boundary condition alone
    const int rhs = maslov_morse_offset(p.n, p.boundary);
    if (conv_bc) {
      const long lhs = mu.index - mc.neg;
      ids["maslov_offset"] = check_json(lhs, rhs, lhs == rhs);
      tally.verdict(lhs == rhs);
    } else {
      ids["maslov_offset"] = skipped_json();
    }
  }
  if (conv_bc) {  // -n <= mu - m <= n
    const SandwichBounds ob = maslov_offset_bounds(p.n, mu.index, mc.neg);
    Report r;
    r["lower"] = bound_json(ob.lower);
    r["upper"] = bound_json(ob.upper);
    r["ok"] = ob.ok;
    ids["offset_bounds"] = r;
    tally.verdict(ob.ok);
  } else {
    ids["offset_bounds"] = skipped_json();
  }
  if (conv_bc && conv_d) {  // m(D) <= m(bc) <= m(D) + nu
    const SandwichBounds sw = morse_sandwich(mc.neg, mcD.neg, bd.nu);
    Report r;
    r["lower"] = bound_json(sw.lower);
    r["upper"] = bound_json(sw.upper);
    r["ok"] = sw.ok;
    ids["morse_sandwich"] = r;
    tally.verdict(sw.ok);
  } else {
    ids["morse_sandwich"] = skipped_json();
  }

  // closed-form offset per boundary family, against the general route
  {
    bool have = true;
    int expect = 0;
    if (p.boundary_kind == "dirichlet" || p.boundary_kind == "periodic")
      expect = p.n;
    else if (p.boundary_kind == "neumann")
      expect = 0;
    else if (p.boundary_kind == "separated")
      expect = offset_separated(p.lambda_s, p.lambda_e);
    else if (p.boundary_kind == "graph_separated")
      expect = offset_graph_separated(p.A_start, p.A_end);
    else if (p.boundary_kind == "V_subspace")
      expect = offset_trace_subspace(p.n, p.V_trace);
    else
      have = false;
    if (have) {
      const int general = maslov_morse_offset(p.n, p.boundary);
      ids["offset_closed_form"] = check_json(general, expect, general == expect);
      tally.verdict(general == expect);
    }
  }

  if (p.has_endpoints) {  // crossing sum + endpoint correction
    const SeparatedMorse sm = morse_via_crossings(flow, p.lambda_s, p.lambda_e);
    Report sec;
    sec["crossing_sum"] = sm.crossing_sum;
    sec["correction"] = sm.correction;
    sec["total"] = sm.total;
    out["conjugate"] = sec;
    if (conv_bc) {
      ids["crossings_route"] = check_json(sm.total, mc.neg, sm.total == mc.neg);
      tally.verdict(sm.total == mc.neg);
    } else {
      ids["crossings_route"] = skipped_json();
    }
  }

  {  // split [0,T] at fixed interior points and bound the whole index
    const double c1 = 0.35 * p.T;
    const double c2 = 0.70 * p.T;
    const MorseCounts mid = morse_index_discretized(
        restrict_to(p.coeffs, c1, c2), bd, p.N, p.tol_zero);
    const MorseCounts left = morse_index_discretized(
        restrict_to(p.coeffs, 0.0, c1), bdD, p.N, p.tol_zero);
    const MorseCounts right = morse_index_discretized(
        restrict_to(p.coeffs, c2, p.T), bdD, p.N, p.tol_zero);
    if (conv_bc && settled(mid) && settled(left) && settled(right)) {
      const Bound b =
          subinterval_bound(mc.neg, mid.neg, left.neg, right.neg, bd.nu);
      ids["subinterval_bound"] = bound_json(b);
      tally.verdict(b.ok);
    } else {
      ids["subinterval_bound"] = skipped_json();
    }
  }

  out["identities"] = ids;

  if (p.brake) out["brake"] = brake_report(p, tally);
}

RMat random_symmetric(Rng& rng, int n, double scale) {
  const RMat A = rng.rgaussian(n, n);
  return scale * 0.5 * (A + A.transpose());
}

// smooth trig-polynomial coefficients with a definite P, plus one boundary
// condition per battery slot, cycling through every supported family
Problem random_problem(Rng& rng, int idx) {
  Problem p;
  p.n = 1 + (idx % 2);
  const int n = p.n;
  p.T = rng.uniform(1.5, 3.0);

  FourierMatrix Pf, Qf, Rf;
  Pf.cos_terms = {RMat::Identity(n, n) * 2.0 + random_symmetric(rng, n, 0.3),
                  random_symmetric(rng, n, 0.3)};
  Qf.cos_terms = {RMat::Zero(n, n)};
  Qf.sin_terms = {0.4 * rng.rgaussian(n, n)};
  Rf.cos_terms = {random_symmetric(rng, n, 1.0), random_symmetric(rng, n, 0.5)};
  p.coeffs = fourier_coefficients(n, p.T, Pf, Qf, Rf);

  const SymplecticSpace small = SymplecticSpace::standard(n);
  switch (idx % 6) {
    case 0:
      p.boundary_kind = "separated";
      p.lambda_s = random_lagrangian(rng, small);
      p.lambda_e = random_lagrangian(rng, small);
      p.boundary = bc_separated(SymplecticSpace::doubled(n), p.lambda_s.Z,
                                p.lambda_e.Z);
      p.has_endpoints = true;
      break;
    case 1: {
      p.boundary_kind = "graph_separated";
      p.A_start = rng.hermitian(n);
      p.A_end = rng.hermitian(n);
      p.has_graph_data = true;
      p.boundary = bc_robin(n, p.A_start, p.A_end);
      Mat Zs(2 * n, n), Ze(2 * n, n);
      Zs.topRows(n) = p.A_start;
      Zs.bottomRows(n) = Mat::Identity(n, n);
      Ze.topRows(n) = p.A_end;
      Ze.bottomRows(n) = Mat::Identity(n, n);
      p.lambda_s = make_frame(small, Zs);
      p.lambda_e = make_frame(small, Ze);
      p.has_endpoints = true;
      break;
    }
    case 2: {
      p.boundary_kind = "V_subspace";
      const int d = 1 + static_cast<int>(rng.uniform() * (2 * n - 1));
      p.V_trace = rng.cgaussian(2 * n, d);
      p.boundary = bc_trace_subspace(n, p.V_trace);
      break;
    }
    case 3:
      p.boundary_kind = "periodic";
      p.boundary = bc_periodic(n);
      break;
    case 4:
      p.boundary_kind = "neumann";
      p.boundary = bc_neumann(n);
      p.has_endpoints = true;
      p.lambda_s = p.lambda_e = neumann_frame(n);
      break;
    default:
      p.boundary_kind = "generic";
      p.boundary = random_lagrangian(rng, SymplecticSpace::doubled(n));
      break;
  }

  p.N = (n == 1) ? 160 : 96;
  p.M = 1024;
  return p;
}

void run_verify_random(const RunConfig& cfg, Report& root, Tally& tally) {
  Report problems = Report::array();
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.battery; ++i) {
    Problem p = random_problem(rng, i);
    apply_overrides(p, cfg);
    Report sub;
    sub["config"] = config_section(p);
    verify_problem(p, sub, tally);
    problems.push_back(sub);
  }
  root["problems"] = problems;
}

}  // namespace

RunResult run_command(const RunConfig& cfg) {
  Report root;
  root["tool"] = std::string("symindex ") + tool_version();
  root["command"] = cfg.command;
  root["input"] = cfg.input.empty() ? "(none)" : cfg.input;

  Tally tally;
  int exit_code = 0;
  try {
    if (cfg.command == "triple") {
      if (cfg.input.empty())
        throw ValidationError("--input: the triple command needs a frames file");
      const FrameInput fi = load_frames(cfg.input);
      Report c;
      c["space"] = fi.space.kind == FormKind::standard  ? "standard"
                   : fi.space.kind == FormKind::negated ? "negated"
                                                        : "doubled";
      c["half_dim"] = fi.space.half_dim;
      c["frames"] = fi.has_l ? 4 : 3;
      root["config"] = c;
      run_triple(fi, root, tally);
    } else if (cfg.command == "verify" && cfg.input.empty()) {
      Report c;
      c["seed"] = cfg.seed;
      c["battery"] = cfg.battery;
      root["config"] = c;
      run_verify_random(cfg, root, tally);
    } else {
      if (cfg.input.empty())
        throw ValidationError("--input: missing problem file");
      Problem p = load_problem(cfg.input);
      apply_overrides(p, cfg);
      root["config"] = config_section(p);
      if (cfg.command == "morse")
        run_morse(p, root, tally);
      else if (cfg.command == "maslov")
        run_maslov(p, root, tally);
      else if (cfg.command == "conjugate")
        run_conjugate(p, root, tally);
      else if (cfg.command == "brake")
        run_brake(p, root, tally);
      else if (cfg.command == "verify")
        verify_problem(p, root, tally);
      else
        throw ValidationError("command: unknown command \"" + cfg.command +
                              "\"");
    }
  } catch (const ConvergenceError& e) {
    root["error"] = e.what();
    exit_code = 4;
  } catch (const DegenerateInput& e) {
    root["error"] = e.what();
    exit_code = 4;
  } catch (const IdentityError& e) {
    root["error"] = e.what();
    exit_code = 5;
  }

  if (tally.failed > 0)
    exit_code = 5;
  else if (exit_code == 0 && tally.unsettled > 0)
    exit_code = 4;

  Report sum;
  sum["identities_failed"] = tally.failed;
  sum["identities_skipped"] = tally.unsettled;
  sum["result"] = exit_code == 0   ? "pass"
                  : exit_code == 4 ? "not-converged"
                                   : "identity-failed";
  root["summary"] = sum;

  RunResult res;
  res.exit_code = exit_code;
  res.report = cfg.json ? render_json(root) : render_text(root);
  return res;
}

}  // namespace symindex
