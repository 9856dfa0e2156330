// SPDX-License-Identifier: MIT
#include "symindex/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "symindex/symplectic.hpp"

namespace symindex {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& need(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(join(path, key), "missing");
  return *it;
}

void check_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) known = true;
    if (!known) fail(join(path, item.key()), "unknown field");
  }
}

double get_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a real number");
  return j.get<double>();
}

long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Cplx get_entry(const json& j, const std::string& path, bool allow_complex) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (allow_complex && j.is_array() && j.size() == 2 && j[0].is_number() &&
      j[1].is_number())
    return Cplx(j[0].get<double>(), j[1].get<double>());
  fail(path, allow_complex ? "expected a real number or an [re, im] pair"
                           : "expected a real number");
}

// row-major list of rows; rows/cols < 0 means any size
Mat parse_cmat(const json& j, const std::string& path, int rows, int cols,
               bool allow_complex) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rows");
  const int r = static_cast<int>(j.size());
  if (rows >= 0 && r != rows)
    fail(path, "expected " + std::to_string(rows) + " rows, got " +
                   std::to_string(r));
  if (!j[0].is_array() || j[0].empty())
    fail(path + "[0]", "expected a non-empty row list");
  const int c = static_cast<int>(j[0].size());
  if (cols >= 0 && c != cols)
    fail(path, "expected " + std::to_string(cols) + " columns, got " +
                   std::to_string(c));
  Mat A(r, c);
  for (int i = 0; i < r; ++i) {
    const std::string rpath = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) fail(rpath, "expected a row list");
    if (static_cast<int>(j[i].size()) != c)
      fail(rpath, "row length " + std::to_string(j[i].size()) +
                      " differs from row 0 (" + std::to_string(c) + ")");
    for (int q = 0; q < c; ++q)
      A(i, q) = get_entry(j[i][q], rpath + "[" + std::to_string(q) + "]",
                          allow_complex);
  }
  return A;
}

RMat parse_rmat(const json& j, const std::string& path, int rows, int cols) {
  return parse_cmat(j, path, rows, cols, false).real();
}

constexpr int kFourierCap = 32;
constexpr int kGridMinSamples = 65;

std::function<RMat(double)> parse_coefficient(const json& j,
                                              const std::string& path, int n,
                                              double T) {
  check_object(j, path);
  check_keys(j, path, {"fourier", "grid"});
  const bool has_f = j.contains("fourier");
  const bool has_g = j.contains("grid");
  if (has_f == has_g) fail(path, "expected exactly one of fourier or grid");

  if (has_f) {
    const json& arr = j.at("fourier");
    const std::string fpath = path + ".fourier";
    if (!arr.is_array()) fail(fpath, "expected a list of terms");
    FourierMatrix F;
    F.cos_terms = {RMat::Zero(n, n)};
    std::set<std::pair<std::string, long>> seen;
    for (int i = 0; i < static_cast<int>(arr.size()); ++i) {
      const std::string tpath = fpath + "[" + std::to_string(i) + "]";
      const json& term = arr[i];
      check_object(term, tpath);
      check_keys(term, tpath, {"kind", "k", "matrix"});
      const std::string kind = get_string(need(term, tpath, "kind"), tpath + ".kind");
      const long k = get_int(need(term, tpath, "k"), tpath + ".k");
      if (kind == "cos") {
        if (k < 0 || k > kFourierCap)
          fail(tpath + ".k", "cos harmonic must lie in [0, 32]");
      } else if (kind == "sin") {
        if (k < 1 || k > kFourierCap)
          fail(tpath + ".k", "sin harmonic must lie in [1, 32]");
      } else {
        fail(tpath + ".kind", "expected \"cos\" or \"sin\"");
      }
      if (!seen.insert({kind, k}).second)
        fail(tpath, "duplicate " + kind + " term for k = " + std::to_string(k));
      const RMat C = parse_rmat(need(term, tpath, "matrix"), tpath + ".matrix", n, n);
      if (kind == "cos") {
        if (static_cast<long>(F.cos_terms.size()) <= k)
          F.cos_terms.resize(k + 1, RMat::Zero(n, n));
        F.cos_terms[k] = C;
      } else {
        if (static_cast<long>(F.sin_terms.size()) < k)
          F.sin_terms.resize(k, RMat::Zero(n, n));
        F.sin_terms[k - 1] = C;
      }
    }
    return [F, T](double t) { return F.eval(t, T); };
  }

  const json& arr = j.at("grid");
  const std::string gpath = path + ".grid";
  if (!arr.is_array()) fail(gpath, "expected a list of sampled matrices");
  if (static_cast<int>(arr.size()) < kGridMinSamples)
    fail(gpath, "needs at least 65 uniform samples, got " +
                    std::to_string(arr.size()));
  std::vector<RMat> samples;
  samples.reserve(arr.size());
  for (int i = 0; i < static_cast<int>(arr.size()); ++i)
    samples.push_back(
        parse_rmat(arr[i], gpath + "[" + std::to_string(i) + "]", n, n));
  GridMatrix G(std::move(samples), T);
  return [G](double t) { return G.eval(t); };
}

// frame of the graph {(y, x) : y = A x} in (C^{2n}, omega)
LagrangianFrame graph_endpoint(int n, const Mat& A, const std::string& path) {
  Mat Z(2 * n, n);
  Z.topRows(n) = A;
  Z.bottomRows(n) = Mat::Identity(n, n);
  try {
    return make_frame(SymplecticSpace::standard(n), Z);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

void parse_boundary(const json& j, const std::string& path, Problem& p) {
  check_object(j, path);
  check_keys(j, path, {"kind", "params"});
  const std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  const json params = j.contains("params") ? j.at("params") : json::object();
  const std::string ppath = path + ".params";
  check_object(params, ppath);
  const int n = p.n;
  p.boundary_kind = kind;

  if (kind == "dirichlet" || kind == "neumann" || kind == "periodic") {
    check_keys(params, ppath, {});
    if (kind == "dirichlet") {
      p.boundary = bc_dirichlet(n);
      p.has_endpoints = true;
      p.lambda_s = p.lambda_e = dirichlet_frame(n);
    } else if (kind == "neumann") {
      p.boundary = bc_neumann(n);
      p.has_endpoints = true;
      p.lambda_s = p.lambda_e = neumann_frame(n);
    } else {
      p.boundary = bc_periodic(n);
    }
    return;
  }

  if (kind == "V_subspace") {
    check_keys(params, ppath, {"V"});
    const Mat V = parse_cmat(need(params, ppath, "V"), ppath + ".V", 2 * n, -1, true);
    if (V.cols() > 2 * n)
      fail(ppath + ".V", "more columns than the trace space dimension 2n");
    try {
      p.boundary = bc_trace_subspace(n, V);
    } catch (const std::runtime_error& e) {
      fail(ppath + ".V", e.what());
    }
    p.V_trace = V;
    return;
  }

  if (kind == "separated") {
    check_keys(params, ppath, {"start", "end"});
    const Mat Zs =
        parse_cmat(need(params, ppath, "start"), ppath + ".start", 2 * n, n, true);
    const Mat Ze =
        parse_cmat(need(params, ppath, "end"), ppath + ".end", 2 * n, n, true);
    const SymplecticSpace small = SymplecticSpace::standard(n);
    try {
      p.lambda_s = make_frame(small, Zs);
    } catch (const ValidationError& e) {
      fail(ppath + ".start", e.what());
    }
    try {
      p.lambda_e = make_frame(small, Ze);
    } catch (const ValidationError& e) {
      fail(ppath + ".end", e.what());
    }
    try {
      p.boundary = bc_separated(SymplecticSpace::doubled(n), Zs, Ze);
    } catch (const ValidationError& e) {
      fail(ppath, e.what());
    }
    p.has_endpoints = true;
    return;
  }

  if (kind == "graph_separated") {
    check_keys(params, ppath, {"A_start", "A_end"});
    const Mat As = parse_cmat(need(params, ppath, "A_start"), ppath + ".A_start",
                              n, n, true);
    const Mat Ae =
        parse_cmat(need(params, ppath, "A_end"), ppath + ".A_end", n, n, true);
    const auto hermitian_gate = [](const Mat& A, const std::string& apath) {
      const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
      if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        fail(apath, "matrix must be Hermitian");
    };
    hermitian_gate(As, ppath + ".A_start");
    hermitian_gate(Ae, ppath + ".A_end");
    p.boundary = bc_robin(n, As, Ae);
    p.has_endpoints = true;
    p.lambda_s = graph_endpoint(n, As, ppath + ".A_start");
    p.lambda_e = graph_endpoint(n, Ae, ppath + ".A_end");
    p.has_graph_data = true;
    p.A_start = As;
    p.A_end = Ae;
    return;
  }

  fail(path + ".kind",
       "unknown boundary kind \"" + kind +
           "\" (expected dirichlet, neumann, periodic, V_subspace, separated "
           "or graph_separated)");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("input is not valid JSON: ") + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Problem parse_problem_text(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ParseError("top level must be a JSON object");
  check_keys(j, "", {"n", "T", "coefficients", "boundary", "discretization",
                     "tolerances", "brake"});

  Problem p;
  p.n = static_cast<int>(get_int(need(j, "", "n"), "n"));
  if (p.n < 1 || p.n > 16) fail("n", "expected 1 <= n <= 16");
  p.T = get_real(need(j, "", "T"), "T");
  if (!(p.T > 0.0) || !std::isfinite(p.T)) fail("T", "expected a finite T > 0");

  const json& co = need(j, "", "coefficients");
  check_object(co, "coefficients");
  check_keys(co, "coefficients", {"P", "Q", "R"});
  p.coeffs.n = p.n;
  p.coeffs.T = p.T;
  p.coeffs.P =
      parse_coefficient(need(co, "coefficients", "P"), "coefficients.P", p.n, p.T);
  p.coeffs.Q =
      parse_coefficient(need(co, "coefficients", "Q"), "coefficients.Q", p.n, p.T);
  p.coeffs.R =
      parse_coefficient(need(co, "coefficients", "R"), "coefficients.R", p.n, p.T);
  try {
    validate_coefficients(p.coeffs);
  } catch (const ValidationError& e) {
    fail("coefficients", e.what());
  }

  parse_boundary(need(j, "", "boundary"), "boundary", p);

  if (j.contains("discretization")) {
    const json& d = j.at("discretization");
    check_object(d, "discretization");
    check_keys(d, "discretization", {"N", "M"});
    if (d.contains("N")) {
      p.N = static_cast<int>(get_int(d.at("N"), "discretization.N"));
      if (p.N < 16) fail("discretization.N", "expected N >= 16");
    }
    if (d.contains("M")) {
      p.M = static_cast<int>(get_int(d.at("M"), "discretization.M"));
      if (p.M < 16) fail("discretization.M", "expected M >= 16");
    }
  }

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    check_object(t, "tolerances");
    check_keys(t, "tolerances", {"rank", "zero", "sympl"});
    const auto positive = [&](const char* key, double* dst) {
      if (!t.contains(key)) return;
      const std::string tp = std::string("tolerances.") + key;
      const double v = get_real(t.at(key), tp);
      if (!(v > 0.0) || v >= 1.0) fail(tp, "expected a value in (0, 1)");
      *dst = v;
    };
    positive("rank", &p.tol_rank);
    positive("zero", &p.tol_zero);
    positive("sympl", &p.tol_sympl);
  }

  if (j.contains("brake")) {
    if (!j.at("brake").is_boolean()) fail("brake", "expected true or false");
    p.brake = j.at("brake").get<bool>();
  }
  return p;
}

Problem load_problem(const std::string& path) {
  return parse_problem_text(slurp(path));
}

FrameInput parse_frames_text(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ParseError("top level must be a JSON object");
  check_keys(j, "", {"space", "frames"});

  const json& sp = need(j, "", "space");
  check_object(sp, "space");
  check_keys(sp, "space", {"kind", "half_dim"});
  const std::string kind = get_string(need(sp, "space", "kind"), "space.kind");
  const long m = get_int(need(sp, "space", "half_dim"), "space.half_dim");
  if (m < 1 || m > 32) fail("space.half_dim", "expected 1 <= half_dim <= 32");

  FrameInput fi;
  if (kind == "standard") {
    fi.space = SymplecticSpace::standard(static_cast<int>(m));
  } else if (kind == "negated") {
    fi.space = SymplecticSpace::negated(static_cast<int>(m));
  } else if (kind == "doubled") {
    if (m % 2 != 0)
      fail("space.half_dim", "doubled spaces need an even half_dim (= 2n)");
    fi.space = SymplecticSpace::doubled(static_cast<int>(m / 2));
  } else {
    fail("space.kind", "expected standard, negated or doubled");
  }

  const json& fr = need(j, "", "frames");
  check_object(fr, "frames");
  check_keys(fr, "frames", {"a", "b", "k", "l"});
  const auto frame = [&](const char* name) {
    const std::string fpath = std::string("frames.") + name;
    const Mat Z = parse_cmat(need(fr, "frames", name), fpath,
                             fi.space.ambient_dim(), fi.space.half_dim, true);
    try {
      return make_frame(fi.space, Z);
    } catch (const ValidationError& e) {
      fail(fpath, e.what());
    }
  };
  fi.a = frame("a");
  fi.b = frame("b");
  fi.k = frame("k");
  if (fr.contains("l")) {
    fi.l = frame("l");
    fi.has_l = true;
  }
  return fi;
}

FrameInput load_frames(const std::string& path) {
  return parse_frames_text(slurp(path));
}

}  // namespace symindex
