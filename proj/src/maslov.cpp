// SPDX-License-Identifier: MIT
#include "symindex/maslov.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "symindex/triple.hpp"

namespace symindex {

namespace {

struct Sample {
  double t = 0.0;
  RVec ph;  // eigenphases of W(t), ascending in (-pi, pi]
};

RVec sorted_phases(const Mat& W) {
  Eigen::ComplexEigenSolver<Mat> es(W, /*computeEigenvectors=*/false);
  RVec ph(W.rows());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    ph(i) = std::arg(es.eigenvalues()(i));
  std::sort(ph.data(), ph.data() + ph.size());
  return ph;
}

double circ0(double a) { return std::abs(wrap_angle(a)); }

// Increments along the min-cost cyclic matching prev -> next. Both inputs
// are sorted, so the optimal matching is one of the m cyclic shifts.
RVec matched_increments(const RVec& prev, const RVec& next) {
  const int m = static_cast<int>(prev.size());
  int best_o = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int o = 0; o < m; ++o) {
    double cost = 0.0;
    for (int k = 0; k < m; ++k)
      cost += std::abs(wrap_angle(next((k + o) % m) - prev(k)));
    if (cost < best_cost) {
      best_cost = cost;
      best_o = o;
    }
  }
  RVec d(m);
  for (int k = 0; k < m; ++k) d(k) = wrap_angle(next((k + best_o) % m) - prev(k));
  return d;
}

// Signed passages of one phase segment through the level set {level + 2 pi j}.
// Upward motion counts reps in (theta, theta+delta] with weight -1; downward
// counts reps in (theta+delta, theta] with weight +1. A curve that only
// touches the level and turns back nets zero.
long segment_passages(double theta, double delta, double level) {
  const double twopi = 2.0 * M_PI;
  if (delta > 0.0) {
    long hi = static_cast<long>(std::floor((theta + delta - level) / twopi));
    long lo = static_cast<long>(std::floor((theta - level) / twopi));
    return -(hi - lo);
  }
  if (delta < 0.0) {
    long hi = static_cast<long>(std::floor((theta - level) / twopi));
    long lo = static_cast<long>(std::floor((theta + delta - level) / twopi));
    return hi - lo;
  }
  return 0;
}

struct Tracker {
  const FramePath* path = nullptr;
  Mat f_ref_adj;
  MaslovOptions opt;
  double thr = 0.35;
  long evals = 0;

  Sample at(double t) {
    if (++evals > opt.max_evaluations)
      throw ConvergenceError("maslov: evaluation budget exhausted");
    return {t, sorted_phases(f_ref_adj * unitary_rep((*path)(t)))};
  }
};

long refine_count(Tracker& tr, const Sample& s0, const Sample& s1, double level,
                  int depth, std::vector<Sample>* collect) {
  RVec d = matched_increments(s0.ph, s1.ph);
  if (d.size() == 0) return 0;
  if (d.cwiseAbs().maxCoeff() < tr.thr) {
    long c = 0;
    for (Eigen::Index k = 0; k < d.size(); ++k)
      c += segment_passages(s0.ph(k), d(k), level);
    if (collect) collect->push_back(s1);
    return c;
  }
  if (depth >= tr.opt.max_refine_depth)
    throw ConvergenceError("maslov: refinement depth exceeded near t=" +
                           std::to_string(0.5 * (s0.t + s1.t)));
  Sample sm = tr.at(0.5 * (s0.t + s1.t));
  long left = refine_count(tr, s0, sm, level, depth + 1, collect);
  long right = refine_count(tr, sm, s1, level, depth + 1, collect);
  return left + right;
}

// snap endpoint phases inside the tolerance to exact zero; returns the count
int snap_zeros(Sample& s, double tol) {
  int cnt = 0;
  for (Eigen::Index k = 0; k < s.ph.size(); ++k) {
    if (circ0(s.ph(k)) <= tol) {
      s.ph(k) = 0.0;
      ++cnt;
    }
  }
  std::sort(s.ph.data(), s.ph.data() + s.ph.size());
  return cnt;
}

double pick_level(const Sample& sa, const Sample& sb) {
  double smin = std::numeric_limits<double>::infinity();
  for (const Sample* s : {&sa, &sb})
    for (Eigen::Index k = 0; k < s->ph.size(); ++k)
      if (s->ph(k) != 0.0) smin = std::min(smin, circ0(s->ph(k)));
  double s0 = std::isfinite(smin) ? 0.5 * smin : 0.5 * M_PI;
  return -s0;
}

}  // namespace

MaslovResult maslov_index(const LagrangianFrame& ref, const FramePath& path,
                          double a, double b, const MaslovOptions& opt) {
  if (b < a) throw ValidationError("maslov_index: interval reversed");
  Tracker tr;
  tr.path = &path;
  tr.f_ref_adj = unitary_rep(ref).adjoint();
  tr.opt = opt;
  const int m = ref.space.half_dim;
  tr.thr = std::min(opt.max_phase_step, 0.9 * M_PI / std::max(1, m));

  MaslovResult out;
  Sample sa = tr.at(a);
  Sample sb = tr.at(b);
  out.dim_start = snap_zeros(sa, opt.endpoint_angle_tol);
  out.dim_end = snap_zeros(sb, opt.endpoint_angle_tol);
  out.level = pick_level(sa, sb);
  if (a == b) {
    out.evaluations = tr.evals;
    return out;
  }

  long total = 0;
  Sample prev = sa;
  const int K = std::max(1, opt.coarse_samples);
  for (int j = 1; j <= K; ++j) {
    Sample s = (j == K) ? sb : tr.at(a + (b - a) * j / K);
    total += refine_count(tr, prev, s, out.level, 0, nullptr);
    prev = s;
  }
  out.index = static_cast<int>(total);
  out.evaluations = tr.evals;
  return out;
}

Mat crossing_form_matrix(const SymplecticSpace& sp, const Mat& C) {
  Mat G = -(sp.form().cast<Cplx>()) * C;
  double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  double resid = (G - G.adjoint()).cwiseAbs().maxCoeff();
  if (resid > 1e-6 * scale)
    throw ValidationError("crossing_form_matrix: generator is not in the Lie "
                          "algebra of the form (residual " + std::to_string(resid) + ")");
  return 0.5 * (G + G.adjoint());
}

namespace {

// Splits [s0,s1] recursively until every level-zero passage is isolated in an
// interval shorter than tol_t, then records the midpoints.
void locate_passages(Tracker& tr, const Sample& s0, const Sample& s1,
                     double tol_t, std::vector<double>* hits, int depth = 0) {
  RVec d = matched_increments(s0.ph, s1.ph);
  long total = 0;
  for (Eigen::Index k = 0; k < d.size(); ++k)
    total += std::labs(segment_passages(s0.ph(k), d(k), 0.0));
  if (total == 0) return;
  if (s1.t - s0.t < tol_t) {
    for (long i = 0; i < total; ++i) hits->push_back(0.5 * (s0.t + s1.t));
    return;
  }
  if (depth > 80)
    throw ConvergenceError("maslov crossings: bisection failed to isolate");
  Sample sm = tr.at(0.5 * (s0.t + s1.t));
  locate_passages(tr, s0, sm, tol_t, hits, depth + 1);
  locate_passages(tr, sm, s1, tol_t, hits, depth + 1);
}

}  // namespace

CrossingResult maslov_index_via_crossings(const LagrangianFrame& ref,
                                          const FramePath& path,
                                          const GeneratorFn& generator,
                                          double a, double b,
                                          const MaslovOptions& opt) {
  if (b <= a) throw ValidationError("maslov crossings: need a < b");
  Tracker tr;
  tr.path = &path;
  tr.f_ref_adj = unitary_rep(ref).adjoint();
  tr.opt = opt;
  const int m = ref.space.half_dim;
  tr.thr = std::min(opt.max_phase_step, 0.9 * M_PI / std::max(1, m));

  Sample sa = tr.at(a);
  Sample sb = tr.at(b);
  int dim_start = snap_zeros(sa, opt.endpoint_angle_tol);
  int dim_end = snap_zeros(sb, opt.endpoint_angle_tol);

  // refined grid, then passage isolation on the accepted leaves
  std::vector<Sample> grid;
  grid.push_back(sa);
  const int K = std::max(1, opt.coarse_samples);
  Sample prev = sa;
  for (int j = 1; j <= K; ++j) {
    Sample s = (j == K) ? sb : tr.at(a + (b - a) * j / K);
    refine_count(tr, prev, s, /*level=*/-0.5 * M_PI, 0, &grid);
    prev = s;
  }

  const double tol_t = std::max(1e-13, 1e-11 * (b - a));
  std::vector<double> hits;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    locate_passages(tr, grid[i], grid[i + 1], tol_t, &hits);
  std::sort(hits.begin(), hits.end());

  // cluster the hits; endpoint intersections become clusters of their own
  const double cluster_w = 1e-8 * (b - a);
  std::vector<double> times;
  if (dim_start > 0) times.push_back(a);
  for (double h : hits) {
    if (!times.empty() && h - times.back() < cluster_w) continue;
    if (h - a < cluster_w && dim_start > 0) continue;  // already recorded
    if (b - h < cluster_w) {
      if (dim_end == 0) times.push_back(h);  // real passage hugging the end
      continue;
    }
    times.push_back(h);
  }
  if (dim_end > 0) times.push_back(b);

  CrossingResult out;
  const double eps_t = cluster_w;
  for (double t0 : times) {
    CrossingData c;
    c.t = t0;
    LagrangianFrame F = path(t0);
    c.dim = (t0 == a) ? dim_start
          : (t0 == b) ? dim_end
                      : intersection_dim_angles(F, ref, 1e-6);
    if (c.dim == 0)
      throw ConvergenceError("maslov crossings: located a passage with empty "
                             "intersection at t=" + std::to_string(t0));
    Mat W = intersection(F.Z, ref.Z, 1e-6);
    if (W.cols() != c.dim)
      throw ConvergenceError("maslov crossings: basis dimension mismatch at t=" +
                             std::to_string(t0));
    Mat form = crossing_form_matrix(F.space, generator(t0));
    Mat G = W.adjoint() * form * W;
    c.form = inertia_of(0.5 * (G + G.adjoint()), 1e-6);
    if (c.form.zero > 0) out.all_regular = false;
    if (t0 - a <= eps_t)
      out.index += c.form.pos;
    else if (b - t0 <= eps_t)
      out.index -= c.form.neg;
    else
      out.index += c.form.signature();
    out.crossings.push_back(c);
  }
  return out;
}

int maslov_via_transversal(const LagrangianFrame& ref, const FramePath& path,
                           const LagrangianFrame& keep_off, double a, double b,
                           const MaslovOptions& opt) {
  // Transversality guard: the phases of the path relative to keep_off must
  // never touch zero. Endpoint intersections and zero-level passages on the
  // refined grid both disqualify the reduction.
  Tracker tr;
  tr.path = &path;
  tr.f_ref_adj = unitary_rep(keep_off).adjoint();
  tr.opt = opt;
  tr.thr = std::min(opt.max_phase_step, 0.9 * M_PI / std::max(1, keep_off.space.half_dim));
  Sample sa = tr.at(a);
  Sample sb = tr.at(b);
  if (snap_zeros(sa, opt.endpoint_angle_tol) > 0 ||
      snap_zeros(sb, opt.endpoint_angle_tol) > 0)
    throw ValidationError("maslov_via_transversal: path meets keep_off at an endpoint");
  std::vector<Sample> grid;
  grid.push_back(sa);
  const int K = std::max(1, opt.coarse_samples);
  Sample prev = sa;
  for (int j = 1; j <= K; ++j) {
    Sample s = (j == K) ? sb : tr.at(a + (b - a) * j / K);
    refine_count(tr, prev, s, /*level=*/-0.5 * M_PI, 0, &grid);
    prev = s;
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    RVec d = matched_increments(grid[i].ph, grid[i + 1].ph);
    for (Eigen::Index k = 0; k < d.size(); ++k)
      if (segment_passages(grid[i].ph(k), d(k), 0.0) != 0)
        throw ValidationError("maslov_via_transversal: path meets keep_off near t=" +
                              std::to_string(grid[i].t));
  }
  LagrangianFrame Fa = path(a);
  LagrangianFrame Fb = path(b);
  return triple_index(Fa, keep_off, ref) - triple_index(Fb, keep_off, ref);
}

}  // namespace symindex
