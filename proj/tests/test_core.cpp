// Unit tests for the linear algebra layer, Lagrangian frame machinery and
// the triple / Hormander index.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symindex/hermitian.hpp"
#include "symindex/triple.hpp"

using namespace symindex;

TEST_CASE("orthonormalize, rank and nullspace") {
  Rng rng(11);
  Mat A = rng.cgaussian(8, 3);
  Mat Q = orthonormalize(A);
  CHECK((Q.adjoint() * Q - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
  // span preserved: projectors agree
  Mat Pa = Q * Q.adjoint();
  Mat Qa = column_space(A);
  CHECK((Pa - Qa * Qa.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  Mat B(8, 5);
  B << A, A.col(0) + A.col(2), A.col(1) * Cplx(0, 2);
  CHECK(rank_svd(B) == 3);
  CHECK(nullspace(B).cols() == 2);
  CHECK(column_space(B).cols() == 3);
  CHECK_THROWS_AS(orthonormalize(B), ValidationError);
}

TEST_CASE("intersection of subspaces with planted overlap") {
  Rng rng(12);
  Mat shared = rng.cgaussian(10, 2);
  Mat U(10, 5), V(10, 4);
  U << rng.cgaussian(10, 3), shared;
  V << shared, rng.cgaussian(10, 2);
  Mat W = intersection(U, V);
  REQUIRE(W.cols() == 2);
  // W sits inside both spans
  Mat Uo = column_space(U), Vo = column_space(V);
  CHECK((W - Uo * (Uo.adjoint() * W)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((W - Vo * (Vo.adjoint() * W)).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(subspace_sum(U, V).cols() == 7);
}

TEST_CASE("inertia_of counts signs with a zero band") {
  Mat H = Mat::Zero(4, 4);
  H(0, 0) = 5.0;
  H(1, 1) = -3.0;
  H(2, 2) = 1e-13;
  H(3, 3) = 2.0;
  Rng rng(13);
  Mat U = rng.unitary(4);
  Inertia it = inertia_of(U * H * U.adjoint());
  CHECK(it.pos == 2);
  CHECK(it.neg == 1);
  CHECK(it.zero == 1);
  Mat notH = rng.cgaussian(3, 3);
  CHECK_THROWS_AS(inertia_of(notH + 2.0 * Mat::Identity(3, 3)), ValidationError);
}

TEST_CASE("pencil eigenvalues against plain eigenvalues") {
  Rng rng(14);
  Mat A = rng.hermitian(6);
  RVec w = hermitian_pencil_eigenvalues(A, Mat::Identity(6, 6));
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  CHECK((w - es.eigenvalues()).cwiseAbs().maxCoeff() < 1e-11);
  Mat B = -Mat::Identity(6, 6);
  CHECK_THROWS_AS(hermitian_pencil_eigenvalues(A, B), ConvergenceError);
}

TEST_CASE("rng determinism and matrix group membership") {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());

  Rng rng(42);
  Mat U = rng.unitary(5);
  CHECK((U.adjoint() * U - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-13);
  RMat M = rng.symplectic(3);
  RMat J = standard_J(3);
  CHECK((M.transpose() * J * M - J).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("symplectic form conventions") {
  auto sp = SymplecticSpace::standard(1);
  Vec ey(2), ex(2);
  ey << 1, 0;  // momentum slot
  ex << 0, 1;  // position slot
  CHECK(sp.omega(ey, ex) == Cplx(1, 0));
  CHECK(sp.omega(ex, ey) == Cplx(-1, 0));
  CHECK(sp.omega(ey, ey) == Cplx(0, 0));

  // standardizers really take the form back to J
  for (auto spc : {SymplecticSpace::negated(3), SymplecticSpace::doubled(2)}) {
    RMat O = spc.standardizer();
    RMat J = standard_J(spc.half_dim);
    CHECK((O.transpose() * spc.form() * O - J).cwiseAbs().maxCoeff() == 0.0);
    CHECK((O.transpose() * O - RMat::Identity(O.rows(), O.rows())).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("stock frames and the unitary representation") {
  auto D = dirichlet_frame(3);
  auto N = neumann_frame(3);
  CHECK((unitary_rep(D) - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((unitary_rep(N) + Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(intersection_dim(D, N) == 0);
  CHECK(intersection_dim(D, D) == 3);
  CHECK(subspace_gap(D.Z, N.Z) == doctest::Approx(1.0));

  // f roundtrip through the section
  Rng rng(7);
  for (auto sp : {SymplecticSpace::standard(3), SymplecticSpace::doubled(2),
                  SymplecticSpace::negated(2)}) {
    Mat U = rng.unitary(sp.half_dim);
    auto F = frame_from_unitary(sp, U);
    CHECK(check_lagrangian(sp, F.Z).ok);
    CHECK((unitary_rep(F) - U).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("random Lagrangians are Lagrangian and self-intersect fully") {
  Rng rng(21);
  for (int rep = 0; rep < 5; ++rep) {
    auto sp = SymplecticSpace::doubled(2);
    auto F = random_lagrangian(rng, sp);
    auto G = random_lagrangian(rng, sp);
    CHECK(check_lagrangian(sp, F.Z).ok);
    CHECK(intersection_dim(F, F) == sp.half_dim);
    CHECK(intersection_dim(F, G) == 0);  // generic pairs are transversal
  }
}

TEST_CASE("graph frames and boundary condition frames") {
  Rng rng(31);
  RMat M = rng.symplectic(2);
  auto G = graph_frame(M);
  CHECK(G.dim() == 4);
  CHECK(check_lagrangian(G.space, G.Z).ok);

  auto P = bc_periodic(2);
  // Gr(M) ∩ Gr(I) has the dimension of ker(M - I); generic M gives 0
  CHECK(intersection_dim(G, P) == 0);
  CHECK(intersection_dim(P, P) == 4);

  CHECK(intersection_dim(bc_dirichlet(2), bc_neumann(2)) == 0);

  RMat notSymp = RMat::Identity(4, 4) * 2.0;
  CHECK_THROWS_AS(graph_frame(notSymp), ValidationError);
}

TEST_CASE("triple index on coincident arguments") {
  Rng rng(41);
  auto sp = SymplecticSpace::standard(3);
  for (int rep = 0; rep < 4; ++rep) {
    auto a = random_lagrangian(rng, sp);
    auto b = random_lagrangian(rng, sp);
    CHECK(triple_index(a, a, b) == 0);
    CHECK(triple_index(b, a, a) == 0);
    CHECK(triple_index(a, b, a) == a.dim() - intersection_dim(a, b));
    // with a Dirichlet plane in the mix the kernel is still structural
    auto D = dirichlet_frame(3);
    CHECK(triple_index(a, D, a) == a.dim() - intersection_dim(a, D));
  }
}

TEST_CASE("cyclic symmetry of the two-argument form inertia") {
  Rng rng(51);
  auto sp = SymplecticSpace::standard(2);
  for (int rep = 0; rep < 6; ++rep) {
    auto a = random_lagrangian(rng, sp);
    auto b = random_lagrangian(rng, sp);
    auto d = random_lagrangian(rng, sp);
    auto q1 = q_form(a, b, d);
    auto q2 = q_form(b, d, a);
    auto q3 = q_form(d, a, b);
    CHECK(q1.inertia.pos == q2.inertia.pos);
    CHECK(q1.inertia.neg == q2.inertia.neg);
    CHECK(q2.inertia.pos == q3.inertia.pos);
    CHECK(q2.inertia.neg == q3.inertia.neg);
    CHECK(q1.kernel_ok);
    CHECK(q2.kernel_ok);
    CHECK(q3.kernel_ok);
  }
}

TEST_CASE("Hormander index: consistency and antisymmetries") {
  Rng rng(61);
  auto sp = SymplecticSpace::standard(2);
  for (int rep = 0; rep < 6; ++rep) {
    auto l1 = random_lagrangian(rng, sp);
    auto l2 = random_lagrangian(rng, sp);
    auto k1 = random_lagrangian(rng, sp);
    auto k2 = random_lagrangian(rng, sp);
    int s = hormander_index(l1, l2, k1, k2);  // throws if expressions differ
    CHECK(hormander_index(l2, l1, k1, k2) == -s);
    CHECK(hormander_index(l1, l2, k2, k1) == -s);
    CHECK(hormander_index(l1, l1, k1, k2) == 0);
    CHECK(hormander_index(l1, l2, k1, k1) == 0);
  }
}

TEST_CASE("graph reduction identities for doubled-space triple indices") {
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    Rng rng(seed);
    for (int n : {1, 2}) {
      RMat M = rng.symplectic(n);
      auto sp = SymplecticSpace::standard(n);
      Mat L1 = random_lagrangian(rng, sp).Z;
      Mat L2 = random_lagrangian(rng, sp).Z;
      Mat L3 = random_lagrangian(rng, sp).Z;
      Mat L4 = random_lagrangian(rng, sp).Z;
      auto rep = check_graph_triple_identities(M, L1, L2, L3, L4);
      CAPTURE(seed);
      CAPTURE(n);
      CHECK(rep.ok);
      CHECK(rep.lhs_12_13 == rep.rhs_12_13);
      CHECK(rep.lhs_12_32 == rep.rhs_12_32);
      CHECK(rep.lhs_12_34 == rep.rhs_12_34_a);
      CHECK(rep.lhs_12_34 == rep.rhs_12_34_b);
    }
  }
}

TEST_CASE("graph reductions with repeated / degenerate factor frames") {
  Rng rng(71);
  int n = 2;
  RMat M = rng.symplectic(n);
  auto sp = SymplecticSpace::standard(n);
  Mat D = dirichlet_frame(n).Z;
  Mat N = neumann_frame(n).Z;
  Mat L = random_lagrangian(rng, sp).Z;
  // mixes of coordinate planes exercise nontrivial kernels in the Gram
  auto r1 = check_graph_triple_identities(M, D, N, L, D);
  CHECK(r1.ok);
  auto r2 = check_graph_triple_identities(M, N, D, D, N);
  CHECK(r2.ok);
}

TEST_CASE("Hermitian form restriction and q-orthogonal complements") {
  Rng rng(81);
  int N = 9;
  // spectrum with a planted two-dimensional kernel
  RVec ev(N);
  ev << 3.0, 2.5, 1.2, 0.7, 0.0, 0.0, -0.8, -1.7, -2.2;
  Mat U = rng.unitary(N);
  Mat Q = U * ev.asDiagonal() * U.adjoint();
  Q = 0.5 * (Q + Q.adjoint());

  Inertia full = inertia_of(Q);
  CHECK(full.pos == 4);
  CHECK(full.neg == 3);
  CHECK(full.zero == 2);
  CHECK(form_kernel(Q).cols() == 2);

  // V^Q contains the kernel and has the complementary dimension
  Mat V = orthonormalize(rng.cgaussian(N, 4));
  Mat vq = q_orthogonal(Q, V);
  CHECK(vq.cols() == N - 4);  // V generic: V ∩ ker Q = 0
  CHECK(intersection(vq, form_kernel(Q)).cols() == 2);
  auto dims = q_orthogonal_dimension(Q, V);
  CHECK(dims.ok);

  auto rel = relative_morse_index(Q, V);
  CHECK(rel.difference_ok);
  auto spl = split_morse_index(Q, V);
  CHECK(spl.split_ok);
}

TEST_CASE("relative index bookkeeping on subspaces touching the kernel") {
  Rng rng(82);
  int N = 8;
  RVec ev(N);
  ev << 2.0, 1.5, 1.0, 0.0, 0.0, 0.0, -1.0, -2.0;
  Mat U = rng.unitary(N);
  Mat Q = U * ev.asDiagonal() * U.adjoint();
  Q = 0.5 * (Q + Q.adjoint());

  // V spans one kernel direction, one positive, one negative eigenvector
  Mat V(N, 3);
  V.col(0) = U.col(3);
  V.col(1) = U.col(0);
  V.col(2) = U.col(7);
  auto rel = relative_morse_index(Q, V);
  CHECK(rel.dim_v_cap_ker == 1);
  CHECK(rel.difference_ok);
  auto spl = split_morse_index(Q, V);
  CHECK(spl.dim_w_cap_ker == 1);
  CHECK(spl.split_ok);
  CHECK(q_orthogonal_dimension(Q, V).ok);

  // along an isotropic direction both the restriction and the intersection
  // with V^Q are nontrivial
  Mat W(N, 2);
  W.col(0) = (U.col(0) / std::sqrt(2.0) + U.col(6)) / std::sqrt(1.5);
  W.col(1) = U.col(4);
  W = orthonormalize(W);
  auto rel2 = relative_morse_index(Q, W);
  CHECK(rel2.restricted.zero == 2);
  CHECK(rel2.difference_ok);
  CHECK(split_morse_index(Q, W).split_ok);
}

TEST_CASE("vanishing subspaces attain the dimension bound") {
  Rng rng(83);
  int N = 7;
  RVec ev(N);
  ev << 2.0, 1.0, 0.0, 0.0, -0.5, -1.5, -3.0;  // m+ = 2, m- = 3, ker = 2
  Mat U = rng.unitary(N);
  Mat Q = U * ev.asDiagonal() * U.adjoint();
  Q = 0.5 * (Q + Q.adjoint());

  Mat X = vanishing_subspace(Q);
  CHECK(X.cols() == 4);  // min(2,3) + 2
  CHECK((X.adjoint() * Q * X).cwiseAbs().maxCoeff() < 1e-10);

  auto b = vanishing_dimension_bound(Q, X, Mat(N, 0));
  CHECK(b.ok);
  CHECK(b.bound == 4);  // m+ + dim ker

  // refined bound: split the kernel, keep X off the first summand
  Mat K1 = U.col(2);
  Mat K2 = U.col(3);
  Mat Xr(N, 3);
  Xr.col(0) = U.col(0) / std::sqrt(2.0) + U.col(4) / std::sqrt(0.5);
  Xr.col(1) = U.col(1) / std::sqrt(1.0) + U.col(5) / std::sqrt(1.5);
  Xr.col(2) = U.col(3);
  Xr = orthonormalize(Xr);
  auto br = vanishing_dimension_bound(Q, Xr, K1);
  CHECK(br.ok);
  CHECK(br.bound == 3);  // m+ + dim K2
  CHECK(br.dim_x == 3);  // attained

  // X meeting K1 must be rejected
  CHECK_THROWS_AS(vanishing_dimension_bound(Q, Xr, K2), ValidationError);
}
