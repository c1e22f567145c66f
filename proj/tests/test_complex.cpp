#include <doctest.h>

#include "dqa/complex.hpp"
#include "helpers.hpp"

using namespace dqa;
using test::term;

static const FieldSpec kQ{};

namespace {

Potential<Rat> loops3_potential(const Quiver& q) {
  Potential<Rat> pot;
  pot.omega =
      test::cyclic_superpotential<Rat>(q, test::make_path(q, {"x", "y", "z"}), kQ) +
      (-test::cyclic_superpotential<Rat>(q, test::make_path(q, {"x", "z", "y"}), kQ));
  pot.twist = AutomorphismSpec<Rat>::identity(q, kQ);
  return pot;
}

Potential<Rat> preproj_a3_potential(const Quiver& q) {
  Potential<Rat> pot;
  pot.omega =
      test::cyclic_superpotential<Rat>(q, test::make_path(q, {"a1s", "a1"}), kQ) +
      test::cyclic_superpotential<Rat>(q, test::make_path(q, {"a2s", "a2"}), kQ);
  pot.twist = AutomorphismSpec<Rat>::identity(q, kQ);
  return pot;
}

template <class K>
GradedAlgebra<K> algebra_of(const Quiver& q, const Potential<K>& pot,
                            int cap) {
  PathTable tab(q);
  auto rel = derivative_space(q, pot, pot.degree() - 2, tab);
  return build_algebra(q, rel.basis, cap);
}

// exact sparse product for the complex property
template <class K>
bool composes_to_zero(const SpMat<K>& first, const SpMat<K>& then) {
  for (int j = 0; j < first.cols; ++j) {
    SpVec<K> mid = first.col[j];
    if (then.apply(mid).size() != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("epsilon signs pinned for d <= 8") {
  auto eps = [](int i, int d) {
    Rat e = epsilon_sign<Rat>(i, d, kQ);
    return e == Rat(1) ? 1 : -1;
  };
  CHECK(eps(1, 2) == -1);
  CHECK(eps(2, 2) == 1);
  for (int i = 1; i <= 3; ++i) CHECK(eps(i, 3) == 1);
  int d4[] = {-1, 1, 1, 1};
  for (int i = 1; i <= 4; ++i) CHECK(eps(i, 4) == d4[i - 1]);
  for (int i = 1; i <= 5; ++i) CHECK(eps(i, 5) == 1);
  int d6[] = {-1, 1, -1, 1, 1, 1};
  for (int i = 1; i <= 6; ++i) CHECK(eps(i, 6) == d6[i - 1]);
  for (int i = 1; i <= 7; ++i) CHECK(eps(i, 7) == 1);
  int d8[] = {-1, 1, -1, 1, 1, 1, 1, 1};
  for (int i = 1; i <= 8; ++i) CHECK(eps(i, 8) == d8[i - 1]);
}

TEST_CASE("3-loop complex: terms, D^2 = 0, homology vanishing") {
  Quiver q = test::loops_quiver(3);
  auto pot = loops3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto C = build_w_complex(A, pot);

  // dim W_i = dim W_{d-i}: 1, 3, 3, 1
  CHECK(C.gen[0].dim() == 1);
  CHECK(C.gen[1].dim() == 3);
  CHECK(C.gen[2].dim() == 3);
  CHECK(C.gen[3].dim() == 1);

  // D_1(1|w|1) = w|1 - 1|w for w in W_1 = V (eps_1 = 1, sign (-1)^1)
  {
    int g = 0;  // first arrow generator
    int col = C.term[1].index(1, 0, 0, g, 0);
    REQUIRE(col >= 0);
    const SpVec<Rat>& image = C.diff[1][1].col[col];
    CHECK(image.size() == 2);
  }

  for (int i = 2; i <= 3; ++i)
    for (int n = 0; n <= C.cap; ++n)
      CHECK(composes_to_zero(C.diff[i][n], C.diff[i - 1][n]));

  auto rep = homology(C);
  CHECK(rep.h0_is_algebra);
  for (int i = 1; i <= 3; ++i)
    for (int n = 0; n <= C.cap; ++n)
      CHECK(rep.slot[i][n].homology == 0);
  // resolution of an infinite dimensional Koszul algebra: no top kernel
  for (int n = 0; n <= C.cap; ++n) CHECK(rep.ker_top_dims[n] == 0);

  // independent dimension oracle at position 1, degree 4:
  // dim(A|W_1|A)_4 = sum_{r+s=3} dim A_r * 3 * dim A_s
  int conv3 = 0;
  for (int r = 0; r + 0 <= 3; ++r) conv3 += A.dim(r) * A.dim(3 - r);
  CHECK(C.term[1].dim(4) == 3 * conv3);
}

TEST_CASE("preprojective A3 complex: exact except at 0 and d") {
  Quiver q = test::a3_double_quiver();
  auto pot = preproj_a3_potential(q);
  auto A = algebra_of(q, pot, 6);
  CHECK(finite_dim_certificate(A).finite);
  auto C = build_w_complex(A, pot);
  CHECK(C.d == 2);
  auto rep = homology(C);
  CHECK(rep.h0_is_algebra);
  // exact at position 1 = d-1
  CHECK(rep.exact_at(1));
  // Ker D_d has the graded dimensions of A<d+p> = A<4>: (3,4,3) at 4,5,6
  CHECK(rep.ker_top_dims[4] == 3);
  CHECK(rep.ker_top_dims[5] == 4);
  CHECK(rep.ker_top_dims[6] == 3);
  for (int n = 0; n <= 3; ++n) CHECK(rep.ker_top_dims[n] == 0);
}

TEST_CASE("six-vertex complex: twisted case exact at position 1") {
  Quiver q = test::six_vertex_quiver();
  auto pot = test::six_vertex_potential<Rat>(q, kQ);
  auto A = algebra_of(q, pot, 6);
  auto C = build_w_complex(A, pot);
  CHECK(C.twisted);
  auto rep = homology(C);
  CHECK(rep.h0_is_algebra);
  CHECK(rep.exact_at(1));
  // Ker D_2 = twist of A<4>: dims (6,8,6) at degrees 4,5,6
  CHECK(rep.ker_top_dims[4] == 6);
  CHECK(rep.ker_top_dims[5] == 8);
  CHECK(rep.ker_top_dims[6] == 6);
}

TEST_CASE("one-sided complexes: exactness ranges coincide") {
  auto run = [](const Quiver& q, const Potential<Rat>& pot, int cap) {
    auto A = algebra_of(q, pot, cap);
    auto C = build_w_complex(A, pot);
    auto rep = homology(C);
    auto L = one_sided_complex(C, true);
    auto R = one_sided_complex(C, false);
    auto HL = one_sided_homology(L);
    auto HR = one_sided_homology(R);
    auto prefix = [&](const std::vector<std::vector<int>>& H) {
      int n = 0;
      for (int i = 1; i <= C.d - 1; ++i) {
        bool ex = true;
        for (int m = 0; m <= C.cap; ++m)
          if (H[i][m] != 0) ex = false;
        if (!ex) break;
        n = i;
      }
      return n;
    };
    int two = rep.exact_prefix();
    CHECK(two == prefix(HL));
    CHECK(two == prefix(HR));
    // one-sided term dimension identity at a spot degree
    int i = 1, n = std::min(3, cap);
    size_t dim_left = L.bas[i][n].size();
    int expect = 0;
    for (int g = 0; g < C.gen[i].dim(); ++g)
      for (int a = 0; a < A.dim(n - i); ++a)
        if (path_source(A.Q, A.bas[n - i][a]) == C.gen[i].tv[g]) ++expect;
    CHECK(static_cast<int>(dim_left) == expect);
  };
  Quiver q3 = test::loops_quiver(3);
  run(q3, loops3_potential(q3), 5);
  Quiver qa = test::a3_double_quiver();
  run(qa, preproj_a3_potential(qa), 6);
  Quiver qx = test::six_vertex_quiver();
  run(qx, test::six_vertex_potential<Rat>(qx, kQ), 6);
}

TEST_CASE("koszul spaces") {
  Quiver q = test::loops_quiver(3);
  auto pot = loops3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto kos = koszul_spaces(A, 5);
  // K^0 = S, K^1 = V always
  CHECK(kos[0].size() == 1);
  CHECK(kos[1].size() == 3);
  // exterior dimensions C(3, i) and zero beyond 3
  CHECK(kos[2].size() == 3);
  CHECK(kos[3].size() == 1);
  CHECK(kos[4].size() == 0);
  CHECK(kos[5].size() == 0);

  auto C = build_w_complex(A, pot);
  auto sub = check_koszul_subcomplex(A, C);
  CHECK(sub.contained);
  CHECK(sub.first_strict == -1);  // equality in the Koszul case

  // preprojective A3: K^m = 0 for m > q = 2
  Quiver qa = test::a3_double_quiver();
  auto pa = preproj_a3_potential(qa);
  auto P = algebra_of(qa, pa, 6);
  auto kp = koszul_spaces(P, 4);
  CHECK(kp[2].size() == 3);
  CHECK(kp[3].size() == 0);
  CHECK(kp[4].size() == 0);
}

TEST_CASE("strict subcomplex on a degenerate superpotential") {
  // omega = cyclic closure of x x y: A = k<x,y>/(x^2, xy+yx) is Koszul but
  // the derived complex is shorter than the Koszul complex: W_3 strictly
  // inside K^3
  Quiver q = test::loops_quiver(2);
  Potential<Rat> pot;
  pot.omega = test::cyclic_superpotential<Rat>(
      q, test::make_path(q, {"x", "x", "y"}), kQ);
  pot.twist = AutomorphismSpec<Rat>::identity(q, kQ);
  REQUIRE(check_superpotential(q, pot).ok);
  auto A = algebra_of(q, pot, 6);
  CHECK(A.dim(1) == 2);
  CHECK(A.dim(2) == 2);
  CHECK(A.dim(3) == 2);
  auto C = build_w_complex(A, pot);
  auto sub = check_koszul_subcomplex(A, C);
  CHECK(sub.contained);
  CHECK(sub.first_strict == 3);
  CHECK(sub.dims_w[3] == 1);
  CHECK(sub.dims_k[3] == 2);
  // and accordingly the complex cannot be exact everywhere
  auto rep = homology(C);
  bool all_exact = true;
  for (int i = 1; i < C.d; ++i) all_exact = all_exact && rep.exact_at(i);
  CHECK(!all_exact);
}

TEST_CASE("quadratic dual") {
  // 3-loop commutative: dual is the exterior algebra, dims 1,3,3,1
  Quiver q = test::loops_quiver(3);
  auto pot = loops3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto D = quadratic_dual(A, 6);
  CHECK(D.dual.dim(0) == 1);
  CHECK(D.dual.dim(1) == 3);
  CHECK(D.dual.dim(2) == 3);
  CHECK(D.dual.dim(3) == 1);
  CHECK(D.dual.dim(4) == 0);
  // dim R + dim R-perp = 9 on the one-vertex quiver
  CHECK(static_cast<int>(A.relations.size() + D.dual.relations.size()) == 9);
  // biduality at the dimension level
  auto DD = quadratic_dual(D.dual, 6);
  for (int n = 0; n <= 6; ++n) CHECK(DD.dual.dim(n) == A.dim(n));

  // tensor algebra: dual is S + V*
  Quiver q2 = test::loops_quiver(2);
  auto T = build_algebra(q2, std::vector<Tensor<Rat>>{}, 4);
  auto DT = quadratic_dual(T, 4);
  CHECK(DT.dual.dim(0) == 1);
  CHECK(DT.dual.dim(1) == 2);
  CHECK(DT.dual.dim(2) == 0);

  // K^n has the dimensions of the dual algebra degreewise
  auto kos = koszul_spaces(A, 4);
  for (int n = 0; n <= 4; ++n)
    CHECK(static_cast<int>(kos[n].size()) == D.dual.dim(n));
}

TEST_CASE("homology agrees over Q and over a prime field") {
  Quiver q = test::a3_double_quiver();
  q.field = FieldSpec{FieldSpec::Kind::Fp, 101};
  Potential<Fp> pot;
  FieldSpec fp = q.field;
  pot.omega = test::cyclic_superpotential<Fp>(
                  q, test::make_path(q, {"a1s", "a1"}), fp) +
              test::cyclic_superpotential<Fp>(
                  q, test::make_path(q, {"a2s", "a2"}), fp);
  pot.twist = AutomorphismSpec<Fp>::identity(q, fp);
  auto A = algebra_of(q, pot, 6);
  auto C = build_w_complex(A, pot);
  auto rep = homology(C);
  CHECK(rep.h0_is_algebra);
  CHECK(rep.exact_at(1));
  CHECK(rep.ker_top_dims[4] == 3);
  CHECK(rep.ker_top_dims[5] == 4);
  CHECK(rep.ker_top_dims[6] == 3);
}
