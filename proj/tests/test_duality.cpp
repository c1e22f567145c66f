#include <doctest.h>

#include "dqa/cy.hpp"
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

}  // namespace

TEST_CASE("twisted self-duality of the complex") {
  // untwisted d = 3
  {
    Quiver q = test::loops_quiver(3);
    auto pot = loops3_potential(q);
    auto A = algebra_of(q, pot, 5);
    auto C = build_w_complex(A, pot);
    auto cert = check_selfduality(C, pot);
    INFO(cert.note);
    CHECK(cert.perfect_pairing);
    CHECK(cert.sign_symmetry);
    CHECK(cert.differentials_match);
    CHECK(cert.shift_tensor == -3);
  }
  // untwisted d = 2 with a nontrivial epsilon
  {
    Quiver q = test::a3_double_quiver();
    auto pot = preproj_a3_potential(q);
    auto A = algebra_of(q, pot, 6);
    auto C = build_w_complex(A, pot);
    auto cert = check_selfduality(C, pot);
    INFO(cert.note);
    CHECK(cert.perfect_pairing);
    CHECK(cert.sign_symmetry);
    CHECK(cert.differentials_match);
  }
  // twisted d = 2
  {
    Quiver q = test::six_vertex_quiver();
    auto pot = test::six_vertex_potential<Rat>(q, kQ);
    auto A = algebra_of(q, pot, 6);
    auto C = build_w_complex(A, pot);
    auto cert = check_selfduality(C, pot);
    INFO(cert.note);
    CHECK(cert.perfect_pairing);
    CHECK(cert.sign_symmetry);
    CHECK(cert.differentials_match);
  }
}

TEST_CASE("Hom(A, A^e) has the graded dimensions of A shifted by p") {
  Quiver q = test::a3_double_quiver();
  auto pot = preproj_a3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto C = build_w_complex(A, pot);
  auto dims = hom_regular_dual_dims(C, 0, 6);
  // _eta A <p> with p = 2: dims (3,4,3) in degrees 2,3,4
  std::vector<int> expect{0, 0, 3, 4, 3, 0, 0};
  CHECK(dims == expect);
}

TEST_CASE("kernel twist: preprojective A3") {
  Quiver q = test::a3_double_quiver();
  auto pot = preproj_a3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto C = build_w_complex(A, pot);
  auto rep = homology(C);
  auto frob = frobenius_data(A);
  REQUIRE(frob.is_frobenius);
  auto cert = kernel_twist_identify(C, A, pot, frob, rep);
  INFO(cert.note);
  CHECK(cert.found);
  CHECK(cert.shift == 4);  // d + p = 2 + 2
  CHECK(cert.shift_matches);
}

TEST_CASE("kernel twist: six-vertex (twisted)") {
  Quiver q = test::six_vertex_quiver();
  auto pot = test::six_vertex_potential<Rat>(q, kQ);
  auto A = algebra_of(q, pot, 6);
  auto C = build_w_complex(A, pot);
  auto rep = homology(C);
  auto frob = frobenius_data(A);
  REQUIRE(frob.is_frobenius);
  auto cert = kernel_twist_identify(C, A, pot, frob, rep);
  INFO(cert.note << " twist=" << cert.twist_name);
  CHECK(cert.found);
  CHECK(cert.shift == 4);
  CHECK(cert.shift_matches);
}

TEST_CASE("bimodule stably CY: preprojective A3 with the starred cut") {
  Quiver q = test::a3_double_quiver();
  q.has_vdeg = true;
  q.arrows[q.arrow_index("a1s")].vdeg = 1;
  q.arrows[q.arrow_index("a2s")].vdeg = 1;
  auto pot = preproj_a3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto Aop = opposite_algebra(A);
  auto C = build_w_complex(A, pot);
  auto rep = homology(C);
  auto cert = bimodule_stably_cy_check(C, A, Aop, pot, rep);
  INFO(cert.note);
  CHECK(cert.hypotheses_met);
  CHECK(cert.is_bimodule_stably_cy);
  CHECK(cert.gorenstein_parameter_tensor == 2);
  CHECK(cert.gorenstein_parameter_v == 1);
}

TEST_CASE("bimodule stably CY: six-vertex twisted") {
  Quiver q = test::six_vertex_quiver();
  auto pot = test::six_vertex_potential<Rat>(q, kQ);
  auto A = algebra_of(q, pot, 6);
  auto Aop = opposite_algebra(A);
  auto C = build_w_complex(A, pot);
  auto rep = homology(C);
  auto cert = bimodule_stably_cy_check(C, A, Aop, pot, rep);
  INFO(cert.note);
  CHECK(cert.hypotheses_met);
  CHECK(cert.is_bimodule_stably_cy);
  CHECK(cert.gorenstein_parameter_tensor == 2);
}

TEST_CASE("bimodule stably CY refuses unmet hypotheses") {
  // infinite dimensional input
  Quiver q = test::loops_quiver(3);
  auto pot = loops3_potential(q);
  auto A = algebra_of(q, pot, 5);
  auto Aop = opposite_algebra(A);
  auto C = build_w_complex(A, pot);
  auto rep = homology(C);
  auto cert = bimodule_stably_cy_check(C, A, Aop, pot, rep);
  CHECK(!cert.hypotheses_met);
  CHECK(!cert.is_bimodule_stably_cy);
}

TEST_CASE("quadratic dual of a Frobenius almost Koszul algebra") {
  Quiver q = test::a3_double_quiver();
  auto pot = preproj_a3_potential(q);
  auto A = algebra_of(q, pot, 6);
  auto ak = almost_koszul_check(A);
  REQUIRE(ak.almost_koszul);
  auto D = quadratic_dual(A, 6);
  auto dfin = finite_dim_certificate(D.dual);
  REQUIRE(dfin.finite);
  // (p,q)-Koszul Frobenius implies the dual is (q,p)-Koszul Frobenius
  auto dak = almost_koszul_check(D.dual);
  CHECK(dak.almost_koszul);
  CHECK(dak.p == ak.q);
  CHECK(dak.q == ak.p);
  CHECK(frobenius_data(D.dual).is_frobenius);
}
