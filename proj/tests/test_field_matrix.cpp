#include <doctest.h>

#include "dqa/matrix.hpp"
#include "dqa/sparse.hpp"
#include "helpers.hpp"

using namespace dqa;

static const FieldSpec kQ{};
static const FieldSpec kF101{FieldSpec::Kind::Fp, 101};

TEST_CASE("rank: pinned examples") {
  Mat<Rat> id2 = Mat<Rat>::identity(2, Rat(1));
  CHECK(rank(id2) == 2);

  Mat<Rat> z(3, 4);
  CHECK(rank(z) == 0);

  // [[1,2],[2,4]]: second row is twice the first, so rank 1
  Mat<Rat> m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  CHECK(rank(m) == 1);
}

TEST_CASE("kernel_basis: pinned examples") {
  Mat<Rat> id3 = Mat<Rat>::identity(3, Rat(1));
  CHECK(kernel_basis(id3, kQ).empty());

  Mat<Rat> z(2, 3);
  auto kb = kernel_basis(z, kQ);
  REQUIRE(kb.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(kb[i][j] == Rat(i == j ? 1 : 0));

  Mat<Rat> row(1, 2);
  row.at(0, 0) = 1;
  row.at(0, 1) = 1;
  auto k1 = kernel_basis(row, kQ);
  REQUIRE(k1.size() == 1);
  // normalized with 1 in the free slot: (-1, 1)
  CHECK(k1[0][0] == Rat(-1));
  CHECK(k1[0][1] == Rat(1));
}

TEST_CASE("solve: pinned examples") {
  Mat<Rat> id2 = Mat<Rat>::identity(2, Rat(1));
  std::vector<Rat> b{Rat(3), Rat(-7)};
  auto x = solve(id2, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  Mat<Rat> z(2, 2);
  CHECK(!solve(z, b).has_value());

  Mat<Rat> two(1, 1);
  two.at(0, 0) = 2;
  auto half = solve(two, std::vector<Rat>{Rat(1)});
  REQUIRE(half.has_value());
  CHECK((*half)[0] == Rat(1, 2));

  CHECK_THROWS_AS(solve(two, b), std::invalid_argument);
}

TEST_CASE("rank-nullity and exact solve, random matrices over Q and Fp") {
  test::Rng rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    int r = rng.uniform(1, 6), c = rng.uniform(1, 6);
    Mat<Rat> m(r, c);
    Mat<Fp> mp(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        int v = rng.uniform(-4, 4);
        m.at(i, j) = v;
        mp.at(i, j) = Fp(v, 101);
      }
    CHECK(rank(m) + static_cast<int>(kernel_basis(m, kQ).size()) == c);
    CHECK(rank(mp) + static_cast<int>(kernel_basis(mp, kF101).size()) == c);
    // m * x = b solved exactly when consistent
    std::vector<Rat> xs(c);
    for (int j = 0; j < c; ++j) xs[j] = rng.uniform(-3, 3);
    std::vector<Rat> b(r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b[i] += m.at(i, j) * xs[j];
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    for (int i = 0; i < r; ++i) {
      Rat acc;
      for (int j = 0; j < c; ++j) acc += m.at(i, j) * (*sol)[j];
      CHECK(acc == b[i]);
    }
    // kernel vectors really are in the kernel
    for (const auto& v : kernel_basis(m, kQ))
      for (int i = 0; i < r; ++i) {
        Rat acc;
        for (int j = 0; j < c; ++j) acc += m.at(i, j) * v[j];
        CHECK(is_zero(acc));
      }
  }
}

TEST_CASE("sparse rank agrees with dense rank") {
  test::Rng rng(999);
  for (int trial = 0; trial < 60; ++trial) {
    int r = rng.uniform(1, 12), c = rng.uniform(1, 12);
    Mat<Rat> m(r, c);
    SpMat<Rat> s(r, c);
    for (int j = 0; j < c; ++j) {
      SpVec<Rat> col;
      for (int i = 0; i < r; ++i)
        if (rng.uniform(0, 3) == 0) {
          int v = rng.uniform(-3, 3);
          if (v == 0) continue;
          m.at(i, j) = v;
          col.emplace_back(i, Rat(v));
        }
      s.set_col(j, std::move(col));
    }
    CHECK(sp_rank(s) == rank(m));
  }
}

TEST_CASE("Fp arithmetic") {
  Fp a(7, 101), b(-3, 101);
  CHECK(b.v == 98);
  CHECK((a * b).v == (7 * 98) % 101);
  CHECK((a / a).v == 1);
  CHECK((a - a).v == 0);
  Fp zero;
  CHECK((zero + a) == a);
  CHECK(is_zero(zero * a));
  CHECK(scalar_of_string<Fp>("1/2", kF101) * Fp(2, 101) == Fp(1, 101));
}

TEST_CASE("determinism: identical results across repeated runs") {
  test::Rng rng(42);
  Mat<Rat> m(6, 9);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 9; ++j) m.at(i, j) = rng.uniform(-5, 5);
  auto k1 = kernel_basis(m, kQ);
  auto k2 = kernel_basis(m, kQ);
  CHECK(k1 == k2);
  Mat<Rat> c1 = m, c2 = m;
  CHECK(rref(c1) == rref(c2));
  CHECK(c1 == c2);
}
