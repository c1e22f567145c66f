#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dqa/algebra.hpp"
#include "dqa/matrix.hpp"
#include "dqa/potential.hpp"
#include "dqa/quiver.hpp"
#include "dqa/tensor.hpp"

namespace dqa::test {
template <class K>
Tensor<K> term(const Quiver& q, const std::vector<std::string>& ids, long c,
               const FieldSpec& fs);
}

namespace dqa::test {

// Deterministic pseudo-random stream for hand-rolled property tests.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % (hi - lo + 1));
  }
};

inline Quiver loops_quiver(int nloops) {
  Quiver q;
  q.vertices = {"1"};
  const char* names[] = {"x", "y", "z", "w", "u", "v"};
  for (int i = 0; i < nloops; ++i) q.arrows.push_back({names[i], 0, 0, 0});
  return q;
}

// 1 <-> 2 <-> 3 double quiver of linear A3
inline Quiver a3_double_quiver() {
  Quiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows.push_back({"a1", 0, 1, 0});
  q.arrows.push_back({"a1s", 1, 0, 1});
  q.arrows.push_back({"a2", 1, 2, 0});
  q.arrows.push_back({"a2s", 2, 1, 1});
  return q;
}

inline Quiver a3_linear_quiver() {
  Quiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows.push_back({"a1", 0, 1, 0});
  q.arrows.push_back({"a2", 1, 2, 0});
  return q;
}

inline Path make_path(const Quiver& q, const std::vector<std::string>& ids) {
  Path p;
  for (const auto& id : ids) p.arrows.push_back(q.arrow_index(id));
  if (!path_composable(q, p.arrows)) throw std::logic_error("bad test path");
  return p;
}

template <class K>
Tensor<K> term(const Quiver& q, const std::vector<std::string>& ids, long c,
               const FieldSpec& fs) {
  return monomial(make_path(q, ids), scalar_of_long<K>(c, fs));
}

// Full cyclic symmetrization of a closed path with sign (-1)^(d-1) per
// rotation step: the superpotential generated by one cycle.
template <class K>
Tensor<K> cyclic_superpotential(const Quiver& q, const Path& cycle,
                                const FieldSpec& fs) {
  int d = cycle.length();
  long sign = 1;
  Tensor<K> out(d);
  Path p = cycle;
  for (int r = 0; r < d; ++r) {
    out.add(p, scalar_of_long<K>(sign, fs));
    // move the leftmost arrow to the right end
    int first = p.arrows.front();
    p.arrows.erase(p.arrows.begin());
    p.arrows.push_back(first);
    sign *= (d % 2 == 0) ? -1 : 1;
  }
  return out;
}

// Independent oracle: dim of kQ_n / sum_i kQ_i R kQ_{n-2-i} by one big rank
// over the full path basis. Quadratic-or-higher homogeneous relations.
template <class K>
int full_quotient_dim(const Quiver& q, const std::vector<Tensor<K>>& rels,
                      int n) {
  PathTable tab(q);
  const auto& paths = tab.paths(n);
  if (rels.empty()) return static_cast<int>(paths.size());
  int r = rels.front().degree;
  std::vector<std::vector<K>> rows;
  for (int i = 0; i + r <= n; ++i) {
    int j = n - r - i;
    for (const Path& left : tab.paths(i))
      for (const auto& rel : rels)
        for (const Path& right : tab.paths(j)) {
          Tensor<K> t =
              tensor_concat(q, monomial(left, scalar_of_long<K>(1, q.field)),
                            tensor_concat(q, rel,
                                          monomial(right, scalar_of_long<K>(
                                                              1, q.field))));
          if (!t.zero()) rows.push_back(t.coords(tab));
        }
  }
  auto ech = echelon_rows(std::move(rows));
  return static_cast<int>(paths.size() - ech.size());
}

// The six-vertex quiver: 1,3 -> 2 -> 4,5 -> 6 -> 1,3 with commutativity
// relations on both squares and zero relations on the four straight-through
// composites.
inline Quiver six_vertex_quiver() {
  Quiver q;
  q.vertices = {"1", "2", "3", "4", "5", "6"};
  q.arrows.push_back({"a", 0, 1, 0});  // 1 -> 2
  q.arrows.push_back({"b", 2, 1, 0});  // 3 -> 2
  q.arrows.push_back({"c", 1, 3, 0});  // 2 -> 4
  q.arrows.push_back({"d", 1, 4, 0});  // 2 -> 5
  q.arrows.push_back({"e", 3, 5, 0});  // 4 -> 6
  q.arrows.push_back({"f", 4, 5, 0});  // 5 -> 6
  q.arrows.push_back({"g", 5, 2, 0});  // 6 -> 3
  q.arrows.push_back({"h", 5, 0, 0});  // 6 -> 1
  return q;
}

template <class K>
std::vector<Tensor<K>> six_vertex_relations(const Quiver& q,
                                            const FieldSpec& fs) {
  std::vector<Tensor<K>> rels;
  rels.push_back(term<K>(q, {"c", "b"}, 1, fs));
  rels.push_back(term<K>(q, {"d", "a"}, 1, fs));
  rels.push_back(term<K>(q, {"g", "e"}, 1, fs));
  rels.push_back(term<K>(q, {"h", "f"}, 1, fs));
  rels.push_back(term<K>(q, {"e", "c"}, 1, fs) + term<K>(q, {"f", "d"}, -1, fs));
  rels.push_back(term<K>(q, {"a", "h"}, 1, fs) + term<K>(q, {"b", "g"}, -1, fs));
  return rels;
}

// Degree-2 twisted superpotential presenting the six-vertex algebra; the
// twist swaps 1<->5, 2<->6, 3<->4 with signs fixed by the sign condition.
template <class K>
Potential<K> six_vertex_potential(const Quiver& q, const FieldSpec& fs) {
  Potential<K> pot;
  pot.omega = term<K>(q, {"c", "b"}, 1, fs) + term<K>(q, {"d", "a"}, 1, fs) +
              term<K>(q, {"g", "e"}, 1, fs) + term<K>(q, {"h", "f"}, 1, fs) +
              term<K>(q, {"e", "c"}, 1, fs) + term<K>(q, {"f", "d"}, -1, fs) +
              term<K>(q, {"a", "h"}, 1, fs) + term<K>(q, {"b", "g"}, -1, fs);
  AutomorphismSpec<K> phi;
  phi.vperm = {4, 5, 3, 2, 0, 1};
  phi.arrow_image.resize(q.n_arrows());
  auto set = [&](const char* from, const char* to, long coef) {
    phi.arrow_image[q.arrow_index(from)] = term<K>(q, {to}, coef, fs);
  };
  set("a", "f", -1);
  set("b", "e", 1);
  set("c", "g", 1);
  set("d", "h", -1);
  set("e", "b", -1);
  set("f", "a", 1);
  set("g", "c", -1);
  set("h", "d", 1);
  pot.twist = phi;
  return pot;
}

template <class K>
Tensor<K> random_tensor(const Quiver& q, int deg, Rng& rng,
                        const FieldSpec& fs) {
  PathTable tab(q);
  const auto& ps = tab.paths(deg);
  Tensor<K> t(deg);
  for (const Path& p : ps)
    if (rng.uniform(0, 2) == 0) t.add(p, scalar_of_long<K>(rng.uniform(-3, 3), fs));
  return t;
}

}  // namespace dqa::test
