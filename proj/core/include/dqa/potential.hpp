#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dqa/tensor.hpp"

namespace dqa {

template <class K>
struct Potential {
  Tensor<K> omega;
  AutomorphismSpec<K> twist;

  int degree() const { return omega.degree; }
};

struct PotentialVerdict {
  bool ok = true;
  std::string witness;  // offending monomial or dual arrow id
};

// Twisted potential condition: every monomial p satisfies
// t(p) = twist(s(p)).
template <class K>
PotentialVerdict check_potential(const Quiver& q, const Potential<K>& pot) {
  if (pot.omega.zero()) return {false, "omega = 0"};
  for (const auto& [p, c] : pot.omega.terms) {
    if (path_target(q, p) != pot.twist.vperm[path_source(q, p)])
      return {false, path_str(q, p)};
  }
  return {true, ""};
}

// Twisted superpotential condition: [phi*(a*) omega] = (-1)^(d-1) [omega a*]
// for every arrow a.
template <class K>
PotentialVerdict check_superpotential(const Quiver& q,
                                      const Potential<K>& pot) {
  PotentialVerdict base = check_potential(q, pot);
  if (!base.ok) return base;
  int d = pot.degree();
  K sign = scalar_of_long<K>((d - 1) % 2 == 0 ? 1 : -1, q.field);
  for (int a = 0; a < q.n_arrows(); ++a) {
    Tensor<K> fa = pot.twist.dual_on_arrow(q, a);
    Tensor<K> lhs = bracket_left(q, fa, pot.omega);
    Path pa;
    pa.arrows = {a};
    Tensor<K> rhs =
        sign * bracket_right(q, pot.omega, monomial(pa, scalar_of_long<K>(1, q.field)));
    if (!(lhs == rhs)) return {false, q.arrows[a].id};
  }
  return {true, ""};
}

// The space W_{d-k}: image of f tensor s -> [f omega s] over all dual path
// monomials f of length k and idempotents s, echelonized with the fixed
// pivot rule.
template <class K>
struct DerivativeSpace {
  int k = 0;       // co-degree
  int degree = 0;  // d - k
  std::vector<Tensor<K>> basis;
};

template <class K>
DerivativeSpace<K> derivative_space(const Quiver& q, const Potential<K>& pot,
                                    int k, PathTable& tab) {
  int d = pot.degree();
  if (k < 0 || k > d) throw std::invalid_argument("derivative co-degree");
  DerivativeSpace<K> out;
  out.k = k;
  out.degree = d - k;
  std::vector<std::vector<K>> rows;
  for (const Path& f : tab.paths(k)) {
    Tensor<K> df = bracket_left(q, monomial(f, scalar_of_long<K>(1, q.field)),
                                pot.omega);
    if (df.zero()) continue;
    for (int v = 0; v < q.n_vertices(); ++v) {
      Tensor<K> dfv(out.degree);
      for (const auto& [p, c] : df.terms)
        if (path_source(q, p) == v) dfv.add(p, c);
      if (!dfv.zero()) rows.push_back(dfv.coords(tab));
    }
  }
  for (auto& r : echelon_rows(std::move(rows)))
    out.basis.push_back(Tensor<K>::from_coords(tab, out.degree, r));
  return out;
}

// All V-degree assignments making omega homogeneous of degree (d, 1);
// returned as the sets of degree-one arrows. Requires the identity twist.
template <class K>
std::vector<std::set<std::string>> find_cuts(const Quiver& q,
                                             const Potential<K>& pot) {
  if (!pot.twist.is_identity(q.field))
    throw std::invalid_argument("cuts are defined for the identity twist");
  if (pot.omega.zero()) throw std::invalid_argument("cuts of zero potential");
  int n = q.n_arrows();
  if (n > 24) throw std::invalid_argument("cut search: too many arrows");
  std::vector<std::set<std::string>> cuts;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool good = true;
    for (const auto& [p, c] : pot.omega.terms) {
      int deg = 0;
      for (int a : p.arrows) deg += (mask >> a) & 1;
      if (deg != 1) {
        good = false;
        break;
      }
    }
    if (!good) continue;
    std::set<std::string> cut;
    for (int a = 0; a < n; ++a)
      if ((mask >> a) & 1) cut.insert(q.arrows[a].id);
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

// Applies a cut: returns a copy of the quiver with vdeg set to 1 exactly on
// the cut arrows.
inline Quiver with_cut(const Quiver& q, const std::set<std::string>& cut) {
  Quiver out = q;
  out.has_vdeg = true;
  for (auto& a : out.arrows) a.vdeg = cut.count(a.id) ? 1 : 0;
  return out;
}

}  // namespace dqa
