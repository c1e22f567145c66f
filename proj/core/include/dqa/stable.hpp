#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqa/structure.hpp"

namespace dqa {

// Syzygies and cosyzygies through minimal covers and envelopes; with minimal
// choices, projective direct summands never survive a step over a
// selfinjective algebra.
template <class K>
Module<K> syzygy_once(const GradedAlgebra<K>& A, const Module<K>& M) {
  return syzygy_step(A, M).omega;
}

template <class K>
Module<K> cosyzygy_once(const GradedAlgebra<K>& A,
                        const GradedAlgebra<K>& Aop, const Module<K>& M) {
  Module<K> dm = dual_module(Aop, M);
  Module<K> om = syzygy_once(Aop, dm);
  return dual_module(A, om);
}

template <class K>
Module<K> syzygy(const GradedAlgebra<K>& A, const GradedAlgebra<K>& Aop,
                 Module<K> M, int n) {
  for (; n > 0; --n) M = syzygy_once(A, M);
  for (; n < 0; ++n) M = cosyzygy_once(A, Aop, M);
  return M;
}

// The permutation i -> soc P(i) of a selfinjective basic algebra.
template <class K>
std::vector<int> nakayama_on_simples(const GradedAlgebra<K>& A) {
  auto cert = selfinjective_check(A);
  if (!cert.is_selfinjective)
    throw std::invalid_argument("nakayama_on_simples: not selfinjective");
  return cert.nakayama_perm;
}

struct StableCYCert {
  bool cosyzygy_orbit_found = false;  // some l <= cap makes all simples simple
  int l = -1;                         // least such l
  std::vector<int> sigma;             // permutation induced by Omega^{-l}
  std::vector<int> nakayama;
  std::optional<int> untwisted_dimension;  // least d with nu = Omega^{-d-1}
  std::vector<int> twist_perm;             // phi with nu = sigma o phi
  int cap = 0;
  std::string note;  // permutation-level evidence disclaimer
};

// Stable Calabi-Yau detection at the granularity of vertex simples: find the
// least l with every Omega^{-l}(S_i) simple, the induced permutation, an
// untwisted dimension if some cosyzygy power realizes the Nakayama
// permutation, and otherwise the twist permutation closing the gap.
template <class K>
StableCYCert stably_cy_search(const GradedAlgebra<K>& A,
                              const GradedAlgebra<K>& Aop, int cap = 12) {
  StableCYCert cert;
  cert.cap = cap;
  cert.nakayama = nakayama_on_simples(A);
  cert.note = "permutation-level evidence";
  int nv = A.Q.n_vertices();
  std::vector<Module<K>> cur;
  for (int v = 0; v < nv; ++v) cur.push_back(simple_module(A, v, 0));

  std::vector<std::optional<std::vector<int>>> perm_at(cap + 2);
  for (int l = 1; l <= cap + 1; ++l) {
    std::vector<int> perm(nv, -1);
    bool all_simple = true;
    for (int v = 0; v < nv; ++v) {
      cur[v] = cosyzygy_once(A, Aop, cur[v]);
      int w = -1;
      if (cur[v].is_simple_at(&w))
        perm[v] = w;
      else
        all_simple = false;
    }
    if (all_simple) perm_at[l] = perm;
    if (all_simple && !cert.cosyzygy_orbit_found && l <= cap) {
      cert.cosyzygy_orbit_found = true;
      cert.l = l;
      cert.sigma = perm;
    }
  }
  for (int d = 1; d <= cap; ++d) {
    if (!perm_at[d + 1]) continue;
    if (*perm_at[d + 1] == cert.nakayama) {
      cert.untwisted_dimension = d;
      break;
    }
  }
  if (cert.cosyzygy_orbit_found && !cert.untwisted_dimension) {
    // nu = sigma o phi
    std::vector<int> sigma_inv(nv);
    for (int v = 0; v < nv; ++v) sigma_inv[cert.sigma[v]] = v;
    cert.twist_perm.resize(nv);
    for (int v = 0; v < nv; ++v)
      cert.twist_perm[v] = sigma_inv[cert.nakayama[v]];
    for (int v = 0; v < nv; ++v)
      if (cert.nakayama[v] != cert.sigma[cert.twist_perm[v]])
        throw std::logic_error("stably_cy_search: twist composition broken");
  }
  return cert;
}

// cycle notation like (14)(26)(35) for report output; fixed points omitted
inline std::string perm_cycles(const std::vector<int>& perm,
                               const std::vector<std::string>& names) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == static_cast<int>(i)) continue;
    std::string cyc = "(" + names[i];
    seen[i] = true;
    for (size_t j = perm[i]; j != i; j = perm[j]) {
      seen[j] = true;
      cyc += names[j];
    }
    out += cyc + ")";
  }
  return out.empty() ? "id" : out;
}

}  // namespace dqa
