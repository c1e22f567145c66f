#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqa/complex.hpp"

namespace dqa {

// phi as degreewise matrices on the normal-form bases of A; throws when phi
// does not preserve the relation span (then it is no automorphism of A).
template <class K>
std::vector<Mat<K>> automorphism_matrices(const GradedAlgebra<K>& A,
                                          const AutomorphismSpec<K>& phi) {
  PathTable tab(A.Q);
  if (A.rel_degree > 0) {
    std::vector<std::vector<K>> rel_rows;
    for (const auto& r : A.relations) rel_rows.push_back(r.coords(tab));
    for (const auto& r : A.relations) {
      Tensor<K> img = phi.apply(A.Q, r);
      if (!rows_contained({img.coords(tab)}, rel_rows))
        throw std::invalid_argument(
            "automorphism does not preserve the relation ideal");
    }
  }
  std::vector<Mat<K>> out;
  for (int n = 0; n <= A.cap; ++n) {
    Mat<K> m(A.dim(n), A.dim(n));
    for (int j = 0; j < A.dim(n); ++j) {
      Tensor<K> img = phi.apply(A.Q, monomial(A.bas[n][j],
                                              scalar_of_long<K>(1, A.fs)));
      for (const auto& [p, c] : img.terms) {
        SpVec<K> cls = A.reduce_path(p);
        for (const auto& [i, ci] : cls) m.at(i, j) += c * ci;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Free bimodule on the dual generators (W_j)^*: triples (r, a, g, b) with
// swapped vertex roles, generator degree -j.
template <class K>
struct DualBimod {
  int j = 0;
  int lo = 0;  // lowest total degree = -j
  int n_gens = 0;
  struct Trip {
    int r, a, g, b;
  };
  std::vector<std::vector<Trip>> bas;
  std::vector<std::map<std::tuple<int, int, int, int>, int>> idx;

  int dim(int n) const {
    int k = n - lo;
    return (k < 0 || k >= static_cast<int>(bas.size()))
               ? 0
               : static_cast<int>(bas[k].size());
  }
  int index(int n, int r, int a, int g, int b) const {
    int k = n - lo;
    if (k < 0 || k >= static_cast<int>(bas.size())) return -1;
    auto it = idx[k].find({r, a, g, b});
    return it == idx[k].end() ? -1 : it->second;
  }
};

template <class K>
DualBimod<K> make_dual_bimod(const GradedAlgebra<K>& A, const GenSpace<K>& U) {
  DualBimod<K> F;
  F.j = U.deg;
  F.lo = -U.deg;
  F.n_gens = U.dim();
  int len = 2 * A.cap - U.deg - F.lo + 1;
  F.bas.resize(len);
  F.idx.resize(len);
  for (int r = 0; r <= A.cap; ++r)
    for (int s = 0; s <= A.cap; ++s) {
      int n = r + s - U.deg;
      for (int g = 0; g < U.dim(); ++g)
        for (int a = 0; a < A.dim(r); ++a) {
          // dual generator g* has target s(w_g) and source t(w_g)
          if (path_source(A.Q, A.bas[r][a]) != U.sv[g]) continue;
          for (int b = 0; b < A.dim(s); ++b) {
            if (path_target(A.Q, A.bas[s][b]) != U.tv[g]) continue;
            F.idx[n - F.lo][{r, a, g, b}] =
                static_cast<int>(F.bas[n - F.lo].size());
            F.bas[n - F.lo].push_back({r, a, g, b});
          }
        }
    }
  return F;
}

// Dual differential Hom(D_i, A^e) on the dual terms:
//   a|f|b -> eps_i ( sum_al a|lam_al^T f|(al.b)
//                    + (-1)^i sum_be (a.be)|rho_be^T f|b ).
template <class K>
SpMat<K> assemble_dual_diff(const GradedAlgebra<K>& A,
                            const DualBimod<K>& src, const DualBimod<K>& dst,
                            const std::vector<Mat<K>>& lam,
                            const std::vector<Mat<K>>& rho, const K& eps,
                            int sign, int n) {
  SpMat<K> m(dst.dim(n), src.dim(n));
  K sgn = scalar_of_long<K>(sign, A.fs);
  K one = scalar_of_long<K>(1, A.fs);
  for (int col = 0; col < src.dim(n); ++col) {
    auto [r, a, g, b] = src.bas[n - src.lo][col];
    int s = n + src.j - r;
    SpVec<K> out;
    for (int al = 0; al < A.Q.n_arrows(); ++al)
      for (int gp = 0; gp < dst.n_gens; ++gp) {
        // lam^T: coefficient lam[al].at(g, gp)
        K cl = lam[al].at(g, gp);
        if (!is_zero(cl)) {
          for (const auto& [b2, cb] : A.lmul[al][s][b]) {
            int id = dst.index(n, r, a, gp, b2);
            if (id < 0) throw std::logic_error("dual diff: missing triple");
            spvec_add(out, SpVec<K>{{id, one}}, eps * cl * cb);
          }
        }
        K cr = rho[al].at(g, gp);
        if (!is_zero(cr)) {
          for (const auto& [a2, ca] : A.rmul[al][r][a]) {
            int id = dst.index(n, r + 1, a2, gp, b);
            if (id < 0) throw std::logic_error("dual diff: missing triple");
            spvec_add(out, SpVec<K>{{id, one}}, eps * sgn * cr * ca);
          }
        }
      }
    m.set_col(col, std::move(out));
  }
  return m;
}

// The twisted self-duality data: pairing isomorphisms (W_j)^* -> W_{d-j} and
// the identification matrices T_j of A|(W_j)*|A with A|W_{d-j}|A_phi<-d>.
template <class K>
struct SelfDualityCert {
  bool perfect_pairing = true;
  bool differentials_match = true;
  bool sign_symmetry = true;
  int shift_tensor = 0;  // -d
  int shift_v = 0;       // -1 when a cut is fixed
  std::string note;
};

template <class K>
SelfDualityCert<K> check_selfduality(const BimodComplex<K>& C,
                                     const Potential<K>& pot) {
  const GradedAlgebra<K>& A = *C.A;
  const Quiver& q = A.Q;
  const FieldSpec& fs = A.fs;
  PathTable tab(q);
  int d = C.d;
  SelfDualityCert<K> cert;
  cert.shift_tensor = -d;
  cert.shift_v = q.has_vdeg ? -1 : 0;

  // pairing matrices P_j[p][r] = coeff_{r tensor p}(omega), p of length
  // d-j, r of length j; perfectness: rank = dim W_j = dim W_{d-j}
  std::vector<Mat<K>> pairing(d + 1);
  for (int jj = 0; jj <= d; ++jj) {
    const auto& rows = tab.paths(d - jj);
    const auto& cols = tab.paths(jj);
    Mat<K> P(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t ri = 0; ri < rows.size(); ++ri)
      for (size_t ci = 0; ci < cols.size(); ++ci) {
        Path joined;
        if (!path_concat(q, cols[ci], rows[ri], &joined)) continue;
        auto it = pot.omega.terms.find(joined);
        if (it != pot.omega.terms.end())
          P.at(static_cast<int>(ri), static_cast<int>(ci)) = it->second;
      }
    if (rank(P) != C.gen[jj].dim() ||
        C.gen[jj].dim() != C.gen[d - jj].dim()) {
      cert.perfect_pairing = false;
      cert.note = "pairing degenerate at W_" + std::to_string(jj);
      return cert;
    }
    pairing[jj] = std::move(P);
  }

  // sign symmetry [f,g] = (-1)^{|f||g|} [g, phi*(f)] on dual path pairs
  {
    int i = std::min(1, d);
    const auto& fpaths = tab.paths(d - i);
    const auto& gpaths = tab.paths(i);
    long sgn = ((static_cast<long>(d - i) * i) % 2 == 0) ? 1 : -1;
    for (size_t fi = 0; fi < fpaths.size() && cert.sign_symmetry; ++fi)
      for (size_t gi = 0; gi < gpaths.size(); ++gi) {
        // lhs = coeff_{g tensor f}(omega)
        Path gf;
        K lhs{};
        if (path_concat(q, gpaths[gi], fpaths[fi], &gf)) {
          auto it = pot.omega.terms.find(gf);
          if (it != pot.omega.terms.end()) lhs = it->second;
        }
        // rhs = sgn * sum_r coeff_f(phi(r)) coeff_{r tensor g}(omega)
        K rhs{};
        for (const Path& r : tab.paths(d - i)) {
          Tensor<K> img = pot.twist.apply(
              q, monomial(r, scalar_of_long<K>(1, fs)));
          auto cf = img.terms.find(fpaths[fi]);
          if (cf == img.terms.end()) continue;
          Path rg;
          if (!path_concat(q, r, gpaths[gi], &rg)) continue;
          auto cw = pot.omega.terms.find(rg);
          if (cw != pot.omega.terms.end())
            rhs += cf->second * cw->second;
        }
        rhs = scalar_of_long<K>(sgn, fs) * rhs;
        if (!(lhs == rhs)) {
          cert.sign_symmetry = false;
          cert.note = "pairing symmetry fails";
          break;
        }
      }
  }

  // Phi_j : (W_j)^* -> W_{d-j}: lift the dual basis and contract with omega
  std::vector<Mat<K>> Phi(d + 1);  // dim W_{d-j} x dim W_j
  for (int jj = 0; jj <= d; ++jj) {
    const auto& jpaths = tab.paths(jj);
    int np = static_cast<int>(jpaths.size());
    // evaluation matrix C[p][k] = coeff_p(w_k)
    Mat<K> ev(np, C.gen[jj].dim());
    for (int k = 0; k < C.gen[jj].dim(); ++k) {
      auto coords = C.gen[jj].vec[k].coords(tab);
      for (int p = 0; p < np; ++p) ev.at(p, k) = coords[p];
    }
    Mat<K> evT = ev.transpose();
    // target basis matrix for W_{d-j}
    const auto& tpaths = tab.paths(d - jj);
    Mat<K> tgt(static_cast<int>(tpaths.size()), C.gen[d - jj].dim());
    for (int k = 0; k < C.gen[d - jj].dim(); ++k) {
      auto coords = C.gen[d - jj].vec[k].coords(tab);
      for (size_t p = 0; p < tpaths.size(); ++p)
        tgt.at(static_cast<int>(p), k) = coords[p];
    }
    Phi[jj] = Mat<K>(C.gen[d - jj].dim(), C.gen[jj].dim());
    for (int k = 0; k < C.gen[jj].dim(); ++k) {
      std::vector<K> unit(C.gen[jj].dim());
      unit[k] = scalar_of_long<K>(1, fs);
      auto lift = solve(evT, unit);
      if (!lift) {
        cert.perfect_pairing = false;
        cert.note = "dual basis lift failed at W_" + std::to_string(jj);
        return cert;
      }
      // [lift omega] in path coordinates of degree d-j
      Tensor<K> img(d - jj);
      for (int p = 0; p < np; ++p) {
        if (is_zero((*lift)[p])) continue;
        Tensor<K> br = bracket_left(
            q, monomial(jpaths[p], scalar_of_long<K>(1, fs)), pot.omega);
        img += (*lift)[p] * br;
      }
      auto sol = solve(tgt, img.coords(tab));
      if (!sol) {
        cert.perfect_pairing = false;
        cert.note = "contraction left W_" + std::to_string(d - jj);
        return cert;
      }
      for (int i2 = 0; i2 < C.gen[d - jj].dim(); ++i2)
        Phi[jj].at(i2, k) = (*sol)[i2];
    }
  }

  // b-slot relabeling through the inverse twist
  auto phimats = automorphism_matrices(A, pot.twist.inverse(q, fs));

  // dual terms and dual differentials
  std::vector<DualBimod<K>> dual;
  for (int i = 0; i <= d; ++i) dual.push_back(make_dual_bimod(A, C.gen[i]));

  // T_j: A|(W_j)*|A -> A|W_{d-j}|A, (a,f_g,b) -> a|Phi g|phi^{-1}(b),
  // entrywise comparison T_i D_i^dual = D_{d+1-i} T_{i-1} per degree
  auto T_apply = [&](int jj, int n, const DualBimod<K>& D,
                     const SpVec<K>& x) {
    // image lives in term_{d-jj} at degree n + d
    SpVec<K> out;
    for (const auto& [col, c] : x) {
      auto [r, a, g, b] = D.bas[n - D.lo][col];
      int s = n + D.j - r;
      for (int gp = 0; gp < C.gen[d - jj].dim(); ++gp) {
        K cg = Phi[jj].at(gp, g);
        if (is_zero(cg)) continue;
        for (int b2 = 0; b2 < A.dim(s); ++b2) {
          K cb = phimats[s].at(b2, b);
          if (is_zero(cb)) continue;
          int id = C.term[d - jj].index(n + d, r, a, gp, b2);
          if (id < 0) continue;
          spvec_add(out, SpVec<K>{{id, scalar_of_long<K>(1, fs)}},
                    c * cg * cb);
        }
      }
    }
    return out;
  };

  for (int i = 1; i <= d && cert.differentials_match; ++i) {
    for (int n = dual[i - 1].lo; n + d <= C.cap; ++n) {
      SpMat<K> ddual =
          assemble_dual_diff(A, dual[i - 1], dual[i], C.lam[i], C.rho[i],
                             C.eps[i], (i % 2 == 0) ? 1 : -1, n);
      for (int col = 0; col < dual[i - 1].dim(n); ++col) {
        SpVec<K> unit = {{col, scalar_of_long<K>(1, fs)}};
        SpVec<K> lhs = T_apply(i, n, dual[i], ddual.col[col]);
        SpVec<K> rhs =
            C.diff[d + 1 - i][n + d].apply(T_apply(i - 1, n, dual[i - 1], unit));
        if (lhs != rhs) {
          cert.differentials_match = false;
          cert.note = "dualized differential mismatch at position " +
                      std::to_string(i) + ", degree " + std::to_string(n);
          break;
        }
      }
      if (!cert.differentials_match) break;
    }
  }
  return cert;
}

// Graded dimensions of Hom_{A^e}(A, A^e) = ker of the first dual
// differential; for a Frobenius algebra these must match A shifted by p.
template <class K>
std::vector<int> hom_regular_dual_dims(const BimodComplex<K>& C, int lo,
                                       int hi) {
  const GradedAlgebra<K>& A = *C.A;
  std::vector<DualBimod<K>> dual;
  dual.push_back(make_dual_bimod(A, C.gen[0]));
  dual.push_back(make_dual_bimod(A, C.gen[1]));
  std::vector<int> dims;
  for (int n = lo; n <= hi; ++n) {
    SpMat<K> dd = assemble_dual_diff(A, dual[0], dual[1], C.lam[1], C.rho[1],
                                     C.eps[1], -1, n);
    dims.push_back(dual[0].dim(n) - sp_rank(dd));
  }
  return dims;
}

}  // namespace dqa
