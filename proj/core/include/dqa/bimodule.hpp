#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqa/duality.hpp"

namespace dqa {

// Finite graded A-A-bimodule given by per-degree bases with outer vertex
// labels and arrow actions on both sides.
template <class K>
struct GradedBimod {
  const GradedAlgebra<K>* A = nullptr;
  int lo = 0;
  std::vector<int> dims;
  std::vector<std::vector<int>> tv, sv, vd;      // labels per degree
  std::vector<std::vector<Mat<K>>> lact, ract;   // [arrow][k] : k -> k+1

  int levels() const { return static_cast<int>(dims.size()); }
  int dim_at(int n) const {
    int k = n - lo;
    return (k < 0 || k >= levels()) ? 0 : dims[k];
  }
  int total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
  }
  void shift(int s) { lo += s; }

  // drop empty layers at both ends
  void trim() {
    while (!dims.empty() && dims.front() == 0) {
      dims.erase(dims.begin());
      tv.erase(tv.begin());
      sv.erase(sv.begin());
      vd.erase(vd.begin());
      for (auto& la : lact) la.erase(la.begin());
      for (auto& ra : ract) ra.erase(ra.begin());
      ++lo;
    }
    while (!dims.empty() && dims.back() == 0) {
      dims.pop_back();
      tv.pop_back();
      sv.pop_back();
      vd.pop_back();
      for (auto& la : lact) {
        if (static_cast<int>(la.size()) >= levels() + 1) la.pop_back();
      }
      for (auto& ra : ract) {
        if (static_cast<int>(ra.size()) >= levels() + 1) ra.pop_back();
      }
    }
  }
};

namespace detail {

// Term-level arrow actions on a free bimodule A|U|A at one degree.
template <class K>
std::vector<K> term_lact(const GradedAlgebra<K>& A, const FreeBimod<K>& T,
                         int arrow, int n, const std::vector<K>& x) {
  std::vector<K> y(T.dim(n + 1));
  for (int col = 0; col < T.dim(n); ++col) {
    if (is_zero(x[col])) continue;
    auto [r, a, g, b] = T.bas[n][col];
    for (const auto& [a2, c] : A.lmul[arrow][r][a]) {
      int id = T.index(n + 1, r + 1, a2, g, b);
      if (id < 0) throw std::logic_error("term_lact: missing triple");
      y[id] += c * x[col];
    }
  }
  return y;
}

template <class K>
std::vector<K> term_ract(const GradedAlgebra<K>& A, const FreeBimod<K>& T,
                         int arrow, int n, const std::vector<K>& x) {
  std::vector<K> y(T.dim(n + 1));
  for (int col = 0; col < T.dim(n); ++col) {
    if (is_zero(x[col])) continue;
    auto [r, a, g, b] = T.bas[n][col];
    int s = n - T.gen_deg - r;
    for (const auto& [b2, c] : A.rmul[arrow][s][b]) {
      int id = T.index(n + 1, r, a, g, b2);
      if (id < 0) throw std::logic_error("term_ract: missing triple");
      y[id] += c * x[col];
    }
  }
  return y;
}

// Builds a GradedBimod from per-degree spanning vectors inside a free term,
// echelonized per outer-label block; actions by acting in the term and
// solving back.
template <class K>
GradedBimod<K> subbimod_from_vectors(
    const BimodComplex<K>& C, int term_idx,
    const std::vector<std::vector<std::vector<K>>>& vecs_per_degree) {
  const GradedAlgebra<K>& A = *C.A;
  const FreeBimod<K>& T = C.term[term_idx];
  GradedBimod<K> M;
  M.A = &A;
  M.lo = 0;
  int levels = static_cast<int>(vecs_per_degree.size());
  M.dims.assign(levels, 0);
  M.tv.resize(levels);
  M.sv.resize(levels);
  M.vd.resize(levels);
  std::vector<std::vector<std::vector<K>>> basis(levels);

  bool use_vdeg = A.Q.has_vdeg;
  auto label_of = [&](int n, int col) {
    auto [r, a, g, b] = T.bas[n][col];
    int tvv = path_target(A.Q, A.bas[r][a]);
    int s = n - T.gen_deg - r;
    int svv = path_source(A.Q, A.bas[s][b]);
    int vdd = -1;
    if (use_vdeg)
      vdd = path_vdeg(A.Q, A.bas[r][a]) + C.gen[term_idx].vdeg[g] +
            path_vdeg(A.Q, A.bas[s][b]);
    return std::tuple{tvv, svv, vdd};
  };

  for (int n = 0; n < levels; ++n) {
    // split spanning vectors into label-homogeneous components
    std::map<std::tuple<int, int, int>, std::vector<std::vector<K>>> blocks;
    for (const auto& v : vecs_per_degree[n]) {
      std::map<std::tuple<int, int, int>, std::vector<K>> comp;
      for (int i = 0; i < T.dim(n); ++i) {
        if (is_zero(v[i])) continue;
        auto key = label_of(n, i);
        auto [it, fresh] =
            comp.try_emplace(key, std::vector<K>(T.dim(n)));
        it->second[i] = v[i];
      }
      for (auto& [key, vec] : comp) blocks[key].push_back(std::move(vec));
    }
    for (auto& [key, rows] : blocks) {
      for (auto& row : echelon_rows(std::move(rows))) {
        basis[n].push_back(std::move(row));
        M.tv[n].push_back(std::get<0>(key));
        M.sv[n].push_back(std::get<1>(key));
        M.vd[n].push_back(std::get<2>(key));
        ++M.dims[n];
      }
    }
  }

  // inclusion matrices per degree for solving actions back
  std::vector<Mat<K>> incl(levels);
  for (int n = 0; n < levels; ++n) {
    incl[n] = Mat<K>(T.dim(n), M.dims[n]);
    for (int j = 0; j < M.dims[n]; ++j)
      for (int i = 0; i < T.dim(n); ++i) incl[n].at(i, j) = basis[n][j][i];
  }
  int na = A.Q.n_arrows();
  M.lact.assign(na, std::vector<Mat<K>>(levels));
  M.ract.assign(na, std::vector<Mat<K>>(levels));
  for (int ar = 0; ar < na; ++ar)
    for (int n = 0; n < levels; ++n) {
      int next = (n + 1 < levels) ? M.dims[n + 1] : 0;
      M.lact[ar][n] = Mat<K>(next, M.dims[n]);
      M.ract[ar][n] = Mat<K>(next, M.dims[n]);
      if (M.dims[n] == 0) continue;
      for (int j = 0; j < M.dims[n]; ++j) {
        auto li = term_lact(A, T, ar, n, basis[n][j]);
        auto ri = term_ract(A, T, ar, n, basis[n][j]);
        if (n + 1 >= levels) {
          for (const auto& e : li)
            if (!is_zero(e)) throw std::logic_error("action leaves window");
          for (const auto& e : ri)
            if (!is_zero(e)) throw std::logic_error("action leaves window");
          continue;
        }
        auto sl = solve(incl[n + 1], li);
        auto sr = solve(incl[n + 1], ri);
        if (!sl || !sr)
          throw std::logic_error("subbimod: action leaves the span");
        for (int i = 0; i < next; ++i) {
          M.lact[ar][n].at(i, j) = (*sl)[i];
          M.ract[ar][n].at(i, j) = (*sr)[i];
        }
      }
    }
  M.trim();
  return M;
}

}  // namespace detail

// Ker D_i as a graded sub-bimodule of A|W_i|A.
template <class K>
GradedBimod<K> kernel_bimodule(const BimodComplex<K>& C, int i) {
  const GradedAlgebra<K>& A = *C.A;
  std::vector<std::vector<std::vector<K>>> vecs(C.cap + 1);
  for (int n = 0; n <= C.cap; ++n) {
    // dense kernel of the sparse differential
    const SpMat<K>& D = C.diff[i][n];
    Mat<K> m(D.rows, D.cols);
    for (int j = 0; j < D.cols; ++j)
      for (const auto& [r, v] : D.col[j]) m.at(r, j) = v;
    for (auto& kv : kernel_basis(m, A.fs)) vecs[n].push_back(std::move(kv));
  }
  return detail::subbimod_from_vectors(C, i, vecs);
}

// Im D_j as a graded sub-bimodule of A|W_{j-1}|A.
template <class K>
GradedBimod<K> image_bimodule(const BimodComplex<K>& C, int j) {
  std::vector<std::vector<std::vector<K>>> vecs(C.cap + 1);
  for (int n = 0; n <= C.cap; ++n) {
    const SpMat<K>& D = C.diff[j][n];
    for (int col = 0; col < D.cols; ++col) {
      if (D.col[col].empty()) continue;
      std::vector<K> v(D.rows);
      for (const auto& [r, c] : D.col[col]) v[r] = c;
      vecs[n].push_back(std::move(v));
    }
  }
  return detail::subbimod_from_vectors(C, j - 1, vecs);
}

// Right-twist a bimodule: same space, right action through phi, source
// labels relabeled by the inverse vertex permutation.
template <class K>
GradedBimod<K> twist_right(const GradedBimod<K>& M,
                           const AutomorphismSpec<K>& phi) {
  const GradedAlgebra<K>& A = *M.A;
  GradedBimod<K> out = M;
  std::vector<int> pinv(phi.vperm.size());
  for (size_t v = 0; v < phi.vperm.size(); ++v) pinv[phi.vperm[v]] = static_cast<int>(v);
  for (int n = 0; n < M.levels(); ++n)
    for (int j = 0; j < M.dims[n]; ++j) {
      out.sv[n][j] = pinv[M.sv[n][j]];
      out.vd[n][j] = -1;
    }
  int na = A.Q.n_arrows();
  for (int ar = 0; ar < na; ++ar) {
    for (int n = 0; n < M.levels(); ++n) {
      int next = (n + 1 < M.levels()) ? M.dims[n + 1] : 0;
      Mat<K> acc(next, M.dims[n]);
      for (const auto& [p, c] : phi.arrow_image[ar].terms) {
        int b = p.arrows[0];
        for (int i = 0; i < next; ++i)
          for (int j = 0; j < M.dims[n]; ++j)
            acc.at(i, j) += c * M.ract[b][n].at(i, j);
      }
      out.ract[ar][n] = std::move(acc);
    }
  }
  return out;
}

// Hom_{A^e}(Im D_j, A^e) = homs on A|W_j|A vanishing on Ker D_j, as a graded
// bimodule; needs cap >= 2 * top degree so no evaluation product truncates.
template <class K>
GradedBimod<K> hom_of_image_bimodule(const BimodComplex<K>& C, int j) {
  const GradedAlgebra<K>& A = *C.A;
  auto fin = finite_dim_certificate(A);
  if (!fin.finite || A.cap < 2 * fin.top_degree)
    throw std::invalid_argument(
        "hom_of_image_bimodule: need a finite algebra with cap >= 2p");
  int top = fin.top_degree;
  const FreeBimod<K>& T = C.term[j];
  DualBimod<K> DT = make_dual_bimod(A, C.gen[j]);
  K one = scalar_of_long<K>(1, A.fs);

  // kernel vectors of D_j per degree
  std::vector<std::vector<std::vector<K>>> kers(C.cap + 1);
  for (int n = 0; n <= C.cap; ++n) {
    const SpMat<K>& D = C.diff[j][n];
    Mat<K> m(D.rows, D.cols);
    for (int col = 0; col < D.cols; ++col)
      for (const auto& [r, v] : D.col[col]) m.at(r, col) = v;
    for (auto& kv : kernel_basis(m, A.fs)) kers[n].push_back(std::move(kv));
  }

  GradedBimod<K> M;
  M.A = &A;
  M.lo = DT.lo;
  int levels = 2 * top - C.gen[j].deg - DT.lo + 1;
  M.dims.assign(levels, 0);
  M.tv.resize(levels);
  M.sv.resize(levels);
  M.vd.resize(levels);
  std::vector<std::vector<std::vector<K>>> basis(levels);

  bool use_vdeg = A.Q.has_vdeg;
  for (int k = 0; k < levels; ++k) {
    int m_deg = M.lo + k;
    int nd = DT.dim(m_deg);
    if (nd == 0) continue;
    // constraints: psi(kappa) = 0 in A tensor A
    std::vector<std::vector<K>> rows;
    for (int n = 0; n <= C.cap; ++n)
      for (const auto& kap : kers[n]) {
        // equation block indexed by pairs of algebra basis elements
        std::map<std::tuple<int, int, int, int>, std::vector<K>> eq;
        for (int col = 0; col < nd; ++col) {
          auto [r, a, g, b] = DT.bas[m_deg - DT.lo][col];
          int s = m_deg + DT.j - r;
          for (int tcol = 0; tcol < T.dim(n); ++tcol) {
            if (is_zero(kap[tcol])) continue;
            auto [r2, a2, g2, b2] = T.bas[n][tcol];
            if (g2 != g) continue;
            int s2 = n - T.gen_deg - r2;
            if (r2 + s > A.cap || r + s2 > A.cap) continue;
            // psi(a2|w|b2) = (a2 b) tensor (a b2)
            SpVec<K> left = A.multiply(r2, {{a2, one}}, s, {{b, one}});
            SpVec<K> right = A.multiply(r, {{a, one}}, s2, {{b2, one}});
            for (const auto& [li, lc] : left)
              for (const auto& [ri, rc] : right) {
                auto key = std::tuple{r2 + s, li, r + s2, ri};
                auto [it, fresh] =
                    eq.try_emplace(key, std::vector<K>(nd));
                it->second[col] += kap[tcol] * lc * rc;
              }
          }
        }
        for (auto& [key, row] : eq) {
          bool nz = false;
          for (const auto& e : row)
            if (!is_zero(e)) {
              nz = true;
              break;
            }
          if (nz) rows.push_back(std::move(row));
        }
      }
    Mat<K> sys(static_cast<int>(rows.size()), nd);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int c2 = 0; c2 < nd; ++c2)
        sys.at(static_cast<int>(i), c2) = rows[i][c2];
    // homogeneous splitting by outer labels of the dual triples
    auto label_of = [&](int col) {
      auto [r, a, g, b] = DT.bas[m_deg - DT.lo][col];
      int s = m_deg + DT.j - r;
      int tvv = path_target(A.Q, A.bas[r][a]);
      int svv = path_source(A.Q, A.bas[s][b]);
      int vdd = -1;
      if (use_vdeg)
        vdd = path_vdeg(A.Q, A.bas[r][a]) - C.gen[j].vdeg[g] +
              path_vdeg(A.Q, A.bas[s][b]);
      return std::tuple{tvv, svv, vdd};
    };
    std::map<std::tuple<int, int, int>, std::vector<std::vector<K>>> blocks;
    for (auto& kv : kernel_basis(sys, A.fs)) {
      std::map<std::tuple<int, int, int>, std::vector<K>> comp;
      for (int c2 = 0; c2 < nd; ++c2) {
        if (is_zero(kv[c2])) continue;
        auto key = label_of(c2);
        auto [it, fresh] = comp.try_emplace(key, std::vector<K>(nd));
        it->second[c2] = kv[c2];
      }
      for (auto& [key, vec] : comp) blocks[key].push_back(std::move(vec));
    }
    for (auto& [key, brows] : blocks)
      for (auto& row : echelon_rows(std::move(brows))) {
        basis[k].push_back(std::move(row));
        M.tv[k].push_back(std::get<0>(key));
        M.sv[k].push_back(std::get<1>(key));
        M.vd[k].push_back(std::get<2>(key));
        ++M.dims[k];
      }
  }

  // actions on the dual term: a|f|b -> (al a)|f|b and a|f|(b al)
  std::vector<Mat<K>> incl(levels);
  for (int k = 0; k < levels; ++k) {
    int m_deg = M.lo + k;
    incl[k] = Mat<K>(DT.dim(m_deg), M.dims[k]);
    for (int j2 = 0; j2 < M.dims[k]; ++j2)
      for (int i = 0; i < DT.dim(m_deg); ++i)
        incl[k].at(i, j2) = basis[k][j2][i];
  }
  int na = A.Q.n_arrows();
  auto dual_act = [&](int arrow, int m_deg, const std::vector<K>& x,
                      bool left_side) {
    std::vector<K> y(DT.dim(m_deg + 1));
    for (int col = 0; col < DT.dim(m_deg); ++col) {
      if (is_zero(x[col])) continue;
      auto [r, a, g, b] = DT.bas[m_deg - DT.lo][col];
      int s = m_deg + DT.j - r;
      if (left_side) {
        for (const auto& [a2, c] : A.lmul[arrow][r][a]) {
          int id = DT.index(m_deg + 1, r + 1, a2, g, b);
          if (id < 0) throw std::logic_error("dual term lact missing");
          y[id] += c * x[col];
        }
      } else {
        for (const auto& [b2, c] : A.rmul[arrow][s][b]) {
          int id = DT.index(m_deg + 1, r, a, g, b2);
          if (id < 0) throw std::logic_error("dual term ract missing");
          y[id] += c * x[col];
        }
      }
    }
    return y;
  };
  M.lact.assign(na, std::vector<Mat<K>>(levels));
  M.ract.assign(na, std::vector<Mat<K>>(levels));
  for (int ar = 0; ar < na; ++ar)
    for (int k = 0; k < levels; ++k) {
      int next = (k + 1 < levels) ? M.dims[k + 1] : 0;
      M.lact[ar][k] = Mat<K>(next, M.dims[k]);
      M.ract[ar][k] = Mat<K>(next, M.dims[k]);
      if (M.dims[k] == 0) continue;
      for (int j2 = 0; j2 < M.dims[k]; ++j2) {
        auto li = dual_act(ar, M.lo + k, basis[k][j2], true);
        auto ri = dual_act(ar, M.lo + k, basis[k][j2], false);
        if (k + 1 >= levels) {
          bool lz = true, rz = true;
          for (const auto& e : li) lz = lz && is_zero(e);
          for (const auto& e : ri) rz = rz && is_zero(e);
          if (!lz || !rz)
            throw std::logic_error("hom bimodule: action leaves window");
          continue;
        }
        auto sl = solve(incl[k + 1], li);
        auto sr = solve(incl[k + 1], ri);
        if (!sl || !sr)
          throw std::logic_error("hom bimodule: action leaves the span");
        for (int i = 0; i < next; ++i) {
          M.lact[ar][k].at(i, j2) = (*sl)[i];
          M.ract[ar][k].at(i, j2) = (*sr)[i];
        }
      }
    }
  M.trim();
  return M;
}

// Re-bases a bimodule onto the window [lo, lo+levels), padding with zero
// layers.
template <class K>
GradedBimod<K> pad_window(const GradedBimod<K>& M, int lo, int levels) {
  GradedBimod<K> out;
  out.A = M.A;
  out.lo = lo;
  out.dims.assign(levels, 0);
  out.tv.resize(levels);
  out.sv.resize(levels);
  out.vd.resize(levels);
  int na = static_cast<int>(M.lact.size());
  out.lact.assign(na, std::vector<Mat<K>>(levels));
  out.ract.assign(na, std::vector<Mat<K>>(levels));
  for (int k = 0; k < levels; ++k) {
    int src = lo + k - M.lo;
    if (src >= 0 && src < M.levels()) {
      out.dims[k] = M.dims[src];
      out.tv[k] = M.tv[src];
      out.sv[k] = M.sv[src];
      out.vd[k] = M.vd[src];
    }
  }
  for (int ar = 0; ar < na; ++ar)
    for (int k = 0; k < levels; ++k) {
      int next = (k + 1 < levels) ? out.dims[k + 1] : 0;
      int src = lo + k - M.lo;
      if (src >= 0 && src + 1 < M.levels() && out.dims[k] > 0) {
        out.lact[ar][k] = M.lact[ar][src];
        out.ract[ar][k] = M.ract[ar][src];
      } else {
        out.lact[ar][k] = Mat<K>(next, out.dims[k]);
        out.ract[ar][k] = Mat<K>(next, out.dims[k]);
      }
    }
  return out;
}

// Degree-0 bimodule isomorphism test: solve the intertwiner system over all
// degrees, then look for a point with every block invertible along a
// deterministic curve.
template <class K>
bool graded_bimods_isomorphic(const GradedBimod<K>& X0,
                              const GradedBimod<K>& Y0,
                              std::string* why = nullptr) {
  const GradedAlgebra<K>& A = *X0.A;
  int lo = std::min(X0.lo, Y0.lo);
  int hi = std::max(X0.lo + X0.levels(), Y0.lo + Y0.levels());
  int levels = std::max(hi - lo, 1);
  GradedBimod<K> X = pad_window(X0, lo, levels);
  GradedBimod<K> Y = pad_window(Y0, lo, levels);
  for (int k = 0; k < levels; ++k)
    if (X.dims[k] != Y.dims[k]) {
      if (why)
        *why = "graded dimension mismatch at degree " + std::to_string(lo + k);
      return false;
    }
  if (X.total_dim() == 0) return true;

  std::vector<std::map<std::pair<int, int>, int>> uidx(levels);
  int total = 0;
  for (int k = 0; k < levels; ++k)
    for (int i = 0; i < Y.dims[k]; ++i)
      for (int j = 0; j < X.dims[k]; ++j)
        if (Y.tv[k][i] == X.tv[k][j] && Y.sv[k][i] == X.sv[k][j])
          uidx[k][{i, j}] = total++;
  if (total == 0) {
    if (why) *why = "no label-compatible entries";
    return false;
  }
  std::vector<std::vector<K>> rows;
  int na = A.Q.n_arrows();
  for (int ar = 0; ar < na; ++ar)
    for (int k = 0; k + 1 < levels; ++k)
      for (int side = 0; side < 2; ++side) {
        const Mat<K>& XA = side == 0 ? X.lact[ar][k] : X.ract[ar][k];
        const Mat<K>& YA = side == 0 ? Y.lact[ar][k] : Y.ract[ar][k];
        // T_{k+1} XA - YA T_k = 0, entries (i in Y_{k+1}, j in X_k)
        for (int i = 0; i < Y.dims[k + 1]; ++i)
          for (int j = 0; j < X.dims[k]; ++j) {
            std::vector<K> row(total);
            bool nz = false;
            for (int t = 0; t < X.dims[k + 1]; ++t) {
              auto it = uidx[k + 1].find({i, t});
              if (it != uidx[k + 1].end() && !is_zero(XA.at(t, j))) {
                row[it->second] += XA.at(t, j);
                nz = true;
              }
            }
            for (int t = 0; t < Y.dims[k]; ++t) {
              auto it = uidx[k].find({t, j});
              if (it != uidx[k].end() && !is_zero(YA.at(i, t))) {
                row[it->second] -= YA.at(i, t);
                nz = true;
              }
            }
            if (nz) rows.push_back(std::move(row));
          }
      }
  Mat<K> sys(static_cast<int>(rows.size()), total);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < total; ++j) sys.at(static_cast<int>(i), j) = rows[i][j];
  auto sols = kernel_basis(sys, A.fs);
  if (sols.empty()) {
    if (why) *why = "no nonzero intertwiner";
    return false;
  }
  auto blocks_invertible = [&](const std::vector<K>& sol) {
    for (int k = 0; k < levels; ++k) {
      if (X.dims[k] == 0) continue;
      Mat<K> T(Y.dims[k], X.dims[k]);
      for (const auto& [pr, id] : uidx[k]) T.at(pr.first, pr.second) = sol[id];
      if (rank(T) != X.dims[k]) return false;
    }
    return true;
  };
  for (const auto& s : sols)
    if (blocks_invertible(s)) return true;
  int n_tries = total + 2;
  for (int t = 2; t < 2 + n_tries; ++t) {
    std::vector<K> acc(total);
    K w = scalar_of_long<K>(1, A.fs);
    K tv = scalar_of_long<K>(t, A.fs);
    for (const auto& s : sols) {
      for (int i = 0; i < total; ++i) acc[i] += w * s[i];
      w = w * tv;
    }
    if (blocks_invertible(acc)) return true;
  }
  if (why) *why = "no invertible intertwiner found on the search curve";
  return false;
}

}  // namespace dqa
