#pragma once

#include <climits>
#include <map>
#include <tuple>
#include <vector>

#include "dqa/algebra.hpp"

namespace dqa {

// Finite dimensional graded left module, given by per-arrow action matrices
// on a homogeneous basis. `window` marks the largest degree that is
// represented faithfully; modules over infinite dimensional algebras are
// truncations and carry a finite window.
template <class K>
struct Module {
  const GradedAlgebra<K>* A = nullptr;
  std::vector<int> vx;   // vertex of each basis vector
  std::vector<int> deg;  // degree of each basis vector
  std::vector<Mat<K>> act;
  int window = INT_MAX;

  int dim() const { return static_cast<int>(vx.size()); }

  std::vector<int> dim_vector() const {
    std::vector<int> d(A->Q.n_vertices(), 0);
    for (int v : vx) ++d[v];
    return d;
  }

  std::map<std::pair<int, int>, int> graded_dims() const {
    std::map<std::pair<int, int>, int> out;  // (vertex, degree) -> dim
    for (int i = 0; i < dim(); ++i) ++out[{vx[i], deg[i]}];
    return out;
  }

  bool is_zero_module() const { return dim() == 0; }

  // simple = one-dimensional at a single vertex with all arrows acting by 0
  bool is_simple_at(int* vertex_out = nullptr) const {
    if (dim() != 1) return false;
    if (vertex_out) *vertex_out = vx[0];
    return true;
  }

  std::vector<K> act_arrow(int a, const std::vector<K>& x) const {
    std::vector<K> y(dim());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (!is_zero(act[a].at(i, j))) y[i] += act[a].at(i, j) * x[j];
    return y;
  }

  std::vector<K> act_path(const Path& p, std::vector<K> x) const {
    for (int t = p.length() - 1; t >= 0; --t) x = act_arrow(p.arrows[t], x);
    return x;
  }
};

template <class K>
Module<K> simple_module(const GradedAlgebra<K>& A, int v, int degree = 0) {
  Module<K> m;
  m.A = &A;
  m.vx = {v};
  m.deg = {degree};
  m.act.assign(A.Q.n_arrows(), Mat<K>(1, 1));
  return m;
}

template <class K>
Module<K> zero_module(const GradedAlgebra<K>& A) {
  Module<K> m;
  m.A = &A;
  m.act.assign(A.Q.n_arrows(), Mat<K>(0, 0));
  return m;
}

// P(v) shifted so its generator sits in `shift`. Over an infinite
// dimensional algebra every module is chopped at the uniform degree window
// A.cap, which keeps kernels and radicals degreewise faithful through the
// window.
template <class K>
Module<K> projective_module(const GradedAlgebra<K>& A, int v, int shift = 0,
                            std::vector<Path>* basis_paths = nullptr) {
  Module<K> m;
  m.A = &A;
  bool finite = finite_dim_certificate(A).finite;
  m.window = finite ? INT_MAX : A.cap;
  std::vector<std::vector<int>> loc;  // algebra (n, j) -> basis id
  for (int n = 0; n <= A.cap && n + shift <= m.window; ++n) {
    loc.emplace_back(A.dim(n), -1);
    for (int j = 0; j < A.dim(n); ++j)
      if (path_source(A.Q, A.bas[n][j]) == v) {
        loc[n][j] = m.dim();
        m.vx.push_back(path_target(A.Q, A.bas[n][j]));
        m.deg.push_back(n + shift);
        if (basis_paths) basis_paths->push_back(A.bas[n][j]);
      }
  }
  m.act.assign(A.Q.n_arrows(), Mat<K>(m.dim(), m.dim()));
  for (int a = 0; a < A.Q.n_arrows(); ++a)
    for (int n = 0; n + 1 < static_cast<int>(loc.size()); ++n)
      for (int j = 0; j < A.dim(n); ++j) {
        if (loc[n][j] < 0) continue;
        for (const auto& [j2, c] : A.lmul[a][n][j])
          m.act[a].at(loc[n + 1][j2], loc[n][j]) = c;
      }
  return m;
}

template <class K>
Module<K> direct_sum(const GradedAlgebra<K>& A,
                     const std::vector<Module<K>>& parts) {
  Module<K> m;
  m.A = &A;
  for (const auto& p : parts) {
    m.window = std::min(m.window, p.window);
    for (int i = 0; i < p.dim(); ++i) {
      m.vx.push_back(p.vx[i]);
      m.deg.push_back(p.deg[i]);
    }
  }
  m.act.assign(A.Q.n_arrows(), Mat<K>(m.dim(), m.dim()));
  int off = 0;
  for (const auto& p : parts) {
    for (int a = 0; a < A.Q.n_arrows(); ++a)
      for (int i = 0; i < p.dim(); ++i)
        for (int j = 0; j < p.dim(); ++j)
          m.act[a].at(off + i, off + j) = p.act[a].at(i, j);
    off += p.dim();
  }
  return m;
}

// The regular module as a left module.
template <class K>
Module<K> regular_module(const GradedAlgebra<K>& A) {
  std::vector<Module<K>> parts;
  for (int v = 0; v < A.Q.n_vertices(); ++v)
    parts.push_back(projective_module(A, v, 0));
  return direct_sum(A, parts);
}

// k-dual as a left module over the opposite algebra; degrees negate.
// Only complete (untruncated) modules dualize faithfully.
template <class K>
Module<K> dual_module(const GradedAlgebra<K>& Aop, const Module<K>& M) {
  if (M.window != INT_MAX)
    throw std::invalid_argument("dual_module: truncated input");
  Module<K> m;
  m.A = &Aop;
  m.vx = M.vx;
  m.deg.reserve(M.dim());
  for (int d : M.deg) m.deg.push_back(-d);
  for (const auto& a : M.act) m.act.push_back(a.transpose());
  return m;
}

// opposite algebra: reversed arrows, reversed relation words
template <class K>
GradedAlgebra<K> opposite_algebra(const GradedAlgebra<K>& A) {
  Quiver qop = A.Q;
  for (auto& a : qop.arrows) std::swap(a.src, a.tgt);
  std::vector<Tensor<K>> rels;
  for (const auto& rel : A.relations) {
    Tensor<K> r(rel.degree);
    for (const auto& [p, c] : rel.terms) {
      Path rp = p;
      std::reverse(rp.arrows.begin(), rp.arrows.end());
      r.add(rp, c);
    }
    rels.push_back(r);
  }
  return build_algebra(qop, rels, A.cap);
}

// E(v) = dual of the right projective at v, generator (socle) in `shift`.
template <class K>
Module<K> injective_module(const GradedAlgebra<K>& A,
                           const GradedAlgebra<K>& Aop, int v,
                           int shift = 0) {
  Module<K> pop = projective_module(Aop, v, -shift);
  Module<K> m = dual_module(A, pop);
  m.window = INT_MAX;
  if (pop.window != INT_MAX)
    throw std::invalid_argument("injective envelope needs finite dimension");
  return m;
}

// Echelonized row basis of the radical (sum of all arrow images).
template <class K>
std::vector<std::vector<K>> radical_rows(const Module<K>& M) {
  std::vector<std::vector<K>> rows;
  for (const auto& a : M.act)
    for (int j = 0; j < M.dim(); ++j) {
      std::vector<K> col(M.dim());
      bool nz = false;
      for (int i = 0; i < M.dim(); ++i) {
        col[i] = a.at(i, j);
        if (!is_zero(col[i])) nz = true;
      }
      if (nz) rows.push_back(std::move(col));
    }
  return echelon_rows(std::move(rows));
}

// soc M = joint kernel of all arrows; returns homogeneous spanning vectors.
template <class K>
std::vector<std::vector<K>> socle_vectors(const Module<K>& M) {
  int n = M.dim();
  if (n == 0) return {};
  int na = static_cast<int>(M.act.size());
  Mat<K> stk(n * na, n);
  for (int a = 0; a < na; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) stk.at(a * n + i, j) = M.act[a].at(i, j);
  return kernel_basis(stk, M.A->fs);
}

// (vertex, degree) multiplicities of the socle; socle vectors are
// re-echelonized blockwise so each basis vector is homogeneous.
template <class K>
std::map<std::pair<int, int>, int> socle_dims(const Module<K>& M) {
  std::map<std::pair<int, int>, int> out;
  auto vecs = socle_vectors(M);
  // split by (vertex, degree) blocks; kernel vectors of a graded module
  // need not be homogeneous a priori, so project and re-echelonize
  std::map<std::pair<int, int>, std::vector<std::vector<K>>> blocks;
  for (const auto& v : vecs) {
    std::map<std::pair<int, int>, std::vector<K>> comp;
    for (int i = 0; i < M.dim(); ++i) {
      if (is_zero(v[i])) continue;
      auto key = std::make_pair(M.vx[i], M.deg[i]);
      auto [it, fresh] = comp.try_emplace(key, std::vector<K>(M.dim()));
      it->second[i] = v[i];
    }
    for (auto& [key, vec] : comp) blocks[key].push_back(vec);
  }
  for (auto& [key, rows] : blocks) {
    int r = static_cast<int>(echelon_rows(std::move(rows)).size());
    if (r > 0) out[key] = r;
  }
  return out;
}

template <class K>
struct Cover {
  Module<K> P;
  Mat<K> phi;  // dim M x dim P
  std::vector<std::pair<int, int>> gens;  // (vertex, degree) per generator
};

// Generators of the top, with homogeneous representatives chosen as the
// non-pivot coordinates of the radical.
template <class K>
std::vector<std::tuple<int, int, std::vector<K>>> top_generators(
    const Module<K>& M) {
  auto rad = radical_rows(M);
  Mat<K> r(static_cast<int>(rad.size()), M.dim());
  for (size_t i = 0; i < rad.size(); ++i)
    for (int j = 0; j < M.dim(); ++j) r.at(static_cast<int>(i), j) = rad[i][j];
  std::vector<int> piv = rref(r);
  std::vector<bool> is_piv(M.dim(), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::tuple<int, int, std::vector<K>>> gens;
  for (int j = 0; j < M.dim(); ++j) {
    if (is_piv[j]) continue;
    std::vector<K> rep(M.dim());
    rep[j] = scalar_of_long<K>(1, M.A->fs);
    gens.emplace_back(M.vx[j], M.deg[j], std::move(rep));
  }
  return gens;
}

template <class K>
Cover<K> projective_cover(const GradedAlgebra<K>& A, const Module<K>& M) {
  auto gens = top_generators(M);
  Cover<K> c;
  std::vector<Module<K>> parts;
  std::vector<std::vector<Path>> part_paths;
  for (const auto& [v, d, rep] : gens) {
    part_paths.emplace_back();
    parts.push_back(projective_module(A, v, d, &part_paths.back()));
    c.gens.emplace_back(v, d);
  }
  c.P = direct_sum(A, parts);
  c.phi = Mat<K>(M.dim(), c.P.dim());
  int off = 0;
  for (size_t g = 0; g < gens.size(); ++g) {
    const auto& [v, d, rep] = gens[g];
    for (size_t local = 0; local < part_paths[g].size(); ++local) {
      std::vector<K> img = M.act_path(part_paths[g][local], rep);
      for (int i = 0; i < M.dim(); ++i)
        c.phi.at(i, off + static_cast<int>(local)) = img[i];
    }
    off += parts[g].dim();
  }
  return c;
}

// Kernel of a degree-0 morphism as a submodule with homogeneous basis.
template <class K>
Module<K> kernel_module(const Module<K>& P, const Mat<K>& phi,
                        const Module<K>& M, Mat<K>* incl_out = nullptr) {
  // block by (vertex, degree)
  std::map<std::pair<int, int>, std::vector<int>> pb, mb;
  for (int j = 0; j < P.dim(); ++j) pb[{P.vx[j], P.deg[j]}].push_back(j);
  for (int i = 0; i < M.dim(); ++i) mb[{M.vx[i], M.deg[i]}].push_back(i);
  std::vector<std::vector<K>> kvecs;
  std::vector<std::pair<int, int>> klab;
  for (const auto& [key, cols] : pb) {
    auto it = mb.find(key);
    std::vector<int> rows = (it == mb.end()) ? std::vector<int>{} : it->second;
    Mat<K> block(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        block.at(static_cast<int>(i), static_cast<int>(j)) =
            phi.at(rows[i], cols[j]);
    for (const auto& kv : kernel_basis(block, P.A->fs)) {
      std::vector<K> full(P.dim());
      for (size_t j = 0; j < cols.size(); ++j) full[cols[j]] = kv[j];
      kvecs.push_back(std::move(full));
      klab.push_back(key);
    }
  }
  Module<K> N;
  N.A = P.A;
  N.window = std::min(P.window, M.window);
  int k = static_cast<int>(kvecs.size());
  for (int i = 0; i < k; ++i) {
    N.vx.push_back(klab[i].first);
    N.deg.push_back(klab[i].second);
  }
  Mat<K> incl(P.dim(), k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < P.dim(); ++i) incl.at(i, j) = kvecs[j][i];
  N.act.assign(P.act.size(), Mat<K>(k, k));
  // action: apply P's action to each kernel vector, solve back
  for (size_t a = 0; a < P.act.size(); ++a) {
    for (int j = 0; j < k; ++j) {
      std::vector<K> img(P.dim());
      for (int i = 0; i < P.dim(); ++i) {
        if (is_zero(kvecs[j][i])) continue;
        for (int r = 0; r < P.dim(); ++r)
          img[r] += P.act[a].at(r, i) * kvecs[j][i];
      }
      auto sol = solve(incl, img);
      if (!sol)
        throw std::logic_error("kernel_module: image left the submodule");
      for (int i = 0; i < k; ++i) N.act[a].at(i, j) = (*sol)[i];
    }
  }
  if (incl_out) *incl_out = incl;
  return N;
}

template <class K>
struct SyzygyStep {
  Cover<K> cover;
  Module<K> omega;
};

template <class K>
SyzygyStep<K> syzygy_step(const GradedAlgebra<K>& A, const Module<K>& M) {
  SyzygyStep<K> s;
  s.cover = projective_cover(A, M);
  s.omega = kernel_module(s.cover.P, s.cover.phi, M);
  return s;
}

// Space of module homomorphisms M -> N as matrices.
template <class K>
std::vector<Mat<K>> hom_space(const Module<K>& M, const Module<K>& N) {
  int dm = M.dim(), dn = N.dim();
  // unknowns T[i][j], i in N, j in M, nonzero only when vertices match
  std::vector<std::pair<int, int>> unk;
  std::map<std::pair<int, int>, int> uidx;
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < dm; ++j)
      if (N.vx[i] == M.vx[j]) {
        uidx[{i, j}] = static_cast<int>(unk.size());
        unk.emplace_back(i, j);
      }
  int nu = static_cast<int>(unk.size());
  std::vector<std::vector<K>> rows;
  int na = static_cast<int>(M.act.size());
  for (int a = 0; a < na; ++a)
    for (int i = 0; i < dn; ++i)
      for (int j = 0; j < dm; ++j) {
        // (T X^M_a - X^N_a T)[i][j] = 0
        std::vector<K> row(nu);
        bool nz = false;
        for (int t = 0; t < dm; ++t) {
          auto it = uidx.find({i, t});
          if (it != uidx.end() && !is_zero(M.act[a].at(t, j))) {
            row[it->second] += M.act[a].at(t, j);
            nz = true;
          }
        }
        for (int t = 0; t < dn; ++t) {
          auto it = uidx.find({t, j});
          if (it != uidx.end() && !is_zero(N.act[a].at(i, t))) {
            row[it->second] -= N.act[a].at(i, t);
            nz = true;
          }
        }
        if (nz) rows.push_back(std::move(row));
      }
  Mat<K> sys(static_cast<int>(rows.size()), nu);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < nu; ++j) sys.at(static_cast<int>(i), j) = rows[i][j];
  std::vector<Mat<K>> out;
  for (const auto& kv : kernel_basis(sys, M.A->fs)) {
    Mat<K> T(dn, dm);
    for (int u = 0; u < nu; ++u) T.at(unk[u].first, unk[u].second) = kv[u];
    out.push_back(std::move(T));
  }
  return out;
}

// Decides M iso N by solving the intertwiner system and searching the
// solution space for an invertible element along a deterministic curve.
template <class K>
bool modules_isomorphic(const Module<K>& M, const Module<K>& N) {
  if (M.dim() != N.dim()) return false;
  if (M.dim() == 0) return true;
  if (M.dim_vector() != N.dim_vector()) return false;
  auto homs = hom_space(M, N);
  if (homs.empty()) return false;
  const FieldSpec& fs = M.A->fs;
  auto invertible = [&](const Mat<K>& T) {
    return rank(T) == T.rows;
  };
  for (const auto& T : homs)
    if (invertible(T)) return true;
  // powers curve: sum t^i T_i for small t
  int n = M.dim();
  int tries = static_cast<int>(homs.size()) * n + 2;
  for (int t = 2; t < 2 + tries; ++t) {
    Mat<K> T(n, n);
    K w = scalar_of_long<K>(1, fs);
    K tval = scalar_of_long<K>(t, fs);
    for (const auto& H : homs) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T.at(i, j) += w * H.at(i, j);
      w = w * tval;
    }
    if (invertible(T)) return true;
  }
  return false;
}

template <class K>
int end_dim(const Module<K>& M) {
  return static_cast<int>(hom_space(M, M).size());
}

}  // namespace dqa
