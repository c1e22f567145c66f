#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqa/potential.hpp"
#include "dqa/sparse.hpp"

namespace dqa {

// Graded quotient of the path algebra by homogeneous relations, built degree
// by degree: A_n = (V tensor A_{n-1}) / (relations placed at the left edge),
// with normal-form monomial bases ordered lexicographically. Left and right
// multiplication tables are stored per degree.
template <class K>
struct GradedAlgebra {
  Quiver Q;
  FieldSpec fs;
  int cap = 0;
  int rel_degree = 0;  // 0 when there are no relations
  std::vector<Tensor<K>> relations;

  std::vector<std::vector<Path>> bas;
  std::vector<std::map<Path, int>> idx;
  // lmul[a][n][j] = class of (arrow a) tensor bas[n][j] in A_{n+1}
  std::vector<std::vector<std::vector<SpVec<K>>>> lmul;
  // rmul[a][n][j] = class of bas[n][j] tensor (arrow a) in A_{n+1}
  std::vector<std::vector<std::vector<SpVec<K>>>> rmul;

  int dim(int n) const {
    if (n < 0 || n > cap) return 0;
    return static_cast<int>(bas[n].size());
  }

  int top_built() const { return cap; }

  int basis_index(int n, const Path& p) const {
    auto it = idx[n].find(p);
    return it == idx[n].end() ? -1 : it->second;
  }

  // class of arrow a times basis element (n, j)
  const SpVec<K>& left_mul(int a, int n, int j) const { return lmul[a][n][j]; }
  const SpVec<K>& right_mul(int a, int n, int j) const {
    return rmul[a][n][j];
  }

  // Full reduction of a composable path to its class.
  SpVec<K> reduce_path(const Path& p) const {
    int n = p.length();
    if (n > cap) throw std::invalid_argument("reduce_path: beyond cap");
    if (n == 0) {
      return {{basis_index(0, p), scalar_of_long<K>(1, fs)}};
    }
    SpVec<K> cls = {{basis_index(0, trivial_path(path_source(Q, p))),
                     scalar_of_long<K>(1, fs)}};
    int deg = 0;
    for (int t = n - 1; t >= 0; --t) {
      SpVec<K> next;
      for (const auto& [j, c] : cls) spvec_add(next, lmul[p.arrows[t]][deg][j], c);
      cls = std::move(next);
      ++deg;
    }
    return cls;
  }

  // x * y for coordinate vectors in degrees m and n.
  SpVec<K> multiply(int m, const SpVec<K>& x, int n,
                    const SpVec<K>& y) const {
    if (m + n > cap) throw std::invalid_argument("multiply: beyond cap");
    SpVec<K> out;
    for (const auto& [i, ci] : x) {
      const Path& p = bas[m][i];
      SpVec<K> cls;
      if (p.trivial()) {
        // idempotent: project onto matching targets
        for (const auto& [j, c] : y)
          if (path_target(Q, bas[n][j]) == p.vertex) cls.emplace_back(j, c);
      } else {
        // left-multiply y's class by the arrows of p, rightmost first
        cls = y;
        int deg = n;
        for (int t = m - 1; t >= 0; --t) {
          SpVec<K> next;
          for (const auto& [j, c] : cls)
            spvec_add(next, lmul[p.arrows[t]][deg][j], c);
          cls = std::move(next);
          ++deg;
        }
      }
      spvec_add(out, cls, ci);
    }
    return out;
  }

  Tensor<K> class_tensor(int n, const SpVec<K>& v) const {
    Tensor<K> t(n);
    for (const auto& [j, c] : v) t.add(bas[n][j], c);
    return t;
  }

  int vdeg_of(int n, int j) const { return path_vdeg(Q, bas[n][j]); }

  // dims split by V-degree, per tensor degree
  std::map<int, int> dims_by_vdeg(int n) const {
    std::map<int, int> out;
    for (int j = 0; j < dim(n); ++j) ++out[vdeg_of(n, j)];
    return out;
  }
};

template <class K>
GradedAlgebra<K> build_algebra(const Quiver& q,
                               const std::vector<Tensor<K>>& rels, int cap) {
  if (cap < 2) throw std::invalid_argument("build_algebra: cap must be >= 2");
  GradedAlgebra<K> A;
  A.Q = q;
  A.fs = q.field;
  A.cap = cap;
  PathTable tab(A.Q);

  int r = 0;
  for (const auto& rel : rels) {
    if (rel.zero()) continue;
    if (r == 0) r = rel.degree;
    if (rel.degree != r)
      throw std::invalid_argument("relations must share one tensor degree");
  }
  if (r == 1) throw std::invalid_argument("relations of degree one");
  A.rel_degree = r;
  if (r > 0) {
    // split into vertex-pair components (same two-sided ideal) so that
    // every stored relation is homogeneous for the S-bimodule structure
    std::vector<std::vector<K>> rows;
    for (const auto& rel : rels) {
      if (rel.zero()) continue;
      std::map<std::pair<int, int>, Tensor<K>> comp;
      for (const auto& [p, c] : rel.terms) {
        auto key = std::make_pair(path_target(q, p), path_source(q, p));
        auto [it, fresh] = comp.try_emplace(key, Tensor<K>(r));
        it->second.add(p, c);
      }
      for (auto& [key, t] : comp) rows.push_back(t.coords(tab));
    }
    for (auto& row : echelon_rows(std::move(rows)))
      A.relations.push_back(Tensor<K>::from_coords(tab, r, row));
  }

  int nv = q.n_vertices(), na = q.n_arrows();
  A.bas.assign(cap + 1, {});
  A.idx.assign(cap + 1, {});
  A.lmul.assign(na, std::vector<std::vector<SpVec<K>>>(cap));
  A.rmul.assign(na, std::vector<std::vector<SpVec<K>>>(cap));

  for (int v = 0; v < nv; ++v) {
    A.bas[0].push_back(trivial_path(v));
    A.idx[0][trivial_path(v)] = v;
  }
  for (int a = 0; a < na; ++a) {
    Path p;
    p.arrows = {a};
    A.idx[1][p] = static_cast<int>(A.bas[1].size());
    A.bas[1].push_back(p);
  }
  K one = scalar_of_long<K>(1, A.fs);
  for (int a = 0; a < na; ++a) {
    A.lmul[a][0].assign(nv, {});
    Path p;
    p.arrows = {a};
    A.lmul[a][0][q.arrows[a].src] = {{A.idx[1][p], one}};
  }

  for (int n = 2; n <= cap; ++n) {
    int prev = A.dim(n - 1);
    // candidate monomials a tensor b, lexicographic
    std::vector<std::pair<int, int>> cand;
    std::map<std::pair<int, int>, int> cand_idx;
    for (int a = 0; a < na; ++a)
      for (int j = 0; j < prev; ++j)
        if (q.arrows[a].src == path_target(q, A.bas[n - 1][j])) {
          cand_idx[{a, j}] = static_cast<int>(cand.size());
          cand.emplace_back(a, j);
        }
    int m = static_cast<int>(cand.size());

    std::vector<std::vector<K>> rows;
    if (r > 0 && n >= r) {
      for (const auto& rel : A.relations)
        for (int b = 0; b < A.dim(n - r); ++b) {
          std::vector<K> row(m);
          bool nonzero = false;
          for (const auto& [qp, c] : rel.terms) {
            // tail of the relation monomial applied to basis element b
            SpVec<K> cls = {{b, one}};
            int deg = n - r;
            for (int t = r - 1; t >= 1; --t) {
              SpVec<K> next;
              for (const auto& [j, cc] : cls)
                spvec_add(next, A.lmul[qp.arrows[t]][deg][j], cc);
              cls = std::move(next);
              ++deg;
            }
            for (const auto& [j, cc] : cls) {
              auto it = cand_idx.find({qp.arrows[0], j});
              if (it == cand_idx.end())
                throw std::logic_error("relation expansion out of range");
              row[it->second] += c * cc;
              nonzero = true;
            }
          }
          if (nonzero) rows.push_back(std::move(row));
        }
    }

    Mat<K> mat(static_cast<int>(rows.size()), m);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < m; ++j) mat.at(static_cast<int>(i), j) = rows[i][j];
    std::vector<int> piv = rref(mat);
    std::vector<bool> is_piv(m, false);
    for (int c : piv) is_piv[c] = true;

    std::vector<int> cand_to_basis(m, -1);
    for (int c = 0; c < m; ++c) {
      if (is_piv[c]) continue;
      auto [a, j] = cand[c];
      Path p;
      p.arrows = {a};
      Path full;
      path_concat(q, p, A.bas[n - 1][j], &full);
      cand_to_basis[c] = static_cast<int>(A.bas[n].size());
      A.idx[n][full] = cand_to_basis[c];
      A.bas[n].push_back(full);
    }
    // pivot candidates rewrite into the free ones
    std::vector<SpVec<K>> cand_class(m);
    for (int c = 0; c < m; ++c)
      if (!is_piv[c]) cand_class[c] = {{cand_to_basis[c], one}};
    for (size_t prow = 0; prow < piv.size(); ++prow) {
      int c = piv[prow];
      SpVec<K> cls;
      for (int c2 = c + 1; c2 < m; ++c2) {
        if (is_piv[c2]) continue;
        K coef = mat.at(static_cast<int>(prow), c2);
        if (!is_zero(coef))
          spvec_add(cls, cand_class[c2], -coef);
      }
      cand_class[c] = std::move(cls);
    }
    for (int a = 0; a < na; ++a) {
      A.lmul[a][n - 1].assign(prev, {});
      for (int j = 0; j < prev; ++j) {
        auto it = cand_idx.find({a, j});
        if (it != cand_idx.end()) A.lmul[a][n - 1][j] = cand_class[it->second];
      }
    }
    if (A.dim(n) == 0) {
      // degree-one generation: everything above vanishes too
      for (int nn = n + 1; nn <= cap; ++nn) {
        for (int a = 0; a < na; ++a) A.lmul[a][nn - 1].assign(0, {});
      }
      break;
    }
  }

  // right multiplication derived from full reductions
  for (int n = 0; n < cap; ++n) {
    for (int a = 0; a < na; ++a) {
      A.rmul[a][n].assign(A.dim(n), {});
      for (int j = 0; j < A.dim(n); ++j) {
        const Path& p = A.bas[n][j];
        if (path_source(q, p) != q.arrows[a].tgt) continue;
        Path pa;
        pa.arrows = {a};
        Path full;
        path_concat(q, p, pa, &full);
        A.rmul[a][n][j] = A.reduce_path(full);
      }
    }
  }
  return A;
}

template <class K>
struct FiniteDimCert {
  bool finite = false;
  int top_degree = -1;  // valid when finite
  long total_dim = 0;
  int cap = 0;
};

template <class K>
FiniteDimCert<K> finite_dim_certificate(const GradedAlgebra<K>& A) {
  FiniteDimCert<K> c;
  c.cap = A.cap;
  for (int n = 0; n <= A.cap; ++n) {
    c.total_dim += A.dim(n);
    if (A.dim(n) == 0) {
      c.finite = true;
      c.top_degree = n - 1;
      return c;
    }
  }
  c.finite = false;
  return c;
}

// The V-degree-zero subalgebra of a bigraded algebra: presented on the
// subquiver of degree-zero arrows with the degree-zero part of the
// relations.
template <class K>
GradedAlgebra<K> degree_zero_subalgebra(const GradedAlgebra<K>& A) {
  if (!A.Q.has_vdeg)
    throw std::invalid_argument("degree_zero_subalgebra: no cut fixed");
  Quiver sub;
  sub.vertices = A.Q.vertices;
  sub.field = A.Q.field;
  sub.has_vdeg = false;
  std::vector<int> arrow_map(A.Q.n_arrows(), -1);
  for (int a = 0; a < A.Q.n_arrows(); ++a)
    if (A.Q.arrows[a].vdeg == 0) {
      arrow_map[a] = sub.n_arrows();
      Arrow ar = A.Q.arrows[a];
      ar.vdeg = 0;
      sub.arrows.push_back(ar);
    }
  std::vector<Tensor<K>> rels;
  for (const auto& rel : A.relations) {
    int seen0 = 0, seen_pos = 0;
    for (const auto& [p, c] : rel.terms)
      (path_vdeg(A.Q, p) == 0 ? seen0 : seen_pos) = 1;
    if (seen0 && seen_pos)
      throw std::invalid_argument(
          "degree_zero_subalgebra: relation not V-degree homogeneous");
    if (seen_pos) continue;
    Tensor<K> moved(rel.degree);
    for (const auto& [p, c] : rel.terms) {
      Path np = p;
      for (auto& a : np.arrows) a = arrow_map[a];
      moved.add(np, c);
    }
    rels.push_back(moved);
  }
  return build_algebra(sub, rels, A.cap);
}

}  // namespace dqa
