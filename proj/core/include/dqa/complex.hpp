#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dqa/module.hpp"
#include "dqa/potential.hpp"
#include "dqa/sparse.hpp"

namespace dqa {

// An S-bimodule of generators sitting in one internal degree: a chosen basis
// of a subspace of kQ_deg, each basis vector homogeneous for the vertex pair
// (and the V-degree when a cut is fixed).
template <class K>
struct GenSpace {
  int deg = 0;
  std::vector<Tensor<K>> vec;
  std::vector<int> tv, sv, vdeg;

  int dim() const { return static_cast<int>(vec.size()); }

  static GenSpace from_tensors(const Quiver& q, int deg,
                               const std::vector<Tensor<K>>& basis) {
    GenSpace g;
    g.deg = deg;
    for (const auto& t : basis) {
      if (t.zero()) continue;
      int tv = -1, sv = -1, vd = -1;
      for (const auto& [p, c] : t.terms) {
        int pt = path_target(q, p), ps = path_source(q, p),
            pv = path_vdeg(q, p);
        if (tv == -1) {
          tv = pt;
          sv = ps;
          vd = pv;
        } else if (tv != pt || sv != ps) {
          throw std::invalid_argument("generator not vertex-homogeneous");
        }
        if (q.has_vdeg && vd != pv)
          throw std::invalid_argument("generator not V-degree homogeneous");
      }
      g.vec.push_back(t);
      g.tv.push_back(tv);
      g.sv.push_back(sv);
      g.vdeg.push_back(vd);
    }
    return g;
  }
};

// Free graded bimodule A tensor U tensor A with triple bases per total
// degree. Trip = (r, a, g, b): a is a basis index in A_r, b in A_{n-deg-r}.
template <class K>
struct FreeBimod {
  int gen_deg = 0;
  int n_gens = 0;
  std::vector<int> gen_tv, gen_sv;
  struct Trip {
    int r, a, g, b;
  };
  std::vector<std::vector<Trip>> bas;               // per degree 0..cap
  std::vector<std::map<std::tuple<int, int, int, int>, int>> idx;

  int dim(int n) const {
    return (n < 0 || n >= static_cast<int>(bas.size()))
               ? 0
               : static_cast<int>(bas[n].size());
  }
  int index(int n, int r, int a, int g, int b) const {
    auto it = idx[n].find({r, a, g, b});
    return it == idx[n].end() ? -1 : it->second;
  }
};

template <class K>
FreeBimod<K> make_free_bimod(const GradedAlgebra<K>& A, const GenSpace<K>& U,
                             int cap) {
  FreeBimod<K> F;
  F.gen_deg = U.deg;
  F.n_gens = U.dim();
  F.gen_tv = U.tv;
  F.gen_sv = U.sv;
  F.bas.resize(cap + 1);
  F.idx.resize(cap + 1);
  for (int n = U.deg; n <= cap; ++n) {
    for (int g = 0; g < U.dim(); ++g)
      for (int r = 0; r + U.deg <= n; ++r) {
        int s = n - U.deg - r;
        for (int a = 0; a < A.dim(r); ++a) {
          if (path_source(A.Q, A.bas[r][a]) != U.tv[g]) continue;
          for (int b = 0; b < A.dim(s); ++b) {
            if (path_target(A.Q, A.bas[s][b]) != U.sv[g]) continue;
            F.idx[n][{r, a, g, b}] = static_cast<int>(F.bas[n].size());
            F.bas[n].push_back({r, a, g, b});
          }
        }
      }
  }
  return F;
}

template <class K>
struct BimodComplex {
  const GradedAlgebra<K>* A = nullptr;
  int d = 0;    // top homological position
  int cap = 0;  // internal degree cap
  std::vector<GenSpace<K>> gen;                 // gen[i], 0..d
  std::vector<FreeBimod<K>> term;               // term[i]
  std::vector<std::vector<Mat<K>>> lam, rho;    // [i][arrow]: W_i -> W_{i-1}
  std::vector<K> eps;                           // eps[i], i >= 1
  std::vector<std::vector<SpMat<K>>> diff;      // diff[i][n]
  bool twisted = false;
  AutomorphismSpec<K> twist;
};

// eps_i = (-1)^{i(d-i)} below the middle, +1 from the middle up.
template <class K>
K epsilon_sign(int i, int d, const FieldSpec& fs) {
  if (2 * i < d + 1) {
    long s = (static_cast<long>(i) * (d - i)) % 2 == 0 ? 1 : -1;
    return scalar_of_long<K>(s, fs);
  }
  return scalar_of_long<K>(1, fs);
}

// Decomposition coefficients of a generator space inside V tensor U' and
// U' tensor V: lam[arrow] and rho[arrow] with columns solved exactly.
template <class K>
void solve_edge_maps(const Quiver& q, PathTable& tab, const GenSpace<K>& U,
                     const GenSpace<K>& Uprev, std::vector<Mat<K>>* lam_out,
                     std::vector<Mat<K>>* rho_out) {
  int prev_paths = static_cast<int>(tab.paths(Uprev.deg).size());
  Mat<K> prev(prev_paths, Uprev.dim());
  for (int j = 0; j < Uprev.dim(); ++j) {
    auto col = Uprev.vec[j].coords(tab);
    for (int i = 0; i < prev_paths; ++i) prev.at(i, j) = col[i];
  }
  lam_out->assign(q.n_arrows(), Mat<K>(Uprev.dim(), U.dim()));
  rho_out->assign(q.n_arrows(), Mat<K>(Uprev.dim(), U.dim()));
  for (int a = 0; a < q.n_arrows(); ++a) {
    Path pa;
    pa.arrows = {a};
    Tensor<K> dual = monomial(pa, scalar_of_long<K>(1, q.field));
    for (int g = 0; g < U.dim(); ++g) {
      Tensor<K> left = bracket_left(q, dual, U.vec[g]);
      Tensor<K> right = bracket_right(q, U.vec[g], dual);
      for (int side = 0; side < 2; ++side) {
        const Tensor<K>& t = side == 0 ? left : right;
        if (t.zero()) continue;
        auto sol = solve(prev, t.coords(tab));
        if (!sol)
          throw std::invalid_argument(
              "edge decomposition failed: generators do not lie in "
              "V*U' and U'*V");
        Mat<K>& dst = side == 0 ? (*lam_out)[a] : (*rho_out)[a];
        for (int i = 0; i < Uprev.dim(); ++i) dst.at(i, g) = (*sol)[i];
      }
    }
  }
}

// Assembles the degreewise matrices of D_i from the edge maps:
// D_i(a|w|b) = eps_i ( sum_al (a.al)|lam_al w|b
//                      + (-1)^i sum_be a|rho_be w|(be.b) ).
template <class K>
SpMat<K> assemble_diff(const GradedAlgebra<K>& A, const FreeBimod<K>& src,
                       const FreeBimod<K>& dst,
                       const std::vector<Mat<K>>& lam,
                       const std::vector<Mat<K>>& rho, const K& eps, int sign,
                       int n) {
  SpMat<K> m(dst.dim(n), src.dim(n));
  K sgn = scalar_of_long<K>(sign, A.fs);
  for (int col = 0; col < src.dim(n); ++col) {
    auto [r, a, g, b] = src.bas[n][col];
    int s = n - src.gen_deg - r;
    SpVec<K> out;
    for (int al = 0; al < A.Q.n_arrows(); ++al) {
      // left edge: a.al in A_{r+1}, generator lam_al(g)
      for (int gp = 0; gp < dst.n_gens; ++gp) {
        K c = lam[al].at(gp, g);
        if (is_zero(c)) continue;
        for (const auto& [a2, ca] : A.rmul[al][r][a]) {
          int id = dst.index(n, r + 1, a2, gp, b);
          if (id < 0) throw std::logic_error("diff: missing target triple");
          spvec_add(out, SpVec<K>{{id, scalar_of_long<K>(1, A.fs)}},
                    eps * c * ca);
        }
      }
      // right edge: be.b in A_{s+1}, generator rho_be(g)
      for (int gp = 0; gp < dst.n_gens; ++gp) {
        K c = rho[al].at(gp, g);
        if (is_zero(c)) continue;
        for (const auto& [b2, cb] : A.lmul[al][s][b]) {
          int id = dst.index(n, r, a, gp, b2);
          if (id < 0) throw std::logic_error("diff: missing target triple");
          spvec_add(out, SpVec<K>{{id, scalar_of_long<K>(1, A.fs)}},
                    eps * sgn * c * cb);
        }
      }
    }
    m.set_col(col, std::move(out));
  }
  return m;
}

// The complex of projective bimodules attached to a twisted superpotential,
// with terms A|W_i|A for 0 <= i <= d and the signed differentials.
template <class K>
BimodComplex<K> build_w_complex(const GradedAlgebra<K>& A,
                                const Potential<K>& pot) {
  BimodComplex<K> C;
  C.A = &A;
  C.d = pot.degree();
  C.cap = A.cap;
  C.twisted = !pot.twist.is_identity(A.fs);
  C.twist = pot.twist;
  PathTable tab(A.Q);
  for (int i = 0; i <= C.d; ++i) {
    auto W = derivative_space(A.Q, pot, C.d - i, tab);
    C.gen.push_back(GenSpace<K>::from_tensors(A.Q, i, W.basis));
  }
  // the quadratic pipeline requires the relations of A to be W_2
  if (C.d >= 2 && A.rel_degree != 2)
    throw std::invalid_argument("build_w_complex: algebra is not quadratic");
  C.lam.resize(C.d + 1);
  C.rho.resize(C.d + 1);
  C.eps.resize(C.d + 1, scalar_of_long<K>(1, A.fs));
  for (int i = 1; i <= C.d; ++i) {
    solve_edge_maps(A.Q, tab, C.gen[i], C.gen[i - 1], &C.lam[i], &C.rho[i]);
    C.eps[i] = epsilon_sign<K>(i, C.d, A.fs);
  }
  for (int i = 0; i <= C.d; ++i)
    C.term.push_back(make_free_bimod(A, C.gen[i], C.cap));
  C.diff.resize(C.d + 1);
  for (int i = 1; i <= C.d; ++i) {
    C.diff[i].resize(C.cap + 1);
    for (int n = 0; n <= C.cap; ++n)
      C.diff[i][n] =
          assemble_diff(A, C.term[i], C.term[i - 1], C.lam[i], C.rho[i],
                        C.eps[i], (i % 2 == 0) ? 1 : -1, n);
  }
  return C;
}

// Augmentation A|W_0|A -> A, (a, w, b) -> a w b, as degreewise matrices.
template <class K>
SpMat<K> augmentation_matrix(const BimodComplex<K>& C, int n) {
  const GradedAlgebra<K>& A = *C.A;
  const FreeBimod<K>& T = C.term[0];
  SpMat<K> m(A.dim(n), T.dim(n));
  K one = scalar_of_long<K>(1, A.fs);
  for (int col = 0; col < T.dim(n); ++col) {
    auto [r, a, g, b] = T.bas[n][col];
    int s = n - r;
    SpVec<K> out;
    for (const auto& [p, c] : C.gen[0].vec[g].terms) {
      // degree-0 generator: scalar multiple of the idempotent at p.vertex
      SpVec<K> ae = A.multiply(r, {{a, one}}, 0, {{p.vertex, one}});
      SpVec<K> prod = A.multiply(r, ae, s, {{b, one}});
      spvec_add(out, prod, c);
    }
    m.set_col(col, std::move(out));
  }
  return m;
}

struct HomologySlot {
  int dim_term = 0;
  int rank_in = 0;   // rank of D_i at this degree (map out of the slot)
  int rank_next = 0; // rank of D_{i+1}
  int homology = 0;
  bool exact_rank_used = false;
};

struct HomologyReport {
  int d = 0;
  int cap = 0;
  // [position][degree]
  std::vector<std::vector<HomologySlot>> slot;
  // position 0 checked against A itself
  bool h0_is_algebra = false;
  std::string h0_note;
  std::vector<int> ker_top_dims;  // dims of Ker D_d per degree

  bool exact_at(int i) const {
    for (const auto& s : slot[i])
      if (s.homology != 0) return false;
    return true;
  }
  // largest n <= d-1 with positions 1..n exact (0 when position 1 fails)
  int exact_prefix() const {
    int n = 0;
    for (int i = 1; i <= d - 1; ++i) {
      if (!exact_at(i)) break;
      n = i;
    }
    return n;
  }
};

namespace detail {

inline SpMat<Fp> to_fp(const SpMat<Rat>& m, std::uint64_t p, bool* ok) {
  *ok = true;
  SpMat<Fp> out(m.rows, m.cols);
  for (int j = 0; j < m.cols; ++j) {
    SpVec<Fp> col;
    for (const auto& [i, v] : m.col[j]) {
      mpz_class num = v.v.get_num(), den = v.v.get_den();
      mpz_class pz(static_cast<unsigned long>(p));
      mpz_class dm = den % pz;
      if (dm == 0) {
        *ok = false;
        return out;
      }
      mpz_class nm = num % pz;
      Fp fv(0, p);
      Fp fn(nm.get_si(), p), fd(dm.get_si(), p);
      fv = fn / fd;
      if (!is_zero(fv)) col.emplace_back(i, fv);
    }
    out.set_col(j, std::move(col));
  }
  return out;
}

// rank strategy: a modular rank certifies exactness cheaply; exact ranks
// over Q are recomputed wherever the modular chain does not certify.
inline int rank_fast(const SpMat<Rat>& m, bool* modular_only) {
  static constexpr std::uint64_t kPrime = 2147483647ull;  // 2^31 - 1
  bool ok = true;
  SpMat<Fp> fp = to_fp(m, kPrime, &ok);
  if (ok) {
    *modular_only = true;
    return sp_rank(fp);
  }
  *modular_only = false;
  return sp_rank(m);
}

inline int rank_fast(const SpMat<Fp>& m, bool* modular_only) {
  *modular_only = false;
  return sp_rank(m);
}

inline int rank_exact(const SpMat<Rat>& m) { return sp_rank(m); }
inline int rank_exact(const SpMat<Fp>& m) { return sp_rank(m); }

}  // namespace detail

// Exact kernel/image dimensions of the complex per position and internal
// degree. Over Q a single modular rank certifies vanishing homology (the
// modular rank bounds the true rank from below while the complex property
// bounds the sum from above); positions it cannot certify are recomputed
// with exact arithmetic.
template <class K>
HomologyReport homology(const BimodComplex<K>& C) {
  HomologyReport rep;
  rep.d = C.d;
  rep.cap = C.cap;
  rep.slot.assign(C.d + 1, std::vector<HomologySlot>(C.cap + 1));

  // ranks per position/degree, modular first
  std::vector<std::vector<int>> rk(C.d + 2,
                                   std::vector<int>(C.cap + 1, 0));
  std::vector<std::vector<bool>> modular(C.d + 2,
                                         std::vector<bool>(C.cap + 1, false));
  for (int i = 1; i <= C.d; ++i)
    for (int n = 0; n <= C.cap; ++n) {
      bool mod = false;
      rk[i][n] = detail::rank_fast(C.diff[i][n], &mod);
      modular[i][n] = mod;
    }
  // augmentation ranks (treated as position 0 outgoing map)
  std::vector<int> aug_rank(C.cap + 1, 0);
  std::vector<bool> aug_mod(C.cap + 1, false);
  for (int n = 0; n <= C.cap; ++n) {
    bool mod = false;
    SpMat<K> aug = augmentation_matrix(C, n);
    aug_rank[n] = detail::rank_fast(aug, &mod);
    aug_mod[n] = mod;
  }

  // exactness certificates: homology at (i, n) vanishes iff
  // rk[i] + rk[i+1] == dim term_i; modular ranks only certify when the sum
  // matches, otherwise recompute both exactly
  for (int i = 1; i <= C.d; ++i)
    for (int n = 0; n <= C.cap; ++n) {
      int dim = C.term[i].dim(n);
      int sum = rk[i][n] + (i < C.d ? rk[i + 1][n] : 0);
      if (sum != dim) {
        if (modular[i][n]) {
          rk[i][n] = detail::rank_exact(C.diff[i][n]);
          modular[i][n] = false;
        }
        if (i < C.d && modular[i + 1][n]) {
          rk[i + 1][n] = detail::rank_exact(C.diff[i + 1][n]);
          modular[i + 1][n] = false;
        }
      }
    }

  for (int i = 1; i <= C.d; ++i)
    for (int n = 0; n <= C.cap; ++n) {
      HomologySlot& s = rep.slot[i][n];
      s.dim_term = C.term[i].dim(n);
      s.rank_in = rk[i][n];
      s.rank_next = (i < C.d) ? rk[i + 1][n] : 0;
      s.homology = s.dim_term - s.rank_in - s.rank_next;
      s.exact_rank_used = !modular[i][n];
      if (s.homology < 0)
        throw std::logic_error("homology: negative dimension (rank bug)");
    }

  // position 0: coker D_1 compared against A through the augmentation
  rep.h0_is_algebra = true;
  rep.ker_top_dims.assign(C.cap + 1, 0);
  for (int n = 0; n <= C.cap; ++n) {
    HomologySlot& s = rep.slot[0][n];
    s.dim_term = C.term[0].dim(n);
    s.rank_next = rk[1][n];
    // surjectivity of the augmentation and ker aug = im D_1
    bool mod = aug_mod[n];
    int ra = aug_rank[n];
    int dimA = C.A->dim(n);
    int ker_aug = s.dim_term - ra;
    if (ra != dimA || ker_aug != rk[1][n]) {
      // recompute exactly before declaring failure
      SpMat<K> aug = augmentation_matrix(C, n);
      ra = detail::rank_exact(aug);
      if (modular[1][n]) rk[1][n] = detail::rank_exact(C.diff[1][n]);
      ker_aug = s.dim_term - ra;
      if (ra != dimA || ker_aug != rk[1][n]) {
        rep.h0_is_algebra = false;
        rep.h0_note = "H0 mismatch at internal degree " + std::to_string(n);
      }
    }
    s.homology = ker_aug - rk[1][n];
    rep.ker_top_dims[n] = C.term[C.d].dim(n) - rk[C.d][n];
  }
  return rep;
}

// One-sided complexes: A|W_i (left) or W_i|A (right) with the one-edge
// differential.
template <class K>
struct OneSidedComplex {
  int d = 0;
  int cap = 0;
  bool left = true;
  // bases: per position i, per degree n: pairs (algebra idx, gen)
  std::vector<std::vector<std::vector<std::pair<int, int>>>> bas;
  std::vector<std::vector<SpMat<K>>> diff;
  std::vector<std::vector<int>> rank_cache;
};

template <class K>
OneSidedComplex<K> one_sided_complex(const BimodComplex<K>& C, bool left) {
  const GradedAlgebra<K>& A = *C.A;
  OneSidedComplex<K> O;
  O.d = C.d;
  O.cap = C.cap;
  O.left = left;
  O.bas.assign(C.d + 1, {});
  for (int i = 0; i <= C.d; ++i) {
    O.bas[i].resize(C.cap + 1);
    for (int n = i; n <= C.cap; ++n) {
      int r = n - i;
      for (int a = 0; a < A.dim(r); ++a)
        for (int g = 0; g < C.gen[i].dim(); ++g) {
          if (left && path_source(A.Q, A.bas[r][a]) != C.gen[i].tv[g])
            continue;
          if (!left && path_target(A.Q, A.bas[r][a]) != C.gen[i].sv[g])
            continue;
          O.bas[i][n].emplace_back(a, g);  // sorted by (a, g)
        }
    }
  }
  auto index_of = [&](int i, int n, int a, int g) {
    const auto& v = O.bas[i][n];
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(a, g));
    return static_cast<int>(it - v.begin());
  };
  O.diff.assign(C.d + 1, {});
  for (int i = 1; i <= C.d; ++i) {
    O.diff[i].resize(C.cap + 1);
    for (int n = i - 1; n <= C.cap; ++n) {
      int src = static_cast<int>(O.bas[i][n].size());
      int dst = static_cast<int>(O.bas[i - 1][n].size());
      SpMat<K> m(dst, src);
      K sgn = C.eps[i];
      if (!left)
        sgn = sgn * scalar_of_long<K>((i % 2 == 0) ? 1 : -1, A.fs);
      for (int col = 0; col < src; ++col) {
        auto [a, g] = O.bas[i][n][col];
        int r = n - i;
        SpVec<K> out;
        for (int al = 0; al < A.Q.n_arrows(); ++al)
          for (int gp = 0; gp < C.gen[i - 1].dim(); ++gp) {
            K c = left ? C.lam[i][al].at(gp, g) : C.rho[i][al].at(gp, g);
            if (is_zero(c)) continue;
            const SpVec<K>& prod =
                left ? A.rmul[al][r][a] : A.lmul[al][r][a];
            for (const auto& [a2, ca] : prod)
              spvec_add(out,
                        SpVec<K>{{index_of(i - 1, n, a2, gp),
                                  scalar_of_long<K>(1, A.fs)}},
                        sgn * c * ca);
          }
        m.set_col(col, std::move(out));
      }
      O.diff[i][n] = std::move(m);
    }
  }
  return O;
}

// homology dims of a one-sided complex at positions 1..d
template <class K>
std::vector<std::vector<int>> one_sided_homology(const OneSidedComplex<K>& O) {
  std::vector<std::vector<int>> rk(O.d + 2, std::vector<int>(O.cap + 1, 0));
  std::vector<std::vector<bool>> modular(O.d + 2,
                                         std::vector<bool>(O.cap + 1, false));
  for (int i = 1; i <= O.d; ++i)
    for (int n = 0; n <= O.cap; ++n) {
      bool mod = false;
      rk[i][n] = detail::rank_fast(O.diff[i][n], &mod);
      modular[i][n] = mod;
    }
  std::vector<std::vector<int>> H(O.d + 1, std::vector<int>(O.cap + 1, 0));
  for (int i = 1; i <= O.d; ++i)
    for (int n = 0; n <= O.cap; ++n) {
      int dim = static_cast<int>(O.bas[i][n].size());
      int sum = rk[i][n] + (i < O.d ? rk[i + 1][n] : 0);
      if (sum != dim) {
        if (modular[i][n]) {
          rk[i][n] = detail::rank_exact(O.diff[i][n]);
          modular[i][n] = false;
        }
        if (i < O.d && modular[i + 1][n]) {
          rk[i + 1][n] = detail::rank_exact(O.diff[i + 1][n]);
          modular[i + 1][n] = false;
        }
      }
      H[i][n] = dim - rk[i][n] - (i < O.d ? rk[i + 1][n] : 0);
      if (H[i][n] < 0) throw std::logic_error("one-sided homology negative");
    }
  return H;
}

// Koszul generator spaces K^0 = S, K^1 = V, K^{i+1} = V K^i \cap K^i V.
template <class K>
std::vector<std::vector<Tensor<K>>> koszul_spaces(const GradedAlgebra<K>& A,
                                                  int maxdeg) {
  if (A.rel_degree != 2 && A.rel_degree != 0)
    throw std::invalid_argument("koszul_spaces: algebra not quadratic");
  const Quiver& q = A.Q;
  PathTable tab(q);
  std::vector<std::vector<Tensor<K>>> out;
  // K^0
  std::vector<Tensor<K>> k0;
  for (int v = 0; v < q.n_vertices(); ++v)
    k0.push_back(monomial(trivial_path(v), scalar_of_long<K>(1, q.field)));
  out.push_back(k0);
  if (maxdeg == 0) return out;
  // K^1
  std::vector<Tensor<K>> k1;
  for (int a = 0; a < q.n_arrows(); ++a) {
    Path p;
    p.arrows = {a};
    k1.push_back(monomial(p, scalar_of_long<K>(1, q.field)));
  }
  out.push_back(k1);
  // K^2 = relation span
  if (maxdeg >= 2) {
    std::vector<Tensor<K>> k2 = A.relations;
    out.push_back(k2);
  }
  for (int i = 3; i <= maxdeg; ++i) {
    const auto& prev = out[i - 1];
    int npaths = static_cast<int>(tab.paths(i).size());
    // V tensor prev: columns; prev tensor V: columns
    std::vector<std::vector<K>> lcols, rcols;
    for (int a = 0; a < q.n_arrows(); ++a) {
      Path p;
      p.arrows = {a};
      Tensor<K> ta = monomial(p, scalar_of_long<K>(1, q.field));
      for (const auto& u : prev) {
        Tensor<K> l = tensor_concat(q, ta, u);
        if (!l.zero()) lcols.push_back(l.coords(tab));
        Tensor<K> r = tensor_concat(q, u, ta);
        if (!r.zero()) rcols.push_back(r.coords(tab));
      }
    }
    // intersection via kernel of [L | -R]
    int nl = static_cast<int>(lcols.size()), nr = static_cast<int>(rcols.size());
    Mat<K> m(npaths, nl + nr);
    for (int j = 0; j < nl; ++j)
      for (int t = 0; t < npaths; ++t) m.at(t, j) = lcols[j][t];
    for (int j = 0; j < nr; ++j)
      for (int t = 0; t < npaths; ++t) m.at(t, nl + j) = -rcols[j][t];
    std::vector<std::vector<K>> vecs;
    for (const auto& kv : kernel_basis(m, A.fs)) {
      std::vector<K> w(npaths);
      bool nz = false;
      for (int j = 0; j < nl; ++j) {
        if (is_zero(kv[j])) continue;
        for (int t = 0; t < npaths; ++t) {
          w[t] += kv[j] * lcols[j][t];
        }
      }
      for (const auto& x : w)
        if (!is_zero(x)) {
          nz = true;
          break;
        }
      if (nz) vecs.push_back(std::move(w));
    }
    std::vector<Tensor<K>> ki;
    for (auto& row : echelon_rows(std::move(vecs)))
      ki.push_back(Tensor<K>::from_coords(tab, i, row));
    out.push_back(ki);
    if (out.back().empty()) {
      // K^i = 0 forces all higher ones to vanish too
      for (int j = i + 1; j <= maxdeg; ++j) out.emplace_back();
      break;
    }
  }
  return out;
}

// W_k inside K^k, with equality exactly where demanded.
template <class K>
struct SubcomplexCheck {
  bool contained = true;
  std::vector<int> dims_w, dims_k;
  int first_strict = -1;  // least k with W_k != K^k, -1 if none
};

template <class K>
SubcomplexCheck<K> check_koszul_subcomplex(const GradedAlgebra<K>& A,
                                           const BimodComplex<K>& C) {
  SubcomplexCheck<K> out;
  auto kos = koszul_spaces(A, C.d);
  PathTable tab(A.Q);
  for (int k = 0; k <= C.d; ++k) {
    std::vector<std::vector<K>> wrows, krows;
    for (const auto& t : C.gen[k].vec) wrows.push_back(t.coords(tab));
    for (const auto& t : kos[k]) krows.push_back(t.coords(tab));
    out.dims_w.push_back(static_cast<int>(wrows.size()));
    out.dims_k.push_back(static_cast<int>(krows.size()));
    if (!rows_contained(wrows, krows)) out.contained = false;
    if (out.first_strict < 0 && wrows.size() != krows.size())
      out.first_strict = k;
  }
  return out;
}

// Quadratic dual on the opposite quiver: arrows a° : t(a) -> s(a), a path
// a°b° standing for the dual of the path (b a).
template <class K>
struct QuadraticDual {
  GradedAlgebra<K> dual;
  Quiver opposite;
};

template <class K>
QuadraticDual<K> quadratic_dual(const GradedAlgebra<K>& A, int cap) {
  if (A.rel_degree != 2 && A.rel_degree != 0)
    throw std::invalid_argument("quadratic_dual: algebra not quadratic");
  const Quiver& q = A.Q;
  Quiver qop = q;
  qop.has_vdeg = false;
  for (auto& a : qop.arrows) std::swap(a.src, a.tgt);
  PathTable tab(q);
  PathTable tabop(qop);
  // pairing <a° b°, v w> = delta_{b v} delta_{a w}; R-perp as kernel
  const auto& paths2 = tab.paths(2);
  const auto& dual2 = tabop.paths(2);
  int np = static_cast<int>(paths2.size());
  int nd = static_cast<int>(dual2.size());
  Mat<K> pairing(static_cast<int>(A.relations.size()), nd);
  for (size_t i = 0; i < A.relations.size(); ++i) {
    auto coords = A.relations[i].coords(tab);
    for (int j = 0; j < nd; ++j) {
      // dual path a°b° dualizes the path (b a)
      Path dp = dual2[j];
      Path prim;
      prim.arrows = {dp.arrows[1], dp.arrows[0]};
      int pi = tab.path_index(prim);
      if (pi >= 0) pairing.at(static_cast<int>(i), j) = coords[pi];
    }
  }
  (void)np;
  std::vector<Tensor<K>> perp;
  for (const auto& kv : kernel_basis(pairing, A.fs)) {
    Tensor<K> t(2);
    for (int j = 0; j < nd; ++j)
      if (!is_zero(kv[j])) t.add(dual2[j], kv[j]);
    perp.push_back(t);
  }
  QuadraticDual<K> out{build_algebra(qop, perp, cap), qop};
  return out;
}

}  // namespace dqa
