#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dqa/module.hpp"

namespace dqa {

template <class K>
struct FrobeniusCert {
  bool is_selfinjective = false;
  bool is_frobenius = false;
  std::vector<int> nakayama_perm;  // on vertex simples, from socles
  std::optional<Mat<K>> nakayama_matrix;  // eta on the whole basis of A
  std::optional<AutomorphismSpec<K>> nakayama_aut;  // eta restricted to degree <= 1
  int top_degree = -1;
  std::string note;
};

// Selfinjectivity of a basic algebra: [S] -> [soc P(S)] must be a bijection
// on vertex simples, and each socle simple.
template <class K>
FrobeniusCert<K> selfinjective_check(const GradedAlgebra<K>& A) {
  auto fin = finite_dim_certificate(A);
  if (!fin.finite)
    throw std::invalid_argument("selfinjective_check: not finite dimensional");
  FrobeniusCert<K> cert;
  cert.top_degree = fin.top_degree;
  int nv = A.Q.n_vertices();
  std::vector<int> perm(nv, -1);
  std::vector<bool> hit(nv, false);
  for (int v = 0; v < nv; ++v) {
    Module<K> P = projective_module(A, v, 0);
    auto soc = socle_dims(P);
    int total = 0, socv = -1;
    for (const auto& [key, d] : soc) {
      total += d;
      socv = key.first;
    }
    if (total != 1) {
      cert.is_selfinjective = false;
      cert.note = "soc P(" + A.Q.vertices[v] + ") not simple";
      return cert;
    }
    perm[v] = socv;
    if (hit[socv]) {
      cert.is_selfinjective = false;
      cert.note = "socle map not injective at " + A.Q.vertices[socv];
      return cert;
    }
    hit[socv] = true;
  }
  cert.is_selfinjective = true;
  cert.nakayama_perm = perm;
  return cert;
}

// Frobenius structure from the graded bilinear form (a,b) = f(ab), f the sum
// of the dual basis of the top degree. On success the Nakayama automorphism
// eta is solved from (a,-) = (-,eta(a)) and certified to be an algebra map.
template <class K>
FrobeniusCert<K> frobenius_data(const GradedAlgebra<K>& A) {
  auto fin = finite_dim_certificate(A);
  if (!fin.finite)
    throw std::invalid_argument("frobenius_data: not finite dimensional");
  FrobeniusCert<K> cert;
  int p = fin.top_degree;
  cert.top_degree = p;

  if (A.dim(0) != A.dim(p)) {
    cert.is_frobenius = false;
    cert.note = "dim A_0 != dim A_p";
    return cert;
  }

  // global basis offsets
  int N = 0;
  std::vector<int> off(p + 2, 0);
  for (int n = 0; n <= p; ++n) {
    off[n] = N;
    N += A.dim(n);
  }
  off[p + 1] = N;

  const FieldSpec& fs = A.fs;
  Mat<K> B(N, N);
  for (int m = 0; m <= p; ++m) {
    int n = p - m;
    for (int i = 0; i < A.dim(m); ++i) {
      SpVec<K> xi = {{i, scalar_of_long<K>(1, fs)}};
      for (int j = 0; j < A.dim(n); ++j) {
        SpVec<K> prod = A.multiply(m, xi, n, {{j, scalar_of_long<K>(1, fs)}});
        K val{};
        for (const auto& [t, c] : prod) val += c;  // sum of dual-basis values
        B.at(off[m] + i, off[n] + j) = val;
      }
    }
  }
  auto Binv = inverse(B, fs);
  if (!Binv) {
    cert.is_frobenius = false;
    cert.note = "bilinear form degenerate";
    return cert;
  }
  Mat<K> eta = (*Binv) * B.transpose();
  cert.nakayama_matrix = eta;

  // eta must fix S pointwise up to permutation and be multiplicative
  auto col_of = [&](int n, int j) { return off[n] + j; };
  auto eta_class = [&](int n, const SpVec<K>& x) {
    SpVec<K> out;
    for (const auto& [j, c] : x)
      for (int i = 0; i < A.dim(n); ++i) {
        K v = eta.at(off[n] + i, col_of(n, j));
        if (!is_zero(v)) spvec_add(out, SpVec<K>{{i, K(v)}}, c);
      }
    return out;
  };
  // multiplicativity on basis pairs
  for (int m = 0; m <= p; ++m)
    for (int n = 0; m + n <= p; ++n)
      for (int i = 0; i < A.dim(m); ++i)
        for (int j = 0; j < A.dim(n); ++j) {
          SpVec<K> u = {{i, scalar_of_long<K>(1, fs)}};
          SpVec<K> v = {{j, scalar_of_long<K>(1, fs)}};
          SpVec<K> lhs = eta_class(m + n, A.multiply(m, u, n, v));
          SpVec<K> rhs = A.multiply(m, eta_class(m, u), n, eta_class(n, v));
          if (lhs != rhs) {
            cert.is_frobenius = false;
            cert.note = "eta not multiplicative";
            return cert;
          }
        }
  // permutation on idempotents
  int nv = A.Q.n_vertices();
  std::vector<int> perm(nv, -1);
  for (int v = 0; v < nv; ++v) {
    SpVec<K> img = eta_class(0, {{v, scalar_of_long<K>(1, fs)}});
    if (img.size() != 1 || img[0].second != scalar_of_long<K>(1, fs)) {
      cert.is_frobenius = false;
      cert.note = "eta does not permute idempotents";
      return cert;
    }
    perm[v] = img[0].first;
  }
  cert.is_frobenius = true;
  cert.is_selfinjective = true;
  cert.nakayama_perm = perm;

  // eta as an automorphism spec (vertex permutation + degree-1 matrix)
  AutomorphismSpec<K> aut;
  aut.vperm = perm;
  for (int a = 0; a < A.Q.n_arrows(); ++a) {
    // arrows are exactly the degree-1 basis paths, in order
    SpVec<K> img = eta_class(1, {{a, scalar_of_long<K>(1, fs)}});
    Tensor<K> t(1);
    for (const auto& [j, c] : img) t.add(A.bas[1][j], c);
    aut.arrow_image.push_back(t);
  }
  aut.validate(A.Q, fs);
  cert.nakayama_aut = aut;
  return cert;
}

// Graded minimal resolution bookkeeping for Koszul-type certificates.
template <class K>
struct ResolutionCert {
  bool terminated = false;   // Omega^{steps} = 0
  int pdim = -1;             // valid when terminated
  bool linear = true;        // every P_i generated in degree i (so far)
  int linear_through = -1;   // largest i with P_0..P_i linear
  bool truncated = false;    // ran into the degree window of a truncation
  int steps = 0;
  std::vector<std::map<std::pair<int, int>, int>> gen_degrees;  // per step
  Module<K> tail;            // Omega^{steps} (the first non-linear kernel)
};

// Minimal graded resolution of A_0, stepping until the kernel vanishes, the
// linearity pattern breaks (with stop_at_nonlinear), or the step cap hits.
// Over a truncated algebra the result is only valid through the degree
// window and is flagged as such.
template <class K>
ResolutionCert<K> resolve_simples(const GradedAlgebra<K>& A, int step_cap,
                                  bool stop_at_nonlinear = false) {
  ResolutionCert<K> out;
  std::vector<Module<K>> simples;
  for (int v = 0; v < A.Q.n_vertices(); ++v)
    simples.push_back(simple_module(A, v, 0));
  Module<K> M = direct_sum(A, simples);
  for (int k = 0; k <= step_cap; ++k) {
    if (M.window != INT_MAX) out.truncated = true;
    if (M.is_zero_module()) {
      out.terminated = true;
      out.pdim = k - 1;
      out.tail = M;
      return out;
    }
    auto gens = top_generators(M);
    std::map<std::pair<int, int>, int> gd;
    bool lin = true;
    int max_gen_deg = 0;
    for (const auto& [v, d, rep] : gens) {
      ++gd[{v, d}];
      if (d != k) lin = false;
      max_gen_deg = std::max(max_gen_deg, d);
    }
    if (M.window != INT_MAX && max_gen_deg > M.window - 2) {
      // generators too close to the degree window: the next kernel would be
      // a boundary artifact, so stop with what is certified so far
      out.tail = M;
      return out;
    }
    if (!lin) {
      if (out.linear) {
        out.linear = false;
        out.linear_through = k - 1;
        out.tail = M;
      }
      if (stop_at_nonlinear) return out;
    } else if (out.linear) {
      out.linear_through = k;
    }
    out.gen_degrees.push_back(gd);
    M = syzygy_step(A, M).omega;
    out.steps = k + 1;
  }
  out.tail = M;
  return out;
}

template <class K>
struct KoszulCert {
  bool koszul = false;
  bool terminated = false;
  int gldim = -1;
  bool truncated = false;  // certificate only valid through the window
  int window = INT_MAX;
  std::string note;
};

// Koszul iff the minimal graded resolution of A_0 is linear; the resolution
// length certifies the global dimension when it terminates.
template <class K>
KoszulCert<K> koszul_check(const GradedAlgebra<K>& A, int step_cap = 16) {
  KoszulCert<K> cert;
  auto res = resolve_simples(A, step_cap);
  cert.truncated = res.truncated;
  if (res.truncated) {
    cert.window = A.cap;
    cert.note = "certificate valid through internal degree " +
                std::to_string(A.cap);
  }
  if (!res.linear) {
    cert.koszul = false;
    cert.note = "projective cover generated off the line at step " +
                std::to_string(res.linear_through + 1);
    return cert;
  }
  cert.koszul = true;
  if (res.terminated) {
    cert.terminated = true;
    cert.gldim = res.pdim;
  } else {
    cert.note += (cert.note.empty() ? "" : "; ");
    cert.note += "resolution linear but did not terminate within caps";
  }
  return cert;
}

template <class K>
struct AlmostKoszulCert {
  bool almost_koszul = false;
  bool koszul_finite = false;  // resolution terminated: Koszul of finite gldim
  int p = -1;
  int q = -1;
  bool periodic_type = false;
  std::map<std::pair<int, int>, int> tail_dims;  // (vertex, degree) of W
  std::string note;
};

// (p,q)-Koszul detection by minimal resolution: the resolution of A_0 stays
// linear through step q, and the next kernel W is semisimple concentrated in
// degree p+q. Periodic type means W has the dimension vector of A_0<p+q>.
template <class K>
AlmostKoszulCert<K> almost_koszul_check(const GradedAlgebra<K>& A,
                                        int step_cap = 16) {
  auto fin = finite_dim_certificate(A);
  if (!fin.finite)
    throw std::invalid_argument("almost_koszul_check: not finite dimensional");
  if (A.rel_degree != 2 && A.rel_degree != 0)
    throw std::invalid_argument("almost_koszul_check: not quadratic");
  AlmostKoszulCert<K> cert;
  cert.p = fin.top_degree;
  auto res = resolve_simples(A, step_cap, /*stop_at_nonlinear=*/true);
  if (res.terminated) {
    cert.koszul_finite = true;
    cert.note = "resolution terminates; algebra is Koszul of finite gldim";
    return cert;
  }
  if (res.linear) {
    cert.note = "resolution linear through step cap";
    return cert;
  }
  // linear through q = linear_through, W = tail (kernel after step q)
  int q = res.linear_through;
  cert.q = q;
  const Module<K>& W = res.tail;
  // semisimple: radical acts by zero
  if (!radical_rows(W).empty()) {
    cert.note = "tail module not semisimple";
    return cert;
  }
  for (int i = 0; i < W.dim(); ++i)
    if (W.deg[i] != cert.p + q) {
      cert.note = "tail module not concentrated in degree p+q";
      return cert;
    }
  if (q < 1) {
    cert.note = "no linear prefix";
    return cert;
  }
  cert.almost_koszul = true;
  cert.tail_dims = W.graded_dims();
  // periodic type: one copy of each vertex simple, shifted by p+q
  bool periodic = W.dim() == A.Q.n_vertices();
  std::vector<int> dv = W.dim_vector();
  for (int v = 0; v < A.Q.n_vertices(); ++v)
    if (dv[v] != 1) periodic = false;
  cert.periodic_type = periodic;
  return cert;
}

template <class K>
struct GorensteinCert {
  bool finite = false;
  int injective_dimension = -1;  // valid when finite
  int projective_dimension_of_dual = -1;
  bool exceeded_cap = false;
  int cap = 0;
};

template <class K>
int pdim_of(const GradedAlgebra<K>& A, Module<K> M, int step_cap,
            bool* exceeded) {
  *exceeded = false;
  for (int k = 0; k <= step_cap; ++k) {
    if (M.is_zero_module()) return k - 1;
    M = syzygy_step(A, M).omega;
  }
  if (!M.is_zero_module()) {
    *exceeded = true;
    return -1;
  }
  return step_cap;
}

// Gorenstein dimension: pdim of the dual regular module on both sides.
template <class K>
GorensteinCert<K> gorenstein_dimension(const GradedAlgebra<K>& A,
                                       const GradedAlgebra<K>& Aop,
                                       int step_cap = 16) {
  auto fin = finite_dim_certificate(A);
  if (!fin.finite)
    throw std::invalid_argument("gorenstein_dimension: not finite dimensional");
  GorensteinCert<K> cert;
  cert.cap = step_cap;
  bool ex1 = false, ex2 = false;
  // pdim of A^* as a left A-module = pdim of D(regular right module)
  Module<K> dual_left = dual_module(A, regular_module(Aop));
  cert.projective_dimension_of_dual = pdim_of(A, dual_left, step_cap, &ex1);
  // idim of A as a left module = pdim of its dual as a right module
  Module<K> dual_right = dual_module(Aop, regular_module(A));
  cert.injective_dimension = pdim_of(Aop, dual_right, step_cap, &ex2);
  cert.exceeded_cap = ex1 || ex2;
  cert.finite = !cert.exceeded_cap;
  if (cert.finite &&
      cert.injective_dimension != cert.projective_dimension_of_dual)
    throw std::logic_error(
        "gorenstein_dimension: two-sided dimensions disagree");
  return cert;
}

}  // namespace dqa
