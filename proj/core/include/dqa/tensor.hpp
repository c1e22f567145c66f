#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dqa/matrix.hpp"
#include "dqa/quiver.hpp"

namespace dqa {

// Homogeneous element of the tensor algebra kQ_n: an exact linear
// combination of paths of one fixed length. Dual elements (V*)^{\otimes n}
// use the same container, with a path p standing for the dual basis element
// p*; every bracket below says which argument is dual.
template <class K>
struct Tensor {
  int degree = 0;
  std::map<Path, K> terms;

  Tensor() = default;
  explicit Tensor(int deg) : degree(deg) {}

  void add(const Path& p, const K& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms.try_emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms.erase(it);
    }
  }

  bool zero() const { return terms.empty(); }

  Tensor& operator+=(const Tensor& o) {
    if (degree != o.degree && !o.zero() && !zero())
      throw std::invalid_argument("tensor degree mismatch");
    for (const auto& [p, c] : o.terms) add(p, c);
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator*(const K& c, Tensor t) {
    if (is_zero(c)) return Tensor(t.degree);
    for (auto& [p, v] : t.terms) v = c * v;
    return t;
  }
  friend Tensor operator-(Tensor t) {
    for (auto& [p, v] : t.terms) v = -v;
    return t;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.terms == b.terms;
  }

  std::vector<K> coords(PathTable& tab) const {
    const auto& ps = tab.paths(degree);
    std::vector<K> v(ps.size());
    for (const auto& [p, c] : terms) {
      int i = tab.path_index(p);
      if (i < 0) throw std::invalid_argument("non-composable path in tensor");
      v[i] = c;
    }
    return v;
  }

  static Tensor from_coords(PathTable& tab, int degree,
                            const std::vector<K>& v) {
    const auto& ps = tab.paths(degree);
    Tensor t(degree);
    for (size_t i = 0; i < ps.size(); ++i)
      if (!is_zero(v[i])) t.terms[ps[i]] = v[i];
    return t;
  }
};

template <class K>
Tensor<K> monomial(const Path& p, const K& c) {
  Tensor<K> t(p.length());
  t.add(p, c);
  return t;
}

// Strips `small` from the left (leading tensor factors) of `big`; a trivial
// small path matches when its vertex equals the target of big.
inline std::optional<Path> strip_left(const Quiver& q, const Path& big,
                                      const Path& small) {
  if (small.trivial()) {
    if (path_target(q, big) != small.vertex) return std::nullopt;
    return big;
  }
  int k = small.length(), l = big.length();
  if (k > l) return std::nullopt;
  for (int i = 0; i < k; ++i)
    if (big.arrows[i] != small.arrows[i]) return std::nullopt;
  Path r;
  if (k == l) {
    r = trivial_path(path_source(q, big));
  } else {
    r.arrows.assign(big.arrows.begin() + k, big.arrows.end());
  }
  return r;
}

inline std::optional<Path> strip_right(const Quiver& q, const Path& big,
                                       const Path& small) {
  if (small.trivial()) {
    if (path_source(q, big) != small.vertex) return std::nullopt;
    return big;
  }
  int k = small.length(), l = big.length();
  if (k > l) return std::nullopt;
  for (int i = 0; i < k; ++i)
    if (big.arrows[l - k + i] != small.arrows[i]) return std::nullopt;
  Path r;
  if (k == l) {
    r = trivial_path(path_target(q, big));
  } else {
    r.arrows.assign(big.arrows.begin(), big.arrows.end() - k);
  }
  return r;
}

// Left derivative [f v] for a dual f of degree k against v of degree l.
// For k <= l it strips matching leading factors and returns an element of
// degree l-k; for k > l it contracts the leading factors of f and returns a
// dual element of degree k-l.
template <class K>
Tensor<K> bracket_left(const Quiver& q, const Tensor<K>& f,
                       const Tensor<K>& v) {
  int k = f.degree, l = v.degree;
  Tensor<K> out(k <= l ? l - k : k - l);
  for (const auto& [p, cf] : f.terms)
    for (const auto& [w, cv] : v.terms) {
      std::optional<Path> r =
          (k <= l) ? strip_left(q, w, p) : strip_left(q, p, w);
      if (r) out.add(*r, cf * cv);
    }
  return out;
}

// Right derivative [v f], stripping from the trailing factors.
template <class K>
Tensor<K> bracket_right(const Quiver& q, const Tensor<K>& v,
                        const Tensor<K>& f) {
  int k = f.degree, l = v.degree;
  Tensor<K> out(k <= l ? l - k : k - l);
  for (const auto& [p, cf] : f.terms)
    for (const auto& [w, cv] : v.terms) {
      std::optional<Path> r =
          (k <= l) ? strip_right(q, w, p) : strip_right(q, p, w);
      if (r) out.add(*r, cv * cf);
    }
  return out;
}

// Multiplication in the tensor algebra; factors with mismatched endpoints
// vanish, as they do over S.
template <class K>
Tensor<K> tensor_concat(const Quiver& q, const Tensor<K>& a,
                        const Tensor<K>& b) {
  Tensor<K> out(a.degree + b.degree);
  for (const auto& [p, cp] : a.terms)
    for (const auto& [r, cr] : b.terms) {
      Path joined;
      if (path_concat(q, p, r, &joined)) out.add(joined, cp * cr);
    }
  return out;
}

// Product of dual elements: p* tensor q* is the dual of q tensor p, so the
// underlying paths concatenate in the opposite order.
template <class K>
Tensor<K> dual_concat(const Quiver& q, const Tensor<K>& f,
                      const Tensor<K>& g) {
  Tensor<K> out(f.degree + g.degree);
  for (const auto& [p, cp] : f.terms)
    for (const auto& [r, cr] : g.terms) {
      Path joined;
      if (path_concat(q, r, p, &joined)) out.add(joined, cp * cr);
    }
  return out;
}

// Total trace of a degree-0 element, with Tr(e_i) = 1.
template <class K>
K trace_total(const Tensor<K>& s) {
  if (s.degree != 0) throw std::invalid_argument("trace of nonzero degree");
  K out{};
  for (const auto& [p, c] : s.terms) out += c;
  return out;
}

// Graded algebra automorphism of the tensor algebra: a vertex permutation
// together with an invertible degree-one substitution on arrows.
template <class K>
struct AutomorphismSpec {
  std::vector<int> vperm;                 // vertex i -> vperm[i]
  std::vector<Tensor<K>> arrow_image;     // arrow a -> combination of arrows

  static AutomorphismSpec identity(const Quiver& q, const FieldSpec& fs) {
    AutomorphismSpec phi;
    phi.vperm.resize(q.n_vertices());
    for (int v = 0; v < q.n_vertices(); ++v) phi.vperm[v] = v;
    for (int a = 0; a < q.n_arrows(); ++a) {
      Path p;
      p.arrows = {a};
      phi.arrow_image.push_back(monomial(p, scalar_of_long<K>(1, fs)));
    }
    return phi;
  }

  // multiplication by (-1)^degree
  static AutomorphismSpec sign_twist(const Quiver& q, const FieldSpec& fs) {
    AutomorphismSpec phi = identity(q, fs);
    for (auto& t : phi.arrow_image) t = -t;
    return phi;
  }

  bool is_identity(const FieldSpec& fs) const {
    for (size_t v = 0; v < vperm.size(); ++v)
      if (vperm[v] != static_cast<int>(v)) return false;
    for (size_t a = 0; a < arrow_image.size(); ++a) {
      Path p;
      p.arrows = {static_cast<int>(a)};
      if (arrow_image[a].terms.size() != 1) return false;
      auto it = arrow_image[a].terms.begin();
      if (!(it->first == p) || it->second != scalar_of_long<K>(1, fs))
        return false;
    }
    return true;
  }

  void validate(const Quiver& q, const FieldSpec& fs) const {
    std::vector<bool> hit(q.n_vertices(), false);
    if (static_cast<int>(vperm.size()) != q.n_vertices())
      throw std::invalid_argument("automorphism: vertex permutation size");
    for (int v : vperm) {
      if (v < 0 || v >= q.n_vertices() || hit[v])
        throw std::invalid_argument("automorphism: not a vertex permutation");
      hit[v] = true;
    }
    if (static_cast<int>(arrow_image.size()) != q.n_arrows())
      throw std::invalid_argument("automorphism: arrow image count");
    Mat<K> m(q.n_arrows(), q.n_arrows());
    for (int a = 0; a < q.n_arrows(); ++a) {
      if (arrow_image[a].degree != 1)
        throw std::invalid_argument("automorphism: image degree");
      for (const auto& [p, c] : arrow_image[a].terms) {
        int b = p.arrows[0];
        if (q.arrows[b].src != vperm[q.arrows[a].src] ||
            q.arrows[b].tgt != vperm[q.arrows[a].tgt])
          throw std::invalid_argument(
              "automorphism: image of arrow " + q.arrows[a].id +
              " does not respect endpoints");
        m.at(b, a) = c;
      }
    }
    if (rank(m) != q.n_arrows())
      throw std::invalid_argument("automorphism: arrow matrix singular");
    (void)fs;
  }

  Tensor<K> apply(const Quiver& q, const Tensor<K>& x) const {
    Tensor<K> out(x.degree);
    for (const auto& [p, c] : x.terms) {
      if (p.trivial()) {
        out.add(trivial_path(vperm[p.vertex]), c);
        continue;
      }
      Tensor<K> acc = arrow_image[p.arrows[0]];
      for (size_t i = 1; i < p.arrows.size(); ++i)
        acc = tensor_concat(q, acc, arrow_image[p.arrows[i]]);
      out += c * acc;
    }
    return out;
  }

  AutomorphismSpec compose(const Quiver& q,
                           const AutomorphismSpec& inner) const {
    // (this o inner)(x) = this(inner(x))
    AutomorphismSpec out;
    out.vperm.resize(vperm.size());
    for (size_t v = 0; v < vperm.size(); ++v)
      out.vperm[v] = vperm[inner.vperm[v]];
    for (int a = 0; a < q.n_arrows(); ++a)
      out.arrow_image.push_back(apply(q, inner.arrow_image[a]));
    return out;
  }

  AutomorphismSpec inverse(const Quiver& q, const FieldSpec& fs) const {
    AutomorphismSpec out;
    out.vperm.resize(vperm.size());
    for (size_t v = 0; v < vperm.size(); ++v) out.vperm[vperm[v]] = static_cast<int>(v);
    Mat<K> m(q.n_arrows(), q.n_arrows());
    for (int a = 0; a < q.n_arrows(); ++a)
      for (const auto& [p, c] : arrow_image[a].terms) m.at(p.arrows[0], a) = c;
    auto minv = dqa::inverse(m, fs);
    if (!minv) throw std::invalid_argument("automorphism not invertible");
    for (int b = 0; b < q.n_arrows(); ++b) {
      Tensor<K> img(1);
      for (int a = 0; a < q.n_arrows(); ++a) {
        Path p;
        p.arrows = {a};
        img.add(p, minv->at(a, b));
      }
      out.arrow_image.push_back(img);
    }
    return out;
  }

  // Dual automorphism on degree-one duals: phi*(a*) = a* o phi.
  Tensor<K> dual_on_arrow(const Quiver& q, int a) const {
    Tensor<K> out(1);
    for (int b = 0; b < q.n_arrows(); ++b) {
      auto it = arrow_image[b].terms.end();
      Path pa;
      pa.arrows = {a};
      it = arrow_image[b].terms.find(pa);
      if (it != arrow_image[b].terms.end()) {
        Path pb;
        pb.arrows = {b};
        out.add(pb, it->second);
      }
    }
    return out;
  }
};

}  // namespace dqa
