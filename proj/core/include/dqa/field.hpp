#pragma once

#include <gmpxx.h>

#include <utility>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dqa {

// Exact rational scalar. Thin value wrapper over mpq_class; the wrapper
// keeps gmp's expression templates out of template argument deduction.
struct Rat {
  mpq_class v;

  Rat() : v(0) {}
  Rat(long x) : v(x) {}  // NOLINT: implicit by design, mirrors integers
  Rat(long num, long den) : v(num, den) { v.canonicalize(); }
  explicit Rat(mpq_class q) : v(std::move(q)) {}

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(mpq_class(a.v + b.v));
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(mpq_class(a.v - b.v));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(mpq_class(a.v * b.v));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    return Rat(mpq_class(a.v / b.v));
  }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v)); }
  Rat& operator+=(const Rat& o) {
    v += o.v;
    return *this;
  }
  Rat& operator-=(const Rat& o) {
    v -= o.v;
    return *this;
  }
  Rat& operator*=(const Rat& o) {
    v *= o.v;
    return *this;
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v == b.v; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v != b.v; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v < b.v; }
};

inline bool is_zero(const Rat& x) { return sgn(x.v) == 0; }
inline std::string scalar_str(const Rat& x) { return x.v.get_str(); }

inline Rat rat_of_string(const std::string& s) {
  mpq_class r(s, 10);
  r.canonicalize();
  return Rat(r);
}

// Prime field element. The modulus travels with the value; a default
// constructed element is the unattached zero and is compatible with any
// modulus.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(long x, std::uint64_t prime) : p(prime) {
    long long r = x % static_cast<long long>(prime);
    if (r < 0) r += static_cast<long long>(prime);
    v = static_cast<std::uint64_t>(r);
  }

  static std::uint64_t join(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::invalid_argument("Fp: mixed moduli");
    return a;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t q = join(a.p, b.p);
    if (q == 0) return Fp{};
    Fp r;
    r.p = q;
    r.v = a.v + b.v;
    if (r.v >= q) r.v -= q;
    return r;
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t q = join(a.p, b.p);
    if (q == 0) return Fp{};
    Fp r;
    r.p = q;
    r.v = (a.v >= b.v) ? a.v - b.v : a.v + q - b.v;
    return r;
  }
  friend Fp operator-(const Fp& a) {
    if (a.p == 0 || a.v == 0) return Fp{0, std::max<std::uint64_t>(a.p, 1)};
    Fp r;
    r.p = a.p;
    r.v = a.p - a.v;
    return r;
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t q = join(a.p, b.p);
    if (q == 0) return Fp{};
    Fp r;
    r.p = q;
    r.v = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.v) * b.v) % q);
    return r;
  }
  Fp inv() const {
    if (p == 0 || v == 0) throw std::domain_error("Fp: inverse of zero");
    // extended Euclid
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p),
                 newr = static_cast<std::int64_t>(v);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw std::domain_error("Fp: modulus not prime");
    if (t < 0) t += static_cast<std::int64_t>(p);
    Fp out;
    out.p = p;
    out.v = static_cast<std::uint64_t>(t);
    return out;
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  friend bool operator==(const Fp& a, const Fp& b) {
    join(a.p, b.p);
    return a.v == b.v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
};

inline bool is_zero(const Fp& x) { return x.v == 0; }
inline std::string scalar_str(const Fp& x) { return std::to_string(x.v); }

inline Rat inv(const Rat& x) {
  if (is_zero(x)) throw std::domain_error("Rat: inverse of zero");
  return Rat(1) / x;
}
inline Fp inv(const Fp& x) { return x.inv(); }

// Session field: rationals by default, a prime field on request.
struct FieldSpec {
  enum class Kind { Q, Fp } kind = Kind::Q;
  std::uint64_t p = 0;

  bool operator==(const FieldSpec&) const = default;
};

template <class K>
K scalar_of_long(long x, const FieldSpec& fs);

template <>
inline Rat scalar_of_long<Rat>(long x, const FieldSpec&) {
  return Rat(x);
}
template <>
inline Fp scalar_of_long<Fp>(long x, const FieldSpec& fs) {
  return Fp(x, fs.p);
}

// Parses "-3", "4/7", ... into the session field.
template <class K>
K scalar_of_string(const std::string& s, const FieldSpec& fs);

template <>
inline Rat scalar_of_string<Rat>(const std::string& s, const FieldSpec&) {
  return rat_of_string(s);
}
template <>
inline Fp scalar_of_string<Fp>(const std::string& s, const FieldSpec& fs) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Fp(std::stol(s), fs.p);
  Fp num(std::stol(s.substr(0, slash)), fs.p);
  Fp den(std::stol(s.substr(slash + 1)), fs.p);
  return num / den;
}

}  // namespace dqa
