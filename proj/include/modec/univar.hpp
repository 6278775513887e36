#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "modec/rat.hpp"

namespace modec {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
class UniPoly {
 public:
  std::vector<Rat> c;

  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static UniPoly constant(const Rat& a) { return UniPoly(std::vector<Rat>{a}); }
  static UniPoly x_power(size_t k, const Rat& a = Rat(1)) {
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = a;
    return UniPoly(std::move(v));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const Rat& coeff(size_t i) const {
    static const Rat zero(0);
    return i < c.size() ? c[i] : zero;
  }
  const Rat& leading() const {
    assert(!c.empty());
    return c.back();
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const Rat& s, const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a) { return Rat(-1) * a; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }

  Rat eval(const Rat& x) const {
    Rat r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  UniPoly derivative() const {
    if (c.size() <= 1) return UniPoly();
    std::vector<Rat> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c[i];
    return UniPoly(std::move(r));
  }

  // Euclidean division; returns (quotient, remainder).
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    assert(!b.is_zero());
    UniPoly rem = a, quot;
    quot.c.assign(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      size_t shift = rem.degree() - b.degree();
      Rat f = rem.leading() / b.leading();
      quot.c[shift] += f;
      for (size_t i = 0; i < b.c.size(); ++i) rem.c[shift + i] -= f * b.c[i];
      rem.trim();
    }
    quot.trim();
    return {quot, rem};
  }
};

// N-th cyclotomic polynomial: prod_{d | N} (x^d - 1)^{mu(N/d)}.
inline UniPoly cyclotomic_polynomial(long N) {
  assert(N >= 1);
  UniPoly num = UniPoly::constant(Rat(1));
  UniPoly den = UniPoly::constant(Rat(1));
  auto moebius = [](long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  for (long d = 1; d <= N; ++d) {
    if (N % d) continue;
    int mu = moebius(N / d);
    if (mu == 0) continue;
    UniPoly f = UniPoly::x_power(d) - UniPoly::constant(Rat(1));
    if (mu == 1)
      num = num * f;
    else
      den = den * f;
  }
  auto [q, r] = UniPoly::divmod(num, den);
  assert(r.is_zero());
  return q;
}

// Rational roots of a nonzero polynomial, by the rational root theorem on the
// cleared-denominator integer polynomial.
inline std::vector<Rat> rational_roots(const UniPoly& f) {
  std::vector<Rat> roots;
  if (f.is_zero()) return roots;
  UniPoly g = f;
  size_t low = 0;
  while (low < g.c.size() && g.c[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  // divide out x^low
  g.c.erase(g.c.begin(), g.c.begin() + low);
  if (g.degree() < 1) return roots;
  Int den(1);
  for (auto& x : g.c) den = lcm(den, x.get_den());
  std::vector<Int> ic(g.c.size());
  for (size_t i = 0; i < g.c.size(); ++i) ic[i] = Int(g.c[i] * Rat(den));
  auto divisors = [](Int n) {
    if (n < 0) n = -n;
    std::vector<Int> ds;
    for (Int d(1); d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    return ds;
  };
  for (const Int& p : divisors(ic.front()))
    for (const Int& q : divisors(ic.back()))
      for (int sign : {1, -1}) {
        Rat cand(sign * p, q);
        cand.canonicalize();
        if (g.eval(cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace modec
