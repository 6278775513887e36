#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "modec/cyclotomic.hpp"
#include "modec/rat.hpp"

namespace modec {

// Homogeneous multivariate polynomial over K (Rat or Cyclo). Terms are kept
// sorted by exponent vector, with no zero coefficients and no duplicates;
// every exponent vector sums to the degree.
template <class K>
class HomogPoly {
 public:
  struct Term {
    std::vector<int> e;
    K c;
  };

  long nvars = 0;
  long degree = 0;
  std::vector<Term> terms;

  HomogPoly() = default;
  HomogPoly(long n, long d) : nvars(n), degree(d) {}

  static HomogPoly from_terms(long n, long d, std::vector<Term> ts) {
    HomogPoly p(n, d);
    for (auto& t : ts) p.add_term(t.e, t.c);
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const std::vector<int>& e, const K& c) {
    if (static_cast<long>(e.size()) != nvars) throw std::invalid_argument("HomogPoly: bad exponent size");
    long s = 0;
    for (int x : e) {
      if (x < 0) throw std::invalid_argument("HomogPoly: negative exponent");
      s += x;
    }
    if (s != degree) throw std::invalid_argument("HomogPoly: exponent sum != degree");
    auto it = std::lower_bound(terms.begin(), terms.end(), e,
                               [](const Term& t, const std::vector<int>& key) { return t.e < key; });
    if (it != terms.end() && it->e == e) {
      it->c += c;
      if (it->c == K(it->c - it->c)) terms.erase(it);  // zero test via x - x
    } else {
      if (!(c == K(c - c))) terms.insert(it, Term{e, c});
    }
  }

  friend HomogPoly operator+(const HomogPoly& a, const HomogPoly& b) {
    assert(a.nvars == b.nvars && a.degree == b.degree);
    HomogPoly r = a;
    for (const auto& t : b.terms) r.add_term(t.e, t.c);
    return r;
  }
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    assert(a.nvars == b.nvars);
    HomogPoly r(a.nvars, a.degree + b.degree);
    for (const auto& s : a.terms)
      for (const auto& t : b.terms) {
        std::vector<int> e(a.nvars);
        for (long i = 0; i < a.nvars; ++i) e[i] = s.e[i] + t.e[i];
        r.add_term(e, s.c * t.c);
      }
    return r;
  }
  friend HomogPoly operator*(const K& s, const HomogPoly& a) {
    HomogPoly r(a.nvars, a.degree);
    for (const auto& t : a.terms) r.add_term(t.e, s * t.c);
    return r;
  }

  template <class V>
  V eval(const std::vector<V>& pt, const V& zero, const V& one) const {
    assert(static_cast<long>(pt.size()) == nvars);
    V acc = zero;
    for (const auto& t : terms) {
      V m = one;
      for (long i = 0; i < nvars; ++i)
        for (int k = 0; k < t.e[i]; ++k) m = m * pt[i];
      acc = acc + scale(m, t.c);
      (void)m;
    }
    return acc;
  }

  Rat eval_rat(const std::vector<Rat>& pt) const
    requires std::same_as<K, Rat>
  {
    Rat acc(0);
    for (const auto& t : terms) {
      Rat m = t.c;
      for (long i = 0; i < nvars; ++i)
        for (int k = 0; k < t.e[i]; ++k) m *= pt[i];
      acc += m;
    }
    return acc;
  }

  Cyclo eval_cyclo(const std::vector<Cyclo>& pt, long N) const
    requires std::same_as<K, Rat>
  {
    Cyclo acc(N);
    for (const auto& t : terms) {
      Cyclo m(N, t.c);
      for (long i = 0; i < nvars; ++i)
        for (int k = 0; k < t.e[i]; ++k) m = m * pt[i];
      acc += m;
    }
    return acc;
  }

  HomogPoly partial(long var) const {
    HomogPoly r(nvars, degree > 0 ? degree - 1 : 0);
    for (const auto& t : terms) {
      if (t.e[var] == 0) continue;
      std::vector<int> e = t.e;
      int k = e[var];
      e[var] -= 1;
      r.add_term(e, K(Rat(k)) * t.c);
    }
    return r;
  }

 private:
  template <class V>
  static V scale(const V& v, const K& c) {
    return v * V(c);
  }
};

using HomogPolyQ = HomogPoly<Rat>;

// Clears denominators and divides by content: integer coefficients, content 1,
// leading (first stored) coefficient positive.
inline HomogPolyQ primitive_part(const HomogPolyQ& p) {
  if (p.is_zero()) return p;
  Int den(1);
  for (const auto& t : p.terms) den = lcm(den, t.c.get_den());
  Int content(0);
  for (const auto& t : p.terms) {
    Int n = Int(t.c * Rat(den));
    content = gcd(content, n);
  }
  if (content == 0) content = 1;
  HomogPolyQ r(p.nvars, p.degree);
  Rat f = Rat(den) / Rat(content);
  if (p.terms.front().c * f < 0) f = -f;
  for (const auto& t : p.terms) r.add_term(t.e, t.c * f);
  return r;
}

// int64 evaluation mod a prime for search/pruning; coefficients must be
// integral (clear denominators first).
inline int64_t eval_mod(const HomogPolyQ& p, const std::vector<int64_t>& pt, int64_t m) {
  int64_t acc = 0;
  for (const auto& t : p.terms) {
    assert(t.c.get_den() == 1);
    int64_t c = static_cast<int64_t>(mpz_fdiv_ui(t.c.get_num().get_mpz_t(), static_cast<unsigned long>(m)));
    int64_t v = c;
    for (long i = 0; i < p.nvars; ++i)
      for (int k = 0; k < t.e[i]; ++k) v = (v * pt[i]) % m;
    acc = (acc + v) % m;
  }
  return acc;
}

// All exponent vectors of length n summing to d, in lexicographic order.
inline std::vector<std::vector<int>> monomial_exponents(long n, long d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  // lexicographic enumeration by recursion
  auto rec = [&](auto&& self, long pos, long rem) -> void {
    if (pos == n - 1) {
      cur[pos] = static_cast<int>(rem);
      out.push_back(cur);
      return;
    }
    for (long k = rem; k >= 0; --k) {
      cur[pos] = static_cast<int>(k);
      self(self, pos + 1, rem - k);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

}  // namespace modec
