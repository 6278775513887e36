#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "modec/rat.hpp"
#include "modec/univar.hpp"

namespace modec {

// Shared per-level data for Q(zeta_N): the cyclotomic polynomial, reduction
// rows for x^k with phi <= k <= 2*phi-2, and the power basis expression of
// every zeta^m with 0 <= m < N.
class CycloField {
 public:
  long N;
  long phi;
  UniPoly modulus;                       // Phi_N, monic of degree phi
  std::vector<std::vector<Rat>> redrow;  // redrow[k-phi] = x^k mod Phi_N
  std::vector<std::vector<Rat>> zpow;    // zpow[m] = zeta^m in the power basis

  static std::shared_ptr<const CycloField> get(long N) {
    static std::map<long, std::shared_ptr<const CycloField>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<const CycloField>(new CycloField(N));
    cache.emplace(N, f);
    return f;
  }

 private:
  explicit CycloField(long N_) : N(N_) {
    if (N < 1) throw std::invalid_argument("CycloField: N must be positive");
    modulus = cyclotomic_polynomial(N);
    phi = modulus.degree();
    assert(phi == euler_phi(N));
    // x^k mod Phi, computed iteratively from x^phi = -(lower terms)
    std::vector<Rat> cur(phi, Rat(0));  // representing x^{phi} ... start
    for (long i = 0; i < phi; ++i) cur[i] = -modulus.coeff(i);
    redrow.push_back(cur);
    for (long k = phi + 1; k <= 2 * phi - 2; ++k) {
      std::vector<Rat> nxt(phi, Rat(0));
      // multiply cur by x
      Rat top = cur[phi - 1];
      for (long i = phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
      nxt[0] = 0;
      if (top != 0)
        for (long i = 0; i < phi; ++i) nxt[i] += top * redrow[0][i];
      redrow.push_back(nxt);
      cur = nxt;
    }
    zpow.assign(N, std::vector<Rat>(phi, Rat(0)));
    std::vector<Rat> p(phi, Rat(0));
    p[0] = 1;
    for (long m = 0; m < N; ++m) {
      zpow[m] = p;
      // p *= x
      std::vector<Rat> nxt(phi, Rat(0));
      Rat top = p[phi - 1];
      for (long i = phi - 1; i > 0; --i) nxt[i] = p[i - 1];
      nxt[0] = 0;
      if (top != 0)
        for (long i = 0; i < phi; ++i) nxt[i] += top * redrow[0][i];
      p = nxt;
    }
  }
};

// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi-1},
// always fully reduced modulo Phi_N.
class Cyclo {
 public:
  std::shared_ptr<const CycloField> field;
  std::vector<Rat> c;  // length phi

  Cyclo() : field(CycloField::get(1)), c(1, Rat(0)) {}
  explicit Cyclo(long N) : field(CycloField::get(N)), c(field->phi, Rat(0)) {}
  Cyclo(long N, const Rat& r) : field(CycloField::get(N)), c(field->phi, Rat(0)) { c[0] = r; }
  Cyclo(std::shared_ptr<const CycloField> f, std::vector<Rat> coeffs)
      : field(std::move(f)), c(std::move(coeffs)) {
    assert(static_cast<long>(c.size()) == field->phi);
  }

  static Cyclo zeta(long N, long power = 1) {
    Cyclo r(N);
    r.c = r.field->zpow[mod_positive(Int(power), Int(N)).get_si()];
    return r;
  }
  static Cyclo from_rat(long N, const Rat& r) { return Cyclo(N, r); }

  long level() const { return field->N; }
  long phi() const { return field->phi; }

  bool is_zero() const {
    for (auto& x : c)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }
  const Rat& rational_part() const { return c[0]; }
  Rat as_rational() const {
    if (!is_rational()) throw std::domain_error("Cyclo: not rational");
    return c[0];
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    return a.level() == b.level() && a.c == b.c;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  static void check_level(const Cyclo& a, const Cyclo& b) {
    if (a.level() != b.level())
      throw std::domain_error("Cyclo: level mismatch (" + std::to_string(a.level()) + " vs " +
                              std::to_string(b.level()) + ")");
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    check_level(a, b);
    Cyclo r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    check_level(a, b);
    Cyclo r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend Cyclo operator-(const Cyclo& a) {
    Cyclo r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    check_level(a, b);
    long phi = a.field->phi;
    std::vector<Rat> prod(2 * phi - 1, Rat(0));
    for (long i = 0; i < phi; ++i) {
      if (a.c[i] == 0) continue;
      for (long j = 0; j < phi; ++j) {
        if (b.c[j] == 0) continue;
        prod[i + j] += a.c[i] * b.c[j];
      }
    }
    std::vector<Rat> red(prod.begin(), prod.begin() + phi);
    for (long k = phi; k <= 2 * phi - 2; ++k) {
      if (prod[k] == 0) continue;
      const auto& row = a.field->redrow[k - phi];
      for (long i = 0; i < phi; ++i) red[i] += prod[k] * row[i];
    }
    return Cyclo(a.field, std::move(red));
  }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

  friend Cyclo operator*(const Rat& s, const Cyclo& a) {
    Cyclo r = a;
    for (auto& x : r.c) x *= s;
    return r;
  }
  friend Cyclo operator*(const Cyclo& a, const Rat& s) { return s * a; }

  // Inverse via extended Euclid in Q[x] against Phi_N.
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("Cyclo: division by zero");
    UniPoly a{std::vector<Rat>(c)};
    UniPoly b = field->modulus;
    // Bezout: s*a + t*b = g
    UniPoly s0 = UniPoly::constant(Rat(1)), s1;
    UniPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
      auto [q, r2] = UniPoly::divmod(r0, r1);
      UniPoly s2 = s0 - q * s1;
      r0 = r1;
      r1 = r2;
      s0 = s1;
      s1 = s2;
    }
    // r0 = gcd = nonzero constant (Phi_N is irreducible over Q)
    assert(r0.degree() == 0);
    UniPoly inv = (Rat(1) / r0.coeff(0)) * s0;
    std::vector<Rat> red(field->phi, Rat(0));
    for (size_t i = 0; i < inv.c.size() && i < red.size(); ++i) red[i] = inv.c[i];
    // inv may have degree >= phi only if a wasn't reduced; ours always is
    assert(inv.degree() < field->phi);
    return Cyclo(field, std::move(red));
  }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  // Galois twist zeta -> zeta^k, gcd(k, N) = 1.
  Cyclo galois(long k) const {
    long N = level();
    long kk = static_cast<long>(mod_positive(Int(k), Int(N)).get_si());
    if (gcd_long(kk, N) != 1) throw std::domain_error("Cyclo::galois: k not coprime to level");
    Cyclo r(field, std::vector<Rat>(field->phi, Rat(0)));
    for (long i = 0; i < field->phi; ++i) {
      if (c[i] == 0) continue;
      const auto& row = field->zpow[(i * kk) % N];
      for (long j = 0; j < field->phi; ++j) r.c[j] += c[i] * row[j];
    }
    return r;
  }

  // Complex conjugation
  Cyclo conj() const { return level() == 1 ? *this : galois(level() - 1); }

  std::string str() const {
    std::string out;
    bool first = true;
    for (long i = 0; i < field->phi; ++i) {
      if (c[i] == 0) continue;
      if (!first) out += " + ";
      out += c[i].get_str();
      if (i >= 1) out += "*z^" + std::to_string(i);
      first = false;
    }
    return first ? "0" : out;
  }
};

}  // namespace modec
