#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "modec/complexnum.hpp"
#include "modec/cyclotomic.hpp"
#include "modec/rat.hpp"

namespace modec {

// Truncated series in q^{1/w}, q = e^{2 pi i z}. Term n (v <= n < prec) has
// exponent n/w. Coefficients are exact (Cyclo) or numeric (Complex).
// The all-zero-coefficients series equals the zero series up to its prec.
template <class C>
class QSeries {
 public:
  long w = 1;     // width
  long v = 0;     // valuation index
  long prec = 0;  // exclusive cutoff index
  std::vector<C> a;  // a[i] = coefficient of q^{(v+i)/w}
  C czero;           // prototype zero (carries field context)

  QSeries() : czero() {}
  QSeries(long w_, long v_, long prec_, C zero)
      : w(w_), v(v_), prec(prec_), a(prec_ > v_ ? prec_ - v_ : 0, zero), czero(zero) {}

  static QSeries zero(long w, long prec, C czero) { return QSeries(w, prec, prec, czero); }

  long nterms() const { return static_cast<long>(a.size()); }
  const C& coeff(long n) const {  // coefficient of q^{n/w}
    static thread_local C zero_store;
    if (n < v || n >= v + nterms()) {
      zero_store = czero;
      return zero_store;
    }
    return a[n - v];
  }

  bool is_zero_to_prec() const {
    for (const auto& x : a)
      if (!coeff_is_zero(x)) return false;
    return true;
  }

  // First index with nonzero stored coefficient, or prec when none.
  long first_nonzero() const {
    for (long i = 0; i < nterms(); ++i)
      if (!coeff_is_zero(a[i])) return v + i;
    return prec;
  }

  // Drop leading stored zeros (raises v; keeps prec).
  QSeries normalized() const {
    QSeries r = *this;
    long fn = first_nonzero();
    if (fn > r.v) {
      long drop = std::min<long>(fn - r.v, r.nterms());
      r.a.erase(r.a.begin(), r.a.begin() + drop);
      r.v += drop;
    }
    return r;
  }

  static bool coeff_is_zero(const C& c) {
    if constexpr (std::is_same_v<C, Cyclo>)
      return c.is_zero();
    else
      return c.is_zero();
  }

  static void check_width(const QSeries& x, const QSeries& y) {
    if (x.w != y.w) throw std::domain_error("QSeries: width mismatch (rescale first)");
  }

  friend QSeries operator+(const QSeries& x, const QSeries& y) {
    check_width(x, y);
    long v = std::min(x.v, y.v);
    long prec = std::min(x.prec, y.prec);
    QSeries r(x.w, v, prec, x.czero);
    for (long n = v; n < prec; ++n) r.a[n - v] = x.coeff(n) + y.coeff(n);
    return r.normalized();
  }
  friend QSeries operator-(const QSeries& x, const QSeries& y) {
    check_width(x, y);
    long v = std::min(x.v, y.v);
    long prec = std::min(x.prec, y.prec);
    QSeries r(x.w, v, prec, x.czero);
    for (long n = v; n < prec; ++n) r.a[n - v] = x.coeff(n) - y.coeff(n);
    return r.normalized();
  }
  friend QSeries operator-(const QSeries& x) {
    QSeries r = x;
    for (auto& c : r.a) c = -c;
    return r;
  }

  friend QSeries operator*(const QSeries& x, const QSeries& y) {
    check_width(x, y);
    // Relative precision is the min of the operands'.
    long rel = std::min(x.prec - x.v, y.prec - y.v);
    long v = x.v + y.v;
    long prec = v + rel;
    QSeries r(x.w, v, prec, x.czero);
    if (x.is_zero_to_prec() || y.is_zero_to_prec()) return QSeries::zero(x.w, prec, x.czero);
    for (long i = 0; i < x.nterms(); ++i) {
      if (coeff_is_zero(x.a[i])) continue;
      long jmax = std::min<long>(y.nterms(), rel - i);
      for (long j = 0; j < jmax; ++j) {
        if (coeff_is_zero(y.a[j])) continue;
        r.a[i + j] = r.a[i + j] + x.a[i] * y.a[j];
      }
    }
    return r;
  }

  template <class S>
  QSeries scaled(const S& s) const {
    QSeries r = *this;
    for (auto& c : r.a) c = c * s;
    return r;
  }

  // x / y; y must have an invertible leading coefficient.
  friend QSeries operator/(const QSeries& x, const QSeries& y) {
    check_width(x, y);
    QSeries yn = y.normalized();
    if (yn.is_zero_to_prec() || yn.nterms() == 0)
      throw std::domain_error("QSeries: division by series that is zero to working precision");
    long rel = std::min(x.prec - x.v, yn.prec - yn.v);
    long v = x.v - yn.v;
    QSeries r(x.w, v, v + rel, x.czero);
    C lead_inv = invert_coeff(yn.a[0]);
    // long division
    std::vector<C> rem(rel, x.czero);
    for (long i = 0; i < rel && i < x.nterms(); ++i) rem[i] = x.a[i];
    for (long k = 0; k < rel; ++k) {
      C q = rem[k] * lead_inv;
      r.a[k] = q;
      if (!coeff_is_zero(q))
        for (long j = 0; k + j < rel && j < yn.nterms(); ++j) rem[k + j] = rem[k + j] - q * yn.a[j];
    }
    return r.normalized();
  }

  static C invert_coeff(const C& c) {
    if constexpr (std::is_same_v<C, Cyclo>)
      return c.inverse();
    else {
      Complex one(1.0, 0.0, c.prec());
      return one / c;
    }
  }

  // View in width w2 (w | w2); intermediate coefficients are exactly zero.
  QSeries rescale_width(long w2) const {
    if (w2 == w) return *this;
    if (w2 % w != 0) throw std::domain_error("QSeries: new width must be a multiple");
    long k = w2 / w;
    QSeries r(w2, v * k, prec * k, czero);
    for (long i = 0; i < nterms(); ++i) r.a[i * k] = a[i];
    return r;
  }

  // q^{1/w} -> zeta_w^b q^{1/w} for exact series (zeta_w = zeta_N^{N/w}).
  QSeries twist(long b) const
    requires std::is_same_v<C, Cyclo>
  {
    long N = czero.level();
    if (N % w != 0) throw std::domain_error("QSeries::twist: width does not divide coefficient level");
    QSeries r = *this;
    for (long i = 0; i < nterms(); ++i) {
      long n = v + i;
      long e = mod_positive(Int(n) * Int(b) * Int(N / w), Int(N)).get_si();
      r.a[i] = a[i] * Cyclo::zeta(N, e);
    }
    return r;
  }
};

using CQSeries = QSeries<Cyclo>;
using NQSeries = QSeries<Complex>;

// Antiderivative F with dF/dz = 2 pi i f; a(n) q^{n/w} -> (w/n) a(n) q^{n/w}.
template <class C>
QSeries<C> antiderivative_2pii(const QSeries<C>& f) {
  QSeries<C> g = f.normalized();
  if (g.v < 1 && !g.is_zero_to_prec())
    throw std::domain_error("antiderivative_2pii: nonzero constant (or negative) term");
  QSeries<C> r = g;
  for (long i = 0; i < r.nterms(); ++i) {
    long n = r.v + i;
    if constexpr (std::is_same_v<C, Cyclo>)
      r.a[i] = r.a[i] * ratq(f.w, n);
    else
      r.a[i] = Real(ratq(f.w, n), r.a[i].prec()) * r.a[i];
  }
  return r;
}

// Formal (1/2pii) d/dz: a(n) -> (n/w) a(n).
template <class C>
QSeries<C> derivative_q(const QSeries<C>& f) {
  QSeries<C> r = f;
  for (long i = 0; i < r.nterms(); ++i) {
    long n = r.v + i;
    if constexpr (std::is_same_v<C, Cyclo>)
      r.a[i] = r.a[i] * ratq(n, f.w);
    else
      r.a[i] = Real(ratq(n, f.w), r.a[i].prec()) * r.a[i];
  }
  return r.normalized();
}

// Lower bound for the order of vanishing, in exponent units: v'/w where v' is
// the first nonzero index, or prec/w when all stored coefficients vanish.
template <class C>
Rat order_of_vanishing_lb(const QSeries<C>& f) {
  Rat r(f.first_nonzero(), f.w);
  r.canonicalize();
  return r;
}

struct EvalResult {
  Complex value;
  Real tail;  // bound on the truncation error
};

// Embed an exact series numerically: zeta_N -> e^{2 pi i / N}.
NQSeries embed(const CQSeries& f, mpfr_prec_t bits);

// Evaluate at z in the upper half-plane; reports the truncation tail bound.
// Throws if the tail exceeds 2^{-precision_bits}.
EvalResult eval_at(const NQSeries& f, const Complex& z, long precision_bits);
EvalResult eval_at(const CQSeries& f, const Complex& z, long precision_bits);

// Tail bound at |t| = |q^{1/w}| without evaluating.
Real tail_bound(const NQSeries& f, const Real& tmod);

}  // namespace modec
