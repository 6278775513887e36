#pragma once

#include <mpfr.h>

#include <cassert>
#include <string>

#include "modec/rat.hpp"

namespace modec {

// Arbitrary-precision binary float (RAII wrapper over mpfr_t). The precision
// of a binary operation's result is the max of the operands' precisions.
class Real {
 public:
  mpfr_t v;

  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v, prec); mpfr_set_zero(v, 1); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_d(v, x, MPFR_RNDN); }
  Real(int x, mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_si(v, x, MPFR_RNDN); }
  Real(long x, mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_si(v, x, MPFR_RNDN); }
  Real(const Rat& x, mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN); }
  Real(const Int& x, mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_z(v, x.get_mpz_t(), MPFR_RNDN); }

  Real(const Real& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_swap(v, o.v); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v, mpfr_get_prec(o.v));
      mpfr_set(v, o.v, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v, o.v);
    return *this;
  }
  ~Real() { mpfr_clear(v); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v); }
  static mpfr_prec_t join(const Real& a, const Real& b) {
    return std::max(mpfr_get_prec(a.v), mpfr_get_prec(b.v));
  }

  double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v); }
  int sign() const { return mpfr_sgn(v); }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_add(r.v, a.v, b.v, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_sub(r.v, a.v, b.v, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_mul(r.v, a.v, b.v, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(join(a, b));
    mpfr_div(r.v, a.v, b.v, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v, a.v, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { mpfr_add(v, v, b.v, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(v, v, b.v, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(v, v, b.v, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(v, v, b.v, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v, b.v) == 0; }

  friend Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v, a.v, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.v, a.v, MPFR_RNDN);
    return r;
  }
  friend Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.v, a.v, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.v, a.v, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& a) {
    Real r(a.prec());
    mpfr_sin(r.v, a.v, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r(a.prec());
    mpfr_cos(r.v, a.v, MPFR_RNDN);
    return r;
  }
  friend Real atan2r(const Real& y, const Real& x) {
    Real r(join(y, x));
    mpfr_atan2(r.v, y.v, x.v, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& x, const Real& y) {
    Real r(join(y, x));
    mpfr_hypot(r.v, x.v, y.v, MPFR_RNDN);
    return r;
  }
  friend Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.v, a.v, e, MPFR_RNDN);
    return r;
  }

  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v, MPFR_RNDN);
    return r;
  }
  static Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v, 1, e, MPFR_RNDN);
    return r;
  }

  // floor(log2 |x|) + 1 for nonzero finite x
  long exp2() const { return mpfr_zero_p(v) ? -1000000 : static_cast<long>(mpfr_get_exp(v)); }

  Int round_to_int() const {
    mpfr_t t;
    mpfr_init2(t, prec());
    mpfr_round(t, v);
    Int z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
  }

  // Exact dyadic value as a rational (finite values only).
  Rat to_rat_exact() const {
    if (mpfr_zero_p(v)) return Rat(0);
    assert(mpfr_number_p(v));
    mpz_t m;
    mpz_init(m);
    mpfr_exp_t e = mpfr_get_z_2exp(m, v);
    Rat r{Int(mpz_class(m))};
    mpz_clear(m);
    if (e >= 0)
      r *= Rat(pow_int(Int(2), static_cast<unsigned long>(e)));
    else
      r /= Rat(pow_int(Int(2), static_cast<unsigned long>(-e)));
    r.canonicalize();
    return r;
  }

  std::string str(size_t digits = 20) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }
};

// Nearest rational with denominator <= max_den (Stern--Brocot / continued
// fractions on the exact dyadic value).
inline Rat nearest_rational(const Real& x, const Int& max_den) {
  Rat target = x.to_rat_exact();
  Int p0(0), q0(1), p1(1), q1(0);
  Rat frac = target;
  Int ip;
  Rat best;
  while (true) {
    Int a = Int(frac.get_num() / frac.get_den());
    if (frac < 0 && Rat(a) != frac) a -= 1;  // floor
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) {
      // best semiconvergent
      Int k = (max_den - q0) / q1;
      Int ps = k * p1 + p0, qs = k * q1 + q0;
      Rat cand1(p1, q1), cand2(ps, qs);
      cand1.canonicalize();
      cand2.canonicalize();
      Rat d1 = abs(cand1 - target), d2 = abs(cand2 - target);
      return d1 <= d2 ? cand1 : cand2;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rat rem = frac - Rat(a);
    if (rem == 0) {
      Rat exact(p1, q1);
      exact.canonicalize();
      return exact;
    }
    frac = Rat(1) / rem;
  }
}

}  // namespace modec
