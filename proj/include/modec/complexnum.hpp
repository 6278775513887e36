#pragma once

#include "modec/real.hpp"

namespace modec {

// Complex numbers over Real (no mpc dependency).
class Complex {
 public:
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
  static Complex from_rat(const Rat& r, mpfr_prec_t prec) { return Complex(Real(r, prec), Real(prec)); }

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Complex& operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
  }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }

  friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
  friend Real abs(const Complex& a) { return hypot(a.re, a.im); }

  friend Complex exp(const Complex& a) {
    Real m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
  }

  friend Complex sin(const Complex& a) {
    // sin(x + iy) = sin x cosh y + i cos x sinh y
    Real ey = exp(a.im), eyi = exp(-a.im);
    Real half(0.5, a.prec());
    Real ch = half * (ey + eyi), sh = half * (ey - eyi);
    return {sin(a.re) * ch, cos(a.re) * sh};
  }

  // Principal square root.
  friend Complex sqrt(const Complex& a) {
    if (a.im.is_zero()) {
      if (a.re.sign() >= 0) return {sqrt(a.re), Real(a.prec())};
      return {Real(a.prec()), sqrt(-a.re)};
    }
    Real m = abs(a);
    Real u = sqrt((m + a.re) * Real(0.5, a.prec()));
    Real w = sqrt((m - a.re) * Real(0.5, a.prec()));
    if (a.im.sign() < 0) w = -w;
    return {u, w};
  }

  // e^{2 pi i z}
  static Complex exp2pii(const Complex& z, mpfr_prec_t prec) {
    Real twopi = Real(2, prec) * Real::pi(prec);
    Complex w(twopi * (-z.im), twopi * z.re);  // 2 pi i z
    return exp(w);
  }

  std::string str(size_t digits = 20) const {
    return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "i";
  }
};

}  // namespace modec
