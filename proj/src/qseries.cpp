#include "modec/qseries.hpp"

namespace modec {

NQSeries embed(const CQSeries& f, mpfr_prec_t bits) {
  long N = f.czero.level();
  long phi = f.czero.phi();
  // zeta^k for k < phi
  std::vector<Complex> zp;
  zp.reserve(phi);
  Real twopi = Real(2, bits) * Real::pi(bits);
  for (long k = 0; k < phi; ++k) {
    Real ang = twopi * Real(ratq(k, N), bits);
    zp.emplace_back(cos(ang), sin(ang));
  }
  NQSeries r(f.w, f.v, f.prec, Complex(bits));
  for (long i = 0; i < f.nterms(); ++i) {
    Complex c(bits);
    for (long k = 0; k < phi; ++k)
      if (f.a[i].c[k] != 0) c += Real(f.a[i].c[k], bits) * zp[k];
    r.a[i] = c;
  }
  return r;
}

Real tail_bound(const NQSeries& f, const Real& tmod) {
  mpfr_prec_t bits = tmod.prec();
  if (tmod >= Real(1, bits)) {
    Real inf(bits);
    mpfr_set_inf(inf.v, 1);
    return inf;
  }
  // Scale by the largest coefficient magnitude near the cutoff; headroom
  // factor 16 absorbs slow (divisor-bound) coefficient growth.
  Real m(1, bits);
  long lo = std::max<long>(0, f.nterms() - 12);
  for (long i = lo; i < f.nterms(); ++i) {
    Real am = abs(f.a[i]);
    if (am > m) m = am;
  }
  Real tp = pow_si(tmod, f.prec);
  return Real(16, bits) * m * tp / (Real(1, bits) - tmod);
}

EvalResult eval_at(const NQSeries& f, const Complex& z, long precision_bits) {
  mpfr_prec_t bits = std::max<mpfr_prec_t>(f.czero.prec(), precision_bits + 32);
  // t = e^{2 pi i z / w}
  Complex zw = Complex(z.re / Real(f.w, bits), z.im / Real(f.w, bits));
  Complex t = Complex::exp2pii(zw, bits);
  Real tmod = abs(t);
  Real tb = tail_bound(f, tmod);
  if (!(tb < Real::pow2(-precision_bits, bits)))
    throw std::domain_error("eval_at: tail bound " + tb.str(6) + " exceeds requested accuracy 2^-" +
                            std::to_string(precision_bits));
  // Horner from the top stored index down, then multiply by t^v.
  Complex acc(bits);
  for (long i = f.nterms(); i-- > 0;) acc = acc * t + f.a[i];
  long vv = f.v;
  Complex tv(1.0, 0.0, bits);
  long e = vv >= 0 ? vv : -vv;
  Complex base = t;
  while (e) {
    if (e & 1) tv *= base;
    base *= base;
    e >>= 1;
  }
  if (vv >= 0)
    acc = acc * tv;
  else
    acc = acc / tv;
  return {acc, tb};
}

EvalResult eval_at(const CQSeries& f, const Complex& z, long precision_bits) {
  return eval_at(embed(f, precision_bits + 32), z, precision_bits);
}

}  // namespace modec
