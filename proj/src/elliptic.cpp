#include "modec/elliptic.hpp"

#include <algorithm>
#include <cassert>
#include <complex>
#include <map>
#include <stdexcept>

#include "modec/lll.hpp"

namespace modec {

EllipticCurveQ::EllipticCurveQ(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_, std::string label_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)),
      label(std::move(label_)) {
  b2 = a1 * a1 + 4 * a2;
  b4 = 2 * a4 + a1 * a3;
  b6 = a3 * a3 + 4 * a6;
  b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c4 = b2 * b2 - 24 * b4;
  c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) throw std::domain_error("EllipticCurveQ: singular curve (disc = 0)");
  j = c4 * c4 * c4 / disc;
}

namespace {

// Scale (x,y) -> (u^2 x, u^3 y) so all a-invariants become integral.
EllipticCurveQ integral_model(const EllipticCurveQ& e, Int& scale_out) {
  Int u(1);
  u = lcm(u, e.a1.get_den());
  u = lcm(u, e.a2.get_den());
  u = lcm(u, e.a3.get_den());
  u = lcm(u, e.a4.get_den());
  u = lcm(u, e.a6.get_den());
  scale_out = u;
  Rat ur(u);
  return EllipticCurveQ(e.a1 * ur, e.a2 * ur * ur, e.a3 * ur * ur * ur, e.a4 * pow_rat(ur, 4),
                        e.a6 * pow_rat(ur, 6), e.label);
}

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long r = 1;
  // Euler's criterion with fast exponentiation
  long e = (p - 1) / 2, base = a, acc = 1;
  while (e) {
    if (e & 1) acc = (acc * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  r = acc == 1 ? 1 : -1;
  return r;
}

}  // namespace

bool EllipticCurveQ::good_reduction(long p) const {
  Int u;
  EllipticCurveQ ei = integral_model(*this, u);
  if (mod_positive(u, Int(p)) == 0) return false;
  return mod_positive(ei.disc.get_num(), Int(p)) != 0;
}

long EllipticCurveQ::ap(long p) const {
  Int u;
  EllipticCurveQ ei = integral_model(*this, u);
  if (!good_reduction(p)) throw std::domain_error("ap: bad reduction at p = " + std::to_string(p));
  auto red = [&](const Rat& r) {
    return static_cast<long>(mpz_fdiv_ui(Int(r).get_mpz_t(), static_cast<unsigned long>(p)));
  };
  long A1 = red(ei.a1), A2 = red(ei.a2), A3 = red(ei.a3), A4 = red(ei.a4), A6 = red(ei.a6);
  long count = 1;  // point at infinity
  if (p == 2) {
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y) {
        long lhs = (y * y + A1 * x * y + A3 * y) % 2;
        long rhs = (x * x * x + A2 * x * x + A4 * x + A6) % 2;
        if (lhs == rhs) ++count;
      }
    return p + 1 - count;
  }
  for (long x = 0; x < p; ++x) {
    // complete the square: (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2
    long rhs = (((x * x) % p) * x + A2 * ((x * x) % p) + A4 * x + A6) % p;
    long lin = (A1 * x + A3) % p;
    long d = (4 * rhs % p + lin * lin) % p;
    count += 1 + legendre(d, p);
  }
  return p + 1 - count;
}

bool on_curve(const EllipticCurveQ& e, const PointQ& p) {
  if (p.inf) return true;
  Rat lhs = p.y * p.y + e.a1 * p.x * p.y + e.a3 * p.y;
  Rat rhs = p.x * p.x * p.x + e.a2 * p.x * p.x + e.a4 * p.x + e.a6;
  return lhs == rhs;
}

bool on_curve_cyclo(const EllipticCurveQ& e, const PointC& p, long N) {
  if (p.inf) return true;
  auto C = [&](const Rat& r) { return Cyclo(N, r); };
  Cyclo lhs = p.y * p.y + C(e.a1) * p.x * p.y + C(e.a3) * p.y;
  Cyclo rhs = p.x * p.x * p.x + C(e.a2) * p.x * p.x + C(e.a4) * p.x + C(e.a6);
  return lhs == rhs;
}

PointQ negate_point(const EllipticCurveQ& e, const PointQ& p) {
  if (p.inf) return p;
  return PointQ::affine(p.x, -p.y - e.a1 * p.x - e.a3);
}

PointQ add_points(const EllipticCurveQ& e, const PointQ& p, const PointQ& q) {
  if (!on_curve(e, p) || !on_curve(e, q)) throw std::domain_error("add_points: input not on curve");
  if (p.inf) return q;
  if (q.inf) return p;
  if (p.x == q.x && q.y == -p.y - e.a1 * p.x - e.a3) return PointQ::infinity();
  Rat lam, nu;
  if (p.x == q.x) {
    Rat den = 2 * p.y + e.a1 * p.x + e.a3;
    lam = (3 * p.x * p.x + 2 * e.a2 * p.x + e.a4 - e.a1 * p.y) / den;
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
  }
  nu = p.y - lam * p.x;
  Rat x3 = lam * lam + e.a1 * lam - e.a2 - p.x - q.x;
  Rat y3 = -(lam + e.a1) * x3 - nu - e.a3;
  return PointQ::affine(x3, y3);
}

PointQ mul_point(const EllipticCurveQ& e, const PointQ& p, long n) {
  PointQ acc = PointQ::infinity();
  PointQ base = p;
  if (n < 0) {
    base = negate_point(e, p);
    n = -n;
  }
  while (n) {
    if (n & 1) acc = add_points(e, acc, base);
    base = add_points(e, base, base);
    n >>= 1;
  }
  return acc;
}

PointC add_points_cyclo(const EllipticCurveQ& e, const PointC& p, const PointC& q, long N) {
  if (!on_curve_cyclo(e, p, N) || !on_curve_cyclo(e, q, N))
    throw std::domain_error("add_points_cyclo: input not on curve");
  if (p.inf) return q;
  if (q.inf) return p;
  auto C = [&](const Rat& r) { return Cyclo(N, r); };
  if (p.x == q.x && q.y == -p.y - C(e.a1) * p.x - C(e.a3)) return PointC::infinity();
  Cyclo lam(N);
  if (p.x == q.x) {
    Cyclo den = Rat(2) * p.y + C(e.a1) * p.x + C(e.a3);
    lam = (Rat(3) * p.x * p.x + Rat(2) * C(e.a2) * p.x + C(e.a4) - C(e.a1) * p.y) / den;
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
  }
  Cyclo nu = p.y - lam * p.x;
  Cyclo x3 = lam * lam + C(e.a1) * lam - C(e.a2) - p.x - q.x;
  Cyclo y3 = -(lam + C(e.a1)) * x3 - nu - C(e.a3);
  return PointC::affine(x3, y3);
}

PointN add_points_numeric(const EllipticCurveQ& e, const PointN& p, const PointN& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  mpfr_prec_t bits = std::max(p.x.prec(), q.x.prec());
  auto C = [&](const Rat& r) { return Complex::from_rat(r, bits); };
  Real eps = Real::pow2(-static_cast<long>(bits) / 2, bits);
  Complex neg_qy = -q.y - C(e.a1) * q.x - C(e.a3);
  if (abs(p.x - q.x) < eps && abs(p.y - neg_qy) < eps) return PointN{};
  Complex lam(bits);
  if (abs(p.x - q.x) < eps) {
    Complex den = Real(2, bits) * p.y + C(e.a1) * p.x + C(e.a3);
    lam = (Real(3, bits) * p.x * p.x + Real(2, bits) * C(e.a2) * p.x + C(e.a4) - C(e.a1) * p.y) / den;
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
  }
  Complex nu = p.y - lam * p.x;
  Complex x3 = lam * lam + C(e.a1) * lam - C(e.a2) - p.x - q.x;
  Complex y3 = -(lam + C(e.a1)) * x3 - nu - C(e.a3);
  return PointN{false, x3, y3};
}

UniPoly EllipticCurveQ::division_poly(long m) const {
  if (m < 1) throw std::domain_error("division_poly: m must be >= 1");
  // P_m in Q[x] with psi_m = P_m (m odd), psi_m = P_m * psi_2 (m even);
  // B = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
  UniPoly B(std::vector<Rat>{b6, 2 * b4, b2, Rat(4)});
  std::map<long, UniPoly> memo;
  memo[-1] = UniPoly::constant(Rat(-1));
  memo[0] = UniPoly();
  memo[1] = UniPoly::constant(Rat(1));
  memo[2] = UniPoly::constant(Rat(1));
  memo[3] = UniPoly(std::vector<Rat>{b8, 3 * b6, 3 * b4, b2, Rat(3)});
  memo[4] = UniPoly(std::vector<Rat>{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4,
                                     b2, Rat(2)});
  auto P = [&](auto&& self, long k) -> UniPoly {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    UniPoly r;
    long h = k / 2;
    if (k % 2 == 0) {
      r = self(self, h) *
          (self(self, h + 2) * self(self, h - 1) * self(self, h - 1) -
           self(self, h - 2) * self(self, h + 1) * self(self, h + 1));
    } else {
      UniPoly t1 = self(self, h + 2) * self(self, h) * self(self, h) * self(self, h);
      UniPoly t2 = self(self, h - 1) * self(self, h + 1) * self(self, h + 1) * self(self, h + 1);
      if (h % 2 == 0)
        r = t1 * B * B - t2;
      else
        r = t1 - t2 * B * B;
    }
    memo[k] = r;
    return r;
  };
  UniPoly pm = P(P, m);
  if (m % 2 == 0) pm = pm * B;
  return pm;
}

Int EllipticCurveQ::torsion_bound() const {
  Int bound(0);
  int used = 0;
  for (long p = 3; used < 8 && p < 200; ++p) {
    if (!is_prime(Int(p)) || !good_reduction(p)) continue;
    Int npts(p + 1 - ap(p));
    bound = gcd(bound, npts);
    ++used;
  }
  return bound == 0 ? Int(1) : bound;
}

std::vector<PointQ> EllipticCurveQ::mordell_weil_rank0() const {
  Int bound = torsion_bound();
  std::vector<PointQ> points{PointQ::infinity()};
  long B = to_long(bound);
  for (long m = 2; m <= B; ++m) {
    if (B % m != 0) continue;
    UniPoly pm = division_poly(m);
    for (const Rat& x : rational_roots(pm)) {
      // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
      Rat lin = a1 * x + a3;
      Rat rhs = x * x * x + a2 * x * x + a4 * x + a6;
      Rat d = lin * lin + 4 * rhs;
      if (d < 0) continue;
      // rational square root test
      Int num = d.get_num(), den = d.get_den();
      Int rn = isqrt(num), rd = isqrt(den);
      if (rn * rn != num || rd * rd != den) continue;
      Rat sq(rn, rd);
      sq.canonicalize();
      for (int sgn : {1, -1}) {
        Rat y = (-lin + sgn * 2 * sq) / 2 - (sgn == 1 ? Rat(0) : Rat(0));
        y = (-lin + Rat(sgn) * sq) / 2;
        PointQ pt = PointQ::affine(x, y);
        if (!on_curve(*this, pt)) continue;
        // order must divide B
        if (!mul_point(*this, pt, B).inf) continue;
        if (std::find(points.begin(), points.end(), pt) == points.end()) points.push_back(pt);
      }
    }
  }
  return points;
}

// ---------------------------------------------------------------------------
// Periods via the arithmetic-geometric mean.

namespace {

Complex agm(Complex a, Complex b, long bits) {
  Real eps = Real::pow2(-static_cast<long>(bits) + 8, bits);
  for (int it = 0; it < 4 * 64 && it < 4096; ++it) {
    Complex am = (a + b) * Complex(0.5, 0.0, bits);
    Complex gm = sqrt(a * b);
    // right choice: |am - gm| <= |am + gm|
    if (abs(am - gm) > abs(am + gm)) gm = -gm;
    a = am;
    b = gm;
    if (abs(a - b) < eps * abs(a)) break;
  }
  return a;
}

// roots of 4x^3 - g2 x - g3 (Newton polish from double seeds)
std::vector<Complex> cubic_roots(const Rat& g2, const Rat& g3, long bits) {
  // double-precision seeds by Cardano on x^3 + px + q
  double p = -g2.get_d() / 4.0, q = -g3.get_d() / 4.0;
  std::vector<std::complex<double>> seeds;
  {
    std::complex<double> disc = std::complex<double>(q * q / 4.0 + p * p * p / 27.0);
    std::complex<double> u = std::pow(-q / 2.0 + std::sqrt(disc), 1.0 / 3.0);
    if (std::abs(u) < 1e-12) u = std::pow(-q / 2.0 - std::sqrt(disc), 1.0 / 3.0);
    std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
      std::complex<double> uu = u * std::pow(w, k);
      seeds.push_back(uu - p / (3.0 * uu));
    }
  }
  std::vector<Complex> roots;
  for (auto s : seeds) {
    Complex x(s.real(), s.imag(), bits);
    Complex cg2 = Complex::from_rat(g2, bits), cg3 = Complex::from_rat(g3, bits);
    for (int it = 0; it < 200; ++it) {
      Complex f = Real(4, bits) * x * x * x - cg2 * x - cg3;
      Complex df = Real(12, bits) * x * x - cg2;
      Complex step = f / df;
      x = x - step;
      if (abs(step) < Real::pow2(-static_cast<long>(bits), bits) * (Real(1, bits) + abs(x))) break;
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace

PeriodLattice curve_periods(const EllipticCurveQ& e, long precision_bits) {
  long bits = precision_bits + 64;
  Rat g2 = e.c4 / 12, g3 = e.c6 / 216;
  auto roots = cubic_roots(g2, g3, bits);
  Real pi = Real::pi(bits);
  PeriodLattice lat;
  lat.precision_bits = precision_bits;
  if (e.disc > 0) {
    // three real roots e1 > e2 > e3
    std::sort(roots.begin(), roots.end(),
              [](const Complex& a, const Complex& b) { return a.re > b.re; });
    Real e1 = roots[0].re, e2 = roots[1].re, e3 = roots[2].re;
    Real m1 = agm(Complex(sqrt(e1 - e3), Real(bits)), Complex(sqrt(e1 - e2), Real(bits)), bits).re;
    Real m2 = agm(Complex(sqrt(e1 - e3), Real(bits)), Complex(sqrt(e2 - e3), Real(bits)), bits).re;
    lat.om1 = pi / m1;
    lat.om2 = Complex(Real(bits), pi / m2);
    lat.triangular = false;
  } else {
    // one real root; complex pair e2 = conj(e3)
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
      return abs(a.im) < abs(b.im);
    });
    Complex e1 = roots[0];
    Complex e2 = roots[1].im.sign() > 0 ? roots[1] : roots[2];
    Complex e3 = roots[1].im.sign() > 0 ? roots[2] : roots[1];
    Complex m1 = agm(sqrt(e1 - e3), sqrt(e1 - e2), bits);
    Complex pic(pi, Real(bits));
    Complex om1 = pic / m1;
    // om1 is real up to rounding; the second period comes from the conjugate pair
    Complex m2 = agm(sqrt(e1 - e3), sqrt(e2 - e3), bits);
    Complex om2 = Complex(Real(bits), pi) / m2;
    // normalize to Re(om2) = om1/2, Im > 0
    Real re1 = abs(om1.re);
    Complex b2c = om2;
    if (b2c.im.sign() < 0) b2c = -b2c;
    // reduce real part into [0, om1)
    Real k = b2c.re / re1;
    Int kk = k.round_to_int();
    b2c = b2c - Complex(Real(kk, bits) * re1, Real(bits));
    if (b2c.re.sign() < 0) b2c = b2c + Complex(re1, Real(bits));
    // expect Re = om1/2 for disc < 0
    lat.om1 = re1;
    lat.om2 = Complex(re1 * Real(0.5, bits), b2c.im);
    lat.triangular = true;
  }
  if (lat.om1.sign() < 0) lat.om1 = -lat.om1;
  return lat;
}

std::pair<Complex, Complex> lattice_invariants(const Real& om1, const Complex& om2, long bits) {
  // tau = om2/om1, q = e^{2 pi i tau}; E4, E6 q-series; then
  // g2 = (4 pi^4 / 3) E4 / om1^4, g3 = (8 pi^6 / 27) E6 / om1^6.
  Complex tau = om2 / Complex(om1, Real(bits));
  Complex q = Complex::exp2pii(tau, bits);
  auto sigma = [](long n, int k) {
    Int s(0);
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) s += pow_int(Int(d), k);
    return s;
  };
  Complex e4(1.0, 0.0, bits), e6(1.0, 0.0, bits);
  Complex qp(1.0, 0.0, bits);
  long terms = std::max<long>(40, bits / 3);
  for (long n = 1; n <= terms; ++n) {
    qp *= q;
    e4 += Real(Rat(240 * Rat(sigma(n, 3))), bits) * qp;
    e6 -= Real(Rat(504 * Rat(sigma(n, 5))), bits) * qp;
  }
  Real pi = Real::pi(bits);
  Real pi4 = pow_si(pi, 4), pi6 = pow_si(pi, 6);
  Complex g2 = Real(Rat(4, 3), bits) * pi4 * e4 / Complex(pow_si(om1, 4), Real(bits));
  Complex g3 = Real(Rat(8, 27), bits) * pi6 * e6 / Complex(pow_si(om1, 6), Real(bits));
  return {g2, g3};
}

WpSeries wp_series(const Rat& g2, const Rat& g3, long terms) {
  if (terms < 1) throw std::domain_error("wp_series: terms must be >= 1");
  WpSeries w;
  w.d.resize(terms);
  if (terms >= 1) w.d[0] = g2 / 20;
  if (terms >= 2) w.d[1] = g3 / 28;
  for (long k = 3; k <= terms; ++k) {
    Rat s(0);
    for (long m = 1; m <= k - 2; ++m) s += w.d[m - 1] * w.d[k - 1 - m - 1];
    w.d[k - 1] = Rat(3) / Rat((2 * k + 3) * (k - 2)) * s;
  }
  return w;
}

PointN wp_eval(const Complex& z0, const PeriodLattice& lat, const Rat& g2, const Rat& g3,
               long precision_bits) {
  long bits = precision_bits + 64;
  // reduce z modulo the lattice toward 0
  Complex z = z0;
  Real om1 = lat.om1;
  Complex om2 = lat.om2;
  Int n2 = (z.im / om2.im).round_to_int();
  z = z - Real(n2, bits) * om2;
  Int n1 = (z.re / om1).round_to_int();
  z = z - Complex(Real(n1, bits) * om1, Real(bits));
  if (abs(z) < Real::pow2(-precision_bits, bits)) return PointN{};  // lattice point
  // halve until |z| is well inside the series radius
  Real rmin = om1 < abs(om2) ? om1 : abs(om2);
  Complex zs = z;
  int halvings = 0;
  Real target = Real(0.35, bits) * rmin;
  while (abs(zs) > target) {
    zs = zs * Complex(0.5, 0.0, bits);
    ++halvings;
  }
  // series evaluation: p(z) = z^-2 + sum d_k z^{2k}; |zs| <= 0.35 rmin gives
  // about 3 bits per term
  long terms = bits / 3 + 24;
  WpSeries w = wp_series(g2, g3, terms);
  Complex z2 = zs * zs;
  Complex acc(bits);
  for (long k = terms; k >= 1; --k) acc = (acc + Complex::from_rat(w.d[k - 1], bits)) * z2;
  Complex p = Complex(1.0, 0.0, bits) / z2 + acc;
  // p' by term-wise derivative: -2 z^-3 + sum 2k d_k z^{2k-1}
  Complex dacc(bits);
  for (long k = terms; k >= 1; --k) {
    dacc = dacc * z2;
    dacc += Real(2 * k, bits) * Complex::from_rat(w.d[k - 1], bits);
  }
  Complex pp = Real(-2, bits) * Complex(1.0, 0.0, bits) / (z2 * zs) + dacc * zs;
  // double back on the short Weierstrass curve Y^2 = 4X^3 - g2 X - g3
  // via (X, Y) -> duplication using the numeric group law on y^2 = x^3 + ...
  // translated model: x = X, y = Y/2 on y^2 = x^3 - (g2/4) x - (g3/4).
  EllipticCurveQ eshort(Rat(0), Rat(0), Rat(0), -g2 / 4, -g3 / 4);
  PointN pt{false, p, pp * Complex(0.5, 0.0, bits)};
  for (int i = 0; i < halvings; ++i) pt = add_points_numeric(eshort, pt, pt);
  if (pt.inf) return pt;
  return PointN{false, pt.x, Real(2, bits) * pt.y};
}

std::optional<Cyclo> recognize_cyclo(const Complex& u, long N, const Int& max_den,
                                     long accuracy_bits) {
  long bits = u.prec();
  if (accuracy_bits <= 0 || accuracy_bits > bits - 16) accuracy_bits = bits - 16;
  auto field = CycloField::get(N);
  long phi = field->phi;
  // integer relation lattice: rows span {zeta^i} and u with weighted
  // real/imag columns; a short vector gives d*u = sum n_i zeta^i. The scale
  // must not exceed the trustworthy bits of u, or noise drowns the relation.
  long scale_bits = accuracy_bits - 10;
  Real sc = Real::pow2(scale_bits, bits);
  Real twopi = Real(2, bits) * Real::pi(bits);
  std::vector<std::vector<Int>> basis(phi + 1, std::vector<Int>(phi + 1 + 2, Int(0)));
  for (long i = 0; i < phi; ++i) {
    Real ang = twopi * Real(ratq(i, N), bits);
    basis[i][0] = (sc * cos(ang)).round_to_int();
    basis[i][1] = (sc * sin(ang)).round_to_int();
    basis[i][2 + i] = 1;
  }
  basis[phi][0] = (sc * u.re).round_to_int();
  basis[phi][1] = (sc * u.im).round_to_int();
  // weight chosen so that using u once is "free" but denominators stay small
  basis[phi][2 + phi] = 1;
  lll_reduce(basis);
  // find a short vector with nonzero u-coefficient
  for (const auto& v : basis) {
    Int d = v[2 + phi];
    if (d == 0) continue;
    if (abs(Rat(d)) > Rat(max_den)) continue;
    std::vector<Rat> coeffs(phi);
    for (long i = 0; i < phi; ++i) {
      coeffs[i] = Rat(-v[2 + i], d);
      coeffs[i].canonicalize();
      if (abs(coeffs[i].get_den()) > max_den) return std::nullopt;
    }
    Cyclo cand(field, std::move(coeffs));
    // residual must be tiny relative to the scale
    Real resid = hypot(Real(v[0], bits), Real(v[1], bits)) / sc;
    if (resid > Real::pow2(-(scale_bits / 3), bits)) return std::nullopt;
    return cand;
  }
  return std::nullopt;
}

std::optional<PointC> torsion_identify_cyclotomic(const EllipticCurveQ& e, const Complex& z0,
                                                  const PeriodLattice& lat, long N, long max_m,
                                                  long precision_bits) {
  long bits = precision_bits + 32;
  // lattice coordinates: z0 = s om1 + t om2
  Real t = z0.im / lat.om2.im;
  Real s = (z0.re - t * lat.om2.re) / lat.om1;
  Rat sr = nearest_rational(s, Int(max_m));
  Rat tr = nearest_rational(t, Int(max_m));
  // tolerance check
  Real ds = abs(s - Real(sr, bits)), dt = abs(t - Real(tr, bits));
  Real tol = Real(1e-8, bits);
  if (ds > tol || dt > tol) return std::nullopt;
  Int m = lcm(sr.get_den(), tr.get_den());
  if (m == 1) return PointC::infinity();
  // numeric coordinates
  Rat g2 = e.c4 / 12, g3 = e.c6 / 216;
  PointN pn = wp_eval(z0, lat, g2, g3, precision_bits);
  if (pn.inf) return PointC::infinity();
  // model correspondence: x = X - b2/12, y = (Y - a1 x - a3)/2
  Complex x = pn.x - Complex::from_rat(e.b2 / 12, bits);
  Complex y = (pn.y - Complex::from_rat(e.a1, bits) * x - Complex::from_rat(e.a3, bits)) *
              Complex(0.5, 0.0, bits);
  Int max_den = pow_int(Int(10), 6);
  auto xc = recognize_cyclo(x, N, max_den, precision_bits);
  auto yc = recognize_cyclo(y, N, max_den, precision_bits);
  if (!xc || !yc) return std::nullopt;
  PointC pt = PointC::affine(*xc, *yc);
  if (!on_curve_cyclo(e, pt, N)) return std::nullopt;
  // division polynomial check: x is a root of the m-division polynomial
  UniPoly pm = e.division_poly(to_long(m));
  Cyclo val(N);
  Cyclo xpow(N, Rat(1));
  for (long i = 0; i <= pm.degree(); ++i) {
    if (pm.coeff(i) != 0) val += xpow * pm.coeff(i);
    xpow = xpow * (*xc);
  }
  if (!val.is_zero()) return std::nullopt;
  return pt;
}

}  // namespace modec
