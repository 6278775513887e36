#pragma once

#include <optional>
#include <vector>

#include "modec/complexnum.hpp"
#include "modec/cyclotomic.hpp"
#include "modec/rat.hpp"
#include "modec/univar.hpp"

namespace modec {

// Elliptic curve over Q in long Weierstrass form
// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
class EllipticCurveQ {
 public:
  Rat a1, a2, a3, a4, a6;
  std::string label;

  EllipticCurveQ() = default;
  EllipticCurveQ(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_, std::string label_ = "");

  Rat b2, b4, b6, b8, c4, c6, disc, j;

  // trace of Frobenius p + 1 - #E(F_p) by direct enumeration
  long ap(long p) const;
  bool good_reduction(long p) const;

  // all rational points when rank = 0 (torsion subgroup)
  std::vector<struct PointQ> mordell_weil_rank0() const;

  // x-coordinate m-division polynomial (even m carry the psi_2^2 factor)
  UniPoly division_poly(long m) const;

  // torsion order bound via #E(F_p) gcd over good primes
  Int torsion_bound() const;
};

// Affine-or-infinity point with coordinates in K.
struct PointQ {
  bool inf = true;
  Rat x, y;
  static PointQ infinity() { return PointQ{}; }
  static PointQ affine(Rat x, Rat y) { return PointQ{false, std::move(x), std::move(y)}; }
  friend bool operator==(const PointQ& p, const PointQ& q) {
    return p.inf == q.inf && (p.inf || (p.x == q.x && p.y == q.y));
  }
};

struct PointC {
  bool inf = true;
  Cyclo x, y;
  static PointC infinity() { return PointC{}; }
  static PointC affine(Cyclo x, Cyclo y) { return PointC{false, std::move(x), std::move(y)}; }
};

struct PointN {  // numeric
  bool inf = true;
  Complex x, y;
};

bool on_curve(const EllipticCurveQ& e, const PointQ& p);
bool on_curve_cyclo(const EllipticCurveQ& e, const PointC& p, long N);

PointQ add_points(const EllipticCurveQ& e, const PointQ& p, const PointQ& q);
PointQ negate_point(const EllipticCurveQ& e, const PointQ& p);
PointQ mul_point(const EllipticCurveQ& e, const PointQ& p, long n);
PointC add_points_cyclo(const EllipticCurveQ& e, const PointC& p, const PointC& q, long N);
PointN add_points_numeric(const EllipticCurveQ& e, const PointN& p, const PointN& q);

// Z-basis of the period lattice: om1 real > 0; om2 in the upper half-plane
// with Re(om2) = 0 (rectangular) or Re(om2) = om1/2 (triangular).
struct PeriodLattice {
  Real om1;
  Complex om2;
  bool triangular = false;
  long precision_bits = 0;

  Real covolume() const { return om1 * om2.im; }
};

PeriodLattice curve_periods(const EllipticCurveQ& e, long precision_bits);

// Laurent data for Weierstrass p: z^{-2} + sum d_k z^{2k}.
struct WpSeries {
  std::vector<Rat> d;  // d[k-1] = coefficient of z^{2k}
};

WpSeries wp_series(const Rat& g2, const Rat& g3, long terms);

// Numeric p and p' at z (series plus point-doubling range reduction).
PointN wp_eval(const Complex& z, const PeriodLattice& lat, const Rat& g2, const Rat& g3,
               long precision_bits);

// Eisenstein-series recomputation of g2, g3 from a lattice basis (independent
// of the AGM route; used for verification).
std::pair<Complex, Complex> lattice_invariants(const Real& om1, const Complex& om2, long bits);

// Exact element of Q(zeta_N) close to u, with denominator below `max_den`
// (integer-relation fit via LLL); nullopt when no convincing fit exists.
// accuracy_bits states how many bits of u are trustworthy (0: full precision).
std::optional<Cyclo> recognize_cyclo(const Complex& u, long N, const Int& max_den,
                                     long accuracy_bits = 0);

// Exact torsion point matching the Abel-Jacobi value z0 (within tolerance a
// lattice point combination (a om1 + b om2)/m). Numeric coordinates through
// wp_eval are recognized in Q(zeta_N) and verified exactly against the
// division polynomial and the curve equation.
std::optional<PointC> torsion_identify_cyclotomic(const EllipticCurveQ& e, const Complex& z0,
                                                  const PeriodLattice& lat, long N, long max_m,
                                                  long precision_bits);

}  // namespace modec
