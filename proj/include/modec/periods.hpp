#pragma once

#include <map>
#include <random>
#include <vector>

#include "modec/bundle.hpp"
#include "modec/elliptic.hpp"
#include "modec/qseries.hpp"
#include "modec/sl2z.hpp"

namespace modec {

// Numeric integration machinery for one weight-2 form given by its per-cusp
// exact expansions. All integrals reduce to values of the antiderivative of
// slashed expansions at points with Im >= sqrt(3)/2, where the q-series
// converge fast.
class PeriodEvaluator {
 public:
  PeriodEvaluator(const CurveBundle& b, const std::vector<CQSeries>& form, long precision_bits);

  // phi(g) = 2 pi i int_i^{g(i)} f, g arbitrary in SL2(Z) (for g in Gamma this
  // is the period homomorphism).
  Complex period(const MatZ& g);

  // 2 pi i int_infinity^{alpha_j(infinity)} f (the cusp Abel-Jacobi value).
  Complex cusp_integral(long cusp_index);

  // Value of the antiderivative of f|g at u (Im u >= sqrt(3)/2 - eps).
  Complex antiderivative_at(const MatZ& g, const Complex& u);

  long bits() const { return bits_; }
  // largest reported eval tail bound so far
  const Real& tail() const { return tail_; }

 private:
  const CurveBundle& b_;
  long bits_;
  std::vector<NQSeries> F_;  // embedded antiderivative per cusp
  Real tail_;
  std::map<std::tuple<long, long, long, long>, Complex> memo_;  // (cusp, b, re_q, im_q-ish)

  Complex eval_F(long cusp, const Complex& u, long shift);
};

struct PeriodSample {
  std::vector<MatZ> matrices;
  std::vector<Complex> values;
  long precision_bits = 0;
};

// Generator lifts (Schreier generators of G meet SL2 lifted to SL2(Z)) plus
// random kernel words, `count` matrices in total, and their periods.
PeriodSample sample_periods(const CurveBundle& b, PeriodEvaluator& ev, long count, long max_len,
                            std::mt19937_64& rng);

struct RecognizedLattice {
  Real om1;
  Complex om2;
  bool triangular = false;
  bool degenerate = false;  // no imaginary part seen (rank 1)
  std::vector<std::pair<Int, Int>> coords;  // sample = a om1 + b om2
};

// Divide real/imaginary parts by the minimal nonzero ones, round to rationals
// with numerator and denominator <= 100, and return the generated Z-lattice
// in normalized shape. Throws when rounding fails the bound.
RecognizedLattice recognize_lattice(const PeriodSample& s);

struct DegreeReport {
  std::string isogeny_class;
  std::string optimal_curve;
  Rat manin_c;
  long degree = 0;
};

// The curve in the class whose period lattice matches c * (recognized
// lattice) for a Manin constant c with numerator 1 (tolerance 1e-6).
std::pair<EllCurveRecord, Rat> match_optimal_curve(const RecognizedLattice& lat,
                                                   const std::vector<EllCurveRecord>& isogeny_class,
                                                   long precision_bits);

// Analytic degree of the map induced by the scaled form cf: boundary pairing
// sum over the index-many fundamental-domain tiles divided by the covolume of
// the curve lattice. Must round to an integer within 1e-6 relative tolerance.
long modular_degree(const CurveBundle& b, PeriodEvaluator& ev_cf, const PeriodLattice& curve_lat);

struct CuspConstant {
  Complex value;          // 2 pi i int_infty^{cusp} cf
  Rat coord1, coord2;     // value = coord1 om1 + coord2 om2 (bounded denominator)
  PointC torsion;         // exact image on E
};

std::vector<CuspConstant> cusp_constants(const CurveBundle& b, PeriodEvaluator& ev_cf,
                                         const EllipticCurveQ& curve, const PeriodLattice& lat,
                                         long precision_bits);

}  // namespace modec
