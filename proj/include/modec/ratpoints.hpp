#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modec/bundle.hpp"
#include "modec/elliptic.hpp"
#include "modec/mapbuild.hpp"

namespace modec {

// Fiber of the certified map over a rational point T of E, as a scheme over
// Spec Z: the model equations plus the 2x2 minors of [(-A,-B,C); (xT,yT,zT)],
// with integral content-1 defining polynomials.
struct ZeroDimScheme {
  long nvars = 0;
  std::vector<HomogPolyQ> polys;
  std::vector<Rat> target;  // projective (xT : yT : zT) on E
};

struct PointReport {
  std::vector<std::vector<Int>> points;  // primitive integer coordinates
  bool complete = false;
  long lower_prime = 0;   // p used for Hensel lifting
  long upper_prime = 0;   // l certifying the upper bound (0 = none found)
  long upper_bound = -1;
  bool fallback_needed = false;
};

// All model points with coprime integer coordinates of height <= bound.
std::vector<std::vector<Int>> point_search(const CurveBundle& b, long height_bound);

// Primitive solutions of the model modulo p^k for the paper's k schedule
// (k <= 8 for p = 2, k <= 4 for p = 3, k <= 3 otherwise). Returns true if
// solvable at the deepest level; false certifies emptiness over Z_p.
bool local_solvability(const std::vector<HomogPolyQ>& model, long p);
long local_k_schedule(long p);

ZeroDimScheme pullback_scheme(const CurveBundle& b, const CertifiedMap& map,
                              const std::vector<Rat>& target);

// Hensel solver: lifts the F_p points (p with no singular F_p point) to
// Z/p^k with k = ceil(12 log_p 10) + 1, reconstructs rationals, verifies
// exactly; then searches l < prime_bound for a matching smooth upper bound.
PointReport solve_zerodim(const ZeroDimScheme& z, long level, long prime_bound = 400,
                          long p_start = 2, long p_cap = 100);

long hensel_lift_exponent(long p);

struct JValue {
  std::vector<Int> point;
  bool is_cusp = false;
  bool is_cm = false;
  Rat j;
};

// j(P) for each point through the bundle's jmap; tags cusp (denominator
// vanishes) and CM (one of the thirteen class-number-1 j-invariants).
std::vector<JValue> evaluate_j(const CurveBundle& b, const std::vector<std::vector<Int>>& points);

const std::vector<Rat>& cm_j_invariants();

}  // namespace modec
