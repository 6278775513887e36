#pragma once

#include <vector>

#include "modec/bundle.hpp"
#include "modec/cyclotomic.hpp"

namespace modec {

// Matrix of T(p) [p 0; 0 1]* on the bundle's form basis: the determined part
// of (T f_i) equals sum_j M_ij f_j at every coefficient index n with p ∤ n,
// at every cusp.
struct HeckeMatrix {
  long p = 0;
  std::vector<std::vector<Cyclo>> m;  // g x g
};

// Determines the action from coefficients sigma(a(pn)) at indices with p ∤ n.
// Throws when the determining system is rank deficient (insufficient prec).
HeckeMatrix hecke_matrix(const CurveBundle& b, long p);

// One form (per-cusp expansions) spanning the intersection of the kernels
// ker(T(p) - a_p(E)) down to `multiplicity` dimensions, scaled so all
// coefficients are algebraic integers of content 1 and the first nonzero
// coefficient at the first cusp has positive leading rational coordinate.
std::vector<CQSeries> isolate_eigenform(const CurveBundle& b, const EllipticCurveQ& e,
                                        long multiplicity, long prime_bound = 50);

// Kernel vectors (over Q, in the form basis) of the intersection; exposed for
// tests and candidate counting.
std::vector<std::vector<Rat>> hecke_kernel(const CurveBundle& b, const EllipticCurveQ& e,
                                           long multiplicity, long prime_bound);

std::vector<CQSeries> form_from_vector(const CurveBundle& b, const std::vector<Rat>& v);

// Content-1 algebraic-integer normalization (in place); fixes the sign via
// the first nonzero coefficient at the first cusp.
void normalize_integral(std::vector<CQSeries>& form);

}  // namespace modec
