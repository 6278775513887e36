#pragma once

#include <optional>
#include <random>
#include <vector>

#include "modec/bundle.hpp"
#include "modec/elliptic.hpp"
#include "modec/periods.hpp"

namespace modec {

// Per-cusp expansions of the x and y modular functions of the map to E.
struct XYExpansions {
  std::vector<CQSeries> x, y;  // one per cusp
};

// Composition of the Abel-Jacobi series with the Weierstrass functions:
// z(q) = torsion constant + antiderivative(cf); when the constant is a
// nontrivial torsion point the exact point is added with the group law over
// the series ring. The defining Weierstrass relation is verified to working
// precision at every cusp before returning.
XYExpansions xy_expansions(const CurveBundle& b, const std::vector<CQSeries>& cf,
                           const EllipticCurveQ& curve, const std::vector<CuspConstant>& constants);

// Degree-d piece of the graded ring: a maximal q-expansion-independent set of
// degree-d monomials in the coordinate forms, with expansions.
struct GradedPiece {
  long d = 0;
  std::vector<std::vector<int>> monomials;       // exponent vectors of the basis
  std::vector<std::vector<CQSeries>> exps;       // [basis element][cusp]
  long dim() const { return static_cast<long>(monomials.size()); }
};

GradedPiece graded_piece(const CurveBundle& b, long d);

struct MapTriple {
  HomogPolyQ A, B, C;  // the map is P -> (-A(P) : -B(P) : C(P))
};

struct CertificateEntry {
  std::vector<long> cusp_bounds;  // vanishing lower bounds, one per cusp
  long total = 0;
};

struct CertifiedMap {
  std::string curve_label;
  std::string isogeny_class;
  long degree_d = 0;       // polynomial degree of the triples
  long analytic_degree = 0;
  Rat manin_c = Rat(0);
  std::vector<MapTriple> triples;
  long threshold = 0;
  std::vector<CertificateEntry> certificates;     // one per triple
  std::vector<CertificateEntry> compat;           // pairwise cross products
  bool certified = false;
};

void save_map(const CertifiedMap& m, const std::string& path);
CertifiedMap load_map(const std::string& path);

struct SolveOutcome {
  std::vector<MapTriple> triples;   // up to five rational triples
  PointC base_image;                // psi(Q) before translation (infinity if trivial)
  bool translated = false;
};

// One degree step of the map solve: first pass over Q(zeta_N) (skipped when
// base_point is absent), base-point translation, second pass over Q. Returns
// nullopt when the null space is empty at this degree or the base point
// evaluates to (0,0,0) in every null vector.
std::optional<SolveOutcome> solve_map(const CurveBundle& b, const GradedPiece& piece,
                                      const XYExpansions& xy, const EllipticCurveQ& curve,
                                      const std::optional<std::vector<Rat>>& base_point,
                                      std::mt19937_64& rng);

// Valence-formula certificate: substitutes each triple's series into the
// homogenized Weierstrass relation and sums per-cusp vanishing lower bounds
// against the (k/12)*index threshold (canonical case) or the line-bundle
// degree bound. Also certifies pairwise compatibility via cross products.
// Fills the certificate fields; returns the certified flag.
bool certify_map(const CurveBundle& b, CertifiedMap& map, const EllipticCurveQ& curve,
                 const GradedPiece& piece);

// Series of a degree-d polynomial in the coordinate forms at one cusp,
// through the piece's precomputed monomial expansions.
CQSeries poly_series_on_piece(const CurveBundle& b, const GradedPiece& piece, const HomogPolyQ& poly,
                              long cusp);

long certify_threshold(const CurveBundle& b, long d, long relation_degree_in_triples);

}  // namespace modec
