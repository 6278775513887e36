#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modec/elliptic.hpp"
#include "modec/poly.hpp"
#include "modec/qseries.hpp"
#include "modec/sl2z.hpp"

namespace modec {

struct CuspData {
  MatZ alpha;     // alpha(infinity) = cusp; det 1
  long width = 1;
  bool rational = false;
};

// Serialized modular curve: model, cusps, basis cusp-form expansions over
// Q(zeta_N), and the subgroup G <= GL2(Z/N) the curve is attached to.
// Model and q-expansions are consumed as input data; this layer never
// computes them.
struct CurveBundle {
  std::string label;
  long level = 0;
  long index = 0;
  long genus = 0;
  long graded_deg = 0;
  std::vector<HomogPolyQ> model;
  std::vector<CuspData> cusps;
  // forms[i][j]: expansion of basis form i at cusp j, exact coefficients
  std::vector<std::vector<CQSeries>> forms;
  // degree-1 coordinate sections of the model (canonical case: the forms
  // themselves, left empty); coords[v][j] = variable v at cusp j
  std::vector<std::vector<CQSeries>> coords;
  long prec = 0;
  long rational_cusp_count = -1;  // -1: absent
  std::vector<std::pair<Rat, long>> cm_points;  // (j-invariant, count), optional
  std::optional<std::pair<HomogPolyQ, HomogPolyQ>> jmap;  // (num, den)
  std::vector<ModMat> group_gens;

  // built during validation
  std::shared_ptr<ModNGroup> group;
  std::shared_ptr<ModNGroup> gamma_bar;

  long nvars() const { return model.empty() ? genus : model.front().nvars; }
  bool canonical_model() const { return graded_deg == 2 * genus - 2; }
  const std::vector<std::vector<CQSeries>>& coordinates() const {
    return coords.empty() ? forms : coords;
  }
};

CurveBundle load_bundle(const std::string& path);
void save_bundle(const CurveBundle& b, const std::string& path);

// Copy with every expansion truncated to the first `prec` indices.
CurveBundle truncate_bundle(const CurveBundle& b, long prec);

// Checks every bundle invariant (throws std::runtime_error naming the first
// violated one) and builds the derived group data.
void validate_bundle(CurveBundle& b);

// Exact evaluation of a model polynomial on the coordinate-form expansions
// at cusp j; reuses pairwise products when supplied.
CQSeries eval_poly_on_forms(const CurveBundle& b, const HomogPolyQ& poly, long cusp);

struct EllCurveRecord {
  std::string label;
  std::vector<Rat> ainvs;  // a1, a2, a3, a4, a6
  Int conductor;
  long rank = 0;
  std::string isogeny_class;

  EllipticCurveQ curve() const {
    return EllipticCurveQ(ainvs[0], ainvs[1], ainvs[2], ainvs[3], ainvs[4], label);
  }
};

std::vector<EllCurveRecord> load_curve_table(const std::string& path);

// Isogeny classes whose conductor divides N^2 together with the Hecke-kernel
// multiplicity bound dim cap_{p <= pmax} ker(T(p) - a_p(E)); classes with
// bound 0 are omitted.
std::vector<std::pair<std::string, long>> candidate_factors(const CurveBundle& b,
                                                            const std::vector<EllCurveRecord>& table,
                                                            long pmax);

// (index, b, sign) with g = +- gamma alpha_j T^b, gamma in Gamma; slashing a
// bundle form by g therefore reads the stored expansion at cusp j twisted by
// e^{2 pi i b / w_j}.
struct CuspNorm {
  long cusp = -1;
  long b = 0;
  int sign = 1;
};
CuspNorm cusp_normalize(const MatZ& g, const CurveBundle& b);

}  // namespace modec
