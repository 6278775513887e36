#include "modec/bundle.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "modec/hecke.hpp"
#include "modec/matrix.hpp"

namespace modec {

using nlohmann::json;

namespace {

json poly_to_json(const HomogPolyQ& p) {
  json terms = json::array();
  for (const auto& t : p.terms) {
    json e = json::array();
    for (int x : t.e) e.push_back(x);
    terms.push_back(json::array({e, rat_str(t.c)}));
  }
  return json{{"nvars", p.nvars}, {"degree", p.degree}, {"terms", terms}};
}

HomogPolyQ poly_from_json(const json& j) {
  HomogPolyQ p(j.at("nvars").get<long>(), j.at("degree").get<long>());
  for (const auto& t : j.at("terms")) {
    std::vector<int> e = t.at(0).get<std::vector<int>>();
    p.add_term(e, parse_rat(t.at(1).get<std::string>()));
  }
  return p;
}

json series_to_json(const CQSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.a) {
    json v = json::array();
    for (const auto& r : c.c) v.push_back(rat_str(r));
    coeffs.push_back(v);
  }
  return json{{"width", s.w}, {"valuation", s.v}, {"prec", s.prec}, {"coeffs", coeffs}};
}

CQSeries series_from_json(const json& j, long N) {
  auto field = CycloField::get(N);
  CQSeries s(j.at("width").get<long>(), j.at("valuation").get<long>(), j.at("prec").get<long>(),
             Cyclo(N));
  const auto& coeffs = j.at("coeffs");
  if (static_cast<long>(coeffs.size()) != s.nterms())
    throw std::runtime_error("bundle: series coefficient count does not match valuation/prec");
  for (long i = 0; i < s.nterms(); ++i) {
    const auto& v = coeffs[i];
    if (static_cast<long>(v.size()) != field->phi)
      throw std::runtime_error("bundle: cyclotomic coefficient has wrong length");
    std::vector<Rat> c(field->phi);
    for (long t = 0; t < field->phi; ++t) c[t] = parse_rat(v[t].get<std::string>());
    s.a[i] = Cyclo(field, std::move(c));
  }
  return s;
}

}  // namespace

CurveBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_bundle: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("load_bundle: parse error in " + path + ": " + e.what());
  }
  CurveBundle b;
  b.label = j.value("label", "");
  b.level = j.at("level").get<long>();
  b.index = j.at("index").get<long>();
  b.genus = j.at("genus").get<long>();
  b.graded_deg = j.at("graded_deg").get<long>();
  b.prec = j.at("prec").get<long>();
  for (const auto& p : j.at("model")) b.model.push_back(poly_from_json(p));
  for (const auto& c : j.at("cusps")) {
    CuspData cd;
    auto m = c.at("alpha").get<std::vector<long>>();
    cd.alpha = MatZ(m[0], m[1], m[2], m[3]);
    cd.width = c.at("width").get<long>();
    cd.rational = c.value("rational", false);
    b.cusps.push_back(cd);
  }
  for (const auto& f : j.at("forms")) {
    std::vector<CQSeries> per_cusp;
    for (const auto& s : f) per_cusp.push_back(series_from_json(s, b.level));
    b.forms.push_back(std::move(per_cusp));
  }
  if (j.contains("coords"))
    for (const auto& f : j["coords"]) {
      std::vector<CQSeries> per_cusp;
      for (const auto& s : f) per_cusp.push_back(series_from_json(s, b.level));
      b.coords.push_back(std::move(per_cusp));
    }
  for (const auto& g : j.at("group")) {
    auto m = g.get<std::vector<long>>();
    b.group_gens.push_back(ModMat{{m[0], m[1], m[2], m[3]}});
  }
  if (j.contains("rational_cusp_count")) b.rational_cusp_count = j["rational_cusp_count"].get<long>();
  if (j.contains("cm_points"))
    for (const auto& c : j["cm_points"])
      b.cm_points.emplace_back(parse_rat(c.at("j").get<std::string>()), c.at("count").get<long>());
  if (j.contains("jmap"))
    b.jmap = std::make_pair(poly_from_json(j["jmap"].at("num")), poly_from_json(j["jmap"].at("den")));
  validate_bundle(b);
  return b;
}

void save_bundle(const CurveBundle& b, const std::string& path) {
  json j;
  j["label"] = b.label;
  j["level"] = b.level;
  j["index"] = b.index;
  j["genus"] = b.genus;
  j["graded_deg"] = b.graded_deg;
  j["prec"] = b.prec;
  j["model"] = json::array();
  for (const auto& p : b.model) j["model"].push_back(poly_to_json(p));
  j["cusps"] = json::array();
  for (const auto& c : b.cusps)
    j["cusps"].push_back(json{{"alpha", {to_long(c.alpha.a), to_long(c.alpha.b), to_long(c.alpha.c),
                                         to_long(c.alpha.d)}},
                              {"width", c.width},
                              {"rational", c.rational}});
  j["forms"] = json::array();
  for (const auto& f : b.forms) {
    json per_cusp = json::array();
    for (const auto& s : f) per_cusp.push_back(series_to_json(s));
    j["forms"].push_back(per_cusp);
  }
  if (!b.coords.empty()) {
    j["coords"] = json::array();
    for (const auto& f : b.coords) {
      json per_cusp = json::array();
      for (const auto& s : f) per_cusp.push_back(series_to_json(s));
      j["coords"].push_back(per_cusp);
    }
  }
  j["group"] = json::array();
  for (const auto& g : b.group_gens) j["group"].push_back(json{g.m[0], g.m[1], g.m[2], g.m[3]});
  if (b.rational_cusp_count >= 0) j["rational_cusp_count"] = b.rational_cusp_count;
  if (!b.cm_points.empty()) {
    j["cm_points"] = json::array();
    for (const auto& [jv, n] : b.cm_points)
      j["cm_points"].push_back(json{{"j", rat_str(jv)}, {"count", n}});
  }
  if (b.jmap)
    j["jmap"] = json{{"num", poly_to_json(b.jmap->first)}, {"den", poly_to_json(b.jmap->second)}};
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

CQSeries eval_poly_on_forms(const CurveBundle& b, const HomogPolyQ& poly, long cusp) {
  long n = b.nvars();
  long w = b.cusps[cusp].width;
  const auto& X = b.coordinates();
  CQSeries acc = CQSeries::zero(w, b.prec + poly.degree, Cyclo(b.level));
  for (const auto& t : poly.terms) {
    CQSeries m(w, 0, 0, Cyclo(b.level));
    bool first = true;
    for (long i = 0; i < n; ++i)
      for (int k = 0; k < t.e[i]; ++k) {
        m = first ? X[i][cusp].scaled(t.c) : m * X[i][cusp];
        first = false;
      }
    acc = acc + m;
  }
  return acc;
}

void validate_bundle(CurveBundle& b) {
  auto fail = [](const std::string& msg) { throw std::runtime_error("bundle invariant: " + msg); };
  if (b.level < 1) fail("level must be positive");
  if (b.forms.empty()) fail("forms list is empty");
  if (static_cast<long>(b.forms.size()) != b.genus) fail("number of forms differs from genus");
  if (b.cusps.empty()) fail("cusp list is empty");
  if (b.model.empty()) fail("model is empty");
  long n = b.nvars();
  for (const auto& p : b.model)
    if (p.nvars != n) fail("model polynomials disagree on variable count");
  if (b.canonical_model() && n != b.genus) fail("canonical model must have genus many variables");
  if (!b.coords.empty() && static_cast<long>(b.coords.size()) != n)
    fail("coordinate expansion count differs from variable count");
  if (b.coords.empty() && !b.canonical_model())
    fail("non-canonical bundle must provide coordinate expansions");
  for (const auto& f : b.coords) {
    if (static_cast<long>(f.size()) != static_cast<long>(b.cusps.size()))
      fail("number of coordinate expansions differs from number of cusps");
    for (size_t jx = 0; jx < f.size(); ++jx) {
      if (f[jx].w != b.cusps[jx].width) fail("coordinate width differs from its cusp's width");
      if (f[jx].prec != b.prec) fail("coordinate prec differs from bundle prec");
    }
  }
  for (const auto& f : b.forms) {
    if (static_cast<long>(f.size()) != static_cast<long>(b.cusps.size()))
      fail("number of expansions per form differs from number of cusps");
    for (size_t jx = 0; jx < f.size(); ++jx) {
      if (f[jx].w != b.cusps[jx].width) fail("expansion width differs from its cusp's width");
      if (f[jx].prec != b.prec) fail("expansion prec differs from bundle prec");
    }
  }
  for (const auto& c : b.cusps) {
    if (c.alpha.det() != 1) fail("cusp matrix is not in SL2(Z)");
    if (c.width < 1 || b.level % c.width != 0) fail("cusp width does not divide the level");
  }
  if (b.group_gens.empty()) fail("group generators are missing");
  b.group = std::make_shared<ModNGroup>(b.level, b.group_gens);
  b.gamma_bar = std::make_shared<ModNGroup>(b.group->sl2_part());
  // index consistency: [SL2(Z/N) : +-Gamma] should equal the stated index
  long N = b.level;
  Int sl2_order(N);
  sl2_order = sl2_order * N * N;
  for (long p : prime_factors(N)) sl2_order = sl2_order - sl2_order / (Int(p) * p);
  size_t pm_order = b.gamma_bar->order();
  if (!b.gamma_bar->contains(ModNGroup::neg(ModNGroup::identity(), N)) && N > 2) pm_order *= 2;
  if (Int(b.index) * Int(static_cast<long>(pm_order)) != sl2_order)
    fail("index does not match the order of G meet SL2");
  long width_sum = 0;
  for (const auto& c : b.cusps) width_sum += c.width;
  if (width_sum != b.index) fail("sum of cusp widths does not match index");
  // widths are the minimal h with alpha T^h alpha^{-1} in +-Gamma
  for (const auto& c : b.cusps) {
    for (long h = 1; h <= c.width; ++h) {
      MatZ m = c.alpha * MatZ::T(h) * c.alpha.inverse();
      bool in = b.gamma_bar->contains_pm(ModNGroup::reduce(m, N));
      if (in && h < c.width) fail("cusp width is not minimal");
      if (h == c.width && !in) fail("cusp width does not stabilize the cusp");
    }
  }
  // cusps lie in distinct Gamma-orbits and cover: each alpha_j normalizes to itself
  for (size_t jx = 0; jx < b.cusps.size(); ++jx) {
    CuspNorm cn = cusp_normalize(b.cusps[jx].alpha, b);
    if (cn.cusp != static_cast<long>(jx) || cn.b != 0)
      fail("cusp representatives are not in distinct orbits");
  }
  // the exact annihilation check: every model polynomial kills the
  // coordinate expansions at every cusp
  for (size_t pi = 0; pi < b.model.size(); ++pi)
    for (size_t jx = 0; jx < b.cusps.size(); ++jx) {
      CQSeries s = eval_poly_on_forms(b, b.model[pi], jx);
      if (!s.is_zero_to_prec())
        fail("model polynomial " + std::to_string(pi) + " does not annihilate expansions at cusp " +
             std::to_string(jx));
    }
}

CuspNorm cusp_normalize(const MatZ& g, const CurveBundle& b) {
  long N = b.level;
  ModMat gm = ModNGroup::reduce(g, N);
  for (size_t jx = 0; jx < b.cusps.size(); ++jx) {
    const auto& c = b.cusps[jx];
    for (long t = 0; t < c.width; ++t) {
      MatZ cand = c.alpha * MatZ::T(t);
      // g (alpha T^t)^{-1} in +-Gamma?
      ModMat q = ModNGroup::mul(gm, ModNGroup::reduce(cand.inverse(), N), N);
      if (b.gamma_bar->contains(q)) return CuspNorm{static_cast<long>(jx), t, 1};
      if (b.gamma_bar->contains(ModNGroup::neg(q, N))) return CuspNorm{static_cast<long>(jx), t, -1};
    }
  }
  throw std::domain_error("cusp_normalize: g(infinity) is not equivalent to any listed cusp");
}

CurveBundle truncate_bundle(const CurveBundle& b, long prec) {
  if (prec >= b.prec) return b;
  CurveBundle t = b;
  t.prec = prec;
  auto trim = [&](std::vector<std::vector<CQSeries>>& fs) {
    for (auto& f : fs)
      for (auto& s : f)
        if (s.prec > prec) {
          s.a.resize(std::max<long>(0, prec - s.v));
          s.prec = prec;
        }
  };
  trim(t.forms);
  trim(t.coords);
  return t;
}

std::vector<EllCurveRecord> load_curve_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_curve_table: cannot open " + path);
  std::vector<EllCurveRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    EllCurveRecord r;
    r.label = j.at("label").get<std::string>();
    for (const auto& a : j.at("ainvs")) r.ainvs.push_back(parse_rat(a.get<std::string>()));
    if (r.ainvs.size() != 5) throw std::runtime_error("load_curve_table: need 5 a-invariants");
    r.conductor = Int(j.at("conductor").get<std::string>());
    r.rank = j.at("rank").get<long>();
    r.isogeny_class = j.at("isogeny_class").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::pair<std::string, long>> candidate_factors(const CurveBundle& b,
                                                            const std::vector<EllCurveRecord>& table,
                                                            long pmax) {
  std::vector<std::pair<std::string, long>> out;
  if (b.genus == 0) return out;
  Int nsq = Int(b.level) * b.level;
  // one representative per isogeny class
  std::map<std::string, const EllCurveRecord*> classes;
  for (const auto& r : table)
    if (mod_positive(nsq, r.conductor) == 0 && !classes.count(r.isogeny_class))
      classes[r.isogeny_class] = &r;
  for (const auto& [cls, rec] : classes) {
    EllipticCurveQ e = rec->curve();
    long dim = -1;
    std::vector<std::vector<Rat>> basis;  // current kernel basis over Q
    for (long p = 2; p <= pmax; ++p) {
      if (!is_prime(Int(p)) || b.level % p == 0) continue;
      if (!e.good_reduction(p)) continue;
      HeckeMatrix hm = hecke_matrix(b, p);
      long apv = e.ap(p);
      // kernel of (M - ap I) intersected with current basis
      QMat m(b.genus, b.genus);
      for (long i = 0; i < b.genus; ++i)
        for (long jx = 0; jx < b.genus; ++jx) {
          if (!hm.m[i][jx].is_rational())
            throw std::runtime_error("candidate_factors: non-rational Hecke matrix entry");
          m.at(i, jx) = hm.m[i][jx].rational_part() - (i == jx ? Rat(apv) : Rat(0));
        }
      // rows of kernel: T acts on row vectors f -> f M? forms map under M as
      // column convention: (T f_i) = sum_j M_ij f_j, kernel vectors v with
      // sum_i v_i f_i eigen: need v^T (M - ap) = 0, i.e. kernel of transpose
      QMat mt(b.genus, b.genus);
      for (long i = 0; i < b.genus; ++i)
        for (long jx = 0; jx < b.genus; ++jx) mt.at(i, jx) = m.at(jx, i);
      auto ker = nullspace(mt);
      if (dim == -1) {
        basis = ker;
      } else {
        // intersect spans: solutions x in old basis with x in new kernel:
        // stack old basis rows as generators, solve membership via echelon
        Echelon ech(b.genus);
        for (const auto& v : ker) ech.add_row(v);
        std::vector<std::vector<Rat>> inter;
        // intersection = vectors in span(basis) whose reduction against
        // ker-echelon is zero; parametrize span(basis) by coefficients
        long nb = static_cast<long>(basis.size());
        if (nb > 0) {
          // rows: for each generator combination constraint; solve
          // coefficient vectors c with sum c_i basis_i in span(ker):
          // equivalently reduce(sum c_i basis_i) = 0. Build matrix R where
          // column i = reduce(basis_i); kernel of R gives c.
          std::vector<std::vector<Rat>> reduced;
          for (const auto& v : basis) reduced.push_back(ech.reduce(v));
          QMat r(b.genus, nb);
          for (long row = 0; row < b.genus; ++row)
            for (long i = 0; i < nb; ++i) r.at(row, i) = reduced[i][row];
          for (const auto& c : nullspace(r)) {
            std::vector<Rat> v(b.genus, Rat(0));
            for (long i = 0; i < nb; ++i)
              for (long jx = 0; jx < b.genus; ++jx) v[jx] += c[i] * basis[i][jx];
            inter.push_back(std::move(v));
          }
        }
        basis = inter;
      }
      dim = static_cast<long>(basis.size());
      if (dim == 0) break;
    }
    if (dim > 0) out.emplace_back(cls, dim);
  }
  return out;
}

}  // namespace modec
