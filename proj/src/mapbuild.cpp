#include "modec/mapbuild.hpp"

#include <json.hpp>

#include <climits>
#include <fstream>
#include <map>
#include <stdexcept>

#include "modec/modkernel.hpp"

namespace modec {

using nlohmann::json;

namespace {

// (X(q), Y(q)) + constant exact point, chord law over the series ring.
std::pair<CQSeries, CQSeries> series_point_plus(const EllipticCurveQ& e, const CQSeries& X,
                                                const CQSeries& Y, const PointC& T, long N) {
  if (T.inf) return {X, Y};
  long w = X.w;
  auto cseries = [&](const Cyclo& c, long prec) {
    CQSeries s(w, 0, prec, Cyclo(N));
    s.a[0] = c;
    return s;
  };
  long prec = std::min(X.prec, Y.prec);
  auto C = [&](const Rat& r) { return cseries(Cyclo(N, r), prec); };
  CQSeries tx = cseries(T.x, prec), ty = cseries(T.y, prec);
  CQSeries lam = (Y - ty) / (X - tx);
  CQSeries nu = Y - lam * X;
  CQSeries x3 = lam * lam + lam.scaled(e.a1) - C(e.a2) - X - tx;
  CQSeries y3 = -(lam.scaled(Rat(1)) + C(e.a1)) * x3 - nu - C(e.a3);
  return {x3, y3};
}

void check_weierstrass(const EllipticCurveQ& e, const CQSeries& x, const CQSeries& y, long N,
                       const char* where) {
  CQSeries lhs = y * y + (x * y).scaled(e.a1) + y.scaled(e.a3);
  CQSeries rhs = x * x * x + (x * x).scaled(e.a2) + x.scaled(e.a4);
  CQSeries diff = lhs - rhs;
  // subtract the constant a6
  CQSeries c6s(x.w, 0, diff.prec, Cyclo(N));
  if (c6s.nterms() > 0) c6s.a[0] = Cyclo(N, e.a6);
  diff = diff - c6s;
  if (!diff.is_zero_to_prec())
    throw std::runtime_error(std::string("xy_expansions: Weierstrass relation fails (") + where +
                             ")");
}

}  // namespace

XYExpansions xy_expansions(const CurveBundle& b, const std::vector<CQSeries>& cf,
                           const EllipticCurveQ& curve, const std::vector<CuspConstant>& constants) {
  long N = b.level;
  Rat g2 = curve.c4 / 12, g3 = curve.c6 / 216;
  XYExpansions out;
  for (size_t j = 0; j < b.cusps.size(); ++j) {
    CQSeries F = antiderivative_2pii(cf[j].normalized());
    long v0 = F.v;
    if (v0 < 1) throw std::domain_error("xy_expansions: form does not vanish at cusp");
    long terms = F.prec / (2 * v0) + 2;
    WpSeries wp = wp_series(g2, g3, terms);
    CQSeries G = F * F;
    CQSeries one(G.w, 0, G.prec - 2 * G.v, Cyclo(N));
    one.a[0] = Cyclo(N, Rat(1));
    CQSeries Ginv = one / G;
    // X = G^{-1} + sum_k d_k G^k  (Horner)
    CQSeries acc = CQSeries::zero(G.w, G.prec, Cyclo(N));
    for (long k = terms; k >= 1; --k) {
      CQSeries dk(G.w, 0, G.prec, Cyclo(N));
      dk.a[0] = Cyclo(N, wp.d[k - 1]);
      acc = (acc + dk) * G;
    }
    CQSeries X = Ginv + acc;
    // Y' = p'(F) = -2 F^{-3} + sum 2k d_k F^{2k-1}
    CQSeries dacc = CQSeries::zero(G.w, G.prec, Cyclo(N));
    for (long k = terms; k >= 1; --k) {
      CQSeries dk(G.w, 0, G.prec, Cyclo(N));
      dk.a[0] = Cyclo(N, Rat(2 * k) * wp.d[k - 1]);
      dacc = k == terms ? dk : dacc * G + dk;
    }
    CQSeries Yp = -(one / (G * F)).scaled(Rat(2)) + dacc * F;
    // model correspondence: x = X - b2/12, y = (Y' - a1 x - a3)/2
    CQSeries b2s(G.w, 0, X.prec, Cyclo(N));
    b2s.a[0] = Cyclo(N, curve.b2 / 12);
    CQSeries x = X - b2s;
    CQSeries a3s(G.w, 0, Yp.prec, Cyclo(N));
    a3s.a[0] = Cyclo(N, curve.a3);
    CQSeries y = (Yp - x.scaled(curve.a1) - a3s).scaled(Rat(1, 2));
    // torsion shift
    auto [xs, ys] = series_point_plus(curve, x, y, constants[j].torsion, N);
    check_weierstrass(curve, xs, ys, N, ("cusp " + std::to_string(j)).c_str());
    out.x.push_back(xs);
    out.y.push_back(ys);
  }
  return out;
}

GradedPiece graded_piece(const CurveBundle& b, long d) {
  if (d < 1) throw std::domain_error("graded_piece: d must be >= 1");
  long n = b.nvars();
  long N = b.level;
  GradedPiece out;
  out.d = d;
  // expected dimension by Riemann-Roch (degree-1 piece is the forms themselves
  // in the canonical case)
  long expected = (b.canonical_model() && d == 1) ? b.genus : d * b.graded_deg - b.genus + 1;
  // per-cusp monomial expansions, built multiplicatively
  const auto& X = b.coordinates();
  std::map<std::vector<int>, std::vector<CQSeries>> memo;
  {
    std::vector<int> e0(n, 0);
    // degree-1 seeds
    for (long i = 0; i < n; ++i) {
      std::vector<int> e = e0;
      e[i] = 1;
      std::vector<CQSeries> s;
      for (size_t c = 0; c < b.cusps.size(); ++c) s.push_back(X[i][c]);
      memo[e] = std::move(s);
    }
  }
  std::function<const std::vector<CQSeries>&(const std::vector<int>&)> mono =
      [&](const std::vector<int>& e) -> const std::vector<CQSeries>& {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    long i = 0;
    while (e[i] == 0) ++i;
    std::vector<int> e1 = e;
    e1[i] -= 1;
    const auto& sub = mono(e1);
    std::vector<CQSeries> s;
    for (size_t c = 0; c < b.cusps.size(); ++c) s.push_back(sub[c] * X[i][c]);
    return memo.emplace(e, std::move(s)).first->second;
  };
  auto all = monomial_exponents(n, d);
  // jointly valid coefficient window per cusp (beyond a product's prec the
  // stored zeros are meaningless and would break exact relations)
  std::vector<long> lo(b.cusps.size()), hi(b.cusps.size());
  for (size_t c = 0; c < b.cusps.size(); ++c) {
    lo[c] = mono(all[0])[c].v;
    hi[c] = mono(all[0])[c].prec;
    for (const auto& e : all) {
      lo[c] = std::min(lo[c], mono(e)[c].v);
      hi[c] = std::min(hi[c], mono(e)[c].prec);
    }
  }
  std::vector<std::vector<Cyclo>> cols;
  for (const auto& e : all) {
    const auto& s = mono(e);
    std::vector<Cyclo> col;
    for (size_t c = 0; c < b.cusps.size(); ++c)
      for (long k = lo[c]; k < hi[c]; ++k) col.push_back(s[c].coeff(k));
    cols.push_back(std::move(col));
  }
  auto idx = independent_columns_modp(cols, N);
  if (static_cast<long>(idx.size()) != expected)
    throw std::runtime_error("graded_piece: dimension " + std::to_string(idx.size()) +
                             " differs from the Riemann-Roch expectation " +
                             std::to_string(expected) + " (precision or bundle inconsistency)");
  for (long i : idx) {
    out.monomials.push_back(all[i]);
    out.exps.push_back(mono(all[i]));
  }
  return out;
}

CQSeries poly_series_on_piece(const CurveBundle& b, const GradedPiece& piece, const HomogPolyQ& poly,
                              long cusp) {
  CQSeries acc = CQSeries::zero(b.cusps[cusp].width, b.prec + piece.d, Cyclo(b.level));
  for (const auto& t : poly.terms) {
    long i = -1;
    for (size_t k = 0; k < piece.monomials.size(); ++k)
      if (piece.monomials[k] == t.e) {
        i = static_cast<long>(k);
        break;
      }
    if (i < 0) throw std::logic_error("poly_series_on_piece: term not in the piece basis");
    acc = acc + piece.exps[i][cusp].scaled(t.c);
  }
  return acc;
}

// Threshold as an exact rational: (k/12)*index with k = 2 d r in the
// canonical case (degree-1 elements are weight-2 cusp forms), else the
// line-bundle degree d * r * deg(L).
static Rat certify_threshold_exact(const CurveBundle& b, long d, long r) {
  if (b.canonical_model()) return ratq(2 * d * r * b.index, 12);
  return Rat(d * r * b.graded_deg);
}

long certify_threshold(const CurveBundle& b, long d, long relation_degree_in_triples) {
  Rat t = certify_threshold_exact(b, d, relation_degree_in_triples);
  return static_cast<long>(Int(t.get_num() / t.get_den()).get_si());
}

namespace {

HomogPolyQ poly_from_coeffs(const GradedPiece& piece, long n, const std::vector<Cyclo>& v,
                            long offset) {
  HomogPolyQ p(n, piece.d);
  for (long m = 0; m < piece.dim(); ++m) {
    const Cyclo& c = v[offset + m];
    if (!c.is_rational())
      throw std::runtime_error("solve_map: expected a rational solution in the second pass");
    if (c.rational_part() != 0) p.add_term(piece.monomials[m], c.rational_part());
  }
  return p;
}

}  // namespace

std::optional<SolveOutcome> solve_map(const CurveBundle& b, const GradedPiece& piece,
                                      const XYExpansions& xy, const EllipticCurveQ& curve,
                                      const std::optional<std::vector<Rat>>& base_point,
                                      std::mt19937_64& rng) {
  long N = b.level;
  long D = piece.dim();
  long ncusps = static_cast<long>(b.cusps.size());

  // rows of the linear system for (a | b | c): a + c x = 0 and b + c y = 0
  auto build_rows = [&](const XYExpansions& cur) {
    std::vector<std::vector<Cyclo>> rows;
    for (long c = 0; c < ncusps; ++c) {
      // precompute monomial * x and monomial * y
      std::vector<CQSeries> mx, my;
      for (long m = 0; m < D; ++m) {
        mx.push_back(piece.exps[m][c] * cur.x[c]);
        my.push_back(piece.exps[m][c] * cur.y[c]);
      }
      long lo = std::min(mx[0].v, my[0].v);
      for (long m = 0; m < D; ++m) lo = std::min({lo, mx[m].v, my[m].v, piece.exps[m][c].v});
      long hi = mx[0].prec;
      for (long m = 0; m < D; ++m) hi = std::min({hi, mx[m].prec, my[m].prec});
      for (long idx = lo; idx < hi; ++idx) {
        std::vector<Cyclo> r1(3 * D, Cyclo(N)), r2(3 * D, Cyclo(N));
        for (long m = 0; m < D; ++m) {
          r1[m] = piece.exps[m][c].coeff(idx);
          r1[2 * D + m] = mx[m].coeff(idx);
          r2[D + m] = piece.exps[m][c].coeff(idx);
          r2[2 * D + m] = my[m].coeff(idx);
        }
        rows.push_back(std::move(r1));
        rows.push_back(std::move(r2));
      }
    }
    return rows;
  };

  auto verify_kernel = [&](const std::vector<std::vector<Cyclo>>& basis,
                           const std::vector<std::vector<Cyclo>>& rows) {
    for (const auto& v : basis)
      for (const auto& r : rows) {
        Cyclo s(N);
        for (long t = 0; t < 3 * D; ++t)
          if (!r[t].is_zero() && !v[t].is_zero()) s += r[t] * v[t];
        if (!s.is_zero()) return false;
      }
    return true;
  };

  XYExpansions current = xy;
  SolveOutcome out;
  out.base_image = PointC::infinity();

  if (base_point) {
    // First pass over Q(zeta): any null vector not vanishing at Q
    auto rows = build_rows(current);
    std::vector<std::vector<Cyclo>> kernel;
    try {
      kernel = kernel_multimodular_cyclo(
          rows, 3 * D, N, false,
          [&](const std::vector<std::vector<Cyclo>>& cand) { return verify_kernel(cand, rows); });
    } catch (const std::runtime_error&) {
      return std::nullopt;
    }
    if (kernel.empty()) return std::nullopt;
    // evaluate monomials at Q
    std::vector<Cyclo> monoQ(D, Cyclo(N));
    for (long m = 0; m < D; ++m) {
      Rat v(1);
      for (long i = 0; i < b.nvars(); ++i)
        for (int k = 0; k < piece.monomials[m][i]; ++k) v *= (*base_point)[i];
      monoQ[m] = Cyclo(N, v);
    }
    auto eval_at_Q = [&](const std::vector<Cyclo>& vec, long off) {
      Cyclo s(N);
      for (long m = 0; m < D; ++m) s += vec[off + m] * monoQ[m];
      return s;
    };
    std::vector<Cyclo> chosen;
    for (const auto& v : kernel) {
      Cyclo aQ = eval_at_Q(v, 0), bQ = eval_at_Q(v, D), cQ = eval_at_Q(v, 2 * D);
      if (!(aQ.is_zero() && bQ.is_zero() && cQ.is_zero())) {
        chosen = v;
        break;
      }
    }
    if (chosen.empty() && kernel.size() > 1) {
      // random small combinations
      std::uniform_int_distribution<long> coef(-3, 3);
      for (int trial = 0; trial < 32 && chosen.empty(); ++trial) {
        std::vector<Cyclo> v(3 * D, Cyclo(N));
        for (const auto& kv : kernel) {
          Rat c(coef(rng));
          if (c == 0) continue;
          for (long t = 0; t < 3 * D; ++t) v[t] += kv[t] * c;
        }
        Cyclo aQ = eval_at_Q(v, 0), bQ = eval_at_Q(v, D), cQ = eval_at_Q(v, 2 * D);
        if (!(aQ.is_zero() && bQ.is_zero() && cQ.is_zero())) chosen = v;
      }
    }
    if (chosen.empty()) return std::nullopt;
    // psi(Q) = (-a(Q) : -b(Q) : c(Q))
    Cyclo aQ = eval_at_Q(chosen, 0), bQ = eval_at_Q(chosen, D), cQ = eval_at_Q(chosen, 2 * D);
    if (cQ.is_zero()) {
      out.base_image = PointC::infinity();  // (0 : 1 : 0) after scaling
    } else {
      out.base_image = PointC::affine(-aQ / cQ, -bQ / cQ);
      if (!on_curve_cyclo(curve, out.base_image, N))
        throw std::runtime_error("solve_map: base image is not on the curve");
      // translate so that Q maps to the origin: subtract psi(Q)
      PointC neg = PointC::affine(
          out.base_image.x,
          -out.base_image.y - Cyclo(N, curve.a1) * out.base_image.x - Cyclo(N, curve.a3));
      XYExpansions shifted;
      for (long c = 0; c < ncusps; ++c) {
        auto [xs, ys] = series_point_plus(curve, current.x[c], current.y[c], neg, N);
        shifted.x.push_back(xs);
        shifted.y.push_back(ys);
      }
      current = shifted;
      out.translated = true;
    }
  }

  // Second pass over Q
  auto rows = build_rows(current);
  std::vector<std::vector<Cyclo>> kernel;
  try {
    kernel = kernel_multimodular_cyclo(
        rows, 3 * D, N, true,
        [&](const std::vector<std::vector<Cyclo>>& cand) { return verify_kernel(cand, rows); });
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  if (kernel.empty()) return std::nullopt;
  for (size_t k = 0; k < kernel.size() && out.triples.size() < 5; ++k) {
    MapTriple t;
    t.A = poly_from_coeffs(piece, b.nvars(), kernel[k], 0);
    t.B = poly_from_coeffs(piece, b.nvars(), kernel[k], D);
    t.C = poly_from_coeffs(piece, b.nvars(), kernel[k], 2 * D);
    if (t.A.is_zero() && t.B.is_zero() && t.C.is_zero()) continue;
    out.triples.push_back(std::move(t));
  }
  if (out.triples.empty()) return std::nullopt;
  return out;
}

bool certify_map(const CurveBundle& b, CertifiedMap& map, const EllipticCurveQ& curve,
                 const GradedPiece& piece) {
  long N = b.level;
  long ncusps = static_cast<long>(b.cusps.size());
  Rat thr3 = certify_threshold_exact(b, map.degree_d, 3);
  Rat thr2 = certify_threshold_exact(b, map.degree_d, 2);
  map.threshold = certify_threshold(b, map.degree_d, 3);
  map.certificates.clear();
  map.compat.clear();
  bool all_ok = true;

  // per-triple series (X, Y, Z) = (-A, -B, C)
  std::vector<std::vector<CQSeries>> Xs(map.triples.size()), Ys(map.triples.size()),
      Zs(map.triples.size());
  for (size_t t = 0; t < map.triples.size(); ++t)
    for (long c = 0; c < ncusps; ++c) {
      Xs[t].push_back(-poly_series_on_piece(b, piece, map.triples[t].A, c));
      Ys[t].push_back(-poly_series_on_piece(b, piece, map.triples[t].B, c));
      Zs[t].push_back(poly_series_on_piece(b, piece, map.triples[t].C, c));
    }

  for (size_t t = 0; t < map.triples.size(); ++t) {
    CertificateEntry ce;
    for (long c = 0; c < ncusps; ++c) {
      const CQSeries &X = Xs[t][c], &Y = Ys[t][c], &Z = Zs[t][c];
      CQSeries W = Y * Y * Z + (X * Y * Z).scaled(curve.a1) + (Y * Z * Z).scaled(curve.a3) -
                   X * X * X - (X * X * Z).scaled(curve.a2) - (X * Z * Z).scaled(curve.a4) -
                   (Z * Z * Z).scaled(curve.a6);
      ce.cusp_bounds.push_back(W.first_nonzero());
      ce.total += ce.cusp_bounds.back();
    }
    if (!(Rat(ce.total) > thr3)) all_ok = false;
    map.certificates.push_back(std::move(ce));
  }
  for (size_t s = 0; s < map.triples.size(); ++s)
    for (size_t t = s + 1; t < map.triples.size(); ++t) {
      CertificateEntry ce;
      for (long c = 0; c < ncusps; ++c) {
        long bound = LONG_MAX;
        CQSeries m1 = Xs[s][c] * Ys[t][c] - Xs[t][c] * Ys[s][c];
        CQSeries m2 = Xs[s][c] * Zs[t][c] - Xs[t][c] * Zs[s][c];
        CQSeries m3 = Ys[s][c] * Zs[t][c] - Ys[t][c] * Zs[s][c];
        bound = std::min({m1.first_nonzero(), m2.first_nonzero(), m3.first_nonzero()});
        ce.cusp_bounds.push_back(bound);
        ce.total += bound;
      }
      if (!(Rat(ce.total) > thr2)) all_ok = false;
      map.compat.push_back(std::move(ce));
    }
  map.certified = all_ok;
  return all_ok;
}

namespace {

json poly_json(const HomogPolyQ& p) {
  json terms = json::array();
  for (const auto& t : p.terms) {
    json e = json::array();
    for (int x : t.e) e.push_back(x);
    terms.push_back(json::array({e, rat_str(t.c)}));
  }
  return json{{"nvars", p.nvars}, {"degree", p.degree}, {"terms", terms}};
}

HomogPolyQ poly_unjson(const json& j) {
  HomogPolyQ p(j.at("nvars").get<long>(), j.at("degree").get<long>());
  for (const auto& t : j.at("terms"))
    p.add_term(t.at(0).get<std::vector<int>>(), parse_rat(t.at(1).get<std::string>()));
  return p;
}

}  // namespace

void save_map(const CertifiedMap& m, const std::string& path) {
  json j;
  j["curve"] = m.curve_label;
  j["isogeny_class"] = m.isogeny_class;
  j["degree_d"] = m.degree_d;
  j["analytic_degree"] = m.analytic_degree;
  j["manin_c"] = rat_str(m.manin_c);
  j["threshold"] = m.threshold;
  j["certified"] = m.certified;
  j["triples"] = json::array();
  for (const auto& t : m.triples)
    j["triples"].push_back(json{{"A", poly_json(t.A)}, {"B", poly_json(t.B)}, {"C", poly_json(t.C)}});
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

CertifiedMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_map: cannot open " + path);
  json j;
  in >> j;
  CertifiedMap m;
  m.curve_label = j.at("curve").get<std::string>();
  m.isogeny_class = j.value("isogeny_class", "");
  m.degree_d = j.at("degree_d").get<long>();
  m.analytic_degree = j.value("analytic_degree", 0L);
  m.manin_c = parse_rat(j.value("manin_c", "0"));
  m.threshold = j.value("threshold", 0L);
  m.certified = j.at("certified").get<bool>();
  for (const auto& t : j.at("triples")) {
    MapTriple mt{poly_unjson(t.at("A")), poly_unjson(t.at("B")), poly_unjson(t.at("C"))};
    m.triples.push_back(std::move(mt));
  }
  return m;
}

}  // namespace modec
