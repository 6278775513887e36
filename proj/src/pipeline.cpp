#include "modec/pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <iostream>

#include "modec/hecke.hpp"
#include "modec/periods.hpp"

namespace modec {

using nlohmann::json;

namespace {

struct Timer {
  RunReport& rep;
  std::string step;
  bool verbose;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  Timer(RunReport& r, std::string s, bool v) : rep(r), step(std::move(s)), verbose(v) {
    if (verbose) std::cerr << "[modec] " << step << "...\n";
  }
  ~Timer() {
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.timings.push_back({step, dt});
    if (verbose) std::cerr << "[modec] " << step << " done in " << dt << " s\n";
  }
};

}  // namespace

std::string report_to_json(const RunReport& r) {
  json j;
  j["success"] = r.success;
  if (!r.error.empty()) j["error"] = r.error;
  j["timings"] = json::array();
  for (const auto& t : r.timings) j["timings"].push_back(json{{"step", t.step}, {"seconds", t.seconds}});
  if (!r.isogeny_class.empty()) {
    j["isogeny_class"] = r.isogeny_class;
    j["optimal_curve"] = r.optimal_curve;
    j["manin_constant"] = rat_str(r.manin_c);
    j["degree"] = r.degree;
    j["threshold"] = r.threshold;
    j["certificate_totals"] = r.certificate_totals;
    j["certified"] = r.certified;
  }
  if (r.base_point) {
    json bp = json::array();
    for (const auto& c : *r.base_point) bp.push_back(rat_str(c));
    j["base_point"] = bp;
  }
  j["used_ignore_base"] = r.used_ignore_base;
  if (!r.points.empty() || r.points_complete) {
    json pts = json::array();
    for (const auto& p : r.points) {
      json q = json::array();
      for (const auto& c : p) q.push_back(c.get_str());
      pts.push_back(q);
    }
    j["points"] = pts;
    j["points_complete"] = r.points_complete;
  }
  if (!r.j_values.empty()) {
    json js = json::array();
    for (const auto& v : r.j_values)
      js.push_back(json{{"cusp", v.is_cusp}, {"cm", v.is_cm}, {"j", v.is_cusp ? "infinity" : rat_str(v.j)}});
    j["j_values"] = js;
  }
  return j.dump(1);
}

BundleSummary cmd_init(const std::string& bundle_path) {
  CurveBundle b = load_bundle(bundle_path);
  BundleSummary s;
  s.label = b.label;
  s.level = b.level;
  s.index = b.index;
  s.genus = b.genus;
  s.graded_deg = b.graded_deg;
  s.prec = b.prec;
  s.n_cusps = static_cast<long>(b.cusps.size());
  s.has_jmap = b.jmap.has_value();
  return s;
}

std::vector<std::pair<std::string, long>> cmd_candidates(const CurveBundle& b,
                                                         const std::string& table_path, long pmax) {
  auto table = load_curve_table(table_path);
  return candidate_factors(b, table, pmax);
}

CertifiedMap cmd_find_map(const CurveBundle& b, const std::vector<std::string>& classes,
                          const std::vector<long>& multiplicities,
                          const std::vector<EllCurveRecord>& table, const PipelineConfig& cfg,
                          RunReport& report) {
  if (classes.empty()) throw std::domain_error("cmd_find_map: no isogeny classes given");
  std::mt19937_64 rng(cfg.seed);
  long bits = cfg.effective_bits();

  // Step 2: rational base point (plus local solvability when none is found)
  std::optional<std::vector<Rat>> base_point;
  bool ignore_base = cfg.ignore_base;
  if (!ignore_base) {
    Timer t(report, "step2-base-point", cfg.verbose);
    auto pts = point_search(b, cfg.height_bound);
    if (!pts.empty()) {
      std::vector<Rat> q;
      for (const auto& c : pts.front()) q.emplace_back(c);
      base_point = q;
      report.base_point = base_point;
    } else {
      for (long p : prime_factors(b.level))
        if (!local_solvability(b.model, p))
          throw std::runtime_error("cmd_find_map: no points over Q_" + std::to_string(p));
      // no obstruction found: proceed with the cusp at infinity as base point
      ignore_base = true;
      report.used_ignore_base = true;
    }
  } else {
    report.used_ignore_base = true;
  }

  struct Candidate {
    std::string cls;
    EllCurveRecord optimal;
    Rat c;
    long degree;
    std::vector<CQSeries> cf;
    PeriodLattice lat;
  };
  std::vector<Candidate> cands;

  for (size_t ci = 0; ci < classes.size(); ++ci) {
    Candidate cand;
    cand.cls = classes[ci];
    std::vector<EllCurveRecord> class_curves;
    for (const auto& r : table)
      if (r.isogeny_class == classes[ci]) class_curves.push_back(r);
    if (class_curves.empty())
      throw std::domain_error("cmd_find_map: class " + classes[ci] + " not in the table");
    long mult = ci < multiplicities.size() ? multiplicities[ci] : 1;

    // Step 3: isolate the eigenform
    std::vector<CQSeries> f;
    {
      Timer t(report, "step3-eigenform-" + classes[ci], cfg.verbose);
      f = isolate_eigenform(b, class_curves.front().curve(), mult, cfg.hecke_prime_bound);
    }

    // Steps 4-5: periods and lattice (resampling with doubled NumMats on
    // failure, up to 3 rounds)
    PeriodEvaluator ev(b, f, bits);
    RecognizedLattice rec;
    {
      Timer t(report, "step4-5-periods-" + classes[ci], cfg.verbose);
      long nmats = cfg.num_mats;
      for (int round = 0;; ++round) {
        PeriodSample s = sample_periods(b, ev, nmats, cfg.word_max_len, rng);
        try {
          rec = recognize_lattice(s);
          if (!rec.degenerate) break;
        } catch (const std::runtime_error&) {
          if (round == 2) throw;
        }
        if (round == 2)
          throw std::runtime_error("cmd_find_map: lattice recognition failed after 3 rounds");
        nmats *= 2;
      }
    }

    // Step 6: optimal curve and Manin constant
    {
      Timer t(report, "step6-optimal-" + classes[ci], cfg.verbose);
      auto [rec_curve, c] = match_optimal_curve(rec, class_curves, bits);
      cand.optimal = rec_curve;
      cand.c = c;
    }

    // scaled form cf
    for (const auto& s : f) cand.cf.push_back(s.scaled(cand.c));
    cand.lat = curve_periods(cand.optimal.curve(), bits);

    // Step 7: analytic degree
    {
      Timer t(report, "step7-degree-" + classes[ci], cfg.verbose);
      PeriodEvaluator ev_cf(b, cand.cf, bits);
      cand.degree = modular_degree(b, ev_cf, cand.lat);
    }
    cands.push_back(std::move(cand));
  }

  // pick the minimal degree
  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].degree < cands[best].degree) best = i;
  Candidate& cand = cands[best];
  report.isogeny_class = cand.cls;
  report.optimal_curve = cand.optimal.label;
  report.manin_c = cand.c;
  report.degree = cand.degree;
  EllipticCurveQ curve = cand.optimal.curve();

  // Step 7 continued: degree window and certification precision
  long r = cand.degree;
  long dlo = (3 * r + b.genus - 1) / b.graded_deg;
  if (dlo < 1) dlo = 1;
  long dhi_num = 3 * r + b.genus - 1;
  long dhi = dhi_num / b.graded_deg + 1;  // floor + 1 covers the upper bound
  long ncusps = static_cast<long>(b.cusps.size());

  // Step 8: cusp Abel-Jacobi constants
  std::vector<CuspConstant> constants;
  {
    Timer t(report, "step8-cusp-constants", cfg.verbose);
    PeriodEvaluator ev_cf(b, cand.cf, bits);
    constants = cusp_constants(b, ev_cf, curve, cand.lat, bits);
  }

  CertifiedMap map;
  map.curve_label = cand.optimal.label;
  map.isogeny_class = cand.cls;
  map.analytic_degree = cand.degree;
  map.manin_c = cand.c;

  std::string solve_error;
  for (long d = dlo; d <= dhi; ++d) {
    long thr = certify_threshold(b, d, 3);
    long prec_needed = thr / ncusps + 10;
    if (prec_needed > b.prec) {
      Rat suggested = Rat(prec_needed) / Rat(b.prec) * cfg.precmult;
      throw std::runtime_error("cmd_find_map: insufficient precision for certification at degree " +
                               std::to_string(d) + "; rerun with precmult " + rat_str(suggested));
    }
    CurveBundle bt = truncate_bundle(b, prec_needed);
    // Step 9: x and y expansions
    XYExpansions xy;
    {
      Timer t(report, "step9-xy-expansions-d" + std::to_string(d), cfg.verbose);
      std::vector<CQSeries> cf_t;
      for (size_t j = 0; j < bt.cusps.size(); ++j) {
        CQSeries s = cand.cf[j];
        if (s.prec > bt.prec) {
          s.a.resize(std::max<long>(0, bt.prec - s.v));
          s.prec = bt.prec;
        }
        cf_t.push_back(s);
      }
      xy = xy_expansions(bt, cf_t, curve, constants);
    }
    // Steps 10-11
    GradedPiece piece;
    {
      Timer t(report, "step10-graded-piece-d" + std::to_string(d), cfg.verbose);
      piece = graded_piece(bt, d);
    }
    std::optional<SolveOutcome> sol;
    {
      Timer t(report, "step10-11-solve-d" + std::to_string(d), cfg.verbose);
      sol = solve_map(bt, piece, xy, curve, ignore_base ? std::nullopt : base_point, rng);
    }
    if (!sol) {
      solve_error = "null space exhausted at degree " + std::to_string(d);
      continue;
    }
    map.degree_d = d;
    map.triples = sol->triples;
    // Step 12
    {
      Timer t(report, "step12-certify-d" + std::to_string(d), cfg.verbose);
      if (certify_map(bt, map, curve, piece)) {
        report.threshold = map.threshold;
        report.certified = true;
        for (const auto& ce : map.certificates) report.certificate_totals.push_back(ce.total);
        return map;
      }
    }
    solve_error = "certification failed at degree " + std::to_string(d);
  }
  throw std::runtime_error("cmd_find_map: " + (solve_error.empty()
                                                   ? std::string("no degree in the window succeeded")
                                                   : solve_error) +
                           " (raise precmult and retry)");
}

PointReport cmd_rat_pts(const CurveBundle& b, const CertifiedMap& map,
                        const std::vector<EllCurveRecord>& table, const PipelineConfig& cfg,
                        RunReport& report) {
  if (!map.certified) throw std::domain_error("cmd_rat_pts: map is not certified");
  const EllCurveRecord* rec = nullptr;
  for (const auto& r : table)
    if (r.label == map.curve_label) rec = &r;
  if (!rec) throw std::domain_error("cmd_rat_pts: optimal curve not in the table");
  if (rec->rank != 0) throw std::domain_error("cmd_rat_pts: curve has nonzero rank in the table");
  EllipticCurveQ curve = rec->curve();

  PointReport total;
  total.complete = true;
  std::vector<PointQ> mw;
  {
    Timer t(report, "step13-mordell-weil", cfg.verbose);
    mw = curve.mordell_weil_rank0();
  }
  for (const auto& T : mw) {
    std::vector<Rat> target =
        T.inf ? std::vector<Rat>{Rat(0), Rat(1), Rat(0)} : std::vector<Rat>{T.x, T.y, Rat(1)};
    ZeroDimScheme z = pullback_scheme(b, map, target);
    Timer t(report, "step13-fiber", cfg.verbose);
    PointReport rep = solve_zerodim(z, b.level, cfg.prime_bound);
    if (!rep.complete) {
      total.complete = false;
      total.fallback_needed = true;
    }
    for (auto& p : rep.points) {
      bool dup = false;
      for (const auto& q : total.points) dup |= (q == p);
      if (!dup) total.points.push_back(p);
    }
    if (total.lower_prime == 0) total.lower_prime = rep.lower_prime;
    total.upper_prime = rep.upper_prime;
  }
  report.points = total.points;
  report.points_complete = total.complete;
  if (b.jmap) {
    Timer t(report, "step14-j-values", cfg.verbose);
    report.j_values = evaluate_j(b, total.points);
    // cross-checks against stored counts when present
    if (b.rational_cusp_count >= 0) {
      long cusps = 0;
      for (const auto& v : report.j_values) cusps += v.is_cusp ? 1 : 0;
      if (cusps != b.rational_cusp_count)
        throw std::runtime_error("cmd_rat_pts: rational cusp count mismatch with bundle data");
    }
    for (const auto& [jv, n] : b.cm_points) {
      long c = 0;
      for (const auto& v : report.j_values) c += (!v.is_cusp && v.is_cm && v.j == jv) ? 1 : 0;
      if (total.complete && c != n)
        throw std::runtime_error("cmd_rat_pts: CM point count mismatch with bundle data");
    }
  }
  report.success = total.complete && map.certified;
  return total;
}

}  // namespace modec
