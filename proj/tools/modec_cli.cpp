// Command-line driver: init / candidates / find-map / rat-pts.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "modec/pipeline.hpp"

using namespace modec;

int main(int argc, char** argv) {
  CLI::App app{"modec: maps from modular curves to rank-0 elliptic curves"};
  app.require_subcommand(1);

  std::string bundle_path, table_path, map_path, report_path = "report.json";
  std::string classes_arg, mults_arg;
  double precmult = 1.0;
  PipelineConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precmult", precmult, "precision multiplier (default 1)");
    sub->add_flag("--ignore-base", cfg.ignore_base, "assume the infinity-based map is defined over Q");
    sub->add_flag("--verbose", cfg.verbose, "narrate the pipeline steps");
    sub->add_option("--num-mats", cfg.num_mats, "period sample size (default 20)");
    sub->add_option("--precision-bits", cfg.precision_bits, "working float precision in bits");
    sub->add_option("--seed", cfg.seed, "random seed (reports are deterministic given a seed)");
    sub->add_option("--prime-bound", cfg.prime_bound, "upper-bound prime search cap (default 400)");
    sub->add_option("--height-bound", cfg.height_bound, "point search height bound (default 10)");
    sub->add_option("--report", report_path, "report output path");
  };

  auto* init = app.add_subcommand("init", "load and validate a curve bundle");
  init->add_option("bundle", bundle_path)->required();

  auto* cand = app.add_subcommand("candidates", "possible elliptic factors of the Jacobian");
  cand->add_option("bundle", bundle_path)->required();
  cand->add_option("table", table_path)->required();
  long pmax = 20;
  cand->add_option("--pmax", pmax, "Hecke prime bound (default 20)");

  auto* fmap = app.add_subcommand("find-map", "construct and certify a map to an elliptic curve");
  fmap->add_option("bundle", bundle_path)->required();
  fmap->add_option("table", table_path)->required();
  fmap->add_option("--classes", classes_arg, "comma-separated isogeny class labels")->required();
  fmap->add_option("--multiplicities", mults_arg, "comma-separated multiplicities (default all 1)");
  fmap->add_option("--map-out", map_path, "certified map output path");
  add_common(fmap);

  auto* rpts = app.add_subcommand("rat-pts", "rational points through a certified map");
  rpts->add_option("bundle", bundle_path)->required();
  rpts->add_option("table", table_path)->required();
  rpts->add_option("--map", map_path, "certified map (from find-map)")->required();
  add_common(rpts);

  CLI11_PARSE(app, argc, argv);
  cfg.precmult = parse_rat(std::to_string(precmult).substr(0, 8));
  if (cfg.precmult < 1) cfg.precmult = Rat(1);

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };

  try {
    if (init->parsed()) {
      BundleSummary s = cmd_init(bundle_path);
      std::cout << "label: " << s.label << "\nlevel: " << s.level << "\nindex: " << s.index
                << "\ngenus: " << s.genus << "\ngraded_deg: " << s.graded_deg
                << "\ncusps: " << s.n_cusps << "\nprec: " << s.prec
                << "\njmap: " << (s.has_jmap ? "yes" : "no") << "\n";
      return 0;
    }
    CurveBundle b = load_bundle(bundle_path);
    if (cand->parsed()) {
      auto list = cmd_candidates(b, table_path, pmax);
      for (const auto& [cls, mult] : list)
        std::cout << cls << " multiplicity<=" << mult << "\n";
      return 0;
    }
    auto table = load_curve_table(table_path);
    RunReport report;
    if (fmap->parsed()) {
      std::vector<std::string> classes = split(classes_arg);
      std::vector<long> mults;
      for (const auto& m : split(mults_arg)) mults.push_back(std::stol(m));
      int rc = 0;
      try {
        CertifiedMap m = cmd_find_map(b, classes, mults, table, cfg, report);
        report.success = m.certified;
        if (!map_path.empty()) save_map(m, map_path);
        std::cout << "certified map to " << m.curve_label << " (degree " << m.analytic_degree
                  << ", c = " << rat_str(m.manin_c) << ", threshold " << m.threshold << ")\n";
      } catch (const std::exception& e) {
        report.error = e.what();
        std::cerr << "find-map failed: " << e.what() << "\n";
        rc = 1;
      }
      std::ofstream(report_path) << report_to_json(report) << "\n";
      return rc;
    }
    if (rpts->parsed()) {
      CertifiedMap m = load_map(map_path);
      int rc = 0;
      try {
        PointReport pr = cmd_rat_pts(b, m, table, cfg, report);
        std::cout << "|X(Q)| " << (pr.complete ? "=" : ">=") << " " << pr.points.size() << "\n";
        for (size_t i = 0; i < pr.points.size(); ++i) {
          std::cout << "(";
          for (size_t j = 0; j < pr.points[i].size(); ++j)
            std::cout << pr.points[i][j].get_str() << (j + 1 < pr.points[i].size() ? " : " : "");
          std::cout << ")";
          if (i < report.j_values.size()) {
            const auto& v = report.j_values[i];
            std::cout << "  j = " << (v.is_cusp ? "infinity (cusp)" : rat_str(v.j))
                      << (v.is_cm ? " (CM)" : v.is_cusp ? "" : " (non-CM)");
          }
          std::cout << "\n";
        }
      } catch (const std::exception& e) {
        report.error = e.what();
        std::cerr << "rat-pts failed: " << e.what() << "\n";
        rc = 1;
      }
      std::ofstream(report_path) << report_to_json(report) << "\n";
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
