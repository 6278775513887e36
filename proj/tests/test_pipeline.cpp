#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "modec/pipeline.hpp"

using namespace modec;

namespace {
std::string data_dir() {
  const char* d = std::getenv("MODEC_DATA");
  return d ? d : "../data";
}
}  // namespace

TEST_CASE("cmd_init summarizes the bundle") {
  BundleSummary s = cmd_init(data_dir() + "/x0_11.bundle.json");
  CHECK(s.level == 11);
  CHECK(s.index == 12);
  CHECK(s.genus == 1);
  CHECK(s.n_cusps == 2);
  CHECK_THROWS(cmd_init(data_dir() + "/missing.json"));
}

TEST_CASE("cmd_candidates finds 11a") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  auto list = cmd_candidates(b, data_dir() + "/curves_11.jsonl", 13);
  REQUIRE(list.size() == 1);
  CHECK(list[0].first == "11a");
  CHECK(list[0].second == 1);
}

TEST_CASE("find-map and rat-pts on X0(11)") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  auto table = load_curve_table(data_dir() + "/curves_11.jsonl");
  PipelineConfig cfg;
  cfg.precision_bits = 100;
  cfg.seed = 1;
  RunReport report;
  CertifiedMap map = cmd_find_map(b, {"11a"}, {1}, table, cfg, report);
  CHECK(map.certified);
  CHECK(map.curve_label == "11a1");  // the strong curve
  CHECK(map.analytic_degree == 1);
  CHECK(map.manin_c == Rat(1, 11));  // content-1 form is 11 * eta
  CHECK(map.manin_c * Rat(11) == Rat(1));
  CHECK(report.base_point.has_value());

  PointReport pr = cmd_rat_pts(b, map, table, cfg, report);
  CHECK(pr.complete);
  CHECK(pr.points.size() == 5);
  CHECK(report.success);

  std::string json = report_to_json(report);
  CHECK(json.find("\"points_complete\": true") != std::string::npos);
}
