#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modec/bundle.hpp"
#include "modec/mapbuild.hpp"
#include "modec/ratpoints.hpp"

namespace modec {

struct PipelineConfig {
  Rat precmult = Rat(1);
  bool ignore_base = false;
  bool verbose = false;
  long num_mats = 20;
  long word_max_len = 50;
  long hecke_prime_bound = 50;
  long prime_bound = 400;       // Step 13 upper-bound prime search
  long precision_bits = 100;    // ~30 decimal digits
  long height_bound = 10;
  unsigned long seed = 0;

  long effective_bits() const {
    Rat b = Rat(precision_bits) * precmult;
    return static_cast<long>(Int(b.get_num() / b.get_den()).get_si());
  }
};

struct StepTiming {
  std::string step;
  double seconds = 0;
};

struct RunReport {
  std::vector<StepTiming> timings;
  std::string isogeny_class;
  std::string optimal_curve;
  Rat manin_c = Rat(0);
  long degree = 0;
  long threshold = 0;
  std::vector<long> certificate_totals;
  bool certified = false;
  std::optional<std::vector<Rat>> base_point;
  bool used_ignore_base = false;
  std::vector<std::vector<Int>> points;
  std::vector<JValue> j_values;
  bool points_complete = false;
  bool success = false;
  std::string error;
};

std::string report_to_json(const RunReport& r);

struct BundleSummary {
  std::string label;
  long level = 0, index = 0, genus = 0, graded_deg = 0, prec = 0;
  long n_cusps = 0;
  bool has_jmap = false;
};

BundleSummary cmd_init(const std::string& bundle_path);

std::vector<std::pair<std::string, long>> cmd_candidates(const CurveBundle& b,
                                                         const std::string& table_path, long pmax);

// Steps 2-12: point search / local solvability, eigenform isolation, periods,
// lattice, optimal curve + Manin constant, degrees (minimal picked),
// cusp constants, xy expansions, graded solve, certification.
CertifiedMap cmd_find_map(const CurveBundle& b, const std::vector<std::string>& classes,
                          const std::vector<long>& multiplicities,
                          const std::vector<EllCurveRecord>& table, const PipelineConfig& cfg,
                          RunReport& report);

// Step 13-14: pull back E'(Q) through the certified map, solve each fiber,
// evaluate j when available.
PointReport cmd_rat_pts(const CurveBundle& b, const CertifiedMap& map,
                        const std::vector<EllCurveRecord>& table, const PipelineConfig& cfg,
                        RunReport& report);

}  // namespace modec
