#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "modec/bundle.hpp"

using namespace modec;

namespace {

std::string data_dir() {
  const char* d = std::getenv("MODEC_DATA");
  return d ? d : "../data";
}

}  // namespace

TEST_CASE("load the X0(11) bundle") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  CHECK(b.level == 11);
  CHECK(b.index == 12);
  CHECK(b.genus == 1);
  CHECK(b.graded_deg == 3);
  CHECK(b.prec == 200);
  CHECK(b.cusps.size() == 2);
  CHECK(b.cusps[0].width == 1);
  CHECK(b.cusps[1].width == 11);
  CHECK(b.forms.size() == 1);
  CHECK(b.coords.size() == 3);
  CHECK(b.gamma_bar->order() == 110);
  // eta product coefficients: q - 2q^2 - q^3 + 2q^4 + q^5 + ...
  const CQSeries& f = b.forms[0][0];
  CHECK(f.coeff(1) == Cyclo(11, Rat(1)));
  CHECK(f.coeff(2) == Cyclo(11, Rat(-2)));
  CHECK(f.coeff(3) == Cyclo(11, Rat(-1)));
  CHECK(f.coeff(4) == Cyclo(11, Rat(2)));
  CHECK(f.coeff(5) == Cyclo(11, Rat(1)));
}

TEST_CASE("bundle round trip") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  std::string tmp = "/tmp/modec_roundtrip.json";
  save_bundle(b, tmp);
  CurveBundle b2 = load_bundle(tmp);
  CHECK(b2.level == b.level);
  CHECK(b2.index == b.index);
  CHECK(b2.model.size() == b.model.size());
  CHECK(b2.forms[0][0].a.size() == b.forms[0][0].a.size());
  for (long n = 1; n < 50; ++n) CHECK(b2.forms[0][1].coeff(n) == b.forms[0][1].coeff(n));
  CHECK(b2.coords[0][0].v == b.coords[0][0].v);
}

TEST_CASE("tampering is rejected by the annihilation check") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  // flip one model coefficient
  CurveBundle bad = b;
  bad.model[0].add_term(std::vector<int>{1, 1, 1}, Rat(1));
  CHECK_THROWS(validate_bundle(bad));
  // empty forms rejected
  CurveBundle nf = b;
  nf.forms.clear();
  CHECK_THROWS(validate_bundle(nf));
  // tampered expansion coefficient rejected
  CurveBundle tc = b;
  tc.coords[0][0].a[5] = tc.coords[0][0].a[5] + Cyclo(11, Rat(1));
  CHECK_THROWS(validate_bundle(tc));
}

TEST_CASE("cusp_normalize") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  // alpha_j itself -> (j, 0, +)
  for (size_t j = 0; j < b.cusps.size(); ++j) {
    CuspNorm cn = cusp_normalize(b.cusps[j].alpha, b);
    CHECK(cn.cusp == static_cast<long>(j));
    CHECK(cn.b == 0);
  }
  // alpha_j T -> (j, 1, +) when the width exceeds 1
  CuspNorm cn = cusp_normalize(b.cusps[1].alpha * MatZ::T(1), b);
  CHECK(cn.cusp == 1);
  CHECK(cn.b == 1);
  // width-1 cusp at infinity absorbs T into Gamma
  CuspNorm c0 = cusp_normalize(b.cusps[0].alpha * MatZ::T(1), b);
  CHECK(c0.cusp == 0);
  CHECK(c0.b == 0);

  // recomposition property on random g: g = +- gamma alpha_j T^t
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> expd(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    MatZ g;
    for (int i = 0; i < 5; ++i) g = g * MatZ::T(expd(rng)) * MatZ::S();
    CuspNorm r = cusp_normalize(g, b);
    MatZ cand = b.cusps[r.cusp].alpha * MatZ::T(r.b);
    ModMat q = ModNGroup::mul(ModNGroup::reduce(g, 11),
                              ModNGroup::reduce(cand.inverse(), 11), 11);
    CHECK(b.gamma_bar->contains_pm(q));
  }
}

TEST_CASE("curve table") {
  std::string tmp = "/tmp/modec_table.jsonl";
  {
    std::ofstream out(tmp);
    out << R"({"label":"11a1","ainvs":["0","-1","1","-10","-20"],"conductor":"11","rank":0,"isogeny_class":"11a"})" << "\n";
    out << R"({"label":"11a2","ainvs":["0","-1","1","-7820","-263580"],"conductor":"11","rank":0,"isogeny_class":"11a"})" << "\n";
  }
  auto t = load_curve_table(tmp);
  REQUIRE(t.size() == 2);
  CHECK(t[0].label == "11a1");
  CHECK(t[0].curve().disc == Rat(-161051));
  CHECK(t[1].isogeny_class == "11a");
}
