#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "modec/hecke.hpp"

using namespace modec;

namespace {
std::string data_dir() {
  const char* d = std::getenv("MODEC_DATA");
  return d ? d : "../data";
}
EllipticCurveQ curve_11a1() {
  return EllipticCurveQ(Rat(0), Rat(-1), Rat(1), Rat(-10), Rat(-20), "11a1");
}
}  // namespace

TEST_CASE("Hecke eigenvalues on X0(11) match point-count traces") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  EllipticCurveQ e = curve_11a1();
  for (long p : {2L, 3L, 5L, 7L, 13L}) {
    HeckeMatrix hm = hecke_matrix(b, p);
    REQUIRE(hm.m.size() == 1);
    REQUIRE(hm.m[0][0].is_rational());
    CHECK(hm.m[0][0].rational_part() == Rat(e.ap(p)));
  }
  CHECK_THROWS(hecke_matrix(b, 11));  // p divides the level
}

TEST_CASE("Hecke matrices commute") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  HeckeMatrix h2 = hecke_matrix(b, 2), h3 = hecke_matrix(b, 3);
  CHECK(h2.m[0][0] * h3.m[0][0] == h3.m[0][0] * h2.m[0][0]);
}

TEST_CASE("isolate_eigenform on X0(11)") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  EllipticCurveQ e = curve_11a1();
  auto f = isolate_eigenform(b, e, 1);
  REQUIRE(f.size() == 2);
  // joint content-1 normalization across both cusps: the cusp-0 slash of the
  // eta form carries 1/11, so the normalized form is 11 * (eta product)
  CHECK(f[0].coeff(1) == Cyclo(11, Rat(11)));
  CHECK(f[0].coeff(2) == Cyclo(11, Rat(-22)));
  CHECK(f[1].coeff(1) == Cyclo(11, Rat(-1)));

  // scaling invariance: replacing the basis by a rational multiple leaves the
  // normalized output unchanged
  CurveBundle b2 = b;
  for (auto& s : b2.forms[0]) s = s.scaled(Rat(21, 5));
  auto f2 = isolate_eigenform(b2, e, 1);
  for (long n = 1; n < 40; ++n) CHECK(f2[0].coeff(n) == f[0].coeff(n));

  // a class whose a_p mismatch every eigenvalue errors out
  EllipticCurveQ wrong(Rat(0), Rat(0), Rat(0), Rat(-27), Rat(-918), "432.f1");
  CHECK_THROWS(isolate_eigenform(b, wrong, 1, 20));
}

TEST_CASE("zero form maps to zero") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  HeckeMatrix hm = hecke_matrix(b, 3);
  // applying the matrix to the zero coefficient vector gives zero
  Cyclo acc(11);
  for (long j = 0; j < b.genus; ++j) acc += hm.m[0][j] * Cyclo(11, Rat(0));
  CHECK(acc.is_zero());
}

TEST_CASE("candidate_factors on X0(11)") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  std::vector<EllCurveRecord> table;
  {
    EllCurveRecord r;
    r.label = "11a1";
    r.ainvs = {Rat(0), Rat(-1), Rat(1), Rat(-10), Rat(-20)};
    r.conductor = 11;
    r.rank = 0;
    r.isogeny_class = "11a";
    table.push_back(r);
    EllCurveRecord s;
    s.label = "37a1";  // conductor does not divide 121
    s.ainvs = {Rat(0), Rat(0), Rat(1), Rat(-1), Rat(0)};
    s.conductor = 37;
    s.rank = 1;
    s.isogeny_class = "37a";
    table.push_back(s);
    EllCurveRecord t;
    t.label = "121a-ish";  // conductor divides 121 but wrong eigenvalues
    t.ainvs = {Rat(1), Rat(1), Rat(1), Rat(-30), Rat(-76)};
    t.conductor = 121;
    t.rank = 0;
    t.isogeny_class = "121a";
    table.push_back(t);
  }
  auto out = candidate_factors(b, table, 20);
  REQUIRE(out.size() == 1);
  CHECK(out[0].first == "11a");
  CHECK(out[0].second == 1);

  // empty table, zero-genus behavior
  CHECK(candidate_factors(b, {}, 20).empty());
}
