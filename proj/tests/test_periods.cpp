#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "modec/hecke.hpp"
#include "modec/periods.hpp"

using namespace modec;

namespace {
std::string data_dir() {
  const char* d = std::getenv("MODEC_DATA");
  return d ? d : "../data";
}
EllipticCurveQ curve_11a1() {
  return EllipticCurveQ(Rat(0), Rat(-1), Rat(1), Rat(-10), Rat(-20), "11a1");
}

struct X011 {
  CurveBundle b;
  std::vector<CQSeries> f;
  X011() : b(load_bundle(data_dir() + "/x0_11.bundle.json")) {
    f = isolate_eigenform(b, curve_11a1(), 1);
  }
};

X011& fixture() {
  static X011 x;
  return x;
}

}  // namespace

TEST_CASE("period of the identity and of T vanish") {
  auto& x = fixture();
  PeriodEvaluator ev(x.b, x.f, 100);
  CHECK(abs(ev.period(MatZ())).to_double() < 1e-25);
  // T is in Gamma_0(11); the path closes in the q-disk
  CHECK(abs(ev.period(MatZ::T(1))).to_double() < 1e-20);
}

TEST_CASE("period homomorphism property on 50 sampled pairs") {
  auto& x = fixture();
  long bits = 120;
  PeriodEvaluator ev(x.b, x.f, bits);
  std::mt19937_64 rng(42);
  PeriodSample s = sample_periods(x.b, ev, 10, 50, rng);
  REQUIRE(s.matrices.size() == 10);
  Real tol = Real::pow2(-bits / 2, bits);
  int pairs = 0;
  for (size_t i = 0; i < s.matrices.size() && pairs < 50; ++i)
    for (size_t j = 0; j < s.matrices.size() && pairs < 50; ++j) {
      MatZ gh = s.matrices[i] * s.matrices[j];
      Complex lhs = ev.period(gh);
      Real err = abs(lhs - (s.values[i] + s.values[j]));
      CHECK(err < tol);
      ++pairs;
    }
}

TEST_CASE("X0(11): lattice matches the AGM lattice of 11a1 with c = 1") {
  auto& x = fixture();
  long bits = 110;
  PeriodEvaluator ev(x.b, x.f, bits);
  std::mt19937_64 rng(7);
  PeriodSample s = sample_periods(x.b, ev, 20, 50, rng);
  RecognizedLattice lat = recognize_lattice(s);
  CHECK(!lat.degenerate);
  // 11a1 has discriminant -11^5 < 0: triangular shape
  CHECK(lat.triangular);
  std::vector<EllCurveRecord> cls;
  EllCurveRecord r;
  r.label = "11a1";
  r.ainvs = {Rat(0), Rat(-1), Rat(1), Rat(-10), Rat(-20)};
  r.conductor = 11;
  r.rank = 0;
  r.isogeny_class = "11a";
  cls.push_back(r);
  auto [opt, c] = match_optimal_curve(lat, cls, bits);
  CHECK(opt.label == "11a1");
  // content-1 form is 11 * eta, so the Manin constant is 1/11 and c f is the
  // classically normalized eta form (c times the leading coefficient is 1)
  CHECK(c == Rat(1, 11));
  CHECK(c * x.f[0].coeff(1).rational_part() == Rat(1));
  PeriodLattice el = curve_periods(curve_11a1(), bits);
  CHECK(abs(Real(c, bits) * lat.om1 - el.om1).to_double() < 1e-9);
  CHECK(abs(Real(c, bits) * lat.om2.im - el.om2.im).to_double() < 1e-9);
}

TEST_CASE("recognize_lattice: degenerate rank-1 sample flagged") {
  PeriodSample s;
  s.precision_bits = 100;
  long bits = 132;
  s.matrices. assign(3, MatZ());
  s.values = {Complex(bits), Complex(163.379, 0.0, bits), Complex(326.758, 0.0, bits)};
  RecognizedLattice lat = recognize_lattice(s);
  CHECK(lat.degenerate);
  CHECK(std::abs(lat.om1.to_double() - 163.379) < 1e-6);
}

TEST_CASE("recognize_lattice round trip on 100 random lattices of both shapes") {
  std::mt19937_64 rng(314);
  long bits = 150;
  std::uniform_real_distribution<double> um(0.3, 57.0);
  std::uniform_int_distribution<long> comb(-5, 5);
  for (int t = 0; t < 100; ++t) {
    bool tri = rng() & 1;
    double w1 = um(rng), w2i = um(rng);
    PeriodSample s;
    s.precision_bits = 120;
    Real om1(w1, bits);
    Complex om2 = tri ? Complex(w1 / 2, w2i, bits) : Complex(0.0, w2i, bits);
    // guaranteed generators plus random combinations
    std::vector<std::pair<long, long>> combos = {{1, 0}, {0, 1}};
    for (int k = 0; k < 18; ++k) combos.emplace_back(comb(rng), comb(rng));
    for (auto [a, bq] : combos) {
      s.matrices.push_back(MatZ());
      s.values.push_back(Complex(Real(a, bits) * om1, Real(bits)) +
                         Complex(Real(bq, bits) * om2.re, Real(bq, bits) * om2.im));
    }
    RecognizedLattice lat = recognize_lattice(s);
    REQUIRE(!lat.degenerate);
    CHECK(lat.triangular == tri);
    CHECK(abs(lat.om1 - om1).to_double() < 1e-12);
    CHECK(abs(lat.om2 - om2).to_double() < 1e-12);
    // declared coordinates reproduce the samples
    for (size_t k = 0; k < combos.size(); ++k) {
      CHECK(lat.coords[k].first == combos[k].first);
      CHECK(lat.coords[k].second == combos[k].second);
    }
  }
}

TEST_CASE("X0(11): analytic modular degree is 1") {
  auto& x = fixture();
  long bits = 110;
  std::vector<CQSeries> cf;
  for (const auto& s : x.f) cf.push_back(s.scaled(Rat(1, 11)));
  PeriodEvaluator ev(x.b, cf, bits);
  PeriodLattice el = curve_periods(curve_11a1(), bits);
  long deg = modular_degree(x.b, ev, el);
  CHECK(deg == 1);
}

TEST_CASE("X0(11): cusp constants") {
  auto& x = fixture();
  long bits = 120;
  std::vector<CQSeries> cf;
  for (const auto& s : x.f) cf.push_back(s.scaled(Rat(1, 11)));
  PeriodEvaluator ev(x.b, cf, bits);
  EllipticCurveQ e = curve_11a1();
  PeriodLattice el = curve_periods(e, bits);
  auto cons = cusp_constants(x.b, ev, e, el, bits);
  REQUIRE(cons.size() == 2);
  // cusp infinity: empty path, identity
  CHECK(abs(cons[0].value).to_double() < 1e-20);
  CHECK(cons[0].torsion.inf);
  // cusp 0: the 5-torsion point (16, -61), as the bundle generator found
  REQUIRE(!cons[1].torsion.inf);
  CHECK(cons[1].torsion.x == Cyclo(11, Rat(16)));
  CHECK(cons[1].torsion.y == Cyclo(11, Rat(-61)));
  CHECK(cons[1].coord1.get_den() == 5);
}

TEST_CASE("synthetic cusp value om1/2 identifies as 2-torsion") {
  // construct on y^2 = x^3 - x
  EllipticCurveQ e(Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0), "");
  long bits = 130;
  PeriodLattice lat = curve_periods(e, bits);
  Complex half(lat.om1 * Real(0.5, bits), Real(bits));
  auto pt = torsion_identify_cyclotomic(e, half, lat, 11, 4, bits);
  REQUIRE(pt.has_value());
  REQUIRE(!pt->inf);
  CHECK(pt->y == Cyclo(11, Rat(0)));
}
