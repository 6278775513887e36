#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "modec/hecke.hpp"
#include "modec/ratpoints.hpp"

using namespace modec;

namespace {
std::string data_dir() {
  const char* d = std::getenv("MODEC_DATA");
  return d ? d : "../data";
}

HomogPolyQ poly3(std::vector<std::pair<std::vector<int>, long>> terms, long deg) {
  HomogPolyQ p(3, deg);
  for (auto& [e, c] : terms) p.add_term(e, Rat(c));
  return p;
}
}  // namespace

TEST_CASE("hensel lift exponent") {
  CHECK(hensel_lift_exponent(5) == 19);
  CHECK(hensel_lift_exponent(2) == 41);
  CHECK(hensel_lift_exponent(3) == 27);
}

TEST_CASE("local solvability k schedule") {
  CHECK(local_k_schedule(2) == 8);
  CHECK(local_k_schedule(3) == 4);
  CHECK(local_k_schedule(5) == 3);
  CHECK(local_k_schedule(7) == 3);
}

TEST_CASE("x^2 + y^2 + z^2 = 0 is locally unsolvable at 2") {
  HomogPolyQ conic = poly3({{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}}, 2);
  CHECK(!local_solvability({conic}, 2));
  // but solvable at odd primes (smooth conic with F_p points)
  CHECK(local_solvability({conic}, 3));
  CHECK(local_solvability({conic}, 5));
}

TEST_CASE("a model with a rational point is locally solvable everywhere") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  for (long p : prime_factors(b.level)) CHECK(local_solvability(b.model, p));
}

TEST_CASE("point search on the X0(11) cubic") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  auto pts = point_search(b, 6);
  // (0:1:0) and (5:5:1), (5:-6:1) are within height 6
  REQUIRE(pts.size() == 3);
  auto has = [&](std::vector<long> v) {
    std::vector<Int> w(v.begin(), v.end());
    for (const auto& p : pts)
      if (p == w) return true;
    return false;
  };
  CHECK(has({0, 1, 0}));
  CHECK(has({5, 5, 1}));
  CHECK(has({5, -6, 1}));
  for (const auto& p : pts) {
    std::vector<Rat> pr(p.begin(), p.end());
    CHECK(b.model[0].eval_rat(pr) == 0);
  }
  // a model with no points at all (positive definite form)
  CurveBundle empty_b = b;
  empty_b.model[0] = poly3({{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}}, 2);
  CHECK(point_search(empty_b, 4).empty());
}

TEST_CASE("pullback minors at the point at infinity reduce to {A, C}") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  CertifiedMap map;
  map.certified = true;
  map.degree_d = 1;
  MapTriple t;
  t.A = poly3({{{1, 0, 0}, -1}}, 1);  // a = -X (the identity map)
  t.B = poly3({{{0, 1, 0}, -1}}, 1);
  t.C = poly3({{{0, 0, 1}, 1}}, 1);
  map.triples.push_back(t);
  ZeroDimScheme z = pullback_scheme(b, map, {Rat(0), Rat(1), Rat(0)});
  // model cubic + two minors (X and Z up to sign), the zero minor dropped
  REQUIRE(z.polys.size() == 3);
  CHECK(z.polys[1].degree == 1);
  CHECK(z.polys[2].degree == 1);
}

TEST_CASE("solve_zerodim: the five fibers of the X0(11) identity map") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  EllipticCurveQ e(Rat(0), Rat(-1), Rat(1), Rat(-10), Rat(-20), "11a1");
  CertifiedMap map;
  map.certified = true;
  map.degree_d = 1;
  MapTriple t;
  t.A = poly3({{{1, 0, 0}, -1}}, 1);
  t.B = poly3({{{0, 1, 0}, -1}}, 1);
  t.C = poly3({{{0, 0, 1}, 1}}, 1);
  map.triples.push_back(t);
  auto torsion = e.mordell_weil_rank0();
  REQUIRE(torsion.size() == 5);
  long total = 0;
  for (const auto& T : torsion) {
    std::vector<Rat> target =
        T.inf ? std::vector<Rat>{Rat(0), Rat(1), Rat(0)} : std::vector<Rat>{T.x, T.y, Rat(1)};
    ZeroDimScheme z = pullback_scheme(b, map, target);
    PointReport rep = solve_zerodim(z, b.level);
    CHECK(rep.complete);
    CHECK(rep.points.size() == 1);
    total += static_cast<long>(rep.points.size());
    // the found point maps to T under (-A : -B : C) = (X : Y : Z)
    std::vector<Rat> pt(rep.points[0].begin(), rep.points[0].end());
    Rat tx = -t.A.eval_rat(pt), ty = -t.B.eval_rat(pt), tz = t.C.eval_rat(pt);
    if (T.inf) {
      CHECK(tz == 0);
    } else {
      CHECK(tx == T.x * tz);
      CHECK(ty == T.y * tz);
    }
  }
  CHECK(total == 5);
}

TEST_CASE("x^2 - 2y^2, z: no rational points, certified") {
  ZeroDimScheme z;
  z.nvars = 3;
  z.target = {Rat(0), Rat(0), Rat(0)};
  z.polys.push_back(poly3({{{2, 0, 0}, 1}, {{0, 2, 0}, -2}}, 2));
  z.polys.push_back(poly3({{{0, 0, 1}, 1}}, 1));
  PointReport rep = solve_zerodim(z, 1);
  CHECK(rep.points.empty());
  CHECK(rep.complete);
  // brute-force oracle agrees
  long found = 0;
  for (long x = -20; x <= 20; ++x)
    for (long y = -20; y <= 20; ++y)
      if (x * x == 2 * y * y && (x != 0 || y != 0)) ++found;
  CHECK(found == 0);
}

TEST_CASE("hensel solver vs planted-solution brute force on 50 random schemes") {
  std::mt19937_64 rng(20240);
  std::uniform_int_distribution<long> co(-4, 4), pc(-3, 3);
  int done = 0;
  while (done < 50) {
    // plant a rational point and build two curves through it
    std::vector<Rat> P = {Rat(pc(rng)), Rat(pc(rng)), Rat(1)};
    auto rand_through = [&](long deg) {
      // random homogeneous poly of degree `deg`, corrected to vanish at P
      HomogPolyQ f(3, deg);
      auto exps = monomial_exponents(3, deg);
      for (const auto& e : exps) {
        long c = co(rng);
        if (c) f.add_term(e, Rat(c));
      }
      Rat v = f.eval_rat(P);
      // subtract v * z^deg (P has z = 1)
      std::vector<int> ez(3, 0);
      ez[2] = static_cast<int>(deg);
      f.add_term(ez, -v);
      return f;
    };
    ZeroDimScheme z;
    z.nvars = 3;
    z.target = {Rat(0), Rat(0), Rat(0)};
    z.polys.push_back(primitive_part(rand_through(2)));
    z.polys.push_back(primitive_part(rand_through(2)));
    if (z.polys[0].is_zero() || z.polys[1].is_zero()) continue;
    PointReport rep;
    try {
      rep = solve_zerodim(z, 1);
    } catch (const std::exception&) {
      continue;  // no usable prime (e.g. a non-reduced scheme); not this suite's concern
    }
    if (!rep.complete) continue;  // bounds never met; tested elsewhere
    ++done;
    // solver points satisfy the scheme exactly (solver verifies, re-check)
    for (const auto& q : rep.points) {
      std::vector<Rat> pr(q.begin(), q.end());
      for (const auto& f : z.polys) CHECK(f.eval_rat(pr) == 0);
    }
    // brute force with a generous height bound finds no extras
    long count_brute = 0;
    bool planted_found = false;
    for (long x = -30; x <= 30; ++x)
      for (long y = -30; y <= 30; ++y)
        for (long zz = 0; zz <= 30; ++zz) {
          if (x == 0 && y == 0 && zz == 0) continue;
          if (gcd_long(gcd_long(x, y), zz) != 1) continue;
          if (zz == 0 && (y < 0 || (y == 0 && x < 0))) continue;
          if (zz == 0 && y == 0 && x == 0) continue;
          std::vector<Rat> pr = {Rat(x), Rat(y), Rat(zz)};
          bool on = true;
          for (const auto& f : z.polys)
            if (f.eval_rat(pr) != 0) {
              on = false;
              break;
            }
          if (!on) continue;
          ++count_brute;
          // canonicalize like the solver: first nonzero coordinate positive
          std::vector<Int> pi = {Int(x), Int(y), Int(zz)};
          for (const auto& c : pi) {
            if (c == 0) continue;
            if (c < 0)
              for (auto& v : pi) v = -v;
            break;
          }
          bool among = false;
          for (const auto& q : rep.points) among |= (q == pi);
          CHECK(among);  // complete report must contain every small point
          if (pr[0] == P[0] && pr[1] == P[1] && pr[2] == P[2]) planted_found = true;
        }
    CHECK(planted_found);
    CHECK(count_brute <= static_cast<long>(rep.points.size()));
  }
}

TEST_CASE("evaluate_j tags cusps and CM points") {
  CurveBundle b = load_bundle(data_dir() + "/x0_11.bundle.json");
  // synthetic jmap on P^2: num = c * z^3 picks constants; den = x z^2 - ...
  // choose j = (x^3) / (z^2 x - z^3): at (1:0:1) j = infinity? den(1,0,1) = 0 -> cusp
  CurveBundle bj = b;
  HomogPolyQ num(3, 3), den(3, 3);
  num.add_term({3, 0, 0}, Rat(1));
  den.add_term({1, 0, 2}, Rat(1));
  den.add_term({0, 0, 3}, Rat(-1));
  bj.jmap = {num, den};
  // points: (1:5:1) -> den 0: cusp; (0:1:1) -> j = 0: CM; (12:0:1) -> j = 1728/11... pick exact:
  std::vector<std::vector<Int>> pts = {{Int(1), Int(5), Int(1)},
                                       {Int(0), Int(1), Int(1)},
                                       {Int(2), Int(0), Int(1)}};
  auto tags = evaluate_j(bj, pts);
  REQUIRE(tags.size() == 3);
  CHECK(tags[0].is_cusp);
  CHECK(tags[1].is_cm);      // j = 0 is CM
  CHECK(tags[1].j == Rat(0));
  CHECK(!tags[2].is_cusp);
  CHECK(tags[2].j == Rat(8));  // 8/(2-1) = 8: neither cusp nor CM
  CHECK(!tags[2].is_cm);
  // the thirteen class-number-1 j-invariants
  CHECK(cm_j_invariants().size() == 13);
  CHECK(std::find(cm_j_invariants().begin(), cm_j_invariants().end(), parse_rat("-262537412640768000")) !=
        cm_j_invariants().end());
  // -2^9 * 3^3 is a non-CM value from the tables
  CHECK(std::find(cm_j_invariants().begin(), cm_j_invariants().end(), Rat(-13824)) ==
        cm_j_invariants().end());
}

TEST_CASE("local solvability monotonic under raising k") {
  // smooth plane cubic with a point: solvable at every level
  HomogPolyQ cubic = poly3({{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, -2}}, 3);
  CHECK(local_solvability({cubic}, 3));
  CHECK(local_solvability({cubic}, 5));
}
