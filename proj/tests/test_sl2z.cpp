#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modec/sl2z.hpp"

using namespace modec;

TEST_CASE("st_decompose basics") {
  STWord w = st_decompose(MatZ());
  CHECK(w.letters.empty());
  CHECK(w.sign == 1);

  STWord t5 = st_decompose(MatZ::T(5));
  REQUIRE(t5.letters.size() == 1);
  CHECK(t5.letters[0].gen == 'T');
  CHECK(t5.letters[0].exp == 5);
  CHECK(t5.sign == 1);
}

TEST_CASE("st_decompose reproduces the generator word") {
  MatZ g(17, 144, 36, 305);
  STWord w = st_decompose(g);
  CHECK(w.recompose() == g);
  CHECK(w.sign == -1);
  // - S T^-3 S T^-2 S T^-2 S T^-2 S T^-2 S T^-2 S T^-2 S T^-2 S T^-3 S T^8
  std::vector<std::pair<char, long>> expect = {
      {'S', 1}, {'T', -3}, {'S', 1}, {'T', -2}, {'S', 1}, {'T', -2}, {'S', 1},
      {'T', -2}, {'S', 1}, {'T', -2}, {'S', 1}, {'T', -2}, {'S', 1}, {'T', -2},
      {'S', 1}, {'T', -2}, {'S', 1}, {'T', -3}, {'S', 1}, {'T', 8}};
  REQUIRE(w.letters.size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) {
    CHECK(w.letters[i].gen == expect[i].first);
    CHECK(w.letters[i].exp == expect[i].second);
  }
}

TEST_CASE("st word round trip on 1000 random determinant-1 matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> expd(-8, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    MatZ g;
    // random word, keeping entries under ~10^6
    for (int i = 0; i < 12; ++i) {
      g = g * MatZ::T(expd(rng)) * MatZ::S();
      Int m = abs(g.a);
      for (const Int& v : {g.b, g.c, g.d})
        if (abs(v) > m) m = abs(v);
      if (m > 50000) break;
    }
    REQUIRE(g.det() == 1);
    STWord w = st_decompose(g);
    CHECK(w.recompose() == g);
  }
}

TEST_CASE("lift_slnz") {
  long N = 36;
  // identity lifts to the identity
  MatZ id = lift_slnz(MatZ(), N);
  CHECK(id.is_identity());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    // random element of SL2(Z/N): reduce a random SL2(Z) word
    MatZ g;
    std::uniform_int_distribution<long> expd(-5, 5);
    for (int i = 0; i < 6; ++i) g = g * MatZ::T(expd(rng)) * MatZ::S();
    ModMat gb = ModNGroup::reduce(g, N);
    MatZ lift = lift_slnz(MatZ(gb.m[0], gb.m[1], gb.m[2], gb.m[3]), N);
    CHECK(lift.det() == 1);
    ModMat rb = ModNGroup::reduce(lift, N);
    CHECK(rb == gb);
  }
  // a generator of the level-36 example group lifts validly
  MatZ cand(17, 144, 36, 305);
  ModMat red = ModNGroup::reduce(cand, 36);
  MatZ lift = lift_slnz(MatZ(red.m[0], red.m[1], red.m[2], red.m[3]), 36);
  CHECK(lift.det() == 1);
  CHECK(ModNGroup::reduce(lift, 36) == red);
}

TEST_CASE("random kernel words reduce to the identity") {
  std::mt19937_64 rng(99);
  CHECK(random_kernel_words(36, 0, 50, rng).empty());
  auto ws = random_kernel_words(36, 10, 50, rng);
  REQUIRE(ws.size() == 10);
  ModMat id = ModNGroup::identity();
  for (const auto& g : ws) {
    CHECK(g.det() == 1);
    CHECK(ModNGroup::reduce(g, 36) == id);
    CHECK(static_cast<long>(st_decompose(g).letters.size()) <= 50);
  }
}

TEST_CASE("ModNGroup enumeration and Schreier generators") {
  // Borel mod 11: order 11 * 10^2 / ... upper triangular invertible: 11*10*10
  std::vector<ModMat> gens = {ModMat{{1, 1, 0, 1}}, ModMat{{2, 0, 0, 1}}, ModMat{{1, 0, 0, 2}}};
  ModNGroup G(11, gens);
  CHECK(G.order() == 11 * 10 * 10);
  ModNGroup sl = G.sl2_part();
  CHECK(sl.order() == 11 * 10);
  auto sg = G.sl2_schreier_generators(gens);
  CHECK(!sg.empty());
  ModNGroup H(11, sg);
  CHECK(H.order() == sl.order());  // Schreier generators generate the kernel
}

TEST_CASE("coset enumeration for Gamma_0(11)") {
  std::vector<ModMat> gens = {ModMat{{1, 1, 0, 1}}, ModMat{{2, 0, 0, 1}}, ModMat{{1, 0, 0, 2}}};
  ModNGroup G(11, gens);
  ModNGroup sl = G.sl2_part();
  CosetTable tab = enumerate_cosets(sl, 11);
  CHECK(tab.index() == 12);
  // permutation actions are bijections
  std::vector<bool> seen(12, false);
  for (long i = 0; i < 12; ++i) seen[tab.sigma_t[i]] = true;
  for (bool s : seen) CHECK(s);
}
