#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modec/qseries.hpp"

using namespace modec;

namespace {

CQSeries monomial(long N, long w, long n, long prec, Rat c = Rat(1)) {
  CQSeries s(w, n, prec, Cyclo(N));
  s.a[0] = Cyclo(N, c);
  return s;
}

CQSeries random_series(long N, long w, long v, long prec, std::mt19937_64& rng) {
  CQSeries s(w, v, prec, Cyclo(N));
  std::uniform_int_distribution<long> c(-5, 5);
  for (auto& a : s.a) a = Cyclo(N, Rat(c(rng)));
  return s;
}

}  // namespace

TEST_CASE("series arithmetic basics") {
  long N = 6;
  CQSeries a = random_series(N, 3, 1, 30, *new std::mt19937_64(5));
  CQSeries one = monomial(N, 3, 0, 30);
  CHECK((a * one).normalized().a == a.normalized().a);

  // q^{1/3} * q^{2/3} = q
  CQSeries q13 = monomial(N, 3, 1, 30), q23 = monomial(N, 3, 2, 30);
  CQSeries q = q13 * q23;
  CHECK(q.v == 3);
  CHECK(q.coeff(3) == Cyclo(N, Rat(1)));

  // (1 - q)^{-1} = 1 + q + q^2 + ... at width 1
  CQSeries one1 = monomial(N, 1, 0, 20);
  CQSeries omq = one1 - monomial(N, 1, 1, 20);
  CQSeries geo = one1 / omq;
  for (long n = 0; n < 19; ++n) CHECK(geo.coeff(n) == Cyclo(N, Rat(1)));

  CHECK_THROWS(one1 / CQSeries::zero(1, 20, Cyclo(N)));
  CHECK_THROWS(q13 + one1);  // width mismatch
}

TEST_CASE("series arithmetic commutative/associative (200 random)") {
  std::mt19937_64 rng(123);
  long N = 12;
  for (int t = 0; t < 200; ++t) {
    CQSeries a = random_series(N, 4, 0, 15, rng);
    CQSeries b = random_series(N, 4, 1, 15, rng);
    CQSeries c = random_series(N, 4, 0, 15, rng);
    CHECK((a * b - b * a).is_zero_to_prec());
    CHECK((a + b - (b + a)).is_zero_to_prec());
    CQSeries l = (a * b) * c, r = a * (b * c);
    CHECK((l - r).is_zero_to_prec());
  }
}

TEST_CASE("antiderivative") {
  long N = 36;
  // q^{1/w} -> w q^{1/w}
  CQSeries f = monomial(N, 7, 1, 20);
  CQSeries F = antiderivative_2pii(f);
  CHECK(F.coeff(1) == Cyclo(N, Rat(7)));
  // q^2 at width 1 -> q^2/2
  CQSeries g = monomial(N, 1, 2, 20);
  CHECK(antiderivative_2pii(g).coeff(2) == Cyclo(N, Rat(1, 2)));
  // 3 q^{5/36} -> (108/5) q^{5/36}
  CQSeries h = monomial(N, 36, 5, 40, Rat(3));
  CHECK(antiderivative_2pii(h).coeff(5) == Cyclo(N, ratq(108, 5)));
  // nonzero constant term rejected
  CHECK_THROWS(antiderivative_2pii(monomial(N, 1, 0, 20)));
}

TEST_CASE("antiderivative then derivative is the identity") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) {
    CQSeries f = random_series(7, 5, 1, 25, rng).normalized();
    CQSeries back = derivative_q(antiderivative_2pii(f));
    CHECK((back - f).is_zero_to_prec());
  }
}

TEST_CASE("order of vanishing lower bound") {
  long N = 7;
  CQSeries a = monomial(N, 7, 3, 40);
  CHECK(order_of_vanishing_lb(a) == Rat(3, 7));
  CQSeries z = CQSeries::zero(4, 64, Cyclo(N));
  CHECK(order_of_vanishing_lb(z) == Rat(16));
  CQSeries b = monomial(N, 1, 1, 30) + monomial(N, 1, 3, 30);
  CHECK(order_of_vanishing_lb(b) == Rat(1));
}

TEST_CASE("eval_at examples") {
  long N = 4;
  long bits = 120;
  Complex i_pt(0.0, 1.0, bits);
  CQSeries z = CQSeries::zero(1, 40, Cyclo(N));
  EvalResult rz = eval_at(z, i_pt, 64);
  CHECK(abs(rz.value).to_double() == 0.0);

  // q at z=i -> e^{-2 pi}
  CQSeries q = monomial(N, 1, 1, 40);
  EvalResult rq = eval_at(q, i_pt, 64);
  CHECK(std::abs(rq.value.re.to_double() - 0.00186744273170798881) < 1e-15);
  CHECK(std::abs(rq.value.im.to_double()) < 1e-18);

  // q^{1/2} at z=i -> e^{-pi}
  CQSeries q12 = monomial(N, 2, 1, 40);
  EvalResult rh = eval_at(q12, i_pt, 50);
  CHECK(std::abs(rh.value.re.to_double() - 0.04321391826377224978) < 1e-14);

  // tail bound failure: short series, tiny Im(z)
  CQSeries s = monomial(N, 36, 1, 10);
  Complex low(0.0, 0.01, bits);
  CHECK_THROWS(eval_at(s, low, 64));
}

TEST_CASE("eval of a product equals the product of evals") {
  std::mt19937_64 rng(31337);
  long bits = 150;
  Complex z(0.3, 1.2, bits);
  for (int t = 0; t < 20; ++t) {
    CQSeries a = random_series(12, 3, 0, 60, rng);
    CQSeries b = random_series(12, 3, 1, 60, rng);
    EvalResult ra = eval_at(a, z, 40), rb = eval_at(b, z, 40);
    EvalResult rab = eval_at(a * b, z, 40);
    Real err = abs(rab.value - ra.value * rb.value);
    Real bound = rab.tail + ra.tail * abs(rb.value) + rb.tail * abs(ra.value) +
                 Real(1e-9, bits) * (Real(1, bits) + abs(ra.value * rb.value));
    CHECK(err < bound);
  }
}

TEST_CASE("width rescale and twist") {
  long N = 12;
  CQSeries a = monomial(N, 3, 2, 30, Rat(5));
  CQSeries b = a.rescale_width(12);
  CHECK(b.w == 12);
  CHECK(b.coeff(8) == Cyclo(N, Rat(5)));
  // twist by b=1 at width 12: coefficient n multiplied by zeta_12^n
  CQSeries c = b.twist(1);
  CHECK(c.coeff(8) == Cyclo(N, Rat(5)) * Cyclo::zeta(12, 8));
}
