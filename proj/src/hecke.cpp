#include "modec/hecke.hpp"

#include <stdexcept>

#include "modec/matrix.hpp"

namespace modec {

HeckeMatrix hecke_matrix(const CurveBundle& b, long p) {
  if (b.level % p == 0) throw std::domain_error("hecke_matrix: p divides the level");
  long g = b.genus;
  long N = b.level;
  long sigma_k = to_long(inv_mod(Int(p), Int(N)));
  // Shared coefficient matrix: rows indexed by (cusp, n with p ∤ n, pn < prec,
  // zeta-coordinate), columns j = 1..g with entry a_j(n).
  // Solve one rhs per i: sigma(a_i(pn)).
  struct Row {
    std::vector<Rat> lhs;  // g entries
    std::vector<Rat> rhs;  // g entries (one per i)
  };
  long phi = CycloField::get(N)->phi;
  std::vector<Row> rows;
  for (size_t c = 0; c < b.cusps.size(); ++c) {
    for (long n = 1; n * p < b.prec; ++n) {
      if (n % p == 0) continue;
      for (long t = 0; t < phi; ++t) {
        Row r;
        r.lhs.resize(g);
        r.rhs.resize(g);
        for (long j = 0; j < g; ++j) r.lhs[j] = b.forms[j][c].coeff(n).c[t];
        for (long i = 0; i < g; ++i) r.rhs[i] = b.forms[i][c].coeff(n * p).galois(sigma_k).c[t];
        rows.push_back(std::move(r));
      }
    }
  }
  // rank check on the lhs
  Echelon ech(g);
  for (const auto& r : rows) ech.add_row(r.lhs);
  if (ech.rank() < g)
    throw std::runtime_error(
        "hecke_matrix: determining system is rank deficient (insufficient prec; raise precmult)");
  HeckeMatrix out;
  out.p = p;
  out.m.assign(g, std::vector<Cyclo>(g, Cyclo(N)));
  for (long i = 0; i < g; ++i) {
    // kernel of [lhs | -rhs_i] has dimension 1; solution x with last coord 1
    Echelon aug(g + 1);
    for (const auto& r : rows) {
      std::vector<Rat> row(g + 1);
      for (long j = 0; j < g; ++j) row[j] = r.lhs[j];
      row[g] = -r.rhs[i];
      aug.add_row(row);
    }
    auto ker = aug.kernel();
    if (ker.size() != 1 || ker[0][g] == 0)
      throw std::runtime_error("hecke_matrix: inconsistent determining system (insufficient prec)");
    Rat inv = Rat(1) / ker[0][g];
    for (long j = 0; j < g; ++j) out.m[i][j] = Cyclo(N, ker[0][j] * inv);
  }
  return out;
}

std::vector<std::vector<Rat>> hecke_kernel(const CurveBundle& b, const EllipticCurveQ& e,
                                           long multiplicity, long prime_bound) {
  long g = b.genus;
  std::vector<std::vector<Rat>> basis;
  bool started = false;
  for (long p = 2; p <= prime_bound; ++p) {
    if (!is_prime(Int(p)) || b.level % p == 0 || !e.good_reduction(p)) continue;
    HeckeMatrix hm = hecke_matrix(b, p);
    long apv = e.ap(p);
    QMat mt(g, g);  // transpose of (M - ap I): kernel gives coefficient vectors
    for (long i = 0; i < g; ++i)
      for (long j = 0; j < g; ++j) {
        if (!hm.m[i][j].is_rational())
          throw std::runtime_error("hecke_kernel: non-rational Hecke matrix entry");
        mt.at(j, i) = hm.m[i][j].rational_part() - (i == j ? Rat(apv) : Rat(0));
      }
    auto ker = nullspace(mt);
    if (!started) {
      basis = ker;
      started = true;
    } else {
      // intersect span(basis) with span(ker)
      Echelon ech(g);
      for (const auto& v : ker) ech.add_row(v);
      long nb = static_cast<long>(basis.size());
      QMat r(g, nb);
      for (long i = 0; i < nb; ++i) {
        auto red = ech.reduce(basis[i]);
        for (long row = 0; row < g; ++row) r.at(row, i) = red[row];
      }
      std::vector<std::vector<Rat>> inter;
      for (const auto& cvec : nullspace(r)) {
        std::vector<Rat> v(g, Rat(0));
        for (long i = 0; i < nb; ++i)
          for (long j = 0; j < g; ++j) v[j] += cvec[i] * basis[i][j];
        inter.push_back(std::move(v));
      }
      basis = inter;
    }
    if (static_cast<long>(basis.size()) <= multiplicity) break;
  }
  if (static_cast<long>(basis.size()) != multiplicity)
    throw std::runtime_error("isolate_eigenform: intersection of Hecke kernels has dimension " +
                             std::to_string(basis.size()) + ", expected " +
                             std::to_string(multiplicity) + " (primes up to " +
                             std::to_string(prime_bound) + ")");
  return basis;
}

std::vector<CQSeries> form_from_vector(const CurveBundle& b, const std::vector<Rat>& v) {
  std::vector<CQSeries> out;
  for (size_t c = 0; c < b.cusps.size(); ++c) {
    CQSeries s = CQSeries::zero(b.cusps[c].width, b.prec, Cyclo(b.level));
    for (long i = 0; i < b.genus; ++i)
      if (v[i] != 0) s = s + b.forms[i][c].scaled(v[i]);
    out.push_back(s.normalized());
  }
  return out;
}

void normalize_integral(std::vector<CQSeries>& form) {
  Int den(1), content(0);
  for (const auto& s : form)
    for (const auto& c : s.a)
      for (const auto& r : c.c) den = lcm(den, r.get_den());
  for (const auto& s : form)
    for (const auto& c : s.a)
      for (const auto& r : c.c) content = gcd(content, Int(r * Rat(den)));
  if (content == 0) content = 1;
  Rat f = Rat(den) / Rat(content);
  // sign: first nonzero coefficient at the first cusp gets a positive leading
  // rational coordinate
  const CQSeries& first = form.front();
  for (long i = 0; i < first.nterms(); ++i) {
    if (first.a[i].is_zero()) continue;
    for (const auto& r : first.a[i].c)
      if (r != 0) {
        if (r * f < 0) f = -f;
        break;
      }
    break;
  }
  for (auto& s : form)
    for (auto& c : s.a) c = c * f;
}

std::vector<CQSeries> isolate_eigenform(const CurveBundle& b, const EllipticCurveQ& e,
                                        long multiplicity, long prime_bound) {
  if (multiplicity < 1) throw std::domain_error("isolate_eigenform: multiplicity must be >= 1");
  auto basis = hecke_kernel(b, e, multiplicity, prime_bound);
  // The intersection stops once the dimension matches; verify the eigenvalue
  // relation at a few further primes to reject accidental matches at the
  // first tested prime.
  long verified = 0;
  for (long p = 2; p <= prime_bound && verified < 3; ++p) {
    if (!is_prime(Int(p)) || b.level % p == 0 || !e.good_reduction(p)) continue;
    HeckeMatrix hm = hecke_matrix(b, p);
    Rat apv(e.ap(p));
    for (const auto& v : basis) {
      // v^T (M - ap I) = 0
      for (long j = 0; j < b.genus; ++j) {
        Cyclo s(b.level);
        for (long i = 0; i < b.genus; ++i) s += hm.m[i][j] * v[i];
        s -= Cyclo(b.level, apv * v[j]);
        if (!s.is_zero())
          throw std::runtime_error("isolate_eigenform: kernel vector fails the T(" +
                                   std::to_string(p) + ") eigenvalue check for " + e.label);
      }
    }
    ++verified;
  }
  auto form = form_from_vector(b, basis.front());
  normalize_integral(form);
  return form;
}

}  // namespace modec
