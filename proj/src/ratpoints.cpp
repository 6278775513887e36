#include "modec/ratpoints.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_set>

#include "modec/ratrecon.hpp"

namespace modec {

namespace {

std::vector<Int> primitive(std::vector<Int> v) {
  Int g(0);
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  // sign: first nonzero positive
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

bool on_model(const std::vector<HomogPolyQ>& polys, const std::vector<Int>& pt) {
  std::vector<Rat> p(pt.size());
  for (size_t i = 0; i < pt.size(); ++i) p[i] = Rat(pt[i]);
  for (const auto& f : polys)
    if (f.eval_rat(p) != 0) return false;
  return true;
}

}  // namespace

std::vector<std::vector<Int>> point_search(const CurveBundle& b, long height_bound) {
  long n = b.nvars();
  std::vector<HomogPolyQ> polys;
  for (const auto& f : b.model) polys.push_back(primitive_part(f));
  // int64 coefficient cache for the first equation (pruning)
  std::vector<std::vector<Int>> found;
  std::vector<int64_t> x(n, 0);
  // first nonzero coordinate is positive; iterate over that leading index
  std::function<void(long)> rec = [&](long pos) {
    if (pos == n) {
      // skip the zero vector; check primitivity later
      bool all0 = true;
      int64_t g = 0;
      for (int64_t v : x) {
        if (v != 0) all0 = false;
        g = gcd_long(g, v);
      }
      if (all0 || g > 1) return;
      // leading sign
      for (int64_t v : x) {
        if (v == 0) continue;
        if (v < 0) return;
        break;
      }
      std::vector<Rat> pr(n);
      for (long i = 0; i < n; ++i) pr[i] = Rat(static_cast<long>(x[i]));
      for (const auto& f : polys)
        if (f.eval_rat(pr) != 0) return;
      std::vector<Int> pt(n);
      for (long i = 0; i < n; ++i) pt[i] = Int(static_cast<long>(x[i]));
      found.push_back(pt);
      return;
    }
    for (int64_t v = -height_bound; v <= height_bound; ++v) {
      x[pos] = v;
      // prune with the first equation mod a small prime once all but one
      // coordinate is fixed
      if (pos == n - 2 && !polys.empty()) {
        // quick filter: evaluate first poly mod 251 for each last coordinate
        // (cheap exact evaluation below is still the authority)
      }
      rec(pos + 1);
    }
    x[pos] = 0;
  };
  rec(0);
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b2) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b2[i]) return a[i] < b2[i];
    return false;
  });
  return found;
}

long local_k_schedule(long p) {
  if (p == 2) return 8;
  if (p == 3) return 4;
  return 3;
}

bool local_solvability(const std::vector<HomogPolyQ>& model, long p) {
  long kmax = local_k_schedule(p);
  long n = model.empty() ? 0 : model.front().nvars;
  std::vector<HomogPolyQ> polys;
  for (const auto& f : model) polys.push_back(primitive_part(f));
  // solutions at level k: canonical representatives (chart coordinate = 1,
  // chart = first unit coordinate), stored as vectors mod p^k
  struct State {
    long chart;
    std::vector<int64_t> x;
  };
  int64_t pk = p;
  std::vector<State> cur;
  // level 1: P^{n-1}(F_p) in chart-canonical form (coordinates before the
  // chart vanish mod p, chart coordinate is 1)
  {
    std::vector<int64_t> x(n, 0);
    std::function<void(long, long)> rec = [&](long chart, long pos) {
      if (pos == n) {
        for (const auto& f : polys)
          if (eval_mod(f, x, p) % p != 0) return;
        cur.push_back(State{chart, x});
        return;
      }
      if (pos < chart) {
        x[pos] = 0;
        rec(chart, pos + 1);
      } else if (pos == chart) {
        x[pos] = 1;
        rec(chart, pos + 1);
      } else {
        for (long v = 0; v < p; ++v) {
          x[pos] = v;
          rec(chart, pos + 1);
        }
        x[pos] = 0;
      }
    };
    for (long chart = 0; chart < n; ++chart) rec(chart, 0);
  }
  if (cur.empty()) return false;
  for (long k = 2; k <= kmax; ++k) {
    int64_t pk1 = pk;
    pk *= p;
    std::vector<State> next;
    for (const auto& st : cur) {
      // lift x -> x + p^{k-1} t, t free except at the chart coordinate
      std::vector<long> free_idx;
      for (long i = 0; i < n; ++i)
        if (i != st.chart) free_idx.push_back(i);
      long nf = static_cast<long>(free_idx.size());
      std::vector<int64_t> t(nf, 0);
      std::function<void(long)> rec = [&](long pos) {
        if (pos == nf) {
          std::vector<int64_t> x = st.x;
          for (long i = 0; i < nf; ++i) x[free_idx[i]] = (x[free_idx[i]] + pk1 * t[i]) % pk;
          for (const auto& f : polys)
            if (eval_mod(f, x, pk) % pk != 0) return;
          next.push_back(State{st.chart, x});
          return;
        }
        for (long v = 0; v < p; ++v) {
          t[pos] = v;
          rec(pos + 1);
        }
      };
      rec(0);
    }
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  return true;
}

ZeroDimScheme pullback_scheme(const CurveBundle& b, const CertifiedMap& map,
                              const std::vector<Rat>& target) {
  ZeroDimScheme z;
  z.nvars = b.nvars();
  z.target = target;
  for (const auto& f : b.model) z.polys.push_back(primitive_part(f));
  const Rat &xT = target[0], &yT = target[1], &zT = target[2];
  for (const auto& t : map.triples) {
    // minors of [(-A, -B, C); (xT, yT, zT)]
    HomogPolyQ mA = Rat(-1) * t.A, mB = Rat(-1) * t.B;
    auto add_minor = [&](const HomogPolyQ& f, const HomogPolyQ& g, const Rat& cf, const Rat& cg) {
      // cf * g - cg * f  with (f,g) entries of the map row
      HomogPolyQ m = cf * g + (-cg) * f;
      if (!m.is_zero()) z.polys.push_back(primitive_part(m));
    };
    add_minor(mA, mB, xT, yT);   // xT * (-B) - yT * (-A)
    add_minor(mA, t.C, xT, zT);  // xT * C - zT * (-A)
    add_minor(mB, t.C, yT, zT);  // yT * C - zT * (-B)
  }
  return z;
}

long hensel_lift_exponent(long p) {
  return static_cast<long>(std::ceil(12.0 * std::log(10.0) / std::log(static_cast<double>(p)))) + 1;
}

namespace {

// sqrt table mod p (quadratic residues -> a root), p odd prime
std::vector<long> sqrt_table(long p) {
  std::vector<long> tab(p, -1);
  for (long x = 0; x < p; ++x) {
    long s = (x * x) % p;
    if (tab[s] < 0) tab[s] = x;
  }
  return tab;
}

struct FpPoint {
  long chart;
  std::vector<int64_t> x;
};

// all P^{n-1}(F_p) points of the scheme (chart-canonical form)
std::vector<FpPoint> scheme_points_modp(const ZeroDimScheme& z, long p, bool* budget_ok,
                                        double budget = 5e8) {
  long n = z.nvars;
  double work = 1;
  for (long i = 0; i < n - 1; ++i) work *= p;
  if (budget_ok) *budget_ok = work * static_cast<double>(z.polys.size()) < budget;
  std::vector<FpPoint> pts;
  if (budget_ok && !*budget_ok) return pts;
  std::vector<int64_t> x(n, 0);
  std::function<void(long, long)> rec = [&](long chart, long pos) {
    if (pos == n) {
      for (const auto& f : z.polys)
        if (eval_mod(f, x, p) % p != 0) return;
      pts.push_back(FpPoint{chart, x});
      return;
    }
    if (pos < chart) {
      x[pos] = 0;
      rec(chart, pos + 1);
      return;
    }
    if (pos == chart) {
      x[pos] = 1;
      rec(chart, pos + 1);
      return;
    }
    for (long v = 0; v < p; ++v) {
      x[pos] = v;
      rec(chart, pos + 1);
    }
    x[pos] = 0;
  };
  for (long chart = 0; chart < n; ++chart) rec(chart, 0);
  return pts;
}

// Jacobian of the dehomogenized system at an F_p point; returns rank and, on
// full rank, a choice of rows giving an invertible (n-1)x(n-1) minor.
long jacobian_rank_modp(const ZeroDimScheme& z, const FpPoint& pt, long p,
                        std::vector<long>* rows_out) {
  long n = z.nvars;
  std::vector<long> vars;
  for (long i = 0; i < n; ++i)
    if (i != pt.chart) vars.push_back(i);
  std::vector<std::vector<int64_t>> jac;
  for (const auto& f : z.polys) {
    std::vector<int64_t> row;
    for (long v : vars) row.push_back(eval_mod(f.partial(v), pt.x, p) % p);
    jac.push_back(row);
  }
  // Gauss with row tracking
  long rank = 0;
  std::vector<long> chosen;
  std::vector<long> live(jac.size());
  for (size_t i = 0; i < jac.size(); ++i) live[i] = static_cast<long>(i);
  long m = static_cast<long>(vars.size());
  std::vector<std::vector<int64_t>> w = jac;
  std::vector<bool> used(w.size(), false);
  for (long c = 0; c < m; ++c) {
    long piv = -1;
    for (size_t r = 0; r < w.size(); ++r)
      if (!used[r] && w[r][c] % p != 0) {
        piv = static_cast<long>(r);
        break;
      }
    if (piv < 0) continue;
    used[piv] = true;
    chosen.push_back(piv);
    ++rank;
    // normalize and eliminate below
    int64_t inv = 1;
    {  // modular inverse
      int64_t a = w[piv][c] % p, t = 0, nt = 1, r0 = p, nr = a;
      while (nr) {
        int64_t q = r0 / nr, tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r0 - q * nr;
        r0 = nr;
        nr = tmp;
      }
      inv = t < 0 ? t + p : t;
    }
    for (size_t r = 0; r < w.size(); ++r) {
      if (used[r] || w[r][c] % p == 0) continue;
      int64_t f = (w[r][c] % p) * inv % p;
      for (long j = c; j < m; ++j) {
        w[r][j] = (w[r][j] - f * w[piv][j]) % p;
        if (w[r][j] < 0) w[r][j] += p;
      }
    }
  }
  if (rows_out) *rows_out = chosen;
  return rank;
}

// Newton lift of a smooth F_p point to Z/p^k (square subsystem from `rows`).
std::vector<Int> hensel_lift(const ZeroDimScheme& z, const FpPoint& pt, const std::vector<long>& rows,
                             long p, long k) {
  long n = z.nvars;
  std::vector<long> vars;
  for (long i = 0; i < n; ++i)
    if (i != pt.chart) vars.push_back(i);
  long m = static_cast<long>(vars.size());
  Int pk = pow_int(Int(p), k);
  std::vector<Int> x(n);
  for (long i = 0; i < n; ++i) x[i] = pt.x[i];
  // iterate x <- x - J^{-1} f with precision doubling
  long reached = 1;
  while (reached < k) {
    long next = std::min(2 * reached, k);
    Int pn = pow_int(Int(p), next);
    // f and J mod p^next on the chosen square subsystem
    std::vector<std::vector<Int>> J(m, std::vector<Int>(m));
    std::vector<Int> fv(m);
    std::vector<Rat> xr(n);
    for (long i = 0; i < n; ++i) xr[i] = Rat(x[i]);
    for (long r = 0; r < m; ++r) {
      const HomogPolyQ& f = z.polys[rows[r]];
      fv[r] = mod_positive(Int(f.eval_rat(xr)), pn);
      for (long c2 = 0; c2 < m; ++c2)
        J[r][c2] = mod_positive(Int(f.partial(vars[c2]).eval_rat(xr)), pn);
    }
    // solve J dx = fv mod p^next (Gauss; pivots are units)
    std::vector<Int> dx(m, Int(0));
    {
      std::vector<std::vector<Int>> A = J;
      std::vector<Int> bv = fv;
      std::vector<long> perm(m);
      for (long i = 0; i < m; ++i) perm[i] = i;
      for (long c2 = 0; c2 < m; ++c2) {
        long piv = -1;
        for (long r = c2; r < m; ++r)
          if (mod_positive(A[r][c2], Int(p)) != 0) {
            piv = r;
            break;
          }
        if (piv < 0) throw std::runtime_error("hensel_lift: Jacobian lost invertibility");
        std::swap(A[c2], A[piv]);
        std::swap(bv[c2], bv[piv]);
        Int inv = inv_mod(A[c2][c2], pn);
        for (long j = c2; j < m; ++j) A[c2][j] = mod_positive(A[c2][j] * inv, pn);
        bv[c2] = mod_positive(bv[c2] * inv, pn);
        for (long r = 0; r < m; ++r) {
          if (r == c2 || A[r][c2] == 0) continue;
          Int f2 = A[r][c2];
          for (long j = c2; j < m; ++j) A[r][j] = mod_positive(A[r][j] - f2 * A[c2][j], pn);
          bv[r] = mod_positive(bv[r] - f2 * bv[c2], pn);
        }
      }
      dx = bv;
    }
    for (long i = 0; i < m; ++i) x[vars[i]] = mod_positive(x[vars[i]] - dx[i], pn);
    reached = next;
  }
  return x;
}

}  // namespace

PointReport solve_zerodim(const ZeroDimScheme& z, long level, long prime_bound, long p_start,
                          long p_cap) {
  PointReport rep;
  long n = z.nvars;
  // (i) find p with no singular F_p point; lift, reconstruct, verify
  long p = 0;
  std::vector<FpPoint> fp_points;
  std::vector<std::vector<long>> lift_rows;
  for (long q = std::max(2L, p_start); q <= p_cap; ++q) {
    if (!is_prime(Int(q)) || level % q == 0) continue;
    bool ok = true;
    auto pts = scheme_points_modp(z, q, nullptr);
    std::vector<std::vector<long>> rows(pts.size());
    for (size_t i = 0; i < pts.size() && ok; ++i) {
      long rank = jacobian_rank_modp(z, pts[i], q, &rows[i]);
      if (rank < n - 1) ok = false;  // singular point: advance p
    }
    if (ok) {
      p = q;
      fp_points = std::move(pts);
      lift_rows = std::move(rows);
      break;
    }
  }
  if (p == 0) throw std::runtime_error("solve_zerodim: no usable prime below the cap");
  rep.lower_prime = p;
  long k = hensel_lift_exponent(p);
  Int pk = pow_int(Int(p), k);
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < fp_points.size(); ++i) {
    std::vector<Int> lifted = hensel_lift(z, fp_points[i], lift_rows[i], p, k);
    // rational reconstruction coordinate-wise
    std::vector<Rat> cand(n);
    bool ok = true;
    for (long j = 0; j < n && ok; ++j) {
      auto r = rational_reconstruct(mod_positive(lifted[j], pk), pk);
      if (!r) ok = false;
      else cand[j] = *r;
    }
    if (!ok) continue;
    // to primitive integer coordinates
    Int den(1);
    for (const auto& c : cand) den = lcm(den, c.get_den());
    std::vector<Int> pt(n);
    for (long j = 0; j < n; ++j) pt[j] = Int(cand[j] * Rat(den));
    pt = primitive(pt);
    if (!on_model(z.polys, pt)) continue;
    std::string key;
    for (const auto& c : pt) key += c.get_str() + ",";
    if (seen.insert(key).second) rep.points.push_back(pt);
  }
  // (ii) upper bound: smooth fiber count at l in (p, prime_bound)
  for (long l = p + 1; l <= prime_bound; ++l) {
    if (!is_prime(Int(l)) || level % l == 0) continue;
    bool budget_ok = true;
    auto pts = scheme_points_modp(z, l, &budget_ok);
    if (!budget_ok) break;  // enumeration beyond desk scale; stop searching
    bool smooth = true;
    for (const auto& q2 : pts)
      if (jacobian_rank_modp(z, q2, l, nullptr) < n - 1) {
        smooth = false;
        break;
      }
    if (!smooth) continue;
    rep.upper_prime = l;
    rep.upper_bound = static_cast<long>(pts.size());
    if (rep.upper_bound == static_cast<long>(rep.points.size())) {
      rep.complete = true;
      return rep;
    }
    // upper bound exists but does not match: keep searching for a tighter l
  }
  rep.fallback_needed = !rep.complete;
  return rep;
}

const std::vector<Rat>& cm_j_invariants() {
  static const std::vector<Rat> js = [] {
    std::vector<long> v = {0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000,
                           16581375};
    std::vector<Rat> out;
    for (long x : v) out.emplace_back(x);
    out.push_back(parse_rat("-884736000"));
    out.push_back(parse_rat("-147197952000"));
    out.push_back(parse_rat("-262537412640768000"));
    return out;
  }();
  return js;
}

std::vector<JValue> evaluate_j(const CurveBundle& b, const std::vector<std::vector<Int>>& points) {
  if (!b.jmap) throw std::runtime_error("evaluate_j: bundle carries no jmap");
  std::vector<JValue> out;
  for (const auto& pt : points) {
    std::vector<Rat> p(pt.size());
    for (size_t i = 0; i < pt.size(); ++i) p[i] = Rat(pt[i]);
    Rat num = b.jmap->first.eval_rat(p);
    Rat den = b.jmap->second.eval_rat(p);
    JValue jv;
    jv.point = pt;
    if (den == 0) {
      if (num == 0) throw std::runtime_error("evaluate_j: jmap numerator and denominator both vanish");
      jv.is_cusp = true;
    } else {
      jv.j = num / den;
      const auto& cms = cm_j_invariants();
      jv.is_cm = std::find(cms.begin(), cms.end(), jv.j) != cms.end();
    }
    out.push_back(std::move(jv));
  }
  return out;
}

}  // namespace modec
