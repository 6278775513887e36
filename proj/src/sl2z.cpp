#include "modec/sl2z.hpp"

#include <cassert>
#include <deque>
#include <stdexcept>

namespace modec {

STWord st_decompose(const MatZ& g) {
  if (g.det() != 1) throw std::domain_error("st_decompose: determinant must be 1");
  // Peel letters from the right: g = cur * (letters applied left to right).
  MatZ cur = g;
  std::deque<STWord::Letter> word;
  while (cur.c != 0) {
    // floor quotient of d/c (the Euclidean step on the bottom row)
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cur.d.get_mpz_t(), cur.c.get_mpz_t());
    // cur <- cur * T^{-q}; prepend T^q
    if (q != 0) {
      cur.b -= q * cur.a;
      cur.d -= q * cur.c;
      word.push_front({'T', to_long(q)});
    }
    // cur <- cur * S^{-1} = [[ -b, a ], [ -d, c ]]; prepend S
    cur = MatZ(-cur.b, cur.a, -cur.d, cur.c);
    word.push_front({'S', 1});
  }
  // cur = +-T^m
  STWord out;
  assert(cur.c == 0 && (cur.a == 1 || cur.a == -1));
  out.sign = cur.a == 1 ? 1 : -1;
  Int m = cur.a == 1 ? cur.b : Int(-cur.b);
  if (m != 0) word.push_front({'T', to_long(m)});
  out.letters.assign(word.begin(), word.end());
  return out;
}

MatZ lift_slnz(const MatZ& gbar, long N) {
  Int n(N);
  if (mod_positive(gbar.det() - 1, n) != 0) throw std::domain_error("lift_slnz: det not 1 mod N");
  Int ab = mod_positive(gbar.a, n), bb = mod_positive(gbar.b, n);
  Int cb = mod_positive(gbar.c, n), db = mod_positive(gbar.d, n);
  // upper triangular classes lift to +-T^b
  if (cb == 0 && db == 1) return MatZ(Int(1), bb, Int(0), Int(1));
  if (cb == 0 && db == n - 1) return MatZ(Int(-1), bb - n, Int(0), Int(-1));
  // Choose a coprime integer bottom row congruent to (c, d).
  Int c = cb, d = db;
  if (c == 0 && d == 0) throw std::domain_error("lift_slnz: zero bottom row");
  if (c == 0) {
    c = n;
    if (d == 0) d = 1;
  }
  while (gcd(c, d) != 1) d += n;
  // Top row (x, y) with x d - y c = 1.
  Int x, y;
  mpz_gcdext(Int().get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
  y = -y;
  assert(x * d - y * c == 1);
  // Shift top row by s*(c, d) to match (a, b) mod N.
  for (long s = 0; s < N; ++s) {
    Int xs = x + s * c, ys = y + s * d;
    if (mod_positive(xs - ab, n) == 0 && mod_positive(ys - bb, n) == 0) {
      MatZ out(xs, ys, c, d);
      assert(out.det() == 1);
      return out;
    }
  }
  throw std::logic_error("lift_slnz: no top-row shift found");
}

std::vector<MatZ> random_kernel_words(long N, long count, long max_len, std::mt19937_64& rng) {
  // Random S/T words corrected into the kernel: g = w * lift((w mod N)^{-1}).
  // (Products of conjugated T^N powers would stay in the normal closure of
  // the parabolics, where every period vanishes.)
  std::vector<MatZ> out;
  if (count <= 0) return out;
  std::uniform_int_distribution<int> texp(-3, 3);
  std::uniform_int_distribution<int> wlen(2, 6);
  ModMat id = ModNGroup::identity();
  while (static_cast<long>(out.size()) < count) {
    MatZ w;
    int k = wlen(rng);
    for (int i = 0; i < k; ++i) w = w * MatZ::T(texp(rng)) * MatZ::S();
    ModMat wb = ModNGroup::reduce(w, N);
    // inverse mod N via the adjugate (det = 1)
    ModMat winv{{wb.m[3], (N - wb.m[1]) % N, (N - wb.m[2]) % N, wb.m[0]}};
    MatZ g = w * lift_slnz(MatZ(winv.m[0], winv.m[1], winv.m[2], winv.m[3]), N);
    if (g.is_identity()) continue;
    STWord wrd = st_decompose(g);
    if (static_cast<long>(wrd.letters.size()) > max_len) continue;
    if (!(ModNGroup::reduce(g, N) == id)) continue;
    out.push_back(g);
  }
  return out;
}

ModMat ModNGroup::reduce(const MatZ& g, long N) {
  Int n(N);
  return ModMat{{mod_positive(g.a, n).get_si(), mod_positive(g.b, n).get_si(),
                 mod_positive(g.c, n).get_si(), mod_positive(g.d, n).get_si()}};
}

ModMat ModNGroup::mul(const ModMat& x, const ModMat& y, long N) {
  return ModMat{{(x.m[0] * y.m[0] + x.m[1] * y.m[2]) % N, (x.m[0] * y.m[1] + x.m[1] * y.m[3]) % N,
                 (x.m[2] * y.m[0] + x.m[3] * y.m[2]) % N, (x.m[2] * y.m[1] + x.m[3] * y.m[3]) % N}};
}

ModMat ModNGroup::neg(const ModMat& x, long N) {
  return ModMat{{(N - x.m[0]) % N, (N - x.m[1]) % N, (N - x.m[2]) % N, (N - x.m[3]) % N}};
}

long ModNGroup::det(const ModMat& x, long N) {
  long d = (x.m[0] * x.m[3] - x.m[1] * x.m[2]) % N;
  return d < 0 ? d + N : d;
}

ModMat ModNGroup::identity() { return ModMat{{1, 0, 0, 1}}; }

ModNGroup::ModNGroup(long N_, const std::vector<ModMat>& generators) : N(N_) {
  // closure under multiplication by generators (finite group BFS)
  std::deque<ModMat> queue;
  auto push = [&](const ModMat& x) {
    if (elems_.insert(encode(x)).second) {
      list_.push_back(x);
      queue.push_back(x);
    }
  };
  push(identity());
  for (const auto& g : generators) {
    if (det(g, N) == 0 || gcd_long(det(g, N), N) != 1)
      throw std::domain_error("ModNGroup: generator not invertible mod N");
    push(g);
  }
  while (!queue.empty()) {
    ModMat x = queue.front();
    queue.pop_front();
    for (const auto& g : generators) push(mul(x, g, N));
  }
}

ModNGroup ModNGroup::sl2_part() const {
  std::vector<ModMat> det1;
  for (const auto& x : list_)
    if (det(x, N) == 1) det1.push_back(x);
  // det1 is already closed under multiplication; construct with the full set
  ModNGroup h(N, det1);
  return h;
}

std::vector<ModMat> ModNGroup::sl2_schreier_generators(const std::vector<ModMat>& gens) const {
  // Transversal of the determinant map, then Schreier generators of its kernel.
  std::unordered_map<long, ModMat> transversal;
  transversal[1] = identity();
  std::deque<ModMat> queue{identity()};
  while (!queue.empty()) {
    ModMat t = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      ModMat x = mul(t, g, N);
      long d = det(x, N);
      if (!transversal.count(d)) {
        transversal[d] = x;
        queue.push_back(x);
      }
    }
  }
  std::vector<ModMat> out;
  std::unordered_set<uint64_t> seen;
  ModMat id = identity();
  for (const auto& [dv, t] : transversal) {
    for (const auto& g : gens) {
      ModMat x = mul(t, g, N);
      ModMat rep = transversal.at(det(x, N));
      // schreier generator x * rep^{-1}: find inverse by scanning powers
      // (entries are small; use adjugate with det inverse mod N)
      long dd = det(rep, N);
      long dinv = to_long(inv_mod(Int(dd), Int(N)));
      ModMat adj{{rep.m[3], (N - rep.m[1]) % N, (N - rep.m[2]) % N, rep.m[0]}};
      for (auto& e : adj.m) e = (e * dinv) % N;
      ModMat s = mul(x, adj, N);
      assert(det(s, N) == 1);
      if (s == id) continue;
      uint64_t key = encode(s);
      if (seen.insert(key).second) out.push_back(s);
    }
  }
  return out;
}

CosetTable enumerate_cosets(const ModNGroup& gamma_bar, long N) {
  // canonical label of a coset: the lexicographically smallest encoding of
  // +- h * m over h in Gamma_bar
  auto label = [&](const ModMat& m) {
    uint64_t best = UINT64_MAX;
    for (const auto& h : gamma_bar.elements()) {
      ModMat x = ModNGroup::mul(h, m, N);
      for (int sgn = 0; sgn < 2; ++sgn) {
        if (sgn) x = ModNGroup::neg(x, N);
        uint64_t e = 0;
        for (long v : x.m) e = e * static_cast<uint64_t>(N) + static_cast<uint64_t>(v);
        if (e < best) best = e;
      }
    }
    return best;
  };

  CosetTable tab;
  std::unordered_map<uint64_t, long> index_of;
  std::deque<long> queue;
  MatZ id;
  index_of[label(ModNGroup::reduce(id, N))] = 0;
  tab.reps.push_back(id);
  queue.push_back(0);
  std::vector<std::pair<MatZ, char>> steps = {{MatZ::S(), 's'}, {MatZ::T(1), 't'}, {MatZ::T(-1), 'u'}};
  // discover all cosets
  while (!queue.empty()) {
    long i = queue.front();
    queue.pop_front();
    for (const auto& [g, tag] : steps) {
      MatZ rep = tab.reps[i] * g;
      uint64_t lb = label(ModNGroup::reduce(rep, N));
      if (!index_of.count(lb)) {
        index_of[lb] = static_cast<long>(tab.reps.size());
        tab.reps.push_back(rep);
        queue.push_back(static_cast<long>(tab.reps.size()) - 1);
      }
    }
  }
  long n = tab.index();
  tab.sigma_s.assign(n, -1);
  tab.sigma_t.assign(n, -1);
  tab.sigma_t_inv.assign(n, -1);
  for (long i = 0; i < n; ++i) {
    tab.sigma_s[i] = index_of.at(label(ModNGroup::reduce(tab.reps[i] * MatZ::S(), N)));
    tab.sigma_t[i] = index_of.at(label(ModNGroup::reduce(tab.reps[i] * MatZ::T(1), N)));
    tab.sigma_t_inv[i] = index_of.at(label(ModNGroup::reduce(tab.reps[i] * MatZ::T(-1), N)));
  }
  return tab;
}

}  // namespace modec
