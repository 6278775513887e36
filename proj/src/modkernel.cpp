#include "modec/modkernel.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "modec/ratrecon.hpp"

namespace modec {

namespace {

struct BadPrime {};

int64_t inv_mod_i64(int64_t a, int64_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  if (nr == 0) throw BadPrime{};
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw BadPrime{};
  return t < 0 ? t + p : t;
}

int64_t rat_mod(const Rat& x, int64_t p) {
  int64_t num = static_cast<int64_t>(mpz_fdiv_ui(x.get_num().get_mpz_t(), static_cast<unsigned long>(p)));
  int64_t den = static_cast<int64_t>(mpz_fdiv_ui(x.get_den().get_mpz_t(), static_cast<unsigned long>(p)));
  if (den == 0) throw BadPrime{};
  return (num * inv_mod_i64(den, p)) % p;
}

// zeta-power table mod p: zpow[m][i] = coordinate i of zeta^m
std::vector<std::vector<int64_t>> zpow_mod(long N, int64_t p) {
  auto field = CycloField::get(N);
  std::vector<std::vector<int64_t>> z(N, std::vector<int64_t>(field->phi));
  for (long m = 0; m < N; ++m)
    for (long i = 0; i < field->phi; ++i) z[m][i] = rat_mod(field->zpow[m][i], p);
  return z;
}

struct ModpRREF {
  long rank = 0;
  std::vector<long> pivot_cols;
  std::vector<std::vector<int64_t>> kernel;  // canonical kernel basis mod p
};

// In-place RREF over F_p followed by kernel extraction.
ModpRREF rref_kernel_modp(std::vector<std::vector<int64_t>>& m, long cols, int64_t p) {
  ModpRREF out;
  long rows = static_cast<long>(m.size());
  long r = 0;
  std::vector<long> pivot_of_col(cols, -1);
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (m[i][c] % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    int64_t inv = inv_mod_i64(m[r][c], p);
    for (long j = c; j < cols; ++j) m[r][j] = (m[r][j] % p) * inv % p;
    for (long i = 0; i < rows; ++i) {
      if (i == r) continue;
      int64_t f = m[i][c] % p;
      if (f == 0) continue;
      for (long j = c; j < cols; ++j) {
        m[i][j] = (m[i][j] - f * m[r][j]) % p;
        if (m[i][j] < 0) m[i][j] += p;
      }
    }
    out.pivot_cols.push_back(c);
    pivot_of_col[c] = r;
    ++r;
  }
  out.rank = r;
  for (long c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<int64_t> v(cols, 0);
    v[c] = 1;
    for (long i = 0; i < out.rank; ++i) {
      long pc = out.pivot_cols[i];
      int64_t val = m[i][c] % p;
      if (val) v[pc] = p - val;
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::vector<int64_t> primes_31bit(long count) {
  std::vector<int64_t> ps;
  Int p = Int(1) << 31;
  while (static_cast<long>(ps.size()) < count) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    ps.push_back(static_cast<int64_t>(p.get_si()));
    if (ps.back() > (int64_t(1) << 32)) break;  // stay well inside int64 products
  }
  return ps;
}

}  // namespace

std::vector<std::vector<Cyclo>> kernel_multimodular_cyclo(
    const std::vector<std::vector<Cyclo>>& rows, long cols, long N, bool unknowns_rational,
    const std::function<bool(const std::vector<std::vector<Cyclo>>&)>& verify, long max_primes) {
  auto field = CycloField::get(N);
  long phi = field->phi;
  long mcols = unknowns_rational ? cols : cols * phi;

  auto ps = primes_31bit(max_primes + 8);
  struct Accum {
    std::vector<long> pivot_cols;
    long rank = -1;
    std::vector<std::vector<Int>> residues;  // kernel entries via CRT
    Int modulus = 1;
    long nprimes = 0;
  } acc;

  size_t pi = 0;
  long used = 0;
  while (pi < ps.size() && used < max_primes) {
    int64_t p = ps[pi++];
    try {
      auto zp = zpow_mod(N, p);
      // build the mod-p matrix
      std::vector<std::vector<int64_t>> m;
      m.reserve(rows.size() * phi);
      for (const auto& row : rows) {
        // entries as coordinate vectors mod p
        std::vector<std::vector<int64_t>> coords(cols, std::vector<int64_t>(phi));
        for (long t = 0; t < cols; ++t)
          for (long s = 0; s < phi; ++s) coords[t][s] = rat_mod(row[t].c[s], p);
        for (long comp = 0; comp < phi; ++comp) {
          std::vector<int64_t> mr(mcols, 0);
          if (unknowns_rational) {
            for (long t = 0; t < cols; ++t) mr[t] = coords[t][comp];
          } else {
            // coefficient of unknown (t, s): component comp of entry * zeta^s
            for (long t = 0; t < cols; ++t) {
              for (long s = 0; s < phi; ++s) {
                // (entry * zeta^s)_comp = sum_i entry_i * (zeta^{i+s})_comp
                int64_t v = 0;
                for (long i = 0; i < phi; ++i) {
                  int64_t ei = coords[t][i];
                  if (ei) v = (v + ei * zp[(i + s) % N][comp]) % p;
                }
                mr[t * phi + s] = v < 0 ? v + p : v;
              }
            }
          }
          m.push_back(std::move(mr));
        }
      }
      ModpRREF rk = rref_kernel_modp(m, mcols, p);
      if (acc.rank < rk.rank) {
        // higher rank wins: previous primes were bad
        acc.rank = rk.rank;
        acc.pivot_cols = rk.pivot_cols;
        acc.residues.assign(rk.kernel.size(), std::vector<Int>(mcols, Int(0)));
        acc.modulus = 1;
        acc.nprimes = 0;
      } else if (acc.rank > rk.rank || acc.pivot_cols != rk.pivot_cols) {
        continue;  // bad prime
      }
      // CRT-merge this prime
      Int newmod = acc.modulus * p;
      for (size_t k = 0; k < rk.kernel.size(); ++k)
        for (long j = 0; j < mcols; ++j) {
          Int r1 = acc.residues[k][j];
          Int r2(static_cast<long>(rk.kernel[k][j]));
          // x = r1 mod acc.modulus, x = r2 mod p
          Int t = mod_positive((r2 - r1) * inv_mod(acc.modulus, Int(p)), Int(p));
          acc.residues[k][j] = r1 + acc.modulus * t;
        }
      acc.modulus = newmod;
      acc.nprimes += 1;
      ++used;
      if (acc.nprimes < 2) continue;  // need at least two primes before trying
      // attempt rational reconstruction
      bool ok = true;
      std::vector<std::vector<Cyclo>> basis;
      for (size_t k = 0; k < acc.residues.size() && ok; ++k) {
        std::vector<Cyclo> v(cols, Cyclo(N));
        for (long t = 0; t < cols && ok; ++t) {
          std::vector<Rat> cc(phi, Rat(0));
          if (unknowns_rational) {
            auto r = rational_reconstruct(acc.residues[k][t], acc.modulus);
            if (!r) {
              ok = false;
              break;
            }
            cc[0] = *r;
          } else {
            for (long s = 0; s < phi; ++s) {
              auto r = rational_reconstruct(acc.residues[k][t * phi + s], acc.modulus);
              if (!r) {
                ok = false;
                break;
              }
              cc[s] = *r;
            }
          }
          v[t] = Cyclo(field, std::move(cc));
        }
        if (ok) basis.push_back(std::move(v));
      }
      if (ok && verify(basis)) return basis;
    } catch (BadPrime&) {
      continue;
    }
  }
  throw std::runtime_error("kernel_multimodular_cyclo: no verified kernel within the prime budget");
}

std::vector<long> independent_columns_modp(const std::vector<std::vector<Cyclo>>& columns, long N,
                                           int attempts) {
  if (columns.empty()) return {};
  auto field = CycloField::get(N);
  long phi = field->phi;
  long nrowsc = static_cast<long>(columns[0].size());
  auto ps = primes_31bit(attempts + 4);
  std::vector<long> best;
  for (int a = 0; a < attempts && a < static_cast<long>(ps.size()); ++a) {
    int64_t p = ps[a];
    try {
      // matrix with columns = given columns, flattened over coordinates
      std::vector<std::vector<int64_t>> m(nrowsc * phi,
                                          std::vector<int64_t>(columns.size(), 0));
      for (size_t c = 0; c < columns.size(); ++c)
        for (long r = 0; r < nrowsc; ++r)
          for (long s = 0; s < phi; ++s) m[r * phi + s][c] = rat_mod(columns[c][r].c[s], p);
      ModpRREF rk = rref_kernel_modp(m, static_cast<long>(columns.size()), p);
      if (static_cast<long>(rk.pivot_cols.size()) > static_cast<long>(best.size()))
        best = rk.pivot_cols;
    } catch (BadPrime&) {
      continue;
    }
  }
  return best;
}

}  // namespace modec
