#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "modec/rat.hpp"

namespace modec {

// Integer 2x2 matrix of determinant 1.
struct MatZ {
  Int a, b, c, d;

  MatZ() : a(1), b(0), c(0), d(1) {}
  MatZ(Int a_, Int b_, Int c_, Int d_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  MatZ(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

  Int det() const { return a * d - b * c; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  static MatZ S() { return MatZ(0, -1, 1, 0); }
  static MatZ T(long k = 1) { return MatZ(1, k, 0, 1); }

  friend MatZ operator*(const MatZ& x, const MatZ& y) {
    return MatZ(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d);
  }
  MatZ inverse() const { return MatZ(d, -b, -c, a); }  // det 1
  friend MatZ operator-(const MatZ& x) { return MatZ(-x.a, -x.b, -x.c, -x.d); }
  friend bool operator==(const MatZ& x, const MatZ& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  std::string str() const {
    return "[" + a.get_str() + "," + b.get_str() + ";" + c.get_str() + "," + d.get_str() + "]";
  }
};

// Word in S and T with a global sign: sign * prod letters, letter = (S|T)^e.
struct STWord {
  struct Letter {
    char gen;  // 'S' or 'T'
    long exp;
  };
  int sign = 1;
  std::vector<Letter> letters;

  MatZ recompose() const {
    MatZ m;
    for (const auto& l : letters) {
      if (l.gen == 'T')
        m = m * MatZ::T(l.exp);
      else
        for (long i = 0; i < l.exp; ++i) m = m * MatZ::S();
    }
    if (sign < 0) m = -m;
    return m;
  }

  std::string str() const {
    std::string out = sign < 0 ? "-" : "";
    for (const auto& l : letters) out += std::string(1, l.gen) + "^" + std::to_string(l.exp) + " ";
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out.empty() ? "1" : out;
  }
};

// Euclidean decomposition on the bottom row; recompose() returns g exactly.
STWord st_decompose(const MatZ& g);

// A determinant-1 integer matrix reducing to gbar mod N.
MatZ lift_slnz(const MatZ& gbar, long N);

// Random elements of the kernel of SL2(Z) -> SL2(Z/N), built from conjugated
// T^N powers, with ST-word length <= max_len.
std::vector<MatZ> random_kernel_words(long N, long count, long max_len, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Subgroups of GL2(Z/N) as explicit element sets.

struct ModMat {
  std::array<long, 4> m;  // row major, entries in [0, N)
  friend bool operator==(const ModMat& x, const ModMat& y) { return x.m == y.m; }
};

class ModNGroup {
 public:
  long N;

  ModNGroup(long N, const std::vector<ModMat>& generators);

  static ModMat reduce(const MatZ& g, long N);
  static ModMat mul(const ModMat& x, const ModMat& y, long N);
  static ModMat neg(const ModMat& x, long N);
  static long det(const ModMat& x, long N);
  static ModMat identity();

  bool contains(const ModMat& x) const { return elems_.count(encode(x)) != 0; }
  bool contains_pm(const ModMat& x) const { return contains(x) || contains(neg(x, N)); }
  size_t order() const { return elems_.size(); }

  // Subgroup of determinant-1 elements as a new group.
  ModNGroup sl2_part() const;

  // Generating set of the determinant-1 subgroup (Schreier generators).
  std::vector<ModMat> sl2_schreier_generators(const std::vector<ModMat>& gens) const;

  const std::vector<ModMat>& elements() const { return list_; }

 private:
  uint64_t encode(const ModMat& x) const {
    uint64_t e = 0;
    for (long v : x.m) e = e * static_cast<uint64_t>(N) + static_cast<uint64_t>(v);
    return e;
  }
  std::unordered_set<uint64_t> elems_;
  std::vector<ModMat> list_;
};

// Right cosets (+-Gamma) \ SL2(Z), enumerated through SL2(Z/N); integer
// representatives are built as short S/T words. sigma_s/sigma_t give the
// right-multiplication action on coset indices.
struct CosetTable {
  std::vector<MatZ> reps;  // reps[0] = identity
  std::vector<long> sigma_s, sigma_t, sigma_t_inv;
  long index() const { return static_cast<long>(reps.size()); }
};

CosetTable enumerate_cosets(const ModNGroup& gamma_bar, long N);

}  // namespace modec
