#pragma once

#include <optional>
#include <vector>

#include "modec/rat.hpp"

namespace modec {

// Continued-fraction rational reconstruction of r mod m. Returns the unique
// a/b with |a|, b <= sqrt(m/2), gcd(b, m) = 1 and a = r b (mod m) when it
// exists. Residues with no solution in that box but with a convergent
// satisfying the sharp uniqueness inequality 2|a|b < m (e.g. plain small
// integers) are still reconstructed; otherwise failure.
inline std::optional<Rat> rational_reconstruct(const Int& r, const Int& m) {
  if (r < 0 || r >= m) return std::nullopt;
  if (r == 0) return Rat(0);
  Int bound = isqrt(m / 2);
  // full remainder sequence: r_i = t_i * r (mod m)
  std::vector<std::pair<Int, Int>> conv;  // (r_i, t_i)
  Int r0 = m, r1 = r, t0(0), t1(1);
  conv.emplace_back(r1, t1);
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
    if (r1 != 0) conv.emplace_back(r1, t1);
  }
  auto accept = [&](const Int& a, const Int& b) -> std::optional<Rat> {
    Int aa = a, bb = b;
    if (bb < 0) {
      aa = -aa;
      bb = -bb;
    }
    if (gcd(bb, m) != 1) return std::nullopt;
    Rat out(aa, bb);
    out.canonicalize();
    if (mod_positive(out.get_num() - r * out.get_den(), m) != 0) return std::nullopt;
    return out;
  };
  // unique solution in the sqrt(m/2) box
  for (const auto& [ri, ti] : conv) {
    Int ta = ti < 0 ? Int(-ti) : ti;
    if (ri <= bound && ta <= bound)
      if (auto out = accept(ri, ti)) return out;
  }
  // simplicity-ordered fallback under the sharp inequality 2|a|b < m
  for (const auto& [ri, ti] : conv) {
    Int ta = ti < 0 ? Int(-ti) : ti;
    if (2 * ri * ta < m)
      if (auto out = accept(ri, ti)) return out;
  }
  return std::nullopt;
}

}  // namespace modec
