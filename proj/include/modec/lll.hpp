#pragma once

#include <vector>

#include "modec/rat.hpp"

namespace modec {

// Exact LLL reduction (delta = 3/4) of integer row vectors, in place.
// Dimensions stay small here (cyclotomic recognition), so rational
// Gram-Schmidt is fine.
inline void lll_reduce(std::vector<std::vector<Int>>& b) {
  size_t n = b.size();
  if (n == 0) return;
  size_t dim = b[0].size();
  auto dot = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
    Int s(0);
    for (size_t i = 0; i < dim; ++i) s += x[i] * y[i];
    return s;
  };
  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> B(n, Rat(0));  // squared GS norms

  auto gram_schmidt = [&]() {
    std::vector<std::vector<Rat>> gs(n, std::vector<Rat>(dim, Rat(0)));
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < dim; ++k) gs[i][k] = Rat(b[i][k]);
      for (size_t j = 0; j < i; ++j) {
        Rat num(0);
        for (size_t k = 0; k < dim; ++k) num += Rat(b[i][k]) * gs[j][k];
        mu[i][j] = B[j] == 0 ? Rat(0) : num / B[j];
        for (size_t k = 0; k < dim; ++k) gs[i][k] -= mu[i][j] * gs[j][k];
      }
      B[i] = Rat(0);
      for (size_t k = 0; k < dim; ++k) B[i] += gs[i][k] * gs[i][k];
    }
  };

  gram_schmidt();
  size_t k = 1;
  int guard = 0;
  while (k < n && guard++ < 100000) {
    // size reduction
    for (size_t j = k; j-- > 0;) {
      Rat m = mu[k][j];
      Int r = Int(m.get_num() * 2 + m.get_den()) / (2 * m.get_den());  // round
      if (m < 0) {
        Rat mm = -m;
        r = Int(mm.get_num() * 2 + mm.get_den()) / (2 * mm.get_den());
        r = -r;
      }
      if (r != 0) {
        for (size_t t = 0; t < dim; ++t) b[k][t] -= r * b[j][t];
        gram_schmidt();
      }
    }
    // Lovasz condition
    Rat lhs = B[k];
    Rat rhs = (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      if (k > 1) --k;
    }
  }
}

}  // namespace modec
