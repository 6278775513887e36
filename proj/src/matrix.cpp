#include "modec/matrix.hpp"

#include <stdexcept>

namespace modec {

namespace {

// Bareiss forward elimination on an integer matrix. Returns pivot columns;
// `m` is left in echelon form (rows permuted in place).
std::vector<long> bareiss(std::vector<std::vector<Int>>& m, long cols) {
  std::vector<long> pivot_cols;
  long rows = static_cast<long>(m.size());
  Int prev(1);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j) {
        Int t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

}  // namespace

std::vector<std::vector<Rat>> nullspace(const QMat& mat) {
  // Clear denominators row by row; the null space is unchanged.
  std::vector<std::vector<Int>> m(mat.rows, std::vector<Int>(mat.cols));
  for (long i = 0; i < mat.rows; ++i) {
    Int den(1);
    for (long j = 0; j < mat.cols; ++j) den = lcm(den, mat.a[i][j].get_den());
    for (long j = 0; j < mat.cols; ++j) m[i][j] = Int(mat.a[i][j] * Rat(den));
  }
  std::vector<long> pivot_cols = bareiss(m, mat.cols);
  long rk = static_cast<long>(pivot_cols.size());

  std::vector<bool> is_pivot(mat.cols, false);
  for (long c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Rat>> basis;
  for (long free_c = 0; free_c < mat.cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<Rat> v(mat.cols, Rat(0));
    v[free_c] = 1;
    // Back-substitute through the echelon rows.
    for (long i = rk - 1; i >= 0; --i) {
      long pc = pivot_cols[i];
      Rat s(0);
      for (long j = pc + 1; j < mat.cols; ++j)
        if (v[j] != 0 && m[i][j] != 0) s += Rat(m[i][j]) * v[j];
      v[pc] = -s / Rat(m[i][pc]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

long rank(const QMat& mat) {
  return mat.cols - static_cast<long>(nullspace(mat).size());
}

bool Echelon::add_row(std::vector<Rat> r) {
  if (static_cast<long>(r.size()) != cols_) throw std::invalid_argument("Echelon: bad row size");
  r = reduce(std::move(r));
  long pc = -1;
  for (long j = 0; j < cols_; ++j)
    if (r[j] != 0) {
      pc = j;
      break;
    }
  if (pc < 0) return false;
  Rat inv = Rat(1) / r[pc];
  for (long j = pc; j < cols_; ++j) r[j] *= inv;
  // Back-reduce existing rows to keep full RREF.
  for (auto& row : rows_)
    if (row[pc] != 0) {
      Rat f = row[pc];
      for (long j = pc; j < cols_; ++j) row[j] -= f * r[j];
    }
  rows_.push_back(std::move(r));
  pivot_col_.push_back(pc);
  col_to_row_[pc] = static_cast<long>(rows_.size()) - 1;
  return true;
}

std::vector<Rat> Echelon::reduce(std::vector<Rat> r) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    long pc = pivot_col_[i];
    if (r[pc] != 0) {
      Rat f = r[pc];
      const auto& row = rows_[i];
      for (long j = pc; j < cols_; ++j)
        if (row[j] != 0) r[j] -= f * row[j];
    }
  }
  return r;
}

std::vector<std::vector<Rat>> Echelon::kernel() const {
  std::vector<std::vector<Rat>> basis;
  for (long free_c = 0; free_c < cols_; ++free_c) {
    if (col_to_row_[free_c] >= 0) continue;
    std::vector<Rat> v(cols_, Rat(0));
    v[free_c] = 1;
    for (size_t i = 0; i < rows_.size(); ++i) {
      // RREF rows: pivot 1, zero elsewhere in pivot columns
      if (rows_[i][free_c] != 0) v[pivot_col_[i]] = -rows_[i][free_c];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rat>> flatten_cyclo_rows(const std::vector<std::vector<Cyclo>>& rows) {
  std::vector<std::vector<Rat>> out;
  if (rows.empty()) return out;
  for (const auto& row : rows) {
    long phi = row.empty() ? 1 : row[0].phi();
    std::vector<std::vector<Rat>> split(phi, std::vector<Rat>(row.size(), Rat(0)));
    for (size_t j = 0; j < row.size(); ++j)
      for (long t = 0; t < phi; ++t) split[t][j] = row[j].c[t];
    for (auto& s : split) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<Rat>> cyclo_mult_matrix(const Cyclo& x) {
  long phi = x.phi();
  std::vector<std::vector<Rat>> m(phi, std::vector<Rat>(phi, Rat(0)));
  Cyclo p = x;
  for (long j = 0; j < phi; ++j) {
    for (long i = 0; i < phi; ++i) m[i][j] = p.c[i];
    if (j + 1 < phi) p = p * Cyclo::zeta(x.level(), 1);
  }
  return m;
}

}  // namespace modec
