#pragma once

#include <cassert>
#include <vector>

#include "modec/cyclotomic.hpp"
#include "modec/rat.hpp"

namespace modec {

// Dense matrix over Q.
struct QMat {
  long rows = 0, cols = 0;
  std::vector<std::vector<Rat>> a;

  QMat() = default;
  QMat(long r, long c) : rows(r), cols(c), a(r, std::vector<Rat>(c, Rat(0))) {}

  Rat& at(long i, long j) { return a[i][j]; }
  const Rat& at(long i, long j) const { return a[i][j]; }
};

// Fraction-free (Bareiss) elimination on a denominator-cleared copy.
// Returns the null space basis; each returned v satisfies M v = 0 exactly.
std::vector<std::vector<Rat>> nullspace(const QMat& m);

long rank(const QMat& m);

// Incrementally maintained reduced row echelon form over Q. Rows are
// constraints on `cols` unknowns; kernel() returns the solution basis.
class Echelon {
 public:
  explicit Echelon(long cols) : cols_(cols), col_to_row_(cols, -1) {}

  // Returns true if the row increased the rank.
  bool add_row(std::vector<Rat> r);

  long rank() const { return static_cast<long>(rows_.size()); }
  long cols() const { return cols_; }

  std::vector<std::vector<Rat>> kernel() const;

  // Reduce an arbitrary vector against the stored rows (returns residual).
  std::vector<Rat> reduce(std::vector<Rat> r) const;

  const std::vector<std::vector<Rat>>& rows() const { return rows_; }
  const std::vector<long>& pivots() const { return pivot_col_; }

 private:
  long cols_;
  std::vector<std::vector<Rat>> rows_;  // RREF rows, pivot normalized to 1
  std::vector<long> pivot_col_;
  std::vector<long> col_to_row_;
};

// Flatten rows over Q(zeta_N) into phi(N) rational rows each (unknowns stay
// rational). Used when a cyclotomic-coefficient system is solved for a
// rational vector.
std::vector<std::vector<Rat>> flatten_cyclo_rows(const std::vector<std::vector<Cyclo>>& rows);

// Multiplication-by-x matrix columns: entry (i,j) holds coordinate i of
// x * zeta^j. Used to flatten systems whose unknowns live in Q(zeta_N).
std::vector<std::vector<Rat>> cyclo_mult_matrix(const Cyclo& x);

}  // namespace modec
