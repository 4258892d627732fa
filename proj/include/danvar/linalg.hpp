#pragma once

#include <map>
#include <optional>
#include <vector>

#include "danvar/poly.hpp"

namespace danvar {

using SparseRow = std::map<int, Rational>;

/// Row echelon form over Q built one row at a time. Every stored row has a
/// leading 1 and is kept fully reduced against the other pivots (RREF).
class Echelon {
 public:
  explicit Echelon(int ncols) : ncols_(ncols) {}

  /// Returns true if the row was independent of the rows seen so far.
  bool add_row(SparseRow row);

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  bool has_pivot(int col) const { return pivots_.count(col) != 0; }
  const std::map<int, SparseRow>& pivot_rows() const { return pivots_; }

  /// Basis of {v : A v = 0}, one vector per free column.
  std::vector<SparseRow> nullspace() const;

 private:
  int ncols_;
  std::map<int, SparseRow> pivots_;

  void reduce(SparseRow& row) const;
};

struct LinearSolveResult {
  std::optional<std::vector<Rational>> solution;  // free unknowns set to 0
  int rank = 0;
  int unknowns = 0;
  int equations = 0;
};

/// Solve A x = b where each equation is a sparse row plus right-hand side.
LinearSolveResult solve_linear(int unknowns, const std::vector<std::pair<SparseRow, Rational>>& equations);

/// Dense helpers on small integer matrices.
using IntMatrix = std::vector<std::vector<Integer>>;

/// Diagonalization U * A * V = D with U, V unimodular. D is returned as the
/// list of diagonal entries (length min(rows, cols)).
struct Diagonalization {
  IntMatrix u;
  IntMatrix v;
  std::vector<Integer> diagonal;
};
Diagonalization diagonalize(const IntMatrix& a);

/// Exact k-th root of a rational if one exists in Q (k >= 1).
std::optional<Rational> rational_root(const Rational& value, unsigned long k);

}  // namespace danvar
