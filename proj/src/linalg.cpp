#include "danvar/linalg.hpp"

#include <algorithm>

namespace danvar {

void Echelon::reduce(SparseRow& row) const {
  auto it = row.begin();
  while (it != row.end()) {
    const int col = it->first;
    auto piv = pivots_.find(col);
    if (piv == pivots_.end()) {
      ++it;
      continue;
    }
    const Rational f = it->second;
    for (const auto& [c, v] : piv->second) {
      auto [slot, inserted] = row.try_emplace(c, -f * v);
      if (!inserted) {
        slot->second -= f * v;
        if (sgn(slot->second) == 0) row.erase(slot);
      }
    }
    it = row.lower_bound(col + 1);
  }
}

bool Echelon::add_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
  reduce(row);
  if (row.empty()) return false;
  const int p = row.begin()->first;
  const Rational lead = row.begin()->second;
  for (auto& [c, v] : row) v /= lead;
  // keep the existing rows reduced with respect to the new pivot
  for (auto& [q, other] : pivots_) {
    auto hit = other.find(p);
    if (hit == other.end()) continue;
    const Rational f = hit->second;
    for (const auto& [c, v] : row) {
      auto [slot, inserted] = other.try_emplace(c, -f * v);
      if (!inserted) {
        slot->second -= f * v;
        if (sgn(slot->second) == 0) other.erase(slot);
      }
    }
  }
  pivots_.emplace(p, std::move(row));
  return true;
}

std::vector<SparseRow> Echelon::nullspace() const {
  std::vector<SparseRow> basis;
  for (int f = 0; f < ncols_; ++f) {
    if (pivots_.count(f)) continue;
    SparseRow v;
    v[f] = 1;
    for (const auto& [p, row] : pivots_) {
      auto hit = row.find(f);
      if (hit != row.end()) v[p] = -hit->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolveResult solve_linear(int unknowns, const std::vector<std::pair<SparseRow, Rational>>& equations) {
  Echelon ech(unknowns + 1);
  LinearSolveResult out;
  out.unknowns = unknowns;
  out.equations = static_cast<int>(equations.size());
  for (const auto& [row, rhs] : equations) {
    SparseRow aug = row;
    if (sgn(rhs) != 0) aug[unknowns] = rhs;
    ech.add_row(std::move(aug));
    if (ech.has_pivot(unknowns)) {
      out.rank = ech.rank() - 1;
      return out;
    }
  }
  out.rank = ech.rank();
  std::vector<Rational> x(static_cast<std::size_t>(unknowns));
  for (const auto& [p, row] : ech.pivot_rows()) {
    auto hit = row.find(unknowns);
    if (hit != row.end()) x[static_cast<std::size_t>(p)] = hit->second;
  }
  out.solution = std::move(x);
  return out;
}

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

Diagonalization diagonalize(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  Diagonalization out{identity(rows), identity(cols), {}};
  auto& u = out.u;
  auto& v = out.v;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    for (auto& r : v) std::swap(r[i], r[j]);
  };
  // row_j -= q * row_i
  auto row_op = [&](std::size_t j, std::size_t i, const Integer& q) {
    for (std::size_t c = 0; c < cols; ++c) a[j][c] -= q * a[i][c];
    for (std::size_t c = 0; c < rows; ++c) u[j][c] -= q * u[i][c];
  };
  // col_j -= q * col_i
  auto col_op = [&](std::size_t j, std::size_t i, const Integer& q) {
    for (std::size_t r = 0; r < rows; ++r) a[r][j] -= q * a[r][i];
    for (std::size_t r = 0; r < cols; ++r) v[r][j] -= q * v[r][i];
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) break;
      swap_rows(t, bi);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_op(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_op(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(a[t][t]);
  return out;
}

std::optional<Rational> rational_root(const Rational& value, unsigned long k) {
  if (k == 0) throw std::invalid_argument("zeroth root");
  if (k == 1) return value;
  if (sgn(value) == 0) return Rational(0);
  const bool negative = sgn(value) < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  Integer num = abs(value.get_num()), den = value.get_den();
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return std::nullopt;
  Rational out(negative ? Integer(-rn) : rn, rd);
  out.canonicalize();
  return out;
}

}  // namespace danvar
