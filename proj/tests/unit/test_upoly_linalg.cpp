#include <doctest.h>

#include <random>

#include "danvar/linalg.hpp"
#include "danvar/upoly.hpp"
#include "support.hpp"

using namespace danvar;

namespace {

UPoly U(std::vector<long> c) {
  std::vector<Rational> q;
  for (auto v : c) q.emplace_back(v);
  return UPoly(q);
}

}  // namespace

TEST_CASE("squarefree decomposition") {
  auto f = squarefree_decomposition(U({-1, 0, 1}));  // y^2 - 1
  REQUIRE(f.size() == 2);
  CHECK(f[0].multiplicity == 1);
  CHECK(f[1].multiplicity == 1);
  CHECK(f[0].factor * f[1].factor == U({-1, 0, 1}));
  auto g = squarefree_decomposition(U({0, 0, 1}));  // y^2
  REQUIRE(g.size() == 1);
  CHECK(g[0].factor == U({0, 1}));
  CHECK(g[0].multiplicity == 2);
  // (y^2 - 1)^2 (y^2 + 1)
  const UPoly p = U({-1, 0, 1}) * U({-1, 0, 1}) * U({1, 0, 1});
  UPoly prod = U({1});
  int degree = 0;
  for (const auto& sf : squarefree_decomposition(p)) {
    for (int k = 0; k < sf.multiplicity; ++k) prod = prod * sf.factor;
    degree += sf.factor.degree();
  }
  CHECK(prod == p);
  CHECK(degree == 4);
}

TEST_CASE("rational roots") {
  auto r = rational_roots(U({-3, 1, 2}));  // 2y^2 + y - 3 = (2y + 3)(y - 1)
  REQUIRE(r);
  CHECK(r->size() == 2);
  CHECK(std::find(r->begin(), r->end(), Rational(1)) != r->end());
  CHECK(std::find(r->begin(), r->end(), Rational(-3, 2)) != r->end());
}

TEST_CASE("echelon nullspace agrees with a dense oracle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(-3, 3), dim(1, 7);
  for (int round = 0; round < 200; ++round) {
    const int rows = dim(rng), cols = dim(rng);
    std::vector<std::vector<Rational>> dense(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(cols)));
    Echelon ech(cols);
    for (int r = 0; r < rows; ++r) {
      SparseRow row;
      for (int c = 0; c < cols; ++c) {
        const int x = (v(rng) % 2 == 0) ? 0 : v(rng);
        dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = x;
        if (x) row[c] = x;
      }
      ech.add_row(row);
    }
    const int rank = testsupport::dense_rank(dense);
    CHECK(ech.rank() == rank);
    const auto ns = ech.nullspace();
    CHECK(static_cast<int>(ns.size()) == cols - rank);
    for (const auto& vec : ns)
      for (int r = 0; r < rows; ++r) {
        Rational s = 0;
        for (const auto& [c, x] : vec) s += dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * x;
        CHECK(s == 0);
      }
  }
}

TEST_CASE("solve_linear reports inconsistency") {
  std::vector<std::pair<SparseRow, Rational>> eqs{{{{0, 1}, {1, 1}}, 2}, {{{0, 1}, {1, 1}}, 3}};
  CHECK_FALSE(solve_linear(2, eqs).solution);
  std::vector<std::pair<SparseRow, Rational>> ok{{{{0, 1}, {1, 1}}, 2}, {{{0, 1}, {1, -1}}, 0}};
  auto s = solve_linear(2, ok);
  REQUIRE(s.solution);
  CHECK((*s.solution)[0] == 1);
  CHECK((*s.solution)[1] == 1);
}

TEST_CASE("integer diagonalization") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(-6, 6), dim(1, 4);
  for (int round = 0; round < 100; ++round) {
    const std::size_t rows = static_cast<std::size_t>(dim(rng)), cols = static_cast<std::size_t>(dim(rng));
    IntMatrix a(rows, std::vector<Integer>(cols));
    for (auto& row : a)
      for (auto& x : row) x = v(rng);
    const auto d = diagonalize(a);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < rows; ++k)
          for (std::size_t l = 0; l < cols; ++l) s += d.u[i][k] * a[k][l] * d.v[l][j];
        CHECK(s == (i == j ? d.diagonal[i] : Integer(0)));
      }
  }
  CHECK(rational_root(Rational(8, 27), 3) == Rational(2, 3));
  CHECK_FALSE(rational_root(Rational(2), 2));
  CHECK(rational_root(Rational(-8), 3) == Rational(-2));
}
