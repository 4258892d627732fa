#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "danvar/danielewski_ring.hpp"
#include "danvar/poly.hpp"

namespace testsupport {

using danvar::Exponents;
using danvar::Poly;
using danvar::Rational;
using danvar::Ring;

inline Poly P(const std::string& text, const Ring& ring) { return danvar::parse_poly(text, ring); }

/// Random polynomial over the first `slots` variables of `ring` (Laurent
/// exponents in the x slots when `min_exp` < 0).
inline Poly random_poly(std::mt19937_64& rng, const Ring& ring, int slots, int terms, int max_exp, int min_exp = 0,
                        bool fractions = true) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, fractions ? 4 : 1), cnt(0, terms);
  Poly out(ring.nvars());
  const int k = cnt(rng);
  for (int t = 0; t < k; ++t) {
    Exponents e(static_cast<std::size_t>(ring.nvars()), 0);
    for (int s = 0; s < slots; ++s) {
      const int lo = s < ring.n() ? min_exp : 0;
      e[static_cast<std::size_t>(s)] = std::uniform_int_distribution<int>(lo, max_exp)(rng);
    }
    Rational c(num(rng), den(rng));
    c.canonicalize();
    out.add_term(e, c);
  }
  return out;
}

/// Dense Gaussian elimination over Q: rank of a row-major matrix.
inline int dense_rank(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    auto& p = a[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / p[c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

/// The derivation determined by the images of x1..xn and y, applied on the
/// Laurent ring C[x, x^-1, y]; z never appears there.
inline Poly laurent_apply(const Poly& f, const std::vector<Poly>& laurent_images, int n) {
  Poly out(f.nvars());
  for (int s = 0; s <= n; ++s) out += f.derivative(s) * laurent_images[static_cast<std::size_t>(s)];
  return out;
}

/// deg of b computed entirely in the Laurent ring (independent of normal forms).
inline int laurent_degree(const danvar::DanielewskiHypersurface& h, const std::vector<Poly>& ambient_images,
                          const Poly& b, int cap = 64) {
  std::vector<Poly> li;
  for (int s = 0; s <= h.n(); ++s) li.push_back(danvar::laurent_embed(h, ambient_images[static_cast<std::size_t>(s)]));
  Poly cur = danvar::laurent_embed(h, b);
  if (cur.is_zero()) return -1;
  for (int k = 0; k <= cap; ++k) {
    Poly next = laurent_apply(cur, li, h.n());
    if (next.is_zero()) return k;
    cur = next;
  }
  return -2;
}

/// Sheet polynomials with distinct constant terms and every other monomial
/// divisible by x1*...*xn.
inline danvar::SigmaFamily random_sigma(std::mt19937_64& rng, int n, int r) {
  std::vector<int> consts(20);
  std::iota(consts.begin(), consts.end(), -10);
  std::shuffle(consts.begin(), consts.end(), rng);
  danvar::SigmaFamily s;
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  for (int i = 0; i < r; ++i) {
    Poly p = Poly::constant(n + 3, consts[static_cast<std::size_t>(i)]);
    for (int t = 0; t < 2; ++t) {
      Exponents ex(static_cast<std::size_t>(n + 3), 0);
      for (int k = 0; k < n; ++k) ex[static_cast<std::size_t>(k)] = 1 + e(rng);
      p.add_term(ex, c(rng));
    }
    s.sigma.push_back(p);
  }
  return s;
}

inline danvar::DanielewskiHypersurface sigma_pm1(std::vector<int> m) {
  const int n = static_cast<int>(m.size());
  const Ring ring = Ring::ambient(n);
  return danvar::DanielewskiHypersurface::from_sigma(n, Exponents(m.begin(), m.end()), {P("1", ring), P("-1", ring)});
}

}  // namespace testsupport
