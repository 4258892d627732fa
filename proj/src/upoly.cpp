#include "danvar/upoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace danvar {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, int slot) {
  std::vector<Rational> c;
  for (const auto& [e, v] : p) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (static_cast<int>(i) != slot && e[i] != 0)
        throw std::invalid_argument("polynomial is not univariate in the requested variable");
    const auto d = e[static_cast<std::size_t>(slot)];
    if (d < 0) throw std::invalid_argument("negative exponent in a univariate polynomial");
    if (c.size() <= static_cast<std::size_t>(d)) c.resize(static_cast<std::size_t>(d) + 1);
    c[static_cast<std::size_t>(d)] += v;
  }
  return UPoly(std::move(c));
}

Poly UPoly::to_poly(int nvars, int slot) const {
  Poly out(nvars);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(slot)] = static_cast<std::int32_t>(i);
    out.add_term(e, c_[i]);
  }
  return out;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> c = c_;
  const Rational l = lead();
  for (auto& v : c) v /= l;
  return UPoly(std::move(c));
}

Rational UPoly::evaluate(const Rational& v) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("univariate division by zero");
  std::vector<Rational> rem = c_;
  std::vector<Rational> quo(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0);
  for (int k = degree(); k >= d.degree(); --k) {
    const auto ku = static_cast<std::size_t>(k);
    if (sgn(rem[ku]) == 0) continue;
    const Rational f = rem[ku] / d.lead();
    const auto shift = ku - static_cast<std::size_t>(d.degree());
    quo[shift] = f;
    for (std::size_t i = 0; i < d.c_.size(); ++i) rem[shift + i] -= f * d.c_[i];
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

std::string UPoly::to_string(const std::string& var) const {
  const int nv = 1;
  Ring ring(0, {var});
  return danvar::to_string(to_poly(nv, 0), ring);
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

constexpr unsigned long kDivisorSearchLimit = 2'000'000;

std::optional<std::vector<Integer>> positive_divisors(Integer v) {
  v = abs(v);
  if (v == 0) return std::vector<Integer>{};
  // factor by trial division; give up on large cofactors
  std::vector<std::pair<Integer, int>> factors;
  for (unsigned long p = 2; Integer(p) * p <= v; ++p) {
    if (p > kDivisorSearchLimit) return std::nullopt;
    if (v % p != 0) continue;
    int k = 0;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    factors.emplace_back(Integer(p), k);
  }
  if (v > 1) factors.emplace_back(v, 1);
  std::vector<Integer> divs{1};
  for (const auto& [p, k] : factors) {
    const std::size_t existing = divs.size();
    Integer pk = 1;
    for (int i = 1; i <= k; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < existing; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  // clear denominators
  Integer l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, Integer(c.get_den()));
  std::vector<Integer> ic;
  for (const auto& c : p.coeffs()) ic.push_back(Integer(c * l));
  std::set<Rational> roots;
  std::size_t low = 0;
  while (ic[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  const auto num_divs = positive_divisors(ic[low]);
  const auto den_divs = positive_divisors(ic.back());
  if (!num_divs || !den_divs) return std::nullopt;
  for (const auto& a : *num_divs)
    for (const auto& b : *den_divs)
      for (int s : {1, -1}) {
        Rational cand(a * s, b);
        cand.canonicalize();
        if (sgn(p.evaluate(cand)) == 0) roots.insert(cand);
      }
  return std::vector<Rational>(roots.begin(), roots.end());
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<SquarefreeFactor> yun;
  if (p.degree() >= 1) {
    UPoly f = p.monic();
    UPoly a = gcd(f, f.derivative());
    UPoly b = f.divmod(a).first;
    UPoly c = f.derivative().divmod(a).first;
    UPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() >= 1) {
      UPoly g = gcd(b, d);
      if (g.degree() >= 1) yun.push_back({g, i});
      b = b.divmod(g).first;
      c = d.divmod(g).first;
      d = c - b.derivative();
      ++i;
    }
  }
  std::vector<SquarefreeFactor> out;
  for (auto& [factor, mult] : yun) {
    UPoly rest = factor;
    if (auto roots = rational_roots(factor)) {
      for (const auto& root : *roots) {
        UPoly linear({-root, Rational(1)});
        out.push_back({linear, mult});
        rest = rest.divmod(linear).first;
      }
    }
    if (rest.degree() >= 1) out.push_back({rest.monic(), mult});
  }
  return out;
}

}  // namespace danvar
