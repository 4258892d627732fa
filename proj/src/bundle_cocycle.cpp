#include "danvar/bundle_cocycle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "danvar/linalg.hpp"

namespace danvar {

namespace {

bool only_x(const Poly& p, int n) {
  for (const auto& [e, c] : p)
    for (std::size_t s = static_cast<std::size_t>(n); s < e.size(); ++s)
      if (e[s] != 0) return false;
  return true;
}

std::string pair_name(int i, int j) { return "g_" + std::to_string(i) + std::to_string(j); }

bool leq(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

/// Polar part: terms with some negative exponent.
Poly polar_part(const Poly& p) {
  Poly out(p.nvars());
  for (const auto& [e, c] : p)
    if (std::any_of(e.begin(), e.end(), [](std::int32_t v) { return v < 0; })) out.add_term(e, c);
  return out;
}

Rational rational_power(const Rational& base, const Integer& exponent) {
  if (exponent == 0) return 1;
  Rational b = sgn(exponent) < 0 ? Rational(1 / base) : base;
  Integer k = abs(exponent);
  Rational out = 1;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) out *= b;
    b *= b;
    k /= 2;
  }
  return out;
}

}  // namespace

Cocycle::Cocycle(BaseScheme base, std::map<std::pair<int, int>, Poly> upper) : base_(base) {
  if (base_.n < 1 || base_.r < 1) throw std::invalid_argument("base scheme needs n >= 1 and r >= 1");
  for (auto& [ij, g] : upper) {
    const auto [i, j] = ij;
    if (i < 1 || j > base_.r || i >= j) throw std::invalid_argument("cocycle entries must be indexed by 1 <= i < j <= r");
    if (g.is_zero()) continue;
    if (g.nvars() != nvars()) throw std::invalid_argument("cocycle entry uses the wrong variable layout");
    if (!only_x(g, base_.n)) throw std::invalid_argument(pair_name(i, j) + " involves non-x variables");
    upper_.emplace(ij, g);
  }
  for (int i = 1; i <= base_.r; ++i)
    for (int j = i + 1; j <= base_.r; ++j)
      for (int k = j + 1; k <= base_.r; ++k)
        if (!(g(i, k) == g(i, j) + g(j, k)))
          throw std::invalid_argument("cocycle identity fails: " + pair_name(i, k) + " != " + pair_name(i, j) + " + " +
                                      pair_name(j, k));
}

Poly Cocycle::g(int i, int j) const {
  if (i < 1 || j < 1 || i > base_.r || j > base_.r) throw std::out_of_range("sheet index");
  if (i == j) return Poly(nvars());
  if (i < j) {
    auto it = upper_.find({i, j});
    return it == upper_.end() ? Poly(nvars()) : it->second;
  }
  return -g(j, i);
}

PoleData pole_decomposition(const Poly& g, int n) {
  if (g.is_zero()) throw std::invalid_argument("pole decomposition of zero");
  PoleData out;
  out.pole.resize(static_cast<std::size_t>(n));
  Exponents shift(static_cast<std::size_t>(g.nvars()), 0);
  for (int k = 0; k < n; ++k) {
    out.pole[static_cast<std::size_t>(k)] = -g.min_degree_in(k);
    shift[static_cast<std::size_t>(k)] = out.pole[static_cast<std::size_t>(k)];
  }
  out.residue = g.shifted(shift);
  return out;
}

std::string AffinenessWitness::describe() const {
  std::ostringstream os;
  const std::string pair = pair_name(i, j);
  switch (reason) {
    case Reason::RegularEntry:
      os << pair << " is regular (zero)";
      break;
    case Reason::NonPositivePole:
      os << "component " << component << " of the pole multi-index of " << pair << " is not positive";
      break;
    case Reason::UnitIdealFailure:
      os << "residue of " << pair << " restricted to x" << component << " = 0 is not a nonzero constant";
      if (residue_in_maximal_ideal) os << "; residue lies in (x1,...,xn)";
      break;
  }
  return os.str();
}

std::string AffinenessVerdict::describe() const {
  if (kind == Kind::Affine) return total_order_verified ? "Affine (pole multi-indices m_1i totally ordered)" : "Affine";
  return "NotSeparated: " + (witness ? witness->describe() : std::string("no witness"));
}

AffinenessVerdict affineness(const Cocycle& c) {
  AffinenessVerdict out;
  const int n = c.base().n, r = c.base().r;
  if (r == 1) return out;
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const Poly g = c.g(i, j);
      if (g.is_zero()) {
        out.kind = AffinenessVerdict::Kind::NotSeparated;
        out.witness = AffinenessWitness{AffinenessWitness::Reason::RegularEntry, i, j, 0, Poly(c.nvars()), false};
        return out;
      }
      PoleData pd = pole_decomposition(g, n);
      for (int k = 0; k < n; ++k)
        if (pd.pole[static_cast<std::size_t>(k)] <= 0) {
          out.kind = AffinenessVerdict::Kind::NotSeparated;
          out.witness = AffinenessWitness{AffinenessWitness::Reason::NonPositivePole, i, j, k + 1, Poly(c.nvars()), false};
          out.poles.emplace(std::make_pair(i, j), std::move(pd));
          return out;
        }
      // a + x1...xn C[x] = C[x]  <=>  a|_{x_k = 0} is a nonzero constant for every k
      for (int k = 0; k < n; ++k) {
        Poly restricted = pd.residue.evaluate_zero(k);
        if (restricted.is_constant() && !restricted.is_zero()) continue;
        out.kind = AffinenessVerdict::Kind::NotSeparated;
        out.witness = AffinenessWitness{AffinenessWitness::Reason::UnitIdealFailure, i, j, k + 1, restricted,
                                        sgn(pd.residue.constant_term()) == 0};
        out.poles.emplace(std::make_pair(i, j), std::move(pd));
        return out;
      }
      out.poles.emplace(std::make_pair(i, j), std::move(pd));
    }
  for (int i = 2; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const auto& a = out.poles.at({1, i}).pole;
      const auto& b = out.poles.at({1, j}).pole;
      if (!leq(a, b) && !leq(b, a))
        throw std::logic_error("affine cocycle with incomparable multi-indices m_1" + std::to_string(i) + ", m_1" +
                               std::to_string(j));
    }
  out.total_order_verified = true;
  return out;
}

Cocycle sigma_cocycle(const BaseScheme& base, const SigmaFamily& sigma, const Exponents& m) {
  if (static_cast<int>(sigma.sigma.size()) != base.r) throw std::invalid_argument("sigma family size differs from r");
  if (static_cast<int>(m.size()) != base.n) throw std::invalid_argument("multi-index length differs from n");
  if (std::any_of(m.begin(), m.end(), [](std::int32_t v) { return v < 1; }))
    throw std::invalid_argument("multi-index entries must be >= 1");
  if (auto why = sigma.violation(base.n); !why.empty()) throw std::invalid_argument(why);
  const int nv = base.n + 3;
  Exponents shift(static_cast<std::size_t>(nv), 0);
  for (int k = 0; k < base.n; ++k) shift[static_cast<std::size_t>(k)] = -m[static_cast<std::size_t>(k)];
  std::map<std::pair<int, int>, Poly> upper;
  for (int i = 1; i <= base.r; ++i)
    for (int j = i + 1; j <= base.r; ++j) {
      Poly diff = sigma.sigma[static_cast<std::size_t>(j - 1)] - sigma.sigma[static_cast<std::size_t>(i - 1)];
      if (diff.is_zero()) diff = Poly(nv);
      upper.emplace(std::make_pair(i, j), diff.shifted(shift));
    }
  return Cocycle(base, std::move(upper));
}

Cocycle hypersurface_cocycle(const DanielewskiHypersurface& h) {
  if (!h.sigma()) throw std::invalid_argument("hypersurface has no sigma family");
  return sigma_cocycle(BaseScheme{h.n(), h.r()}, *h.sigma(), h.m());
}

CoboundaryResult coboundary_test(const Cocycle& c1, const Cocycle& c2) {
  if (!(c1.base() == c2.base())) throw std::invalid_argument("cocycles over different base schemes");
  const int r = c1.base().r;
  CoboundaryResult out;
  std::vector<Poly> h(static_cast<std::size_t>(r), Poly(c1.nvars()));
  for (int j = 2; j <= r; ++j) {
    // h_1 - h_j = (c1 - c2)_1j
    Poly hj = c2.g(1, j) - c1.g(1, j);
    if (!hj.is_polynomial()) {
      out.offending_sheet = j;
      out.witness = hj;
      return out;
    }
    h[static_cast<std::size_t>(j - 1)] = hj;
  }
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j)
      if (!(h[static_cast<std::size_t>(i - 1)] - h[static_cast<std::size_t>(j - 1)] == c1.g(i, j) - c2.g(i, j)))
        throw std::logic_error("coboundary check failed on a cocycle pair");
  out.cochain = std::move(h);
  return out;
}

PoleSignature pole_signature(const Cocycle& c) {
  const auto verdict = affineness(c);
  if (verdict.kind != AffinenessVerdict::Kind::Affine) throw std::invalid_argument("pole signature needs an affine cocycle");
  const int n = c.base().n;
  std::vector<Exponents> raw;
  for (const auto& [ij, pd] : verdict.poles) raw.push_back(pd.pole);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<PoleSignature> best;
  do {
    PoleSignature s;
    for (const auto& e : raw) {
      Exponents p(e.size());
      for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
      s.push_back(std::move(p));
    }
    std::sort(s.begin(), s.end());
    if (!best || s < *best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

std::string to_string(const PoleSignature& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << (i ? ", " : "") << "(";
    for (std::size_t k = 0; k < s[i].size(); ++k) os << (k ? "," : "") << s[i][k];
    os << ")";
  }
  os << "}";
  return os.str();
}

Cocycle apply_action(const Cocycle& c, const RestrictedAction& a) {
  const int n = c.base().n, r = c.base().r, nv = c.nvars();
  if (static_cast<int>(a.sheet_permutation.size()) != r || static_cast<int>(a.coordinate_permutation.size()) != n ||
      static_cast<int>(a.scaling.size()) != n)
    throw std::invalid_argument("action does not match the base scheme");
  std::vector<std::optional<Poly>> images(static_cast<std::size_t>(nv));
  for (int k = 0; k < n; ++k) {
    const auto& s = a.scaling[static_cast<std::size_t>(k)];
    if (sgn(s) == 0) throw std::invalid_argument("zero torus parameter");
    images[static_cast<std::size_t>(k)] = Poly::variable(nv, a.coordinate_permutation[static_cast<std::size_t>(k)] - 1) * s;
  }
  std::map<std::pair<int, int>, Poly> upper;
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const Poly g = c.g(a.sheet_permutation[static_cast<std::size_t>(i - 1)], a.sheet_permutation[static_cast<std::size_t>(j - 1)]);
      upper.emplace(std::make_pair(i, j), g.compose(images, nv) * a.lambda);
    }
  return Cocycle(c.base(), std::move(upper));
}

std::string OrbitVerdict::describe() const {
  std::ostringstream os;
  if (in_orbit) {
    os << "in restricted orbit: sheet permutation (";
    for (std::size_t i = 0; i < action->sheet_permutation.size(); ++i) os << (i ? " " : "") << action->sheet_permutation[i];
    os << "), coordinate permutation (";
    for (std::size_t i = 0; i < action->coordinate_permutation.size(); ++i)
      os << (i ? " " : "") << action->coordinate_permutation[i];
    os << "), scaling (";
    for (std::size_t i = 0; i < action->scaling.size(); ++i) os << (i ? "," : "") << action->scaling[i].get_str();
    os << "), lambda " << action->lambda.get_str();
  } else {
    os << "not in restricted orbit";
    if (signatures_differ) os << " (pole signatures differ)";
    if (witness_outside_rationals) os << " (a candidate witness lies outside Q)";
  }
  os << "; searched subgroup: sheet permutations, coordinate permutations, diagonal torus, C* scaling, coboundaries";
  return os.str();
}

OrbitVerdict restricted_orbit_test(const Cocycle& c1, const Cocycle& c2) {
  if (!(c1.base() == c2.base())) throw std::invalid_argument("cocycles over different base schemes");
  OrbitVerdict out;
  if (pole_signature(c1) != pole_signature(c2)) {
    out.signatures_differ = true;
    return out;
  }
  const int n = c1.base().n, r = c1.base().r;
  std::vector<int> pi(static_cast<std::size_t>(r)), tau(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 1);
  do {
    std::iota(tau.begin(), tau.end(), 1);
    do {
      RestrictedAction base_action{pi, tau, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Rational(1)};
      const Cocycle permuted = apply_action(c1, base_action);
      // lambda * t^f * a_f = b_f on every polar monomial of the (1, j) entries
      IntMatrix a;
      std::vector<Rational> rhs;
      bool supports_match = true;
      for (int j = 2; j <= r && supports_match; ++j) {
        const Poly pa = polar_part(permuted.g(1, j));
        const Poly pb = polar_part(c2.g(1, j));
        if (pa.size() != pb.size()) {
          supports_match = false;
          break;
        }
        for (const auto& [e, ca] : pa) {
          const Rational cb = pb.coeff(e);
          if (sgn(cb) == 0) {
            supports_match = false;
            break;
          }
          // column 0 is lambda so that pure cocycle scalings are preferred
          std::vector<Integer> row{Integer(1)};
          for (int k = 0; k < n; ++k) row.emplace_back(e[static_cast<std::size_t>(k)]);
          a.push_back(std::move(row));
          rhs.push_back(cb / ca);
        }
      }
      if (!supports_match) continue;
      std::vector<Rational> unknowns(static_cast<std::size_t>(n + 1), Rational(1));
      if (!a.empty()) {
        const auto diag = diagonalize(a);
        const std::size_t rows = a.size(), cols = static_cast<std::size_t>(n + 1);
        std::vector<Rational> rhs2(rows, Rational(1));
        for (std::size_t k = 0; k < rows; ++k)
          for (std::size_t i = 0; i < rows; ++i) rhs2[k] *= rational_power(rhs[i], diag.u[k][i]);
        std::vector<Rational> w(cols, Rational(1));
        bool solvable = true, irrational = false;
        for (std::size_t k = 0; k < rows; ++k) {
          const Integer d = k < diag.diagonal.size() ? diag.diagonal[k] : Integer(0);
          if (d == 0) {
            if (rhs2[k] != 1) solvable = false;
            continue;
          }
          const Rational target = sgn(d) < 0 ? Rational(1 / rhs2[k]) : rhs2[k];
          auto root = rational_root(target, Integer(abs(d)).get_ui());
          if (!root) {
            irrational = true;
            solvable = false;
            continue;
          }
          w[k] = *root;
        }
        if (irrational) out.witness_outside_rationals = true;
        if (!solvable) continue;
        for (std::size_t j = 0; j < cols; ++j) {
          Rational v = 1;
          for (std::size_t l = 0; l < cols; ++l) v *= rational_power(w[l], diag.v[j][l]);
          unknowns[j] = v;
        }
      }
      // unknowns are scalings of the permuted coordinates; s_k = t_{tau(k)}
      RestrictedAction action = base_action;
      for (int k = 0; k < n; ++k)
        action.scaling[static_cast<std::size_t>(k)] = unknowns[static_cast<std::size_t>(tau[static_cast<std::size_t>(k)])];
      action.lambda = unknowns[0];
      const Cocycle moved = apply_action(c1, action);
      auto cob = coboundary_test(moved, c2);
      if (!cob.cochain) continue;
      out.in_orbit = true;
      out.action = std::move(action);
      out.coboundary = std::move(cob.cochain);
      out.witness_outside_rationals = false;
      return out;
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

std::optional<SecondFibration> second_fibration(const DanielewskiHypersurface& h) {
  for (int k = 0; k < h.n(); ++k) {
    if (h.m()[static_cast<std::size_t>(k)] != 1) continue;
    SecondFibration out;
    out.dropped = k + 1;
    for (int j = 0; j < h.n(); ++j)
      if (j != k) out.base_coordinates.push_back("x" + std::to_string(j + 1));
    out.base_coordinates.push_back("z");
    std::ostringstream os;
    os << "projection (x1..xn, y, z) -> (";
    for (std::size_t i = 0; i < out.base_coordinates.size(); ++i) os << (i ? ", " : "") << out.base_coordinates[i];
    os << ") factors through a second principal C_+-bundle structure over Z_{" << h.n() << "," << h.r()
       << "}; x" << (k + 1) << " has exponent 1";
    out.description = os.str();
    return out;
  }
  return std::nullopt;
}

}  // namespace danvar
