#include "danvar/ml_filtration.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "danvar/linalg.hpp"

namespace danvar {

namespace {

std::int64_t smallest_prime_above(std::int64_t v) {
  auto is_prime = [](std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
      if (p % q == 0) return false;
    return true;
  };
  std::int64_t p = std::max<std::int64_t>(v + 1, 2);
  while (!is_prime(p)) ++p;
  return p;
}

/// delta = k * (m, -r, 1) on the x, y, z slots for some integer k.
bool along_relation(const DanielewskiHypersurface& h, const Exponents& a, const Exponents& b) {
  const int n = h.n();
  const std::int64_t k = static_cast<std::int64_t>(a[static_cast<std::size_t>(h.z_slot())]) - b[static_cast<std::size_t>(h.z_slot())];
  if (static_cast<std::int64_t>(a[static_cast<std::size_t>(h.y_slot())]) - b[static_cast<std::size_t>(h.y_slot())] != -k * h.r())
    return false;
  for (int i = 0; i < n; ++i)
    if (static_cast<std::int64_t>(a[static_cast<std::size_t>(i)]) - b[static_cast<std::size_t>(i)] !=
        k * h.m()[static_cast<std::size_t>(i)])
      return false;
  return true;
}

Exponents xyz_part(const DanielewskiHypersurface& h, Exponents e) {
  e.resize(static_cast<std::size_t>(h.nvars()), 0);
  e[static_cast<std::size_t>(h.u_slot())] = 0;
  return e;
}

}  // namespace

std::optional<std::pair<Exponents, Exponents>> genericity_collision(const DanielewskiHypersurface& h,
                                                                   const WeightVector& w,
                                                                   const std::vector<Exponents>& support) {
  std::map<std::int64_t, std::vector<Exponents>> by_weight;
  std::set<Exponents> seen;
  for (const auto& raw : support) {
    Exponents e = xyz_part(h, raw);
    if (!seen.insert(e).second) continue;
    by_weight[w.weight(e)].push_back(e);
  }
  for (const auto& [wt, group] : by_weight)
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j)
        if (!along_relation(h, group[i], group[j])) return std::make_pair(group[i], group[j]);
  return std::nullopt;
}

AdmissibleWeight admissible_weight(const DanielewskiHypersurface& h, const WeightVector& seed,
                                   const std::vector<Exponents>& extra_support) {
  if (static_cast<int>(seed.dx.size()) != h.n()) throw std::invalid_argument("weight vector length differs from n");
  if (seed.dy <= 0 || std::any_of(seed.dx.begin(), seed.dx.end(), [](std::int64_t v) { return v <= 0; }))
    throw std::invalid_argument("weights must be positive integers");
  std::vector<Exponents> support;
  for (const auto& [e, c] : h.q()) support.push_back(e);
  for (const auto& e : extra_support) support.push_back(xyz_part(h, e));
  Exponents yr(static_cast<std::size_t>(h.nvars()), 0);
  yr[static_cast<std::size_t>(h.y_slot())] = h.r();

  AdmissibleWeight out;
  out.weight = seed.bound(h.m(), h.r());
  for (int round = 0;; ++round) {
    if (round > 64) throw std::runtime_error("weight rescaling did not terminate");
    WeightVector& w = out.weight;
    std::int64_t lo = w.weight(support.front()), hi = lo;
    for (const auto& e : support) {
      lo = std::min(lo, w.weight(e));
      hi = std::max(hi, w.weight(e));
    }
    const std::int64_t p = smallest_prime_above(hi - lo);
    // condition: the principal component of Q is y^r
    bool principal_ok = true;
    for (const auto& [e, c] : h.q())
      if (e != yr && w.weight(e) >= w.weight(yr)) principal_ok = false;
    if (!principal_ok) {
      out.log.push_back("principal component of Q is not y^r under " + w.to_string() + "; d_y *= " + std::to_string(p));
      w.dy *= p;
      w = w.bound(h.m(), h.r());
      out.rescaled = true;
      continue;
    }
    auto hit = genericity_collision(h, w, support);
    if (!hit) break;
    const auto& [a, b] = *hit;
    // weight(delta) = (da - dz*m).dx + (db + dz*r) dy with dz the z-exponent difference
    const std::int64_t dzexp = static_cast<std::int64_t>(a[static_cast<std::size_t>(h.z_slot())]) - b[static_cast<std::size_t>(h.z_slot())];
    const std::int64_t ycoef = static_cast<std::int64_t>(a[static_cast<std::size_t>(h.y_slot())]) -
                               b[static_cast<std::size_t>(h.y_slot())] + dzexp * h.r();
    if (ycoef != 0) {
      out.log.push_back("support collision under " + w.to_string() + "; d_y *= " + std::to_string(p));
      w.dy *= p;
    } else {
      int k = 0;
      while (static_cast<std::int64_t>(a[static_cast<std::size_t>(k)]) - b[static_cast<std::size_t>(k)] -
                 dzexp * h.m()[static_cast<std::size_t>(k)] ==
             0)
        ++k;
      out.log.push_back("x-only support collision under " + w.to_string() + "; d_x" + std::to_string(k + 1) +
                        " *= " + std::to_string(p));
      w.dx[static_cast<std::size_t>(k)] *= p;
    }
    w = w.bound(h.m(), h.r());
    out.rescaled = true;
  }
  return out;
}

ExtDegree filtration_degree(const DanielewskiHypersurface& h, const WeightVector& w, const Poly& b) {
  return weight_degree(laurent_embed(h, b), w);
}

Poly graded_image(const DanielewskiHypersurface& h, const WeightVector& w, const Poly& b) {
  const auto hr = DanielewskiHypersurface::homogenized(h.n(), h.m(), h.r());
  const Poly lb = laurent_embed(h, b);
  if (lb.is_zero()) return Poly(h.nvars());
  const auto mem = laurent_membership(hr, principal_component(lb, w));
  if (!mem.element) throw std::invalid_argument("principal component is not in the homogenized ring (inadmissible weight)");
  return mem.element->normal_form;
}

GradedDerivation graded_derivation(const Derivation& d, const WeightVector& w_in) {
  const auto& h = d.owner();
  if (d.is_zero()) throw std::invalid_argument("graded derivation needs a nontrivial derivation");
  const WeightVector w = w_in.dz ? w_in : w_in.bound(h.m(), h.r());
  Exponents yr(static_cast<std::size_t>(h.nvars()), 0);
  yr[static_cast<std::size_t>(h.y_slot())] = h.r();
  for (const auto& [e, c] : h.q())
    if (e != yr && w.weight(e) >= w.weight(yr))
      throw std::invalid_argument("inadmissible weights: principal component of Q is not y^r");

  std::vector<ExtDegree> t;
  std::optional<std::int64_t> t0;
  const Ring ring = h.ring();
  std::vector<std::string> transcript;
  for (int g = 0; g < h.n() + 2; ++g) {
    const Poly gen = Poly::variable(h.nvars(), g);
    const Poly img = d.image(g);
    if (img.is_zero()) {
      t.push_back(ExtDegree::minus_infinity());
      continue;
    }
    const auto tg = filtration_degree(h, w, img).value() - filtration_degree(h, w, gen).value();
    t.push_back(ExtDegree(tg));
    t0 = t0 ? std::max(*t0, tg) : tg;
  }
  std::vector<Poly> images;
  for (int g = 0; g < h.n() + 2; ++g) {
    const bool top = !t[static_cast<std::size_t>(g)].is_minus_infinity() && t[static_cast<std::size_t>(g)].value() == *t0;
    images.push_back(top ? graded_image(h, w, d.image(g)) : Poly(h.nvars()));
    std::ostringstream os;
    os << "t(" << ring.name(g) << ") = " << t[static_cast<std::size_t>(g)] << "; gr d(" << ring.name(g)
       << ") = " << to_string(images.back(), ring);
    transcript.push_back(os.str());
  }
  transcript.push_back("t0 = " + std::to_string(*t0) + " (maximum over generators)");
  const auto hr = DanielewskiHypersurface::homogenized(h.n(), h.m(), h.r());
  std::optional<Derivation> graded;
  try {
    graded.emplace(hr, std::move(images));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("gr d does not preserve the homogenized relation: ") + e.what());
  }
  transcript.push_back("gr d(" + to_string(hr.defining_polynomial(), ring) + ") = 0");
  return GradedDerivation{w, std::move(t), *t0, std::move(*graded), std::move(transcript)};
}

InequalityReport degree_inequality_check(const Derivation& d, const GradedDerivation& gd,
                                         const std::vector<Poly>& samples, int cap) {
  InequalityReport out;
  const auto& h = d.owner();
  for (const auto& b : samples) {
    const auto lhs = degree(d, b, cap);
    const Poly gb = graded_image(h, gd.weight, b);
    const auto rhs = degree(gd.graded, gb, cap);
    const std::string label = to_string(b, h.ring());
    if (!lhs || !rhs) {
      ++out.inconclusive;
      out.transcript.push_back("Inconclusive on " + label);
      continue;
    }
    ++out.checked;
    std::ostringstream os;
    os << label << ": " << *lhs << " >= " << *rhs;
    if (*lhs >= *rhs) {
      out.transcript.push_back(os.str());
    } else {
      out.ok = false;
      out.transcript.push_back("VIOLATION " + os.str());
    }
  }
  return out;
}

std::vector<Exponents> monomials_of_weight(const DanielewskiHypersurface& h, const WeightVector& w,
                                           std::int64_t target, int max_degree) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(h.nvars()), 0);
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == h.n() + 2) {
      if (w.weight(e) == target) out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[static_cast<std::size_t>(slot)] = a;
      self(self, slot + 1, left - a);
    }
    e[static_cast<std::size_t>(slot)] = 0;
  };
  rec(rec, 0, max_degree);
  return out;
}

UniquenessReport homogeneous_normal_form_uniqueness(const DanielewskiHypersurface& hr, const WeightVector& w_in,
                                                    int samples, std::uint64_t seed, int max_degree) {
  UniquenessReport out;
  const int wide = max_degree + hr.r() + 1;
  // every ambient monomial a sampled slice can contain must be generic
  std::vector<Exponents> ambient;
  Exponents e(static_cast<std::size_t>(hr.nvars()), 0);
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == hr.n() + 2) {
      ambient.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[static_cast<std::size_t>(slot)] = a;
      self(self, slot + 1, left - a);
    }
    e[static_cast<std::size_t>(slot)] = 0;
  };
  rec(rec, 0, wide);
  const auto aw = admissible_weight(hr, w_in, ambient);
  const WeightVector& w = aw.weight;
  out.weight = w;
  for (const auto& line : aw.log) out.transcript.push_back("retry: " + line);
  const auto reduced = reduced_monomials(hr, max_degree);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, reduced.size() - 1);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int s = 0; s < samples; ++s) {
    const Exponents mu = reduced[pick(rng)];
    const auto slice = monomials_of_weight(hr, w, w.weight(mu), wide);
    for (std::size_t i = 0; i < slice.size(); ++i)
      for (std::size_t j = i + 1; j < slice.size(); ++j)
        if (!along_relation(hr, slice[i], slice[j])) {
          out.ok = false;
          out.transcript.push_back("equal-weight monomials off the relation direction (weights not generic)");
        }
    Poly b(hr.nvars());
    for (const auto& e : slice) b.add_term(e, coeff(rng));
    const Poly nf = normal_form(hr, b).normal_form;
    ++out.checked;
    if (nf.size() > 1) {
      out.ok = false;
      out.transcript.push_back("homogeneous element with normal form " + to_string(nf, hr.ring()));
    }
  }
  if (out.ok) out.transcript.push_back(std::to_string(out.checked) + " homogeneous elements normal-form to single monomials");
  return out;
}

SearchOverflow::SearchOverflow(std::uint64_t size, std::uint64_t limit)
    : std::runtime_error("search space of " + std::to_string(size) + " candidates exceeds the limit " +
                         std::to_string(limit)),
      size_(size) {}

SearchResult homogeneous_lnd_search(const DanielewskiHypersurface& hr, int max_degree, int nilpotency_cap,
                                    std::uint64_t limit) {
  const int n = hr.n(), gens = n + 2, nv = hr.nvars();
  const auto monos = reduced_monomials(hr, max_degree);
  std::vector<Exponents> support = monos;
  static const std::int64_t primes[] = {3, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  WeightVector seed;
  for (int k = 0; k < n; ++k) seed.dx.push_back(primes[k % 10] + 40 * (k / 10));
  seed.dy = 5;
  SearchResult out;
  out.weight = admissible_weight(hr, seed, support).weight;
  const WeightVector& w = out.weight;

  // t0 -> per generator, reduced monomials of weight w(gen) + t0
  std::map<std::int64_t, std::vector<std::vector<Exponents>>> slots;
  for (int g = 0; g < gens; ++g) {
    const auto wg = w.weight(Poly::variable(nv, g).begin()->first);
    for (const auto& mu : monos) {
      auto& per = slots[w.weight(mu) - wg];
      per.resize(static_cast<std::size_t>(gens));
      per[static_cast<std::size_t>(g)].push_back(mu);
    }
  }
  std::uint64_t size = 0;
  for (const auto& [t0, per] : slots) {
    std::uint64_t combos = 1;
    for (const auto& list : per) combos *= list.size() + 1;
    size += combos;
  }
  out.candidates = size;
  if (size > limit) throw SearchOverflow(size, limit);

  const Poly f = hr.defining_polynomial();
  for (const auto& [t0, per] : slots) {
    // each generator: index 0 = image zero, k > 0 = per[g][k-1]
    std::vector<std::size_t> choice(static_cast<std::size_t>(gens), 0);
    for (;;) {
      std::size_t g = 0;
      while (g < choice.size() && choice[g] == per[g].size()) choice[g++] = 0;
      if (g == choice.size()) break;
      ++choice[g];
      std::vector<int> active;
      for (int s = 0; s < gens; ++s)
        if (choice[static_cast<std::size_t>(s)] > 0) active.push_back(s);
      // dF = sum_s c_s * dF/dv_s * mu_s must normal-form to zero
      std::map<Exponents, SparseRow, GrlexGreater> rows;
      for (std::size_t a = 0; a < active.size(); ++a) {
        const int s = active[a];
        const Exponents& mu = per[static_cast<std::size_t>(s)][choice[static_cast<std::size_t>(s)] - 1];
        const Poly term = normal_form(hr, f.derivative(s) * Poly::monomial(mu)).normal_form;
        for (const auto& [e, c] : term) rows[e][static_cast<int>(a)] = c;
      }
      Echelon ech(static_cast<int>(active.size()));
      for (auto& [e, row] : rows) ech.add_row(std::move(row));
      const auto basis = ech.nullspace();
      if (basis.empty()) continue;
      std::vector<Rational> c(active.size());
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (const auto& [col, v] : basis[b]) c[static_cast<std::size_t>(col)] += v * Rational(static_cast<long>(b + 1));
      if (std::any_of(c.begin(), c.end(), [](const Rational& v) { return sgn(v) == 0; })) continue;
      std::vector<Poly> images(static_cast<std::size_t>(gens), Poly(nv));
      for (std::size_t a = 0; a < active.size(); ++a) {
        const int s = active[a];
        images[static_cast<std::size_t>(s)] =
            Poly::monomial(per[static_cast<std::size_t>(s)][choice[static_cast<std::size_t>(s)] - 1], c[a]);
      }
      Derivation d(hr, std::move(images));
      auto cert = certify_nilpotency(d, nilpotency_cap);
      if (!cert.certified) continue;
      HomogeneousLnd found{d, t0, cert, true, ExtDegree()};
      for (int k = 0; k < n; ++k)
        if (!d.image(k).is_zero()) found.x_in_kernel = false;
      found.z_degree = *degree(d, Poly::variable(nv, hr.z_slot()), nilpotency_cap);
      out.lnds.push_back(std::move(found));
    }
  }
  return out;
}

std::vector<Poly> ml_upper_bound(const DanielewskiHypersurface& h, const std::vector<Derivation>& catalog,
                                 int max_degree) {
  if (catalog.empty()) throw std::invalid_argument("empty derivation catalog");
  for (const auto& d : catalog)
    if (!(d.owner() == h)) throw std::invalid_argument("catalog derivation belongs to another hypersurface");
  const auto basis = reduced_monomials(h, max_degree);
  Echelon ech(static_cast<int>(basis.size()));
  for (const auto& d : catalog) {
    std::map<Exponents, SparseRow, GrlexGreater> rows;
    for (std::size_t col = 0; col < basis.size(); ++col)
      for (const auto& [e, c] : d.apply(Poly::monomial(basis[col]))) rows[e][static_cast<int>(col)] = c;
    for (auto& [e, row] : rows) ech.add_row(std::move(row));
  }
  std::vector<Poly> out;
  for (const auto& v : ech.nullspace()) {
    Poly p(h.nvars());
    for (const auto& [col, c] : v) p.add_term(basis[static_cast<std::size_t>(col)], c);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace danvar
