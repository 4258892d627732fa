#include "danvar/cancellation.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

#include "danvar/linalg.hpp"

namespace danvar {

Ring chart_ring(int n) { return Ring(n, {"t", "w", "u", "v"}, true); }
int chart_t(int n) { return n; }
int chart_w(int n) { return n + 1; }
int chart_u(int n) { return n + 2; }
int chart_v(int n) { return n + 3; }

namespace {

int chart_nvars(int n) { return n + 4; }

bool has_pole(const Exponents& e, int n) {
  for (int k = 0; k < n; ++k)
    if (e[static_cast<std::size_t>(k)] < 0) return true;
  return false;
}

/// x-only cocycle value moved into the chart ring.
Poly to_chart(const Poly& g, int n) { return g.is_zero() ? Poly(chart_nvars(n)) : g.resized(chart_nvars(n)); }

Poly var(int n, int slot) { return Poly::variable(chart_nvars(n), slot); }

/// Monomials x^alpha with |alpha| <= d, in a fixed order.
std::vector<Exponents> x_monomials(int n, int d) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(chart_nvars(n)), 0);
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == n) {
      out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[static_cast<std::size_t>(slot)] = a;
      self(self, slot + 1, left - a);
    }
    e[static_cast<std::size_t>(slot)] = 0;
  };
  rec(rec, 0, d);
  return out;
}

struct Attempt {
  std::optional<Poly> h1;
  int rank = 0, unknowns = 0, equations = 0;
};

Attempt attempt(const Cocycle& g, const Cocycle& gp, int tdeg, int xdeg) {
  const int n = g.base().n, r = g.base().r, nv = chart_nvars(n), ts = chart_t(n);
  const auto alphas = x_monomials(n, xdeg);
  // (t + g_1j)^k for every j and k <= tdeg
  std::vector<std::vector<Poly>> shifted(static_cast<std::size_t>(r + 1));
  for (int j = 2; j <= r; ++j) {
    const Poly base = var(n, ts) + to_chart(g.g(1, j), n);
    auto& pw = shifted[static_cast<std::size_t>(j)];
    pw.push_back(Poly::constant(nv, 1));
    for (int k = 1; k <= tdeg; ++k) pw.push_back(pw.back() * base);
  }
  std::map<std::pair<int, Exponents>, SparseRow> rows;
  std::map<std::pair<int, Exponents>, Rational> rhs;
  int unknowns = 0;
  std::vector<Exponents> columns;
  for (int k = 0; k <= tdeg; ++k)
    for (const auto& alpha : alphas) {
      Exponents mono = alpha;
      mono[static_cast<std::size_t>(ts)] = k;
      columns.push_back(mono);
      for (int j = 2; j <= r; ++j)
        for (const auto& [e, c] : shifted[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) {
          const Exponents f = add_exponents(e, alpha);
          if (has_pole(f, n)) rows[{j, f}][unknowns] += c;
        }
      ++unknowns;
    }
  for (int j = 2; j <= r; ++j)
    for (const auto& [e, c] : to_chart(gp.g(1, j), n))
      if (has_pole(e, n)) {
        rows[{j, e}];
        rhs[{j, e}] = c;
      }
  std::vector<std::pair<SparseRow, Rational>> eqs;
  for (auto& [key, row] : rows) {
    for (auto it = row.begin(); it != row.end();) it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
    auto hit = rhs.find(key);
    eqs.emplace_back(std::move(row), hit == rhs.end() ? Rational(0) : hit->second);
  }
  const auto solved = solve_linear(unknowns, eqs);
  Attempt out;
  out.rank = solved.rank;
  out.unknowns = unknowns;
  out.equations = static_cast<int>(eqs.size());
  if (!solved.solution) return out;
  Poly h1(nv);
  for (int c = 0; c < unknowns; ++c)
    if (sgn((*solved.solution)[static_cast<std::size_t>(c)]) != 0)
      h1.add_term(columns[static_cast<std::size_t>(c)], (*solved.solution)[static_cast<std::size_t>(c)]);
  out.h1 = std::move(h1);
  return out;
}

std::vector<int> x_cap_schedule(int cap) {
  std::vector<int> out{0};
  for (int d = 1; d < cap; d *= 2) out.push_back(d);
  if (cap > 0) out.push_back(cap);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string pair_label(int i, int j) { return std::to_string(i) + std::to_string(j); }

class Verifier {
 public:
  explicit Verifier(RecheckResult& out) : out_(out) {}
  void check(bool ok, const std::string& identity) {
    out_.transcript.push_back({identity, ok ? "verified" : "FAILED"});
    if (!ok && out_.ok) {
      out_.ok = false;
      out_.failing = identity;
    }
  }

 private:
  RecheckResult& out_;
};

/// Replace t by a Laurent expression in the ambient ring (x, y, z, u) of h.
Poly chart_to_ambient(const Poly& p, const DanielewskiHypersurface& h, const Poly& t_image) {
  const int n = h.n(), nv = h.nvars();
  std::vector<std::optional<Poly>> images(static_cast<std::size_t>(chart_nvars(n)));
  images[static_cast<std::size_t>(chart_t(n))] = t_image;
  images[static_cast<std::size_t>(chart_w(n))] = Poly(nv);
  images[static_cast<std::size_t>(chart_u(n))] = Poly::variable(nv, h.u_slot());
  images[static_cast<std::size_t>(chart_v(n))] = Poly(nv);
  for (const int s : {chart_w(n), chart_v(n)})
    if (p.depends_on(s)) throw std::invalid_argument("forward map depends on target coordinates");
  return p.compose(images, nv);
}

Poly compose2(const Poly& p, int slot_a, const Poly& a, int slot_b, const Poly& b) {
  std::vector<std::optional<Poly>> images(static_cast<std::size_t>(p.nvars()));
  images[static_cast<std::size_t>(slot_a)] = a;
  images[static_cast<std::size_t>(slot_b)] = b;
  return p.compose(images, p.nvars());
}

struct Expected {
  Poly w, v, t_inv, u_inv;
};

Expected chart_formulas(const Poly& h, const Poly& hp, int n) {
  const int ts = chart_t(n), ws = chart_w(n), us = chart_u(n), vs = chart_v(n);
  Expected e;
  e.w = var(n, us) + h;
  e.v = var(n, ts) - hp.substitute(ts, e.w);
  e.t_inv = var(n, vs) + hp.substitute(ts, var(n, ws));
  e.u_inv = var(n, ws) - h.substitute(ts, e.t_inv);
  return e;
}

/// Laurent images of y', z', u' computed through chart `sheet`.
struct LaurentImages {
  Poly y, z, u;
};

LaurentImages laurent_images(const IsoCertificate& cert, int sheet) {
  const auto& src = cert.source;
  const auto& tgt = cert.target;
  const int nv = src.nvars();
  const Poly tau = chart_coordinate(src, sheet);
  const auto& chart = cert.charts[static_cast<std::size_t>(sheet - 1)];
  const Poly w = chart_to_ambient(chart.w, src, tau);
  const Poly v = chart_to_ambient(chart.v, src, tau);
  const auto& sig = tgt.sigma()->sigma;
  LaurentImages out;
  out.y = sig[static_cast<std::size_t>(sheet - 1)].resized(nv) + w.shifted(tgt.x_power(1, nv));
  out.z = w;
  for (std::size_t j = 0; j < sig.size(); ++j)
    if (static_cast<int>(j) != sheet - 1) out.z = out.z * (out.y - sig[j].resized(nv));
  out.u = v;
  return out;
}

RecheckResult verify(const IsoCertificate& cert) {
  RecheckResult out;
  Verifier vf(out);
  const auto& src = cert.source;
  const auto& tgt = cert.target;
  if (!src.sigma() || !tgt.sigma()) throw std::invalid_argument("certificate hypersurfaces need sigma families");
  if (src.n() != tgt.n() || src.r() != tgt.r()) throw std::invalid_argument("certificate hypersurfaces over different bases");
  const int n = src.n(), r = src.r();
  if (static_cast<int>(cert.h.size()) != r || static_cast<int>(cert.hprime.size()) != r ||
      static_cast<int>(cert.charts.size()) != r)
    throw std::invalid_argument("certificate needs one cochain entry and chart per sheet");
  for (const auto* v : {&cert.h, &cert.hprime})
    for (const auto& p : *v)
      if (p.nvars() != chart_nvars(n)) throw std::invalid_argument("cochain entry uses the wrong variable layout");
  const Cocycle g = hypersurface_cocycle(src), gp = hypersurface_cocycle(tgt);
  const int ts = chart_t(n), ws = chart_w(n), us = chart_u(n), vs = chart_v(n);

  for (const auto& [label, cochain, from, to] :
       {std::tuple{"H", &cert.h, &g, &gp}, std::tuple{"H'", &cert.hprime, &gp, &g}}) {
    const std::string ln(label);
    const std::string from_name = ln == "H" ? "g" : "g'", to_name = ln == "H" ? "g'" : "g";
    for (int i = 1; i <= r; ++i) {
      const auto& hi = (*cochain)[static_cast<std::size_t>(i - 1)];
      vf.check(hi.is_polynomial() && !hi.depends_on(ws) && !hi.depends_on(us) && !hi.depends_on(vs),
               ln + "_" + std::to_string(i) + " is a polynomial in (x, t)");
    }
    for (int i = 1; i <= r; ++i)
      for (int j = i + 1; j <= r; ++j) {
        const auto& hi = (*cochain)[static_cast<std::size_t>(i - 1)];
        const auto& hj = (*cochain)[static_cast<std::size_t>(j - 1)];
        const Poly lhs = hi.substitute(ts, var(n, ts) + to_chart(from->g(i, j), n)) - hj;
        vf.check(lhs == to_chart(to->g(i, j), n), ln + "_" + std::to_string(i) + "(x, t + " + from_name + "_" +
                                                       pair_label(i, j) + ") - " + ln + "_" + std::to_string(j) +
                                                       "(x, t) = " + to_name + "_" + pair_label(i, j));
      }
  }
  for (int i = 1; i <= r; ++i) {
    const auto& c = cert.charts[static_cast<std::size_t>(i - 1)];
    const std::string si = std::to_string(i);
    const auto e = chart_formulas(cert.h[static_cast<std::size_t>(i - 1)], cert.hprime[static_cast<std::size_t>(i - 1)], n);
    vf.check(c.sheet == i && c.w == e.w && c.v == e.v,
             "chart " + si + " forward map is (w, v) = (u + H_" + si + "(x, t), t - H'_" + si + "(x, w))");
    vf.check(c.t_inv == e.t_inv && c.u_inv == e.u_inv,
             "chart " + si + " inverse map is (t, u) = (v + H'_" + si + "(x, w), w - H_" + si + "(x, t))");
    vf.check(compose2(c.t_inv, ws, c.w, vs, c.v) == var(n, ts) && compose2(c.u_inv, ws, c.w, vs, c.v) == var(n, us),
             "chart " + si + ": inverse o forward = identity");
    vf.check(compose2(c.w, ts, c.t_inv, us, c.u_inv) == var(n, ws) && compose2(c.v, ts, c.t_inv, us, c.u_inv) == var(n, vs),
             "chart " + si + ": forward o inverse = identity");
  }
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const auto& ci = cert.charts[static_cast<std::size_t>(i - 1)];
      const auto& cj = cert.charts[static_cast<std::size_t>(j - 1)];
      const Poly gij = to_chart(g.g(i, j), n), gpij = to_chart(gp.g(i, j), n);
      const Poly tj = var(n, ts) - gij;
      const std::string p = pair_label(i, j);
      vf.check(ci.w - cj.w.substitute(ts, tj) == gpij, "chart compatibility w_" + std::to_string(i) + " = w_" +
                                                          std::to_string(j) + " + g'_" + p + " on t_" +
                                                          std::to_string(i) + " = t_" + std::to_string(j) + " + g_" + p);
      vf.check(ci.v == cj.v.substitute(ts, tj), "u' agrees on charts " + std::to_string(i) + " and " + std::to_string(j));
      const Poly wj = var(n, ws) - gpij;
      vf.check(ci.t_inv - cj.t_inv.substitute(ws, wj) == gij,
               "inverse chart compatibility t_" + std::to_string(i) + " = t_" + std::to_string(j) + " + g_" + p);
      vf.check(ci.u_inv == cj.u_inv.substitute(ws, wj),
               "u agrees on target charts " + std::to_string(i) + " and " + std::to_string(j));
    }
  if (cert.ambient) {
    const auto& a = *cert.ambient;
    const int nv = src.nvars();
    for (const auto* p : {&a.y, &a.z, &a.u})
      if (p->nvars() != nv) throw std::invalid_argument("ambient form uses the wrong variable layout");
    vf.check(is_reduced(src, a.y) && is_reduced(src, a.z) && is_reduced(src, a.u), "ambient images are in normal form");
    for (int i = 1; i <= r; ++i) {
      const auto li = laurent_images(cert, i);
      const std::string si = std::to_string(i);
      vf.check(laurent_embed(src, a.y) == li.y, "y' = sigma'_" + si + " + x^[m'] w_" + si + " in B[u]");
      vf.check(laurent_embed(src, a.z) == li.z, "z' = w_" + si + " prod_{j != " + si + "} (y' - sigma'_j) in B[u]");
      vf.check(laurent_embed(src, a.u) == li.u, "u' = v_" + si + " in B[u]");
    }
    Poly rel = Poly::monomial(tgt.x_power(1, nv)) * a.z;
    Poly prod = Poly::constant(nv, 1);
    for (const auto& s : tgt.sigma()->sigma) prod = prod * (a.y - s.resized(nv));
    vf.check(normal_form(src, rel - prod).normal_form.is_zero(), "x^[m'] z' - prod (y' - sigma'_i) = 0 in B[u]");
  }
  return out;
}

}  // namespace

SolverCaps default_caps(const DanielewskiHypersurface& source, const DanielewskiHypersurface& target) {
  auto norm = [](const Exponents& m) {
    int s = 0;
    for (auto v : m) s += v;
    return s;
  };
  int comp = 0;
  for (std::size_t k = 0; k < source.m().size() && k < target.m().size(); ++k)
    comp = std::max(comp, source.m()[k] + target.m()[k]);
  return SolverCaps{source.r() * std::max(norm(source.m()), norm(target.m())), 4 * comp};
}

std::string CochainResult::describe() const {
  std::ostringstream os;
  if (h)
    os << "solved at t-degree " << caps.t_degree << ", x-degree " << caps.x_degree;
  else
    os << "Inconclusive at t-degree " << caps.t_degree << ", x-degree " << caps.x_degree << " (rank " << rank
       << ", " << unknowns << " unknowns, " << equations << " equations)";
  return os.str();
}

std::string trivialization_failure(const Cocycle& g, const Cocycle& gprime, const std::vector<Poly>& h) {
  const int n = g.base().n, r = g.base().r, ts = chart_t(n);
  if (static_cast<int>(h.size()) != r) return "cochain has the wrong number of entries";
  for (int i = 1; i <= r; ++i) {
    const auto& hi = h[static_cast<std::size_t>(i - 1)];
    if (!hi.is_polynomial() || hi.depends_on(chart_w(n)) || hi.depends_on(chart_u(n)) || hi.depends_on(chart_v(n)))
      return "H_" + std::to_string(i) + " is not a polynomial in (x, t)";
  }
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      const Poly lhs = h[static_cast<std::size_t>(i - 1)].substitute(ts, var(n, ts) + to_chart(g.g(i, j), n)) -
                       h[static_cast<std::size_t>(j - 1)];
      if (!(lhs == to_chart(gprime.g(i, j), n)))
        return "H_" + std::to_string(i) + "(x, t + g_" + pair_label(i, j) + ") - H_" + std::to_string(j) +
               "(x, t) = g'_" + pair_label(i, j);
    }
  return {};
}

CochainResult coboundary_solve(const Cocycle& g, const Cocycle& gprime, SolverCaps caps) {
  if (!(g.base() == gprime.base())) throw std::invalid_argument("cocycles over different base schemes");
  if (affineness(g).kind != AffinenessVerdict::Kind::Affine) throw std::invalid_argument("source cocycle is not affine");
  if (caps.t_degree < 0 || caps.x_degree < 0) throw std::invalid_argument("negative solver caps");
  const int n = g.base().n, r = g.base().r, ts = chart_t(n);
  CochainResult out;
  for (int tdeg = 0; tdeg <= caps.t_degree; ++tdeg)
    for (const int xdeg : x_cap_schedule(caps.x_degree)) {
      auto a = attempt(g, gprime, tdeg, xdeg);
      out.caps = {tdeg, xdeg};
      out.rank = a.rank;
      out.unknowns = a.unknowns;
      out.equations = a.equations;
      if (!a.h1) continue;
      std::vector<Poly> h{*a.h1};
      for (int j = 2; j <= r; ++j)
        h.push_back(a.h1->substitute(ts, var(n, ts) + to_chart(g.g(1, j), n)) - to_chart(gprime.g(1, j), n));
      if (auto why = trivialization_failure(g, gprime, h); !why.empty())
        throw std::logic_error("solver returned a cochain failing " + why);
      out.h = std::move(h);
      return out;
    }
  return out;
}

std::vector<std::string> certificate_conventions() {
  return {
      "transition: t_i = t_j + g_ij on chart overlaps; g_ji = -g_ij",
      "coboundary: (delta h)_ij = h_i - h_j",
      "chart coordinate: t_i = x^{-[m]} (y - sigma_i), using the exponent [m] of the hypersurface",
      "cocycle of a sigma-hypersurface: g_ij = x^{-[m]} (sigma_j - sigma_i)",
      "trivialization: H_i(x, t + g_ij) - H_j(x, t) = g'_ij",
      "forward map on chart i: w = u + H_i(x, t), v = t - H'_i(x, w)",
      "inverse map on chart i: t = v + H'_i(x, w), u = w - H_i(x, t)",
  };
}

IsoResult build_iso(const DanielewskiHypersurface& source, const DanielewskiHypersurface& target,
                    std::optional<SolverCaps> caps) {
  if (!source.sigma() || !target.sigma()) throw std::invalid_argument("build_iso needs sigma-hypersurfaces");
  if (source.n() != target.n() || source.r() != target.r())
    throw std::invalid_argument("hypersurfaces over different base schemes");
  const SolverCaps c = caps.value_or(default_caps(source, target));
  const Cocycle g = hypersurface_cocycle(source), gp = hypersurface_cocycle(target);
  auto fh = std::async(std::launch::async, [&] { return coboundary_solve(g, gp, c); });
  auto fhp = std::async(std::launch::async, [&] { return coboundary_solve(gp, g, c); });
  IsoResult out{std::nullopt, fh.get(), fhp.get()};
  if (!out.h.h || !out.hprime.h) return out;

  const int n = source.n(), r = source.r();
  IsoCertificate cert{source, target, *out.h.h, *out.hprime.h, {}, std::nullopt, {}, certificate_conventions(),
                      out.h.caps, out.hprime.caps};
  for (int i = 1; i <= r; ++i) {
    const auto e = chart_formulas(cert.h[static_cast<std::size_t>(i - 1)], cert.hprime[static_cast<std::size_t>(i - 1)], n);
    cert.charts.push_back(ChartMap{i, e.w, e.v, e.t_inv, e.u_inv});
  }
  // ambient form through chart 1; the other charts are compared during verification
  const auto li = laurent_images(cert, 1);
  if (li.z.degree_in(source.y_slot()) <= kAmbientDegreeCeiling) {
    const auto my = laurent_membership(source, li.y);
    const auto mz = laurent_membership(source, li.z);
    const auto mu = laurent_membership(source, li.u);
    if (!my.element || !mz.element || !mu.element) throw std::logic_error("ambient images are not in B[u]");
    cert.ambient = AmbientForm{my.element->normal_form, mz.element->normal_form, mu.element->normal_form};
  } else {
    cert.conventions.push_back("chartwise-only certificate: ambient form exceeds the degree ceiling");
  }
  auto checked = verify(cert);
  if (!checked.ok) throw std::logic_error("certificate verification failed: " + *checked.failing);
  cert.transcript = std::move(checked.transcript);
  out.certificate = std::move(cert);
  return out;
}

RecheckResult recheck(const IsoCertificate& cert) { return verify(cert); }

}  // namespace danvar
