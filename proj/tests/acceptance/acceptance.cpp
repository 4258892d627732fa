#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "danvar/bundle_cocycle.hpp"
#include "danvar/cancellation.hpp"
#include "danvar/lnd.hpp"
#include "danvar/ml_filtration.hpp"
#include "danvar/records.hpp"
#include "support.hpp"

using namespace danvar;
using testsupport::P;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Cocycle cocycle_of(const DanielewskiHypersurface& h) { return sigma_cocycle({h.n(), h.r()}, *h.sigma(), h.m()); }

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto s1 = testsupport::sigma_pm1({1}), s2 = testsupport::sigma_pm1({2});
  const auto g1 = cocycle_of(s1), g2 = cocycle_of(s2);
  o.require(affineness(g1).kind == AffinenessVerdict::Kind::Affine, "S1 affine");
  o.require(affineness(g2).kind == AffinenessVerdict::Kind::Affine, "S2 affine");
  const auto p1 = to_string(pole_signature(g1)), p2 = to_string(pole_signature(g2));
  o.require(p1 == "{(1)}" && p2 == "{(2)}", "pole signatures " + p1 + " vs " + p2);
  o.require(!coboundary_test(g1, g2).cochain, "not cohomologous");

  const std::string dir = DANVAR_TEST_SCRATCH;
  const std::string src = dir + "/acc1_s1.json", tgt = dir + "/acc1_s2.json", cert = dir + "/acc1.cert.json";
  std::ofstream(src) << to_json(s1).dump();
  std::ofstream(tgt) << to_json(s2).dump();
  const std::string cli = DANVAR_CLI_PATH;
  const int made = std::system((cli + " cancel-certificate " + src + " " + tgt + " -o " + cert + " > /dev/null").c_str());
  o.require(WIFEXITED(made) && WEXITSTATUS(made) == 0, "cancel-certificate exit 0");
  const int checked = std::system((cli + " recheck " + cert + " > /dev/null").c_str());
  o.require(WIFEXITED(checked) && WEXITSTATUS(checked) == 0, "recheck in a fresh process exit 0");
  const double secs = seconds_since(t0);
  o.require(secs < 60, "wall clock " + std::to_string(secs) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = testsupport::sigma_pm1({2, 3}), b = testsupport::sigma_pm1({3, 2});
  const auto ga = cocycle_of(a), gb = cocycle_of(b);
  const auto orbit = restricted_orbit_test(ga, gb);
  o.notes.push_back("orbit verdict: " + orbit.describe());
  o.require(!orbit.in_orbit && orbit.signatures_differ, "restricted orbit test negative via pole signatures (" +
                                                           to_string(pole_signature(ga)) + " vs " +
                                                           to_string(pole_signature(gb)) + ")");
  SolverCaps caps = default_caps(a, b);
  auto res = build_iso(a, b, caps);
  if (!res.certificate) {
    caps = {caps.t_degree * 2, caps.x_degree * 2};
    res = build_iso(a, b, caps);
  }
  o.require(caps.t_degree <= 12 && caps.x_degree <= 24,
            "caps t<=" + std::to_string(caps.t_degree) + " x<=" + std::to_string(caps.x_degree) + " within (12, 24)");
  o.require(res.certificate.has_value(), "build_iso certificate (" + res.h.describe() + "; " + res.hprime.describe() + ")");
  if (res.certificate) o.require(recheck(*res.certificate).ok, "certificate rechecks");
  const double secs = seconds_since(t0);
  o.require(secs < 600, "wall clock " + std::to_string(secs) + " s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int affine = 0, ordered = 0;
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + round % 3, r = 2 + (round / 3) % 2;
    Exponents m;
    for (int k = 0; k < n; ++k) m.push_back(1 + static_cast<int>(rng() % 3));
    const auto v = affineness(sigma_cocycle({n, r}, testsupport::random_sigma(rng, n, r), m));
    affine += v.kind == AffinenessVerdict::Kind::Affine;
    ordered += v.total_order_verified;
  }
  o.require(affine == 200, std::to_string(affine) + "/200 random sigma families Affine");
  o.require(ordered == 200, std::to_string(ordered) + "/200 with the total-order condition verified");
  const Ring lr = Ring::ambient(2, true);
  const Cocycle bad(BaseScheme{2, 3}, {{{1, 2}, P("x1^-1*x2^-2", lr)},
                                       {{1, 3}, P("x1^-2*x2^-1", lr)},
                                       {{2, 3}, P("x1^-2*x2^-1 - x1^-1*x2^-2", lr)}});
  const auto v = affineness(bad);
  o.require(v.kind == AffinenessVerdict::Kind::NotSeparated, "violating cocycle NotSeparated");
  o.require(v.witness && v.witness->i == 2 && v.witness->j == 3 && v.witness->residue_in_maximal_ideal,
            "witness a_23 in (x1, x2)" + (v.witness ? ": " + v.witness->describe() : std::string()));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto h = testsupport::sigma_pm1({2});
  const Ring ring = h.ring();
  const auto d = canonical_derivation(h);
  o.require(degree(d, P("z", ring)) == ExtDegree(2), "deg(z) = 2");
  const Poly t = Poly::variable(h.nvars() + 1, h.nvars());
  o.require(normal_form(h, flow(d, h.defining_polynomial(), t)).normal_form.is_zero(), "exp(t d) preserves the relation");
  const auto ax = action_axioms_check(d, 10);
  o.require(ax.ok, "co-action axiom and multiplicativity" + (ax.counterexample ? ": " + *ax.counterexample : std::string()));
  const auto k = kernel_bounded(d, 3);
  o.require(k == std::vector<Poly>{P("1", ring), P("x1", ring), P("x1^2", ring), P("x1^3", ring)},
            "kernel_bounded(3) = span{1, x, x^2, x^3}");
  bool xy_only = true;
  for (const auto& p : kernel2_bounded(d, 2))
    for (const auto& [e, c] : p.terms()) xy_only = xy_only && e[static_cast<std::size_t>(h.z_slot())] == 0;
  o.require(xy_only, "kernel2_bounded(2) inside C[x, y]");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto h = testsupport::sigma_pm1({2});
  const Ring ring = h.ring();
  WeightVector seed;
  seed.dx = {3};
  seed.dy = 5;
  const auto w = admissible_weight(h, seed).weight;
  const auto d = canonical_derivation(h);
  const auto gd = graded_derivation(d, w);
  o.require(gd.t0 == 1, "t0 = " + std::to_string(gd.t0));
  const auto& hr = gd.graded.owner();
  o.require(hr.defining_polynomial() == P("x1^2*z - y^2", ring) &&
                normal_form(hr, gd.graded.apply(hr.defining_polynomial())).normal_form.is_zero(),
            "gr d preserves x^2 z - y^2");
  std::mt19937_64 rng(5);
  std::vector<Poly> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(random_ring_element(h, 4, rng));
  const auto rep = degree_inequality_check(d, gd, samples);
  o.require(rep.ok && rep.checked == 100 && rep.inconclusive == 0,
            "degree inequality on " + std::to_string(rep.checked) + " samples");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto ev = homogeneous_lnd_search(DanielewskiHypersurface::homogenized(1, {2}, 2), 3, 12);
  bool all = !ev.lnds.empty();
  for (const auto& l : ev.lnds) all = all && l.certificate.certified && l.x_in_kernel && l.z_degree >= ExtDegree(2);
  o.require(all, std::to_string(ev.lnds.size()) + " certified LNDs for m = 2, all with x in the kernel and deg z >= 2");
  const auto other = homogeneous_lnd_search(DanielewskiHypersurface::homogenized(1, {1}, 2), 3, 12);
  int omit = 0;
  for (const auto& l : other.lnds) omit += !l.x_in_kernel;
  o.require(omit > 0, std::to_string(omit) + " LNDs for m = 1 with x outside the kernel");
  const auto h = testsupport::sigma_pm1({2});
  const Ring ring = h.ring();
  const auto d = canonical_derivation(h);
  const auto bound = ml_upper_bound(h, {d, conjugate_by_flow(d, d, Rational(1))}, 3);
  o.require(bound == std::vector<Poly>{P("1", ring), P("x1", ring), P("x1^2", ring), P("x1^3", ring)},
            "ML upper bound = span{1, x, x^2, x^3}");
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(77);
  int roundtrips = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + i % 3;
    const Ring ring = Ring::ambient(n, i % 2 == 0);
    const Poly p = testsupport::random_poly(rng, ring, n + 3, 5, 4, i % 2 == 0 ? -3 : 0);
    roundtrips += parse_poly(to_string(p, ring), ring) == p;
  }
  o.require(roundtrips == 1000, std::to_string(roundtrips) + "/1000 parse/print round trips");
  int nf_ok = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + i % 2;
    const Ring ring = Ring::ambient(n);
    Exponents m;
    for (int k = 0; k < n; ++k) m.push_back(1 + (i / 2 + k) % 3);
    const DanielewskiHypersurface h(n, m, P("y^3 - x1*y + 1", ring));
    const Poly p = testsupport::random_poly(rng, ring, n + 2, 5, 4);
    const Poly nf = normal_form(h, p).normal_form;
    const auto back = laurent_membership(h, laurent_embed(h, nf));
    nf_ok += normal_form(h, nf).normal_form == nf && back.element && back.element->normal_form == nf &&
             laurent_embed(h, p) == laurent_embed(h, nf);
  }
  o.require(nf_ok == 500, std::to_string(nf_ok) + "/500 normal form idempotence and Laurent round trips");
  const auto hr = DanielewskiHypersurface::homogenized(1, {2}, 2);
  WeightVector seed;
  seed.dx = {3};
  seed.dy = 5;
  const auto rep = homogeneous_normal_form_uniqueness(hr, admissible_weight(hr, seed).weight, 200, 3);
  o.require(rep.ok && rep.checked >= 200, "single-monomial property on " + std::to_string(rep.checked) + " homogeneous elements");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Danielewski pipeline S1 vs S2", criterion1},
      {"two-variable counterexample m = (2,3) vs (3,2)", criterion2},
      {"affineness criterion", criterion3},
      {"LND engine on x^2 z = y^2 - 1", criterion4},
      {"graded derivation and degree inequality", criterion5},
      {"Makar-Limanov evidence", criterion6},
      {"normal form and parser invariants", criterion7}};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= 7; ++i) which.push_back(i);
  bool all = true;
  for (int c : which) {
    if (c < 1 || c > 7) {
      std::cerr << "unknown criterion " << c << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(c - 1)].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    for (const auto& n : o.notes) std::cout << "  " << n << "\n";
    std::cout << "criterion " << c << " (" << criteria[static_cast<std::size_t>(c - 1)].first
              << "): " << (o.pass ? "PASS" : "FAIL") << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
