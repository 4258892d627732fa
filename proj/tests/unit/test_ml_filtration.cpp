#include <doctest.h>

#include <random>
#include <set>

#include "danvar/ml_filtration.hpp"
#include "support.hpp"

using namespace danvar;
using testsupport::P;

namespace {

WeightVector seed35() {
  WeightVector w;
  w.dx = {3};
  w.dy = 5;
  return w;
}

}  // namespace

TEST_CASE("admissible weight examples") {
  const auto x2 = testsupport::sigma_pm1({2});
  const auto a = admissible_weight(x2, seed35());
  CHECK_FALSE(a.rescaled);
  REQUIRE(a.weight.dz);
  CHECK(*a.weight.dz == 4);
  const Ring ring = Ring::ambient(1);
  const DanielewskiHypersurface h(1, {2}, P("y^2 + x1^5*y", ring));
  const auto b = admissible_weight(h, seed35());
  CHECK(b.rescaled);
  CHECK(2 * b.weight.dy > 5 * b.weight.dx[0] + b.weight.dy);
  CHECK_FALSE(b.log.empty());
  const auto c = admissible_weight(DanielewskiHypersurface::homogenized(1, {2}, 3), seed35());
  CHECK_FALSE(c.rescaled);
  CHECK(c.weight.dy == 5);
}

TEST_CASE("filtration degree and graded image") {
  const auto x2 = testsupport::sigma_pm1({2});
  const auto w = admissible_weight(x2, seed35()).weight;
  const Ring ring = x2.ring();
  CHECK(filtration_degree(x2, w, P("z", ring)) == ExtDegree(4));
  CHECK(filtration_degree(x2, w, P("x1*y + 1", ring)) == ExtDegree(8));
  CHECK(graded_image(x2, w, P("z + x1", ring)) == P("z", ring));
  CHECK(graded_image(x2, w, P("x1*z - 7", ring)) == P("x1*z", ring));
}

TEST_CASE("graded derivation examples") {
  const auto x2 = testsupport::sigma_pm1({2});
  const Ring ring = x2.ring();
  const auto w = admissible_weight(x2, seed35()).weight;
  const auto gd = graded_derivation(canonical_derivation(x2), w);
  CHECK(gd.t0 == 1);
  CHECK(gd.t[1] == ExtDegree(1));
  CHECK(gd.t[2] == ExtDegree(1));
  CHECK(gd.graded.image(1) == P("x1^2", ring));
  CHECK(gd.graded.image(2) == P("2*y", ring));
  const auto& hr = gd.graded.owner();
  CHECK(normal_form(hr, gd.graded.apply(hr.defining_polynomial())).normal_form.is_zero());

  const auto s1 = testsupport::sigma_pm1({1});
  auto w1 = seed35();
  const auto g1 = graded_derivation(canonical_derivation(s1), admissible_weight(s1, w1).weight);
  CHECK(g1.graded.image(1) == P("x1", ring));
  CHECK(g1.graded.image(2) == P("2*y", ring));

  const Derivation zero(x2, {Poly(x2.nvars()), Poly(x2.nvars()), Poly(x2.nvars())});
  CHECK_THROWS_AS(graded_derivation(zero, w), std::invalid_argument);
}

TEST_CASE("graded derivation is homogeneous") {
  const auto x2 = testsupport::sigma_pm1({2});
  const auto w = admissible_weight(x2, seed35()).weight;
  const auto gd = graded_derivation(canonical_derivation(x2), w);
  const auto& hr = gd.graded.owner();
  const WeightVector wb = w.bound(hr.m(), hr.r());
  for (std::int64_t target = 0; target <= 20; ++target) {
    for (const auto& e : monomials_of_weight(hr, wb, target, 4)) {
      const Poly img = gd.graded.apply(normal_form(hr, Poly::monomial(e)).normal_form);
      if (img.is_zero()) continue;
      CHECK(is_homogeneous(img, wb));
      CHECK(weight_degree(img, wb) == ExtDegree(target + gd.t0));
    }
  }
}

TEST_CASE("degree inequality") {
  const auto x2 = testsupport::sigma_pm1({2});
  const Ring ring = x2.ring();
  const auto d = canonical_derivation(x2);
  const auto gd = graded_derivation(d, admissible_weight(x2, seed35()).weight);
  const auto one = degree_inequality_check(d, gd, {P("z", ring), P("x1", ring)});
  CHECK(one.ok);
  CHECK(one.checked == 2);
  std::mt19937_64 rng(41);
  std::vector<Poly> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(random_ring_element(x2, 4, rng));
  const auto rep = degree_inequality_check(d, gd, samples);
  CHECK(rep.ok);
  CHECK(rep.inconclusive == 0);
}

TEST_CASE("homogeneous normal form uniqueness") {
  const auto hr = DanielewskiHypersurface::homogenized(1, {2}, 2);
  const Ring ring = hr.ring();
  CHECK(normal_form(hr, P("x1^2*z", ring)).normal_form == P("y^2", ring));
  CHECK(normal_form(hr, P("x1*y", ring)).normal_form == P("x1*y", ring));
  const auto rep = homogeneous_normal_form_uniqueness(hr, seed35(), 200, 7);
  CHECK(rep.ok);
  CHECK(rep.checked >= 200);
  // (3,5) is not generic at degree 7: x1^5 and y^3 both weigh 15
  CHECK(rep.weight.dy != 5);
  const auto& w = rep.weight;
  // slice dimension equals the number of reduced monomials of that weight
  const auto reduced = reduced_monomials(hr, 4);
  for (std::int64_t target = 0; target <= 24; ++target) {
    std::set<Exponents> classes;
    for (const auto& e : monomials_of_weight(hr, w, target, 4)) {
      const Poly nf = normal_form(hr, Poly::monomial(e)).normal_form;
      REQUIRE(nf.terms().size() == 1);
      classes.insert(nf.terms().begin()->first);
    }
    std::size_t expected = 0;
    for (const auto& e : reduced)
      if (w.weight(e) == target) ++expected;
    CHECK(classes.size() == expected);
  }
}

TEST_CASE("homogeneous LND search") {
  const auto evidence = homogeneous_lnd_search(DanielewskiHypersurface::homogenized(1, {2}, 2), 3, 12);
  REQUIRE_FALSE(evidence.lnds.empty());
  for (const auto& l : evidence.lnds) {
    CHECK(l.certificate.certified);
    CHECK_FALSE(l.derivation.is_zero());
    CHECK(l.x_in_kernel);
    CHECK(l.z_degree >= ExtDegree(2));
  }
  const auto outside = homogeneous_lnd_search(DanielewskiHypersurface::homogenized(1, {1}, 2), 3, 12);
  bool found = false;
  for (const auto& l : outside.lnds) found = found || !l.x_in_kernel;
  CHECK(found);
  CHECK_THROWS_AS(homogeneous_lnd_search(DanielewskiHypersurface::homogenized(1, {2}, 2), 6, 12, 10), SearchOverflow);
}

TEST_CASE("Makar-Limanov upper bounds") {
  const auto x2 = testsupport::sigma_pm1({2});
  const Ring ring = x2.ring();
  const auto d = canonical_derivation(x2);
  const auto bound = ml_upper_bound(x2, {d, conjugate_by_flow(d, d, Rational(1))}, 3);
  CHECK(bound == std::vector<Poly>{P("1", ring), P("x1", ring), P("x1^2", ring), P("x1^3", ring)});
  CHECK(ml_upper_bound(x2, {d}, 2) == kernel_bounded(d, 2));
  const auto s1 = testsupport::sigma_pm1({1});
  const auto c = ml_upper_bound(s1, {canonical_derivation(s1), jacobian_derivation(s1, 1)}, 3);
  CHECK(c == std::vector<Poly>{P("1", ring)});
  CHECK_THROWS_AS(ml_upper_bound(s1, {}, 3), std::invalid_argument);
}

TEST_CASE("second kernels avoid z when every m_k > 1") {
  for (const auto& h : {testsupport::sigma_pm1({2}), testsupport::sigma_pm1({3})}) {
    for (const auto& p : kernel2_bounded(canonical_derivation(h), 2))
      for (const auto& [e, c] : p.terms()) CHECK(e[static_cast<std::size_t>(h.z_slot())] == 0);
  }
}
