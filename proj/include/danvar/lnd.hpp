#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "danvar/danielewski_ring.hpp"
#include "danvar/poly.hpp"

namespace danvar {

inline constexpr int kDefaultNilpotencyCap = 64;

/// A derivation of B given by the images of x1..xn, y, z in the ambient ring.
class Derivation {
 public:
  /// images.size() == n + 2. Throws if the images leave the ambient ring or
  /// the defining polynomial F does not satisfy F | dF (checked as
  /// normal_form(dF) == 0, equivalent since F is monic of degree 1 in z).
  Derivation(DanielewskiHypersurface owner, std::vector<Poly> images);

  const DanielewskiHypersurface& owner() const { return owner_; }
  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(int slot) const { return images_.at(static_cast<std::size_t>(slot)); }
  bool is_zero() const;

  /// Leibniz extension to a polynomial in the ambient layout (extra slots
  /// past z are constants), followed by normal form.
  Poly apply(const Poly& p) const;
  RingElement apply(const RingElement& e) const { return RingElement{apply(e.normal_form)}; }

 private:
  DanielewskiHypersurface owner_;
  std::vector<Poly> images_;
};

/// x_i -> 0, y -> x^[m], z -> dQ/dy.
Derivation canonical_derivation(const DanielewskiHypersurface& h);

/// For m_k = 1: dh = h_{x_k} F_y - h_y F_{x_k}; fixes z and the other x_j.
/// Its kernel contains the base (x_j (j != k), z) of the second fibration.
Derivation jacobian_derivation(const DanielewskiHypersurface& h, int k);

/// std::nullopt means Inconclusive: d^{cap+1} b was still nonzero.
std::optional<ExtDegree> degree(const Derivation& d, const Poly& b, int cap = kDefaultNilpotencyCap);

struct NilpotencyCertificate {
  bool certified = false;
  /// Smallest k with d^k(gen) = 0, per generator x1..xn, y, z (0 if absent).
  std::vector<int> steps;
  int bound = 0;  // max of steps
  int cap = kDefaultNilpotencyCap;
  std::string describe(const Ring& ring) const;
};

NilpotencyCertificate certify_nilpotency(const Derivation& d, int cap = kDefaultNilpotencyCap);

/// Coefficients d^k b / k! of exp(t d)(b); std::nullopt past the cap.
std::optional<std::vector<Poly>> exponential(const Derivation& d, const Poly& b, int cap = kDefaultNilpotencyCap);

/// sum_k d^k b / k! * T^k with T a polynomial in extra slots (e.g. t, or
/// s + t). The result has T.nvars() slots.
Poly exponential_series(const Derivation& d, const Poly& b, const Poly& time, int cap = kDefaultNilpotencyCap);

/// exp(time * d) applied as a ring homomorphism: the generators are replaced
/// by their exponential series and the result is normal-formed.
Poly flow(const Derivation& d, const Poly& p, const Poly& time, int cap = kDefaultNilpotencyCap);

/// Reduced monomials x^a y^b z^c (not divisible by x^[m] z) of total degree <= D,
/// in increasing graded-lex order.
std::vector<Exponents> reduced_monomials(const DanielewskiHypersurface& h, int max_degree);

/// Exact basis of Ker(d^power) on the span of reduced monomials of degree <= D.
/// Each vector is written with its largest monomial having coefficient 1.
std::vector<Poly> kernel_power_bounded(const Derivation& d, int power, int max_degree);
inline std::vector<Poly> kernel_bounded(const Derivation& d, int max_degree) {
  return kernel_power_bounded(d, 1, max_degree);
}
inline std::vector<Poly> kernel2_bounded(const Derivation& d, int max_degree) {
  return kernel_power_bounded(d, 2, max_degree);
}

struct ActionReport {
  bool ok = true;
  std::vector<std::string> transcript;
  std::optional<std::string> counterexample;
};

/// Checks exp(s d) exp(t d) = exp((s + t) d) on generators and samples,
/// multiplicativity of exp(t d) on random pairs, and exp(t d)(F) = 0 in B.
ActionReport action_axioms_check(const Derivation& d, int samples, std::uint64_t seed = 1,
                                 int cap = kDefaultNilpotencyCap);

/// exp(c e) o d o exp(-c e), computed on generators.
Derivation conjugate_by_flow(const Derivation& d, const Derivation& e, const Rational& c,
                             int cap = kDefaultNilpotencyCap);

/// Random element of the ambient polynomial ring (x, y, z) of total degree <= D
/// with small integer coefficients, normal-formed.
Poly random_ring_element(const DanielewskiHypersurface& h, int max_degree, std::mt19937_64& rng);

}  // namespace danvar
