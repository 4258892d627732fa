#pragma once

#include <optional>
#include <string>
#include <vector>

#include "danvar/poly.hpp"
#include "danvar/upoly.hpp"

namespace danvar {

/// The sheet polynomials sigma_1..sigma_r in C[x] of X_{[m],sigma}.
struct SigmaFamily {
  std::vector<Poly> sigma;

  /// Empty string when both defining conditions hold, otherwise a
  /// description of the first failure ("condition (1): ...").
  std::string violation(int n) const;
};

/// Hypersurface x^[m] z - Q(x, y) = 0 in C^{n+2}, with Q monic in y of
/// degree r >= 2. All polynomials attached to it use the ambient slot layout
/// x1..xn, y, z, u (nvars = n + 3); slots past u are allowed in the inputs
/// of the normal-form routines and are treated as coefficients.
class DanielewskiHypersurface {
 public:
  DanielewskiHypersurface(int n, Exponents m, Poly q, std::optional<SigmaFamily> sigma = std::nullopt);

  static DanielewskiHypersurface from_sigma(int n, Exponents m, std::vector<Poly> sigma);
  /// The homogenized hypersurface x^[m] z - y^r.
  static DanielewskiHypersurface homogenized(int n, Exponents m, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  const Exponents& m() const { return m_; }
  const Poly& q() const { return q_; }
  const std::optional<SigmaFamily>& sigma() const { return sigma_; }
  Ring ring(bool laurent = false) const { return Ring::ambient(n_, laurent); }

  int nvars() const { return n_ + 3; }
  int y_slot() const { return n_; }
  int z_slot() const { return n_ + 1; }
  int u_slot() const { return n_ + 2; }

  /// x^[m] z - Q
  Poly defining_polynomial() const;
  /// x^[m] as an exponent vector of length nvars (optionally negated).
  Exponents x_power(int sign = 1, int nvars = -1) const;
  /// x^{-[m]} Q, the image of z in the Laurent ring.
  Poly z_image(int nvars = -1) const;

  std::string describe() const;

  friend bool operator==(const DanielewskiHypersurface& a, const DanielewskiHypersurface& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.q_ == b.q_;
  }

 private:
  int n_;
  Exponents m_;
  Poly q_;
  int r_;
  std::optional<SigmaFamily> sigma_;
};

/// An element of B = C[x,y,z]/(x^[m]z - Q) stored as its unique normal form:
/// no monomial divisible by x^[m] z. Equality is equality of normal forms and
/// is only meaningful between elements of the same hypersurface.
struct RingElement {
  Poly normal_form;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

/// Rewrites x^[m] z -> Q exhaustively.
RingElement normal_form(const DanielewskiHypersurface& h, const Poly& p);
bool is_reduced(const DanielewskiHypersurface& h, const Poly& p);

/// z := x^{-[m]} Q. Result has no z-dependence.
Poly laurent_embed(const DanielewskiHypersurface& h, const RingElement& e);
Poly laurent_embed(const DanielewskiHypersurface& h, const Poly& ambient);

struct MembershipResult {
  std::optional<RingElement> element;
  /// Coefficients c_k (deg_y < r) of f = sum c_k (x^{-[m]} Q)^k.
  std::vector<Poly> expansion;
  /// Index of the first coefficient with a pole, when not a member.
  std::optional<std::size_t> offending;
};

/// Inverse of laurent_embed: f in C[x, x^-1, y] (plus polynomial extra slots)
/// belongs to B iff its Q-adic expansion has polynomial coefficients.
MembershipResult laurent_membership(const DanielewskiHypersurface& h, const Poly& f);

/// t_i = x^{-[m]} (y - sigma_i), sheets numbered from 1. Verifies
/// t_i * prod_{j != i} (y - sigma_j) = z in B; throws without a sigma family.
Poly chart_coordinate(const DanielewskiHypersurface& h, int sheet);

struct SpecialFiberDecomposition {
  UPoly p;  // Q(0, y)
  std::vector<SquarefreeFactor> factors;
  int components = 0;  // degree of the squarefree part
};

SpecialFiberDecomposition special_fiber(const DanielewskiHypersurface& h);

}  // namespace danvar
