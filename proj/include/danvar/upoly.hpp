#pragma once

#include <optional>
#include <string>
#include <vector>

#include "danvar/poly.hpp"

namespace danvar {

/// Dense univariate polynomial over Q, coefficients low degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  /// Read a polynomial depending only on `slot`.
  static UPoly from_poly(const Poly& p, int slot);
  Poly to_poly(int nvars, int slot) const;

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  UPoly derivative() const;
  UPoly monic() const;
  Rational evaluate(const Rational& v) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

  /// Euclidean division; throws on division by zero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  std::string to_string(const std::string& var = "y") const;

 private:
  std::vector<Rational> c_;
  void trim();
};

/// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);

struct SquarefreeFactor {
  UPoly factor;
  int multiplicity = 0;
};

/// Yun's algorithm, then rational linear factors are split off each part.
/// Factors are monic, squarefree, pairwise coprime; the leading coefficient
/// of the input is dropped.
std::vector<SquarefreeFactor> squarefree_decomposition(const UPoly& p);

/// Rational roots of a nonzero polynomial (rational root theorem). Returns
/// std::nullopt when a coefficient is too large to enumerate divisors.
std::optional<std::vector<Rational>> rational_roots(const UPoly& p);

}  // namespace danvar
